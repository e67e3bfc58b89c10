#pragma once

#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "ccfom/certificates.hpp"

namespace ccfom {

inline constexpr const char* kCsvMagic = "# ccfom-csv v1";

/// Record columns, in file order. Vector columns hold space separated
/// coordinates; every number is written with 17 significant digits so a
/// file round-trips bit for bit.
const std::vector<std::string>& csv_columns();

struct TraceFileHeader {
  std::string problem_id;
  Method method = Method::gradient;
  std::size_t iterations = 0;
  std::string schedule;
  Tolerances tol;
  std::vector<Point> test_points;  // beyond the defaults
};

struct StoredRow {
  std::size_t k = 0;
  std::string verdict;
};

struct LoadedTrace {
  TraceFileHeader header;
  MethodTrace trace;
  std::vector<StoredRow> rows;
};

void write_trace_csv(std::ostream& out, const TraceFileHeader& header, const MethodTrace& trace, const Audit& audit);

/// The record columns of one row, comma joined (no trailing newline).
std::string format_record(const MethodTrace& trace, const ChainRecord& rec);

/// Rebuilds the trace from a file written by write_trace_csv. Anything that
/// does not fit the schema raises ErrorKind::schema.
LoadedTrace read_trace_csv(std::istream& in);

std::string format_double(double v);

}  // namespace ccfom
