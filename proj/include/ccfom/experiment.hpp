#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

#include "ccfom/config.hpp"
#include "ccfom/trace_csv.hpp"

namespace ccfom {

inline constexpr int kExitPass = 0;
inline constexpr int kExitVerificationFailure = 2;
inline constexpr int kExitConfigError = 3;
inline constexpr int kExitOracleFailure = 4;

int exit_code_for(ErrorKind kind);

struct CommandOverrides {
  std::optional<double> eps_rel;
  std::optional<double> eps_abs;
  std::optional<unsigned> workers;
};

struct CommandOutcome {
  int exit_code = kExitPass;
  std::string summary;
};

/// One (problem, method, K) run plus its audit.
struct Cell {
  std::string problem_id;
  Method method = Method::gradient;
  std::size_t iterations = 0;
  TraceFileHeader header;
  std::optional<MethodTrace> trace;
  std::optional<Audit> audit;
  int exit_code = kExitPass;
  std::string error;
};

Cell run_cell(const ExperimentConfig& config, const std::string& problem_id, Method method, std::size_t K);

/// Human-readable audit: every check with its residual and tolerance.
void write_report(std::ostream& out, const TraceFileHeader& header, const MethodTrace& trace, const Audit& audit);

CommandOutcome cmd_run(const std::filesystem::path& config, const std::filesystem::path& out_dir,
                       const CommandOverrides& overrides = {});
CommandOutcome cmd_verify(const std::filesystem::path& trace_csv, const std::filesystem::path& out_dir,
                          const CommandOverrides& overrides = {});
CommandOutcome cmd_sweep(const std::filesystem::path& config, const std::filesystem::path& out_dir,
                         const CommandOverrides& overrides = {});
CommandOutcome cmd_conjecture(const std::filesystem::path& config, const std::filesystem::path& out_dir,
                              const CommandOverrides& overrides = {});

}  // namespace ccfom
