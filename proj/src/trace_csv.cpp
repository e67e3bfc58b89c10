#include "ccfom/trace_csv.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <optional>
#include <sstream>

namespace ccfom {

namespace {

struct IndexData {
  std::optional<Point> x, y, g;
  std::optional<double> t, theta, fx;
};

[[noreturn]] void schema_error(std::size_t line, const std::string& msg) {
  fail(ErrorKind::schema, "trace csv line " + std::to_string(line) + ": " + msg);
}

std::string optional_number(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

std::vector<std::string> split(const std::string& s, const std::string& sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    const auto next = s.find(sep, pos);
    out.push_back(s.substr(pos, next == std::string::npos ? std::string::npos : next - pos));
    if (next == std::string::npos) return out;
    pos = next + sep.size();
  }
}

double parse_double(const std::string& text, std::size_t line, const std::string& what) {
  if (text.empty()) schema_error(line, "missing " + what);
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size() || errno == ERANGE) schema_error(line, "bad number for " + what + ": '" + text + "'");
  return v;
}

std::size_t parse_index(const std::string& text, std::size_t line) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) {
    schema_error(line, "bad index '" + text + "'");
  }
  return static_cast<std::size_t>(std::stoull(text));
}

Point parse_point(const std::string& text, std::size_t line, const std::string& what) {
  try {
    return Point(parse_vector(text, ' '));
  } catch (const Error& e) {
    schema_error(line, "bad vector for " + what + ": " + e.what());
  }
}

void store(std::optional<Point>& slot, Point value, std::size_t line, const char* what) {
  if (slot && !(*slot == value)) schema_error(line, std::string("conflicting values for ") + what);
  slot = std::move(value);
}

void store(std::optional<double>& slot, double value, std::size_t line, const char* what) {
  if (slot && *slot != value) schema_error(line, std::string("conflicting values for ") + what);
  slot = value;
}

bool has_theta(Method m) { return m == Method::accelerated || m == Method::prox_accelerated; }

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> columns = {
      "k",       "f_xk",           "lhs_k",              "cert_k",             "vacuous_flag",
      "mu_k",    "theta_k",        "theorem_bound_k",    "residual_chain_max", "residual_induction",
      "verdict", "t_k",            "x_k",                "y_k",                "g_k"};
  return columns;
}

std::string format_record(const MethodTrace& trace, const ChainRecord& rec) {
  const std::size_t k = rec.k;
  std::ostringstream row;
  row << k << ',' << format_double(rec.fx) << ',' << format_double(rec.lhs) << ','
      << (rec.certificate.is_finite() ? format_double(rec.certificate.value()) : to_string(rec.certificate)) << ','
      << (rec.vacuous ? 1 : 0) << ',' << format_double(rec.mu) << ',' << optional_number(rec.theta) << ','
      << optional_number(rec.theorem_bound) << ',' << format_double(rec.residual_chain_max) << ','
      << optional_number(rec.residual_induction) << ',' << to_string(rec.verdict) << ',';
  if (k < trace.t.size()) row << format_double(trace.t[k]);
  row << ',' << format_point(trace.x.at(k).coords(), ' ') << ',';
  if (k < trace.y.size()) row << format_point(trace.y[k].coords(), ' ');
  row << ',';
  if (k < trace.g.size()) row << format_point(trace.g[k].coords(), ' ');
  return row.str();
}

void write_trace_csv(std::ostream& out, const TraceFileHeader& header, const MethodTrace& trace, const Audit& audit) {
  out << kCsvMagic << '\n'
      << "# problem_id=" << header.problem_id << '\n'
      << "# method=" << to_string(header.method) << '\n'
      << "# iterations=" << header.iterations << '\n'
      << "# schedule=" << header.schedule << '\n'
      << "# eps_rel=" << format_double(header.tol.eps_rel) << '\n'
      << "# eps_abs=" << format_double(header.tol.eps_abs) << '\n'
      << "# x0=" << format_point(trace.x0().coords()) << '\n';
  for (const Point& p : header.test_points) out << "# test_point=" << format_point(p.coords()) << '\n';

  const auto& records = audit.chain.records;
  const auto has_record = [&](std::size_t i) {
    return !records.empty() && i >= records.front().k && i <= records.back().k;
  };
  for (std::size_t i = 0; i < trace.x.size(); ++i) {
    if (has_record(i)) continue;
    out << "# iterate k=" << i << " | x=" << format_point(trace.x[i].coords(), ' ') << " | fx=" << format_double(trace.fx[i]);
    if (i < trace.y.size()) out << " | y=" << format_point(trace.y[i].coords(), ' ');
    if (i < trace.g.size()) out << " | g=" << format_point(trace.g[i].coords(), ' ');
    if (i < trace.t.size()) out << " | t=" << format_double(trace.t[i]);
    if (i < trace.theta.size()) out << " | theta=" << format_double(trace.theta[i]);
    out << '\n';
  }

  const auto& cols = csv_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << '\n';
  for (const ChainRecord& rec : records) out << format_record(trace, rec) << '\n';
}

LoadedTrace read_trace_csv(std::istream& in) {
  LoadedTrace loaded;
  TraceFileHeader& header = loaded.header;
  std::map<std::string, std::string> keys;
  std::map<std::size_t, IndexData> data;
  std::string line;
  std::size_t lineno = 0;

  if (!std::getline(in, line)) fail(ErrorKind::schema, "trace csv is empty");
  ++lineno;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvMagic) schema_error(lineno, "missing '" + std::string(kCsvMagic) + "' header");

  bool columns_seen = false;
  const auto& cols = csv_columns();
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (columns_seen) schema_error(lineno, "comment after the column header");
      const std::string body = line.size() > 2 ? line.substr(2) : std::string();
      if (body.rfind("iterate ", 0) == 0) {
        std::optional<std::size_t> k;
        IndexData fields;
        for (const std::string& part : split(body.substr(8), " | ")) {
          const auto eq = part.find('=');
          if (eq == std::string::npos) schema_error(lineno, "malformed iterate field '" + part + "'");
          const std::string key = part.substr(0, eq), value = part.substr(eq + 1);
          if (key == "k") k = parse_index(value, lineno);
          else if (key == "x") fields.x = parse_point(value, lineno, "x");
          else if (key == "y") fields.y = parse_point(value, lineno, "y");
          else if (key == "g") fields.g = parse_point(value, lineno, "g");
          else if (key == "t") fields.t = parse_double(value, lineno, "t");
          else if (key == "theta") fields.theta = parse_double(value, lineno, "theta");
          else if (key == "fx") fields.fx = parse_double(value, lineno, "fx");
          else schema_error(lineno, "unknown iterate field '" + key + "'");
        }
        if (!k) schema_error(lineno, "iterate line without k");
        if (data.count(*k)) schema_error(lineno, "duplicate iterate k=" + std::to_string(*k));
        data[*k] = std::move(fields);
        continue;
      }
      const auto eq = body.find('=');
      if (eq == std::string::npos) continue;  // free-form comment
      const std::string key = body.substr(0, eq), value = body.substr(eq + 1);
      if (key == "test_point") {
        try {
          header.test_points.emplace_back(parse_vector(value));
        } catch (const Error& e) {
          schema_error(lineno, std::string("bad test point: ") + e.what());
        }
      } else {
        keys[key] = value;
      }
      continue;
    }
    const auto fields = split(line, ",");
    if (!columns_seen) {
      if (fields != cols) schema_error(lineno, "unexpected column header");
      columns_seen = true;
      continue;
    }
    if (fields.size() != cols.size()) {
      schema_error(lineno, "expected " + std::to_string(cols.size()) + " fields, found " + std::to_string(fields.size()));
    }
    const std::size_t k = parse_index(fields[0], lineno);
    if (!loaded.rows.empty() && k != loaded.rows.back().k + 1) schema_error(lineno, "rows are not consecutive");
    loaded.rows.push_back({k, fields[10]});
    IndexData& slot = data[k];
    store(slot.fx, parse_double(fields[1], lineno, "f_xk"), lineno, "f_xk");
    store(slot.x, parse_point(fields[12], lineno, "x_k"), lineno, "x_k");
    if (!fields[11].empty()) store(slot.t, parse_double(fields[11], lineno, "t_k"), lineno, "t_k");
    if (!fields[13].empty()) store(slot.y, parse_point(fields[13], lineno, "y_k"), lineno, "y_k");
    if (!fields[14].empty()) store(slot.g, parse_point(fields[14], lineno, "g_k"), lineno, "g_k");
    if (!fields[6].empty()) slot.theta = parse_double(fields[6], lineno, "theta_k");
  }
  if (!columns_seen) fail(ErrorKind::schema, "trace csv has no column header");
  if (loaded.rows.empty()) fail(ErrorKind::schema, "trace csv has no records (empty trace)");

  for (const char* required : {"problem_id", "method", "iterations", "schedule", "eps_rel", "eps_abs"}) {
    if (!keys.count(required)) fail(ErrorKind::schema, std::string("trace csv header lacks '") + required + "'");
  }
  header.problem_id = keys["problem_id"];
  try {
    header.method = parse_method(keys["method"]);
  } catch (const Error& e) {
    fail(ErrorKind::schema, e.what());
  }
  header.iterations = parse_index(keys["iterations"], 0);
  header.schedule = keys["schedule"];
  header.tol.eps_rel = parse_double(keys["eps_rel"], 0, "eps_rel");
  header.tol.eps_abs = parse_double(keys["eps_abs"], 0, "eps_abs");

  const Method m = header.method;
  const std::size_t K = header.iterations;
  const bool subgradient = m == Method::subgradient;
  const std::size_t points = subgradient ? K + 2 : K + 1;
  const std::size_t steps = subgradient ? K + 1 : K;
  if (data.size() != points || data.begin()->first != 0 || data.rbegin()->first != points - 1) {
    fail(ErrorKind::schema, "trace csv holds " + std::to_string(data.size()) + " iterates; method " +
                                std::string(to_string(m)) + " with K=" + std::to_string(K) + " needs " +
                                std::to_string(points));
  }

  MethodTrace& trace = loaded.trace;
  trace.method = m;
  trace.problem_id = header.problem_id;
  trace.horizon = K;
  for (auto& [i, d] : data) {
    const auto missing = [&](const char* what) {
      fail(ErrorKind::schema, std::string("trace csv: missing ") + what + " at k=" + std::to_string(i));
    };
    if (!d.x || !d.fx) missing("x or f(x)");
    trace.x.push_back(*d.x);
    trace.fx.push_back(*d.fx);
    if (i < steps) {
      if (!d.t) missing("t");
      trace.t.push_back(*d.t);
      if (d.g) {
        if (trace.g.size() != i) missing("g");
        trace.g.push_back(*d.g);
      }
    }
    if (has_theta(m)) {
      if (!d.y || !d.theta) missing("y or theta");
      trace.y.push_back(*d.y);
      trace.theta.push_back(*d.theta);
    }
  }
  if (keys.count("x0")) {
    Vector x0;
    try {
      x0 = parse_vector(keys["x0"]);
    } catch (const Error&) {
      fail(ErrorKind::schema, "trace csv: bad x0 header");
    }
    if (!(Point(x0) == trace.x0())) fail(ErrorKind::schema, "trace csv: x0 header disagrees with x_0");
  }
  return loaded;
}

}  // namespace ccfom
