#include "ccfom/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <sstream>
#include <thread>

#include "ccfom/catalog.hpp"
#include "ccfom/proxprobe.hpp"
#include "ccfom/svg.hpp"

namespace ccfom {

namespace fs = std::filesystem;

int exit_code_for(ErrorKind kind) {
  return kind == ErrorKind::oracle_failure ? kExitOracleFailure : kExitConfigError;
}

namespace {

void apply(ExperimentConfig& config, const CommandOverrides& o) {
  if (o.eps_rel) config.tol.eps_rel = *o.eps_rel;
  if (o.eps_abs) config.tol.eps_abs = *o.eps_abs;
  if (o.workers) config.workers = *o.workers;
  require(config.tol.eps_rel > 0 && config.tol.eps_abs > 0, ErrorKind::configuration, "tolerances must be positive");
  require(config.workers >= 1, ErrorKind::configuration, "workers must be at least 1");
}

std::ofstream open_output(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  require(out.good(), ErrorKind::configuration, "cannot write '" + path.string() + "'");
  return out;
}

std::string quote(const std::string& field) {
  if (field.find_first_of(",\"") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

std::string cell_label(const Cell& cell) {
  return cell.problem_id + " / " + std::string(to_string(cell.method)) + " / K=" + std::to_string(cell.iterations);
}

PlotSeries series_for(const Cell& cell) {
  PlotSeries s;
  s.label = cell_label(cell);
  for (const ChainRecord& rec : cell.audit->chain.records) {
    const double k = static_cast<double>(rec.k);
    if (rec.suboptimality) s.measured.emplace_back(k, *rec.suboptimality);
    if (rec.theorem_bound) s.bound.emplace_back(k, *rec.theorem_bound);
  }
  return s;
}

template <typename F>
CommandOutcome guarded(F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    return {exit_code_for(e.kind()), std::string("error: ") + e.what()};
  } catch (const fs::filesystem_error& e) {
    return {kExitConfigError, std::string("error: ") + e.what()};
  }
}

std::string cert_text(const ExtendedReal& v) { return v.is_finite() ? format_double(v.value()) : to_string(v); }

std::string counts_line(const BoundChain& chain) {
  std::ostringstream s;
  s << "records=" << chain.records.size() << " fail=" << chain.failures() << " vacuous=" << chain.vacuous_records();
  return s.str();
}

}  // namespace

Cell run_cell(const ExperimentConfig& config, const std::string& problem_id, Method method, std::size_t K) {
  Cell cell;
  cell.problem_id = problem_id;
  cell.method = method;
  cell.iterations = K;
  try {
    require(method != Method::prox_accelerated, ErrorKind::configuration,
            "prox_accelerated is only available through the conjecture command");
    const ProblemInstance p = make_problem(problem_id);
    check_compatibility(p, method);
    const Point x0 = resolve_x0(config.x0, p.dim());
    const StepSchedule schedule = resolve_schedule(config, method, K);
    require(method == Method::subgradient || K >= 1, ErrorKind::configuration,
            std::string(to_string(method)) + " needs iterations >= 1");

    cell.header.problem_id = problem_id;
    cell.header.method = method;
    cell.header.iterations = K;
    cell.header.schedule = schedule.describe();
    cell.header.tol = config.tol;
    for (const std::string& text : config.test_points) cell.header.test_points.push_back(resolve_x0(text, p.dim()));

    switch (method) {
      case Method::subgradient: cell.trace = run_subgradient(p, x0, schedule, K); break;
      case Method::gradient: cell.trace = run_gradient(p, x0, K); break;
      default: cell.trace = run_accelerated(p, x0, K); break;
    }
    AuditOptions options;
    options.tol = config.tol;
    options.extra_test_points = cell.header.test_points;
    cell.audit = audit_trace(*cell.trace, p, options);
    cell.exit_code = cell.audit->chain.all_pass() ? kExitPass : kExitVerificationFailure;
  } catch (const Error& e) {
    cell.exit_code = exit_code_for(e.kind());
    cell.error = e.what();
    cell.trace.reset();
    cell.audit.reset();
  }
  return cell;
}

void write_report(std::ostream& out, const TraceFileHeader& header, const MethodTrace& trace, const Audit& audit) {
  const BoundChain& chain = audit.chain;
  out << "problem_id: " << header.problem_id << '\n'
      << "method: " << to_string(header.method) << '\n'
      << "iterations: " << header.iterations << '\n'
      << "schedule: " << header.schedule << '\n'
      << "eps_rel: " << format_double(header.tol.eps_rel) << "  eps_abs: " << format_double(header.tol.eps_abs) << '\n'
      << "x0: " << format_point(trace.x0().coords()) << '\n';
  for (const Point& x : chain.test_points) out << "test point: " << format_point(x.coords()) << '\n';
  out << "certificate: start_index=" << audit.certificate.start_index
      << " requeried_subgradients=" << audit.certificate.requeried << '\n'
      << counts_line(chain) << '\n';
  for (const ChainRecord& rec : chain.records) {
    out << "\nk=" << rec.k << " verdict=" << to_string(rec.verdict) << " f=" << format_double(rec.fx)
        << " lhs=" << format_double(rec.lhs) << " cert=" << cert_text(rec.certificate) << " mu=" << format_double(rec.mu);
    if (rec.theorem_bound) out << " bound=" << format_double(*rec.theorem_bound);
    out << '\n';
    for (const CheckResult& c : rec.checks) {
      out << "  " << to_string(c.verdict) << " k=" << c.k << " " << c.name << " lhs=" << format_double(c.lhs)
          << " rhs=" << format_double(c.rhs) << " residual=" << format_double(c.residual)
          << " tol=" << format_double(c.tolerance) << '\n';
    }
  }
  out << "\noverall: " << (chain.all_pass() ? "PASS" : "FAIL") << '\n';
}

CommandOutcome cmd_run(const fs::path& config_path, const fs::path& out_dir, const CommandOverrides& overrides) {
  return guarded([&]() -> CommandOutcome {
    ExperimentConfig config = load_config(config_path);
    apply(config, overrides);
    require(config.problems.size() == 1 && config.methods.size() == 1 && config.iterations.size() == 1,
            ErrorKind::configuration, "run takes a single problem, method and iteration count; use sweep for lists");
    Cell cell = run_cell(config, config.problems[0], config.methods[0], config.iterations[0]);
    if (!cell.trace) return {cell.exit_code, "error: " + cell.error};

    {
      std::ofstream csv = open_output(out_dir / config.csv);
      write_trace_csv(csv, cell.header, *cell.trace, *cell.audit);
    }
    {
      std::ofstream report = open_output(out_dir / config.report);
      write_report(report, cell.header, *cell.trace, *cell.audit);
    }
    if (config.svg) {
      std::ofstream svg = open_output(out_dir / *config.svg);
      write_svg(svg, {series_for(cell)}, cell_label(cell));
    }
    return {cell.exit_code, std::string(cell.exit_code == kExitPass ? "PASS " : "FAIL ") + cell_label(cell) + " " +
                                counts_line(cell.audit->chain)};
  });
}

CommandOutcome cmd_verify(const fs::path& trace_csv, const fs::path& out_dir, const CommandOverrides& overrides) {
  return guarded([&]() -> CommandOutcome {
    std::ifstream in(trace_csv);
    require(in.good(), ErrorKind::configuration, "cannot read trace '" + trace_csv.string() + "'");
    LoadedTrace loaded = read_trace_csv(in);
    if (overrides.eps_rel) loaded.header.tol.eps_rel = *overrides.eps_rel;
    if (overrides.eps_abs) loaded.header.tol.eps_abs = *overrides.eps_abs;

    const ProblemInstance p = make_problem(loaded.header.problem_id);
    require(loaded.trace.x0().dim() == p.dim(), ErrorKind::schema, "trace dimension does not match the problem");
    AuditOptions options;
    options.tol = loaded.header.tol;
    options.extra_test_points = loaded.header.test_points;
    const Audit audit = audit_trace(loaded.trace, p, options);

    std::size_t mismatches = 0;
    std::ofstream report = open_output(out_dir / "verify_report.txt");
    report << "verified: " << trace_csv.string() << '\n';
    for (const StoredRow& row : loaded.rows) {
      if (!audit.chain.records.empty() && row.k >= audit.chain.start_index &&
          row.k - audit.chain.start_index < audit.chain.records.size()) {
        const std::string now(to_string(audit.chain.at(row.k).verdict));
        if (now != row.verdict) {
          ++mismatches;
          report << "stored verdict differs at k=" << row.k << ": file says " << row.verdict << ", recomputed " << now
                 << '\n';
        }
      }
    }
    write_report(report, loaded.header, loaded.trace, audit);
    const int code = audit.chain.all_pass() ? kExitPass : kExitVerificationFailure;
    return {code, std::string(code == kExitPass ? "PASS " : "FAIL ") + "verify " + loaded.header.problem_id + " / " +
                      std::string(to_string(loaded.header.method)) + " " + counts_line(audit.chain) +
                      " stored_verdict_mismatches=" + std::to_string(mismatches)};
  });
}

CommandOutcome cmd_sweep(const fs::path& config_path, const fs::path& out_dir, const CommandOverrides& overrides) {
  return guarded([&]() -> CommandOutcome {
    ExperimentConfig config = load_config(config_path);
    apply(config, overrides);

    struct Spec {
      std::string problem;
      Method method;
      std::size_t K;
    };
    std::vector<Spec> specs;
    for (const auto& problem : config.problems)
      for (Method m : config.methods)
        for (std::size_t K : config.iterations) specs.push_back({problem, m, K});

    std::vector<Cell> cells(specs.size());
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
      for (std::size_t i = next++; i < specs.size(); i = next++) {
        cells[i] = run_cell(config, specs[i].problem, specs[i].method, specs[i].K);
        if (!cells[i].trace) continue;
        std::ostringstream name;
        name << "cell_" << i << ".csv";
        std::ofstream csv = open_output(out_dir / "cells" / name.str());
        write_trace_csv(csv, cells[i].header, *cells[i].trace, *cells[i].audit);
      }
    };
    fs::create_directories(out_dir / "cells");
    const unsigned n = std::min<unsigned>(config.workers, static_cast<unsigned>(specs.size()));
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < n; ++w) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    int worst = kExitPass;
    std::ofstream csv = open_output(out_dir / config.csv);
    std::ofstream report = open_output(out_dir / config.report);
    csv << kCsvMagic << "\n# sweep cells=" << cells.size() << '\n';
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (!cells[i].trace) csv << "# cell " << i << " error: " << cells[i].error << '\n';
    }
    csv << "cell,problem_id,method,iterations,suboptimality_k";
    for (const auto& c : csv_columns()) csv << ',' << c;
    csv << '\n';

    std::vector<PlotSeries> series;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      const Cell& cell = cells[i];
      worst = std::max(worst, cell.exit_code);
      report << "cell " << i << ": " << cell_label(cell) << " exit=" << cell.exit_code;
      if (!cell.trace) {
        report << " error: " << cell.error << '\n';
        continue;
      }
      report << ' ' << counts_line(cell.audit->chain) << '\n';
      for (const ChainRecord& rec : cell.audit->chain.records) {
        if (rec.verdict == Verdict::pass) continue;
        for (const CheckResult& c : rec.checks) {
          if (c.verdict == Verdict::pass) continue;
          report << "  " << to_string(c.verdict) << " k=" << c.k << ' ' << c.name << " residual="
                 << format_double(c.residual) << " tol=" << format_double(c.tolerance) << '\n';
        }
      }
      for (const ChainRecord& rec : cell.audit->chain.records) {
        csv << i << ',' << quote(cell.problem_id) << ',' << to_string(cell.method) << ',' << cell.iterations << ','
            << (rec.suboptimality ? format_double(*rec.suboptimality) : std::string()) << ','
            << format_record(*cell.trace, rec) << '\n';
      }
      series.push_back(series_for(cell));
    }
    report << "worst exit: " << worst << '\n';
    if (config.svg) {
      std::ofstream svg = open_output(out_dir / *config.svg);
      write_svg(svg, series, "sweep");
    }
    std::ostringstream summary;
    summary << (worst == kExitPass ? "PASS" : "FAIL") << " sweep cells=" << cells.size() << " worst_exit=" << worst;
    return {worst, summary.str()};
  });
}

namespace {

bool has_key(const std::string& id, const std::string& key) {
  return id.find(':' + key + '=') != std::string::npos;
}

struct Stats {
  std::vector<double> margins;
  double quantile(double q) {
    std::sort(margins.begin(), margins.end());
    return margins[static_cast<std::size_t>(q * static_cast<double>(margins.size() - 1))];
  }
};

}  // namespace

CommandOutcome cmd_conjecture(const fs::path& config_path, const fs::path& out_dir, const CommandOverrides& overrides) {
  return guarded([&]() -> CommandOutcome {
    ExperimentConfig config = load_config(config_path);
    apply(config, overrides);
    for (Method m : config.methods) {
      require(m == Method::prox_accelerated, ErrorKind::configuration, "conjecture runs method = prox_accelerated");
    }

    std::ofstream csv = open_output(out_dir / config.csv);
    std::ofstream report = open_output(out_dir / config.report);
    csv << kCsvMagic << "\n# conjecture probe, status CONJECTURE: the accelerated dual recursion with g_k = grad phi(y_k)"
        << "\ninstance,problem_id,psi,x0,iterations,k,f_xk,phi_xk,psi_xk,conj_cert_k,margin_k,tolerance_k,vacuous_flag,status\n";
    report << "status: CONJECTURE (probe, not a verified bound)\n";

    std::size_t instances = 0, rows = 0, violations = 0, reductions = 0, zero_psi = 0;
    Stats stats;
    std::size_t instance = 0;
    for (const std::string& base : config.problems) {
      const bool seedable = base.rfind("lasso", 0) == 0 && !has_key(base, "seed");
      require(config.instances == 1 || seedable, ErrorKind::configuration,
              "instances > 1 needs a lasso problem id without a seed");
      for (std::size_t K : config.iterations) {
        require(K >= 1, ErrorKind::configuration, "iterations must be at least 1");
        for (std::size_t i = 0; i < config.instances; ++i, ++instance) {
          const std::string id = seedable ? base + ":seed=" + std::to_string(config.seed + i) : base;
          ProblemInstance phi = make_problem(id);
          check_compatibility(phi, Method::accelerated);
          const Point x0 = resolve_x0(config.x0, phi.dim());
          const CompositeProblem cp(phi, PsiSpec::parse(config.psi, phi.dim()));
          const ProbeResult probe = probe_conjecture(cp, x0, K, config.tol);
          ++instances;

          if (cp.psi().kind == PsiSpec::Kind::zero) {
            ++zero_psi;
            const MethodTrace plain = run_accelerated(phi, x0, K);
            const DualCertificate cert = build_certificate(plain, phi);
            bool same = plain.x == probe.trace.x && plain.y == probe.trace.y;
            for (const ProbeRow& row : probe.rows) {
              const CertificateValue v = certificate_value(cert, row.k, phi, x0.coords());
              same = same && v.value == row.certificate;
            }
            if (same) ++reductions;
          }

          for (const ProbeRow& row : probe.rows) {
            ++rows;
            if (!row.vacuous) stats.margins.push_back(row.margin);
            const char* status = row.vacuous ? "VACUOUS" : row.violation ? "CONJECTURE-VIOLATION" : "CONJECTURE-HOLDS";
            csv << instance << ',' << quote(id) << ',' << quote(cp.psi().describe()) << ','
                << format_point(x0.coords(), ' ') << ',' << K << ',' << row.k << ',' << format_double(row.fx) << ','
                << format_double(row.phi_x) << ',' << format_double(row.psi_x) << ',' << cert_text(row.certificate)
                << ',' << (row.vacuous ? std::string() : format_double(row.margin)) << ','
                << format_double(row.tolerance) << ',' << (row.vacuous ? 1 : 0) << ',' << status << '\n';
            if (row.violation) {
              ++violations;
              report << "violation: problem=" << id << " psi=" << cp.psi().describe()
                     << " x0=" << format_point(x0.coords()) << " iterations=" << K << " k=" << row.k
                     << " margin=" << format_double(row.margin) << " tol=" << format_double(row.tolerance) << '\n';
            }
          }
        }
      }
    }

    std::ostringstream summary;
    summary << "CONJECTURE instances=" << instances << " iterations_checked=" << rows << " violations=" << violations;
    if (!stats.margins.empty()) {
      summary << " margin_min=" << format_double(stats.quantile(0.0))
              << " margin_median=" << format_double(stats.quantile(0.5))
              << " margin_max=" << format_double(stats.quantile(1.0));
    }
    if (zero_psi > 0) summary << " psi_zero_bitwise_reduction=" << reductions << '/' << zero_psi;
    report << summary.str() << '\n';
    return {kExitPass, summary.str()};
  });
}

}  // namespace ccfom
