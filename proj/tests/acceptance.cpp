// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ccfom/catalog.hpp"
#include "ccfom/experiment.hpp"
#include "ccfom/oracle.hpp"
#include "ccfom/proxprobe.hpp"

using namespace ccfom;
namespace fs = std::filesystem;

namespace {

constexpr double kEps = 1e-9;

using Clock = std::chrono::steady_clock;
double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = true;
  std::string detail;
  std::string failure;

  void fail(const std::string& why) {
    if (pass) failure = why;
    pass = false;
  }
};

// Every audited (problem, method, x0, K) cell, for the chain criterion.
struct MatrixCell {
  std::string label;
  std::size_t records = 0;
  std::size_t checks = 0;
  std::string problem;  // first failing or vacuous check, empty when clean
};
std::vector<MatrixCell> matrix;

std::string fmt(double v) { return format_double(v); }

void add_to_matrix(const std::string& label, const Audit& audit) {
  MatrixCell cell{label, audit.chain.records.size(), 0, {}};
  for (const ChainRecord& rec : audit.chain.records) {
    for (const CheckResult& c : rec.checks) {
      ++cell.checks;
      if (c.verdict != Verdict::pass && cell.problem.empty()) {
        cell.problem = std::string(to_string(c.verdict)) + " k=" + std::to_string(c.k) + " " + c.name +
                       " residual=" + fmt(c.residual) + " tol=" + fmt(c.tolerance);
      }
    }
  }
  matrix.push_back(std::move(cell));
}

std::string label_of(const std::string& id, Method m, const Vector& x0, std::size_t K) {
  return id + " / " + std::string(to_string(m)) + " / x0=" + format_point(x0) + " / K=" + std::to_string(K);
}

// x0 grid: s * v with v in {ones, alternating signs}.
std::vector<Point> x0_grid(Eigen::Index dim, std::initializer_list<double> scales) {
  std::vector<Point> out;
  for (double s : scales) {
    out.push_back(Point::constant(dim, s));
    if (dim > 1 && s != 0.0) {
      Vector alt(dim);
      for (Eigen::Index i = 0; i < dim; ++i) alt[i] = (i % 2 == 0 ? s : -s);
      out.emplace_back(alt);
    }
  }
  return out;
}

double scaled(std::initializer_list<double> terms) {
  double sum = 0.0;
  for (double t : terms) sum += std::abs(t);
  return std::max(kEps, kEps * (1.0 + sum));
}

Audit audit_default(const MethodTrace& trace, const ProblemInstance& p) { return audit_trace(trace, p, AuditOptions{}); }

// ---------------------------------------------------------------- criterion 1
Outcome criterion_1() {
  Outcome out;
  const std::vector<std::string> problems = {
      "norm:G=1:dim=1", "norm:G=2:dim=2", "norm:G=0.5:dim=10", "linf:dim=3", "l1:dim=4",
      "maxaff:a=1,0/-1,0/0,1/0,-1:b=0,0,0,0:xstar=0,0", "maxaff:a=1,1/-1,0/0,-1:b=-1,0,0:xstar=0.33333333333333331,0.33333333333333331",
      "maxaff:dim=2:pieces=6:seed=3", "maxaff:dim=5:pieces=12:seed=7",
      "maxaff:dim=10:pieces=24:seed=11"};
  std::size_t runs = 0;
  double slowest = 0.0, tightest = -std::numeric_limits<double>::infinity();
  for (const auto& id : problems) {
    const ProblemInstance p = make_problem(id);
    const double G = *p.lipschitz_f();
    const double fbar = *p.optimal_value();
    for (const Point& x0 : x0_grid(p.dim(), {-2.0, -0.5, 0.0, 1.0, 3.0})) {
      const auto known = p.distance_to_solution(x0.coords());
      if (!known) {
        out.fail(id + ": no certified solution set");
        break;
      }
      const double dist = *known;
      for (std::size_t K : {0u, 10u, 100u, 1000u}) {
        const auto t0 = Clock::now();
        const MethodTrace trace = run_subgradient(p, x0, StepSchedule::horizon_sqrt(K), K);
        const Audit audit = audit_default(trace, p);
        slowest = std::max(slowest, seconds_since(t0));
        ++runs;
        add_to_matrix(label_of(id, Method::subgradient, x0.coords(), K), audit);

        const double best = *std::min_element(trace.fx.begin(), trace.fx.begin() + static_cast<long>(K) + 1);
        const double bound = (dist * dist + G * G) / (2.0 * std::sqrt(static_cast<double>(K) + 1.0));
        const double excess = (best - fbar) - bound;
        const double tol = scaled({best, fbar, bound});
        tightest = std::max(tightest, excess / tol);
        if (excess > tol) {
          out.fail(label_of(id, Method::subgradient, x0.coords(), K) + ": min f - fbar exceeds bound by " + fmt(excess));
        }
      }
    }
  }
  if (slowest >= 1.0) out.fail("slowest run took " + fmt(slowest) + " s");

  // the equality instance
  const ProblemInstance abs = make_problem("norm:G=1:dim=1");
  const MethodTrace trace = run_subgradient(abs, Point{1.0}, StepSchedule::horizon_sqrt(0), 0);
  const double gap = std::abs((trace.fx[0] - 0.0) - 1.0);
  if (gap > 1e-12) out.fail("K=0 equality instance off by " + fmt(gap));

  char buf[200];
  std::snprintf(buf, sizeof buf, "runs=%zu, max (excess/tol)=%.3g, slowest run %.3f s, equality gap %.1e", runs,
                tightest, slowest, gap);
  out.detail = buf;
  return out;
}

// ---------------------------------------------------------------- criteria 2, 3
const std::vector<std::string> smooth_problems = {
    "quad:diag=3,3",       "quad:diag=1,10", "quad:diag=1,100", "quad:diag=1,10:b=1,0", "quad:matrix=2,1/1,2:b=1,-1",
    "lse:dim=2:tilt=uniform", "lse:dim=3:tilt=0.2,0.3,0.5", "lse:dim=5:tilt=uniform"};

Outcome smooth_criterion(Method method) {
  Outcome out;
  constexpr std::size_t K = 1000;
  std::size_t runs = 0;
  double slowest = 0.0, tightest = -std::numeric_limits<double>::infinity();
  for (const auto& id : smooth_problems) {
    const ProblemInstance p = make_problem(id);
    const double L = *p.lipschitz_grad();
    const double fbar = *p.optimal_value();
    for (const Point& x0 : x0_grid(p.dim(), {-2.0, 1.0, 3.0})) {
      const auto known = p.distance_to_solution(x0.coords());
      if (!known) {
        out.fail(id + ": no certified solution set");
        break;
      }
      const double dist = *known;
      const auto t0 = Clock::now();
      const MethodTrace trace = method == Method::gradient ? run_gradient(p, x0, K) : run_accelerated(p, x0, K);
      const Audit audit = audit_default(trace, p);
      slowest = std::max(slowest, seconds_since(t0));
      ++runs;
      const std::string label = label_of(id, method, x0.coords(), K);
      add_to_matrix(label, audit);

      for (std::size_t k = 1; k <= K; ++k) {
        const double kd = static_cast<double>(k);
        const double bound = method == Method::gradient ? L * dist * dist / (2.0 * kd)
                                                        : 2.0 * L * dist * dist / ((kd + 1.0) * (kd + 1.0));
        const double excess = (trace.fx[k] - fbar) - bound;
        const double tol = scaled({trace.fx[k], fbar, bound});
        tightest = std::max(tightest, excess / tol);
        if (excess > tol) out.fail(label + ": bound violated at k=" + std::to_string(k) + " by " + fmt(excess));
        if (method == Method::gradient && trace.fx[k] > trace.fx[k - 1] + kEps) {
          out.fail(label + ": descent violated at k=" + std::to_string(k));
        }
      }
    }
  }
  if (slowest >= 1.0) out.fail("slowest run took " + fmt(slowest) + " s");
  char buf[200];
  std::snprintf(buf, sizeof buf, "runs=%zu (K=%zu), max (excess/tol)=%.3g, slowest run %.3f s", runs, K, tightest,
                slowest);
  out.detail = buf;
  return out;
}

Outcome criterion_3() {
  Outcome out = smooth_criterion(Method::accelerated);
  constexpr std::size_t kMax = 100000;
  const ThetaSequence theta(kMax + 1);
  double worst_residual = 0.0;
  for (std::size_t k = 1; k <= kMax; ++k) {
    if (theta[k - 1] > 2.0 / (static_cast<double>(k) + 1.0)) {
      out.fail("theta_{k-1} > 2/(k+1) at k=" + std::to_string(k));
    }
    worst_residual = std::max(worst_residual, theta.recurrence_residual(k - 1));
  }
  if (worst_residual > 1e-12) out.fail("theta recurrence residual " + fmt(worst_residual));
  out.detail += ", theta checked to k=1e5, max recurrence residual " + fmt(worst_residual);
  return out;
}

// ---------------------------------------------------------------- criterion 4
Outcome criterion_4() {
  Outcome out;
  std::size_t records = 0, checks = 0, bad = 0;
  for (const MatrixCell& cell : matrix) {
    records += cell.records;
    checks += cell.checks;
    if (!cell.problem.empty()) {
      ++bad;
      out.fail(cell.label + ": " + cell.problem);
    }
  }
  if (matrix.empty()) out.fail("empty acceptance matrix");
  out.detail = "cells=" + std::to_string(matrix.size()) + ", records=" + std::to_string(records) +
               ", checks=" + std::to_string(checks) + ", cells with a failing check=" + std::to_string(bad);
  return out;
}

// ---------------------------------------------------------------- criterion 5
Outcome criterion_5() {
  Outcome out;
  const ProblemInstance abs = make_problem("norm:G=1:dim=1");
  const MethodTrace sub = run_subgradient(abs, Point{1.0}, StepSchedule::constant(1.0), 0);
  const DualCertificate sub_cert = build_certificate(sub, abs);
  const double lhs0 = lhs(sub, abs, 0);
  const CertificateValue cert0 = certificate_value(sub_cert, 0, abs, sub.x0().coords());

  const ProblemInstance sq = make_problem("quad:diag=1");
  const MethodTrace grad = run_gradient(sq, Point{2.0}, 1);
  const DualCertificate grad_cert = build_certificate(grad, sq);
  const double lhs1 = lhs(grad, sq, 1);
  const CertificateValue cert1 = certificate_value(grad_cert, 1, sq, grad.x0().coords());

  if (cert0.vacuous || cert1.vacuous) {
    out.fail("vacuous certificate in an equality instance");
    return out;
  }
  const double errors[] = {std::abs(lhs0 - 0.5), std::abs(cert0.value.value() - 0.5), std::abs(lhs1),
                           std::abs(cert1.value.value())};
  const double worst = *std::max_element(std::begin(errors), std::end(errors));
  if (worst > 1e-12) out.fail("max error " + fmt(worst));
  out.detail = "subgradient |x|: LHS0=" + fmt(lhs0) + " cert0=" + fmt(cert0.value.value()) +
               "; gradient x^2/2: LHS1=" + fmt(lhs1) + " cert1=" + fmt(cert1.value.value()) +
               "; max error " + fmt(worst);
  return out;
}

// ---------------------------------------------------------------- criterion 6
Outcome criterion_6() {
  Outcome out;
  constexpr double kHalfWidth = 6.0;
  constexpr Eigen::Index kPoints = 8001;
  const auto t0 = Clock::now();
  std::size_t instances = 0, conjugates = 0, optima = 0;
  double worst_ratio = 0.0;
  for (const std::string& id : catalog_examples()) {
    const ProblemInstance p = make_problem(id);
    if (p.dim() > 2) continue;
    ++instances;
    // z = a subgradient at an interior point puts a maximizer of <z,x> - f(x) inside the box
    std::vector<Vector> anchors;
    if (p.dim() == 1) {
      for (double a : {0.3, -0.7, 1.9}) anchors.push_back(Vector::Constant(1, a));
    } else {
      anchors.push_back((Vector(2) << 0.3, -0.2).finished());
      anchors.push_back((Vector(2) << -0.7, 1.1).finished());
      anchors.push_back((Vector(2) << 1.9, 0.4).finished());
    }
    std::vector<Vector> zs;
    for (const Vector& a : anchors) zs.push_back(p.subgradient(a));
    if (p.optimal_value() && p.conjugate(Vector::Zero(p.dim())).is_finite()) zs.push_back(Vector::Zero(p.dim()));

    const GridScan scan = scan_grid(p, zs, GridSpec::cube(p.dim(), kHalfWidth, kPoints));
    for (std::size_t q = 0; q < zs.size(); ++q) {
      ++conjugates;
      const ExtendedReal closed = p.conjugate(zs[q]);
      if (!closed.is_finite()) {
        out.fail(id + ": closed-form conjugate infinite at z=" + format_point(zs[q]));
        continue;
      }
      const double c = closed.value(), g = scan.conjugates[q].value, bound = scan.conjugates[q].error_bound;
      const double roundoff = kEps * (1.0 + std::abs(c));
      if (g > c + roundoff) out.fail(id + ": grid sup above closed form at z=" + format_point(zs[q]));
      if (c - g > bound + roundoff) {
        out.fail(id + ": conjugate gap " + fmt(c - g) + " > bound " + fmt(bound) + " at z=" + format_point(zs[q]));
      }
      worst_ratio = std::max(worst_ratio, (c - g) / bound);
    }
    if (const auto fbar = p.optimal_value()) {
      ++optima;
      const double g = scan.minimum.value, bound = scan.minimum.resolution;
      const double roundoff = kEps * (1.0 + std::abs(*fbar));
      if (g < *fbar - roundoff) out.fail(id + ": grid minimum below fbar");
      if (g - *fbar > bound + roundoff) out.fail(id + ": optimum gap " + fmt(g - *fbar) + " > bound " + fmt(bound));
      worst_ratio = std::max(worst_ratio, (g - *fbar) / bound);
    }
  }
  const double elapsed = seconds_since(t0);
  if (elapsed >= 30.0) out.fail("took " + fmt(elapsed) + " s");
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "instances=%zu (dim<=2), conjugates=%zu, optima=%zu, worst gap/bound=%.3g, %ld points per axis, %.1f s",
                instances, conjugates, optima, worst_ratio, static_cast<long>(kPoints), elapsed);
  out.detail = buf;
  return out;
}

// ---------------------------------------------------------------- criterion 7
std::optional<std::size_t> first_hit(const MethodTrace& trace, double fbar, double target) {
  for (std::size_t k = 0; k < trace.fx.size(); ++k) {
    if (trace.fx[k] - fbar <= target) return k;
  }
  return std::nullopt;
}

Outcome criterion_7() {
  Outcome out;
  constexpr double kTarget = 1e-6;
  constexpr std::size_t kBudget = 20000;
  const auto separation = [&](const ProblemInstance& p, const Point& x0, const std::string& label)
      -> std::pair<std::size_t, std::size_t> {
    const auto kg = first_hit(run_gradient(p, x0, kBudget), *p.optimal_value(), kTarget);
    const auto ka = first_hit(run_accelerated(p, x0, kBudget), *p.optimal_value(), kTarget);
    if (!kg || !ka) {
      out.fail(label + ": target not reached within " + std::to_string(kBudget) + " iterations");
      return {0, 0};
    }
    if (!(*ka < *kg)) out.fail(label + ": accelerated " + std::to_string(*ka) + " >= gradient " + std::to_string(*kg));
    return {*kg, *ka};
  };

  const auto [kg, ka] = separation(make_problem("quad:diag=1,100"), Point{1.0, 1.0}, "diag(1,100)");

  // seeded family: diagonal quadratics, condition number in [100, 1000], dense x0
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  constexpr int kCases = 25;
  for (int c = 0; c < kCases; ++c) {
    const int dim = 2 + c % 4;
    const double kappa = 100.0 * std::pow(10.0, unit(rng));
    std::string diag = "1";
    for (int i = 1; i < dim; ++i) {
      const double lam = i + 1 == dim ? kappa : 1.0 + (kappa - 1.0) * unit(rng);
      diag += "," + fmt(lam);
    }
    Vector x0(dim);
    for (int i = 0; i < dim; ++i) x0[i] = (unit(rng) < 0.5 ? -1.0 : 1.0) * (0.5 + unit(rng));
    separation(make_problem("quad:diag=" + diag), Point(x0), "case " + std::to_string(c));
  }
  out.detail = "diag(1,100) from (1,1): gradient " + std::to_string(kg) + " iterations, accelerated " +
               std::to_string(ka) + "; plus " + std::to_string(kCases) + " seeded ill-conditioned quadratics";
  return out;
}

// ---------------------------------------------------------------- criterion 8
Outcome criterion_8() {
  Outcome out;
  constexpr int kInstances = 100;
  constexpr std::size_t K = 200;
  const Tolerances tol;
  const auto t0 = Clock::now();
  std::vector<double> margins;
  std::size_t rows = 0, violations = 0, reductions = 0;
  for (int i = 0; i < kInstances; ++i) {
    const int dim = 1 + i % 5;
    const ProblemInstance phi = make_problem("lasso:dim=" + std::to_string(dim) + ":seed=" + std::to_string(1000 + i));
    const Point x0 = Point::constant(dim, 1.0);

    const ProbeResult probe = probe_conjecture(CompositeProblem(phi, PsiSpec::l1(0.1)), x0, K, tol);
    rows += probe.rows.size();
    violations += probe.violations;
    for (const ProbeRow& r : probe.rows) {
      if (!r.vacuous) margins.push_back(r.margin);
    }

    // psi = 0 must reproduce the plain accelerated certificate bit for bit
    const ProbeResult zero = probe_conjecture(CompositeProblem(phi, PsiSpec::zero()), x0, K, tol);
    const MethodTrace plain = run_accelerated(phi, x0, K);
    const DualCertificate cert = build_certificate(plain, phi);
    bool same = plain.x == zero.trace.x && plain.y == zero.trace.y && plain.fx == zero.trace.fx;
    for (const ProbeRow& r : zero.rows) {
      const CertificateValue v = certificate_value(cert, r.k, phi, x0.coords());
      same = same && v.value == r.certificate && r.fx == plain.fx[r.k];
    }
    if (same) {
      ++reductions;
    } else {
      out.fail("psi=0 reduction differs on instance " + std::to_string(i));
    }
  }
  const double elapsed = seconds_since(t0);
  if (elapsed >= 60.0) out.fail("took " + fmt(elapsed) + " s");
  if (margins.empty()) out.fail("no finite margins");
  std::sort(margins.begin(), margins.end());
  char buf[300];
  std::snprintf(buf, sizeof buf,
                "instances=%d, rows=%zu, conjecture violations=%zu (reported, not graded), margin min/median/max="
                "%.3g/%.3g/%.3g, psi=0 bitwise %zu/%d, %.1f s",
                kInstances, rows, violations, margins.empty() ? 0.0 : margins.front(),
                margins.empty() ? 0.0 : margins[margins.size() / 2], margins.empty() ? 0.0 : margins.back(),
                reductions, kInstances, elapsed);
  out.detail = buf;
  return out;
}

// ---------------------------------------------------------------- criterion 9
void write_text(const fs::path& path, const std::string& text) {
  std::ofstream f(path);
  f << text;
}

std::vector<std::string> read_lines(const fs::path& path) {
  std::ifstream f(path);
  std::vector<std::string> lines;
  for (std::string line; std::getline(f, line);) lines.push_back(line);
  return lines;
}

// Multiplies the stored f for iterate k by 1.1, in a record row or an iterate comment line.
bool corrupt(std::vector<std::string>& lines, std::size_t k) {
  const std::string key = std::to_string(k);
  for (auto& line : lines) {
    if (line.rfind("# iterate k=" + key + " |", 0) == 0) {
      const auto at = line.find("| fx=") + 5;
      const auto end = line.find(" |", at);
      const double f = std::stod(line.substr(at, end - at));
      line = line.substr(0, at) + fmt(f * 1.1) + (end == std::string::npos ? "" : line.substr(end));
      return true;
    }
    if (line.rfind(key + ",", 0) == 0) {
      const auto a = line.find(',') + 1;
      const auto b = line.find(',', a);
      line = line.substr(0, a) + fmt(std::stod(line.substr(a, b - a)) * 1.1) + line.substr(b);
      return true;
    }
  }
  return false;
}

Outcome criterion_9(const fs::path& work) {
  Outcome out;
  struct Case {
    const char* name;
    const char* config;
  };
  const Case cases[] = {
      {"gradient", "problem = quad:diag=1,10\nmethod = gradient\nx0 = 1,1\niterations = 15\n"},
      {"accelerated", "problem = quad:diag=1,10:b=1,0\nmethod = accelerated\nx0 = 2,-1\niterations = 15\n"},
      {"subgradient", "problem = maxaff:dim=3:pieces=8:seed=5\nmethod = subgradient\nx0 = 1,2,-1\niterations = 12\n"},
      {"lse", "problem = lse:dim=3:tilt=0.2,0.3,0.5\nmethod = gradient\nx0 = 1,0,2\niterations = 10\n"}};
  std::size_t corruptions = 0;
  for (const Case& c : cases) {
    const fs::path dir = work / c.name;
    fs::create_directories(dir);
    write_text(dir / "run.cfg", c.config);
    const CommandOutcome run = cmd_run(dir / "run.cfg", dir);
    if (run.exit_code != kExitPass) {
      out.fail(std::string(c.name) + ": baseline run did not pass: " + run.summary);
      continue;
    }
    if (cmd_verify(dir / "trace.csv", dir / "clean").exit_code != kExitPass) {
      out.fail(std::string(c.name) + ": clean verify did not pass");
    }
    const auto lines = read_lines(dir / "trace.csv");
    std::size_t n_iterates = 0;
    {
      std::ifstream in(dir / "trace.csv");
      n_iterates = read_trace_csv(in).trace.x.size();
    }
    for (std::size_t k = 0; k < n_iterates; ++k) {
      auto bad = lines;
      if (!corrupt(bad, k)) {
        out.fail(std::string(c.name) + ": no stored f for k=" + std::to_string(k));
        continue;
      }
      std::string text;
      for (const auto& l : bad) text += l + "\n";
      const fs::path file = dir / ("corrupt_" + std::to_string(k) + ".csv");
      write_text(file, text);
      ++corruptions;

      const CommandOutcome verdict = cmd_verify(file, dir / "verify");
      if (verdict.exit_code != kExitVerificationFailure) {
        out.fail(std::string(c.name) + ": corruption at k=" + std::to_string(k) + " not detected (exit " +
                 std::to_string(verdict.exit_code) + ")");
        continue;
      }
      std::ifstream in(file);
      const LoadedTrace loaded = read_trace_csv(in);
      const Audit audit = audit_trace(loaded.trace, make_problem(loaded.header.problem_id));
      const auto& recs = audit.chain.records;
      const std::size_t at = std::clamp(k, recs.front().k, recs.back().k);
      if (audit.chain.at(at).verdict != Verdict::fail) {
        out.fail(std::string(c.name) + ": record k=" + std::to_string(at) + " not FAIL after corrupting k=" +
                 std::to_string(k));
      }
    }
  }
  out.detail = "corrupted traces=" + std::to_string(corruptions) + " across 4 runs (every stored f(x_k)); all FAIL at k";
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  const fs::path work = argc > 1 ? fs::path(argv[1]) : fs::temp_directory_path() / "ccfom_acceptance";
  fs::create_directories(work);

  struct Entry {
    int id;
    const char* title;
    std::function<Outcome()> run;
  };
  const std::vector<Entry> entries = {
      {1, "subgradient bound (G-Lipschitz, horizon schedule)", criterion_1},
      {2, "gradient bound and monotone descent", [] { return smooth_criterion(Method::gradient); }},
      {3, "accelerated bound and theta sequence", criterion_3},
      {4, "dual certificate chain, induction and identities", criterion_4},
      {5, "base-case equalities", criterion_5},
      {6, "closed forms against grid oracles", criterion_6},
      {7, "acceleration separation", criterion_7},
      {8, "proximal certificate probe", criterion_8},
      {9, "corruption sensitivity of verify", [&] { return criterion_9(work); }},
  };

  int failures = 0;
  for (const Entry& e : entries) {
    Outcome o;
    try {
      o = e.run();
    } catch (const std::exception& ex) {
      o.fail(std::string("exception: ") + ex.what());
    }
    std::printf("criterion %d %s: %s  [%s]\n", e.id, e.title, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    if (!o.pass) {
      std::printf("    first failure: %s\n", o.failure.c_str());
      ++failures;
    }
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(entries.size()) - failures, entries.size());
  return failures == 0 ? 0 : 1;
}
