#include "ccfom/certificates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ccfom {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "PASS";
    case Verdict::fail: return "FAIL";
    case Verdict::vacuous: return "VACUOUS";
    case Verdict::skipped: return "SKIPPED";
  }
  return "?";
}

namespace {

bool is_accelerated(Method m) { return m == Method::accelerated || m == Method::prox_accelerated; }

void check_trace_shape(const MethodTrace& trace) {
  const std::size_t K = trace.horizon;
  const auto mismatch = [&](const std::string& what) {
    fail(ErrorKind::invalid_argument, "trace/method mismatch (" + std::string(to_string(trace.method)) + "): " + what);
  };
  if (trace.x.empty() || trace.fx.size() != trace.x.size()) mismatch("x and f(x) lengths differ");
  if (trace.method == Method::subgradient) {
    if (trace.x.size() != K + 2 || trace.t.size() != K + 1) mismatch("expected K+1 steps");
    if (!trace.y.empty() || !trace.theta.empty()) mismatch("subgradient traces carry no y or theta");
  } else {
    if (K < 1) mismatch("K must be at least 1");
    if (trace.x.size() != K + 1 || trace.t.size() != K) mismatch("expected K steps");
    if (is_accelerated(trace.method)) {
      if (trace.y.size() != K + 1 || trace.theta.size() != K + 1) mismatch("accelerated traces need y and theta");
    } else if (!trace.y.empty() || !trace.theta.empty()) {
      mismatch("gradient traces carry no y or theta");
    }
  }
  if (trace.g.size() > trace.t.size()) mismatch("more gradients than steps");
}

CheckResult inequality(std::string name, std::size_t k, double lhs, double rhs, double tol) {
  CheckResult c{std::move(name), k, lhs, rhs, lhs - rhs, tol, Verdict::pass};
  c.verdict = c.residual <= tol ? Verdict::pass : Verdict::fail;
  return c;
}

CheckResult identity(std::string name, std::size_t k, double error, double tol) {
  CheckResult c{std::move(name), k, error, 0.0, error, tol, Verdict::pass};
  c.verdict = error <= tol ? Verdict::pass : Verdict::fail;
  return c;
}

// |a/b − 1| against ε_rel·2.
CheckResult relative(std::string name, std::size_t k, double actual, double expected, const Tolerances& tol) {
  const double err = std::abs(actual / expected - 1.0);
  CheckResult c{std::move(name), k, actual, expected, std::isfinite(err) ? err : std::numeric_limits<double>::infinity(),
                tol.eps_rel * 2.0, Verdict::pass};
  c.verdict = c.residual <= c.tolerance ? Verdict::pass : Verdict::fail;
  return c;
}

double lipschitz_g(const ProblemInstance& p) {
  require(p.lipschitz_f().has_value(), ErrorKind::configuration,
          "subgradient bounds need a Lipschitz constant G for '" + p.id() + "'");
  return *p.lipschitz_f();
}

double lipschitz_l(const ProblemInstance& p) {
  require(p.lipschitz_grad().has_value(), ErrorKind::configuration,
          "gradient certificates need L for '" + p.id() + "'");
  return *p.lipschitz_grad();
}

}  // namespace

DualCertificate build_certificate(const MethodTrace& trace, const ProblemInstance& p) {
  check_trace_shape(trace);
  p.check_dim(trace.x0().coords(), "x0");
  const std::size_t K = trace.horizon;

  DualCertificate cert;
  cert.method = trace.method;
  const auto subgradient_at = [&](std::size_t trace_index, const Vector& point) -> Point {
    if (trace_index < trace.g.size()) return trace.g[trace_index];
    ++cert.requeried;
    return Point(p.subgradient(point));
  };

  std::size_t last = K;
  if (trace.method == Method::subgradient) {
    cert.start_index = 0;
    cert.mu.push_back(1.0 / trace.t[0]);
    cert.z.push_back(subgradient_at(0, trace.x[0].coords()));
  } else {
    cert.start_index = 1;
    cert.mu.push_back(lipschitz_l(p));
    cert.z.push_back(subgradient_at(0, trace.x[0].coords()));
  }

  double step_sum = trace.method == Method::subgradient ? trace.t[0] : 0.0;
  for (std::size_t k = cert.start_index; k <= last; ++k) {
    Point yk = trace.method == Method::subgradient ? trace.x[k + 1]
               : is_accelerated(trace.method)      ? trace.y[k]
                                                   : trace.x[k];
    cert.y.push_back(yk);
    if (k == last) break;

    double theta;
    Point gk = Point::zeros(p.dim());
    if (trace.method == Method::subgradient) {
      step_sum += trace.t[k + 1];
      theta = trace.t[k + 1] / step_sum;
      gk = subgradient_at(k + 1, yk.coords());
    } else if (trace.method == Method::gradient) {
      theta = 1.0 / static_cast<double>(k + 1);
      gk = subgradient_at(k, yk.coords());
    } else {
      theta = trace.theta[k];
      gk = subgradient_at(k, yk.coords());
    }
    cert.theta.push_back(theta);
    cert.g.push_back(gk);
    const Vector& zk = cert.z.back().coords();
    cert.z.emplace_back(Vector((1.0 - theta) * zk + theta * gk.coords()));
    cert.mu.push_back((1.0 - theta) * cert.mu.back());
  }
  return cert;
}

CertificateValue certificate_value(const DualCertificate& cert, std::size_t k, const ProblemInstance& p,
                                   const Vector& x0) {
  require(cert.contains(k), ErrorKind::invalid_argument, "certificate index out of range");
  p.check_dim(x0, "x0");
  const Vector& z = cert.z_at(k).coords();
  const double mu = cert.mu_at(k);
  require(mu > 0, ErrorKind::invalid_argument, "mu_k must be positive");
  const ExtendedReal conj = p.conjugate(z);
  const double quadratic_min = z.dot(x0) - z.squaredNorm() / (2.0 * mu);
  return CertificateValue{-conj + quadratic_min, conj.is_plus_infinity(), conj};
}

double lhs(const MethodTrace& trace, const ProblemInstance& p, std::size_t k) {
  require(k < trace.fx.size(), ErrorKind::invalid_argument, "lhs: k beyond the trace");
  switch (trace.method) {
    case Method::subgradient: {
      require(k < trace.t.size(), ErrorKind::invalid_argument, "lhs: k beyond the step schedule");
      const double G = lipschitz_g(p);
      double weighted = 0.0, steps = 0.0, squares = 0.0;
      for (std::size_t i = 0; i <= k; ++i) {
        weighted += trace.t[i] * trace.fx[i];
        steps += trace.t[i];
        squares += trace.t[i] * trace.t[i];
      }
      return (weighted - 0.5 * G * G * squares) / steps;
    }
    case Method::gradient: {
      require(k >= 1, ErrorKind::invalid_argument, "gradient lhs starts at k=1");
      double sum = 0.0;
      for (std::size_t i = 1; i <= k; ++i) sum += trace.fx[i];
      return sum / static_cast<double>(k);
    }
    case Method::accelerated:
    case Method::prox_accelerated:
      require(k >= 1, ErrorKind::invalid_argument, "accelerated lhs starts at k=1");
      return trace.fx[k];
  }
  fail(ErrorKind::invalid_argument, "lhs: unknown method");
}

std::optional<double> theorem_bound(const ProblemInstance& p, const Vector& x0, Method method, std::size_t k,
                                    std::span<const double> steps) {
  const auto dist = p.distance_to_solution(x0);
  if (!dist) return std::nullopt;
  const double d2 = *dist * *dist;
  switch (method) {
    case Method::subgradient: {
      require(k < steps.size(), ErrorKind::invalid_argument, "theorem_bound: not enough steps");
      const double G = lipschitz_g(p);
      double sum = 0.0, squares = 0.0;
      for (std::size_t i = 0; i <= k; ++i) {
        sum += steps[i];
        squares += steps[i] * steps[i];
      }
      return (d2 + G * G * squares) / (2.0 * sum);
    }
    case Method::gradient:
      require(k >= 1, ErrorKind::invalid_argument, "theorem_bound: gradient bound starts at k=1");
      return lipschitz_l(p) * d2 / (2.0 * static_cast<double>(k));
    case Method::accelerated:
    case Method::prox_accelerated: {
      const double kp1 = static_cast<double>(k) + 1.0;
      return 2.0 * lipschitz_l(p) * d2 / (kp1 * kp1);
    }
  }
  return std::nullopt;
}

void ChainRecord::add(CheckResult check) { checks.push_back(std::move(check)); }

void ChainRecord::finalize() {
  verdict = vacuous ? Verdict::vacuous : Verdict::pass;
  for (const auto& c : checks) {
    if (c.verdict == Verdict::fail) verdict = Verdict::fail;
  }
}

bool BoundChain::all_pass() const { return failures() == 0; }

std::size_t BoundChain::failures() const {
  return static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(), [](const ChainRecord& r) { return r.verdict == Verdict::fail; }));
}

std::size_t BoundChain::vacuous_records() const {
  return static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(), [](const ChainRecord& r) { return r.vacuous; }));
}

std::vector<Point> default_test_points(const ProblemInstance& p, const Point& x0) {
  std::vector<Point> points;
  if (auto xbar = p.nearest_solution(x0.coords())) points.emplace_back(*xbar);
  points.push_back(x0);
  points.push_back(Point::zeros(p.dim()));
  return points;
}

BoundChain verify_chain(const MethodTrace& trace, const DualCertificate& cert, const ProblemInstance& p,
                        std::span<const Point> test_points, const Tolerances& tol) {
  BoundChain chain;
  chain.method = trace.method;
  chain.start_index = cert.start_index;
  chain.test_points.assign(test_points.begin(), test_points.end());
  const Vector& x0 = trace.x0().coords();

  // f(x) at the test points is shared by every k
  std::vector<double> f_test;
  for (const Point& x : test_points) f_test.push_back(p.value(x.coords()));

  for (std::size_t k = cert.start_index; k <= cert.last_index(); ++k) {
    ChainRecord rec;
    rec.k = k;
    rec.fx = trace.fx.at(k);
    rec.lhs = lhs(trace, p, k);
    rec.mu = cert.mu_at(k);
    const CertificateValue cv = certificate_value(cert, k, p, x0);
    rec.certificate = cv.value;
    rec.vacuous = cv.vacuous;

    const Vector& z = cert.z_at(k).coords();
    const double zx0 = z.dot(x0);
    const double zz = z.squaredNorm() / (2.0 * rec.mu);
    rec.residual_chain_max = -std::numeric_limits<double>::infinity();
    const auto track = [&rec](const CheckResult& c) {
      if (c.verdict != Verdict::vacuous) rec.residual_chain_max = std::max(rec.residual_chain_max, c.residual);
    };

    if (cv.vacuous) {
      CheckResult a{"(a) lhs<=certificate", k, rec.lhs, -std::numeric_limits<double>::infinity(),
                    std::numeric_limits<double>::infinity(), 0.0, Verdict::vacuous};
      rec.add(a);
      if (trace.method == Method::subgradient) {
        // z_k is a convex combination of subgradients of a G-Lipschitz f: it cannot leave dom(f*)
        rec.add(identity("hard: z_k outside dom(f*)", k, std::numeric_limits<double>::infinity(), 0.0));
      }
    } else {
      const double conj = cv.conjugate.value();
      const double cert_k = cv.value.value();
      CheckResult a = inequality("(a) lhs<=certificate", k, rec.lhs, cert_k, tol.scaled({rec.lhs, conj, zx0, zz}));
      track(a);
      rec.add(a);
    }

    for (std::size_t j = 0; j < test_points.size(); ++j) {
      const Vector& x = test_points[j].coords();
      const std::string at = "@test" + std::to_string(j);
      const double zx = z.dot(x);
      const double prox_term = 0.5 * rec.mu * (x - x0).squaredNorm();
      if (cv.vacuous) {
        rec.add(CheckResult{"(b) certificate<=relaxation" + at, k, 0, 0, 0, 0, Verdict::vacuous});
        rec.add(CheckResult{"(c) fenchel" + at, k, 0, 0, 0, 0, Verdict::vacuous});
      } else {
        const double conj = cv.conjugate.value();
        CheckResult b = inequality("(b) certificate<=relaxation" + at, k, cv.value.value(), -conj + zx + prox_term,
                                   tol.scaled({conj, zx0, zz, zx, prox_term}));
        CheckResult c = inequality("(c) fenchel" + at, k, -conj + zx, f_test[j], tol.scaled({conj, zx, f_test[j]}));
        track(b);
        track(c);
        rec.add(b);
        rec.add(c);
      }
      CheckResult d = inequality("(d) end-to-end" + at, k, rec.lhs, f_test[j] + prox_term,
                                 tol.scaled({rec.lhs, f_test[j], prox_term}));
      track(d);
      rec.add(d);
    }
    rec.finalize();
    chain.records.push_back(std::move(rec));
  }
  return chain;
}

InductionRecord verify_induction_step(const MethodTrace& trace, const DualCertificate& cert,
                                      const ProblemInstance& p, std::size_t k, const Tolerances& tol) {
  require(cert.contains(k) && cert.contains(k + 1), ErrorKind::invalid_argument,
          "induction step k -> k+1 outside the certificate range");
  const Vector& x0 = trace.x0().coords();
  const double theta = cert.theta_at(k);
  const double mu = cert.mu_at(k);
  const Vector& y = cert.y_at(k).coords();
  const Vector& g = cert.g_at(k).coords();
  const Vector& z = cert.z_at(k).coords();

  const double lhs_next = lhs(trace, p, k + 1);
  const double lhs_k = lhs(trace, p, k);
  const double inner = g.dot(x0 - y - z / mu);
  const double fy = p.value(y);
  const double curvature = theta / (2.0 * (1.0 - theta) * mu) * g.squaredNorm();

  InductionRecord rec;
  rec.lhs = lhs_next - (1.0 - theta) * lhs_k;
  rec.rhs = theta * (inner + fy - curvature);
  rec.residual = rec.rhs - rec.lhs;
  rec.tolerance = tol.scaled({lhs_next, lhs_k, theta * inner, theta * fy, theta * curvature});
  rec.verdict = rec.residual >= -rec.tolerance ? Verdict::pass : Verdict::fail;

  if (trace.method == Method::subgradient) {
    rec.identities.push_back(relative("theta/((1-theta)mu)=t_{k+1}", k, theta / ((1.0 - theta) * mu), trace.t.at(k + 1), tol));
  } else if (trace.method == Method::gradient) {
    rec.identities.push_back(relative("theta/((1-theta)mu)=1/L", k, theta / ((1.0 - theta) * mu), 1.0 / lipschitz_l(p), tol));
  } else {
    rec.identities.push_back(
        relative("theta^2/((1-theta)mu)=1/L", k, theta * theta / ((1.0 - theta) * mu), 1.0 / lipschitz_l(p), tol));
  }
  return rec;
}

std::vector<CheckResult> check_identities(const MethodTrace& trace, const DualCertificate& cert,
                                          const ProblemInstance& p, std::size_t k, const Tolerances& tol) {
  require(cert.contains(k), ErrorKind::invalid_argument, "identity check outside the certificate range");
  std::vector<CheckResult> out;
  const Vector& x0 = trace.x0().coords();
  const Vector& y = cert.y_at(k).coords();
  const double mu = cert.mu_at(k);
  const Vector shift = cert.z_at(k).coords() / mu;
  const double scale = tol.scaled({x0.norm(), y.norm(), shift.norm()});

  switch (trace.method) {
    case Method::subgradient: {
      double steps = 0.0;
      for (std::size_t i = 0; i <= k; ++i) steps += trace.t[i];
      out.push_back(identity("x0-y_k-z_k/mu_k=0", k, (x0 - y - shift).norm(), scale));
      out.push_back(relative("mu_k=1/sum(t)", k, mu, 1.0 / steps, tol));
      const double G = lipschitz_g(p);
      const double znorm = cert.z_at(k).coords().norm();
      out.push_back(inequality("|z_k|<=G", k, znorm, G * (1.0 + tol.eps_rel), 0.0));
      break;
    }
    case Method::gradient:
      out.push_back(identity("x0-y_k-z_k/mu_k=0", k, (x0 - y - shift).norm(), scale));
      out.push_back(relative("mu_k=L/k", k, mu, lipschitz_l(p) / static_cast<double>(k), tol));
      break;
    case Method::accelerated:
    case Method::prox_accelerated: {
      const double theta = trace.theta.at(k);
      const Vector& xk = trace.x.at(k).coords();
      const double tprev = trace.theta.at(k - 1);
      out.push_back(identity("(eq9) y_k=(1-theta)x_k+theta(x0-z/mu)", k,
                             (y - ((1.0 - theta) * xk + theta * (x0 - shift))).norm(),
                             tol.scaled({y.norm(), xk.norm(), x0.norm(), shift.norm()})));
      out.push_back(identity("(eq10) (1-theta)(y-x)=theta(x0-y-z/mu)", k,
                             ((1.0 - theta) * (y - xk) - theta * (x0 - y - shift)).norm(),
                             tol.scaled({y.norm(), xk.norm(), x0.norm(), shift.norm()})));
      out.push_back(relative("mu_k=L*theta_{k-1}^2", k, mu, lipschitz_l(p) * tprev * tprev, tol));
      break;
    }
  }
  return out;
}

Audit audit_trace(const MethodTrace& trace, const ProblemInstance& p, const AuditOptions& options) {
  const Tolerances& tol = options.tol;
  Audit audit;
  audit.certificate = build_certificate(trace, p);
  const DualCertificate& cert = audit.certificate;

  std::vector<Point> test_points = default_test_points(p, trace.x0());
  for (const Point& x : options.extra_test_points) {
    p.check_dim(x.coords(), "test point");
    test_points.push_back(x);
  }
  audit.chain = verify_chain(trace, cert, p, test_points, tol);

  const Vector& x0 = trace.x0().coords();
  const auto fbar = p.optimal_value();
  double best_f = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < cert.start_index; ++i) best_f = std::min(best_f, trace.fx[i]);

  for (ChainRecord& rec : audit.chain.records) {
    const std::size_t k = rec.k;
    best_f = std::min(best_f, trace.fx[k]);

    if (cert.contains(k + 1)) {
      InductionRecord ind = verify_induction_step(trace, cert, p, k, tol);
      rec.residual_induction = ind.residual;
      rec.add(CheckResult{"(eq8) induction step k->k+1", k, ind.lhs, ind.rhs, ind.residual, ind.tolerance, ind.verdict});
      for (auto& c : ind.identities) rec.add(std::move(c));
    }
    for (auto& c : check_identities(trace, cert, p, k, tol)) rec.add(std::move(c));

    if (trace.method == Method::subgradient) {
      if (k + 1 < trace.t.size()) rec.theta = cert.theta_at(k);
    } else if (trace.method == Method::gradient) {
      rec.theta = 1.0 / static_cast<double>(k + 1);
    } else {
      rec.theta = trace.theta.at(k);
    }

    rec.theorem_bound = theorem_bound(p, x0, trace.method, k, trace.t);
    if (fbar) {
      const double achieved = trace.method == Method::subgradient ? best_f : trace.fx[k];
      rec.suboptimality = achieved - *fbar;
      if (rec.theorem_bound) {
        rec.add(inequality("theorem bound f-fbar<=bound", k, *rec.suboptimality, *rec.theorem_bound,
                           tol.scaled({achieved, *fbar, *rec.theorem_bound})));
      }
    }

    if (trace.method == Method::gradient) {
      rec.add(inequality("monotone descent f(x_k)<=f(x_{k-1})", k, trace.fx[k], trace.fx[k - 1],
                         tol.scaled({trace.fx[k], trace.fx[k - 1]})));
    }
    if (is_accelerated(trace.method)) {
      const double a = trace.theta[k - 1];
      const double b = trace.theta[k];
      rec.add(identity("theta recurrence", k, std::abs(b * b - a * a * (1.0 - b)), 1e-12));
      rec.add(inequality("theta_{k-1}<=2/(k+1)", k, a, 2.0 / static_cast<double>(k + 1), 0.0));
    }

    if (options.check_fidelity) {
      const auto stored_f = [&](std::size_t i) {
        const double recomputed = p.value(trace.x[i].coords());
        rec.add(identity(i == k ? "fidelity stored f(x_k)" : "fidelity stored f(x_" + std::to_string(i) + ")", k,
                         std::abs(trace.fx[i] - recomputed), tol.scaled({trace.fx[i], recomputed})));
      };
      stored_f(k);
      // iterates without a record of their own
      if (k == audit.chain.records.front().k) {
        for (std::size_t i = 0; i < k; ++i) stored_f(i);
      }
      if (k == audit.chain.records.back().k) {
        for (std::size_t i = k + 1; i < trace.x.size(); ++i) stored_f(i);
      }
      // the step that produced x_{k+1} (subgradient rows) or x_k (others)
      const std::size_t step = trace.method == Method::subgradient ? k : k - 1;
      if (step < trace.g.size()) {
        const Vector& base = is_accelerated(trace.method) ? trace.y[step].coords() : trace.x[step].coords();
        const Vector& g = trace.g[step].coords();
        const Vector oracle = p.subgradient(base);
        rec.add(identity("fidelity stored g", k, (g - oracle).lpNorm<Eigen::Infinity>(),
                         tol.scaled({g.lpNorm<Eigen::Infinity>(), oracle.lpNorm<Eigen::Infinity>()})));
        const Vector& next = trace.x[step + 1].coords();
        const Vector forward = base - trace.t[step] * g;
        if (trace.method != Method::prox_accelerated) {
          rec.add(identity("fidelity x update", k, (next - forward).lpNorm<Eigen::Infinity>(),
                           tol.scaled({base.lpNorm<Eigen::Infinity>(), (trace.t[step] * g).lpNorm<Eigen::Infinity>()})));
        }
        if (is_accelerated(trace.method)) {
          const double ta = trace.theta[step];
          const double tb = trace.theta[step + 1];
          rec.add(identity("fidelity theta update", k, std::abs(tb - theta_next(ta)), 1e-15));
          const Vector ynext = next + (tb * (1.0 - ta) / ta) * (next - trace.x[step].coords());
          rec.add(identity("fidelity y update", k, (trace.y[step + 1].coords() - ynext).lpNorm<Eigen::Infinity>(),
                           tol.scaled({next.lpNorm<Eigen::Infinity>(), trace.x[step].coords().lpNorm<Eigen::Infinity>()})));
        }
      }
    }
    rec.finalize();
  }
  return audit;
}

}  // namespace ccfom
