#include "ccfom/proxprobe.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <sstream>

namespace ccfom {

PsiSpec PsiSpec::zero() { return PsiSpec{}; }

PsiSpec PsiSpec::l1(double lambda) {
  require(std::isfinite(lambda) && lambda > 0, ErrorKind::configuration, "l1: lambda must be positive");
  PsiSpec s;
  s.kind = Kind::l1;
  s.lambda = lambda;
  return s;
}

PsiSpec PsiSpec::box(Vector lower, Vector upper) {
  require(lower.size() == upper.size() && lower.size() > 0, ErrorKind::configuration, "box: bounds differ in size");
  require((lower.array() < upper.array()).all(), ErrorKind::configuration, "box: need lo < hi componentwise");
  PsiSpec s;
  s.kind = Kind::box;
  s.lower = std::move(lower);
  s.upper = std::move(upper);
  return s;
}

PsiSpec PsiSpec::parse(const std::string& text, Eigen::Index dim) {
  std::stringstream stream(text);
  std::string kind, part;
  std::getline(stream, kind, ':');
  std::map<std::string, std::string> params;
  while (std::getline(stream, part, ':')) {
    const auto eq = part.find('=');
    require(eq != std::string::npos, ErrorKind::configuration, "psi '" + text + "': expected key=value");
    params[part.substr(0, eq)] = part.substr(eq + 1);
  }
  const auto take = [&](const std::string& key) {
    auto it = params.find(key);
    require(it != params.end(), ErrorKind::configuration, "psi '" + text + "': missing '" + key + "'");
    std::string v = it->second;
    params.erase(it);
    return v;
  };
  PsiSpec spec;
  try {
    if (kind == "zero") {
      spec = zero();
    } else if (kind == "l1") {
      spec = l1(std::stod(take("lambda")));
    } else if (kind == "box") {
      spec = box(parse_vector(take("lo")), parse_vector(take("hi")));
      require(spec.lower.size() == dim, ErrorKind::configuration, "psi box has the wrong dimension");
    } else {
      fail(ErrorKind::configuration, "unknown psi '" + text + "'");
    }
  } catch (const std::logic_error&) {
    fail(ErrorKind::configuration, "psi '" + text + "': bad number");
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::configuration) throw;
    fail(ErrorKind::configuration, std::string("psi '") + text + "': " + e.what());
  }
  require(params.empty(), ErrorKind::configuration, "psi '" + text + "': unknown key '" + (params.empty() ? "" : params.begin()->first) + "'");
  return spec;
}

std::string PsiSpec::describe() const {
  switch (kind) {
    case Kind::zero: return "zero";
    case Kind::l1: return "l1:lambda=" + format_point(Vector::Constant(1, lambda));
    case Kind::box: return "box:lo=" + format_point(lower) + ":hi=" + format_point(upper);
  }
  return "?";
}

CompositeProblem::CompositeProblem(ProblemInstance phi, PsiSpec psi) : phi_(std::move(phi)), psi_(std::move(psi)) {
  require(phi_.is_differentiable() && phi_.lipschitz_grad().has_value(), ErrorKind::configuration,
          "composite: phi must be differentiable with known L");
  if (psi_.kind == PsiSpec::Kind::box) {
    require(psi_.lower.size() == phi_.dim(), ErrorKind::configuration, "composite: box dimension mismatch");
  }
}

ExtendedReal CompositeProblem::psi_value(const Vector& x) const {
  phi_.check_dim(x, "x");
  switch (psi_.kind) {
    case PsiSpec::Kind::zero: return ExtendedReal::finite(0.0);
    case PsiSpec::Kind::l1: return ExtendedReal::finite(psi_.lambda * x.lpNorm<1>());
    case PsiSpec::Kind::box:
      if ((x.array() >= psi_.lower.array()).all() && (x.array() <= psi_.upper.array()).all()) {
        return ExtendedReal::finite(0.0);
      }
      return ExtendedReal::plus_infinity();
  }
  return ExtendedReal::plus_infinity();
}

Vector CompositeProblem::prox(const Vector& x, double t) const {
  phi_.check_dim(x, "x");
  require(t > 0, ErrorKind::invalid_argument, "prox step must be positive");
  switch (psi_.kind) {
    case PsiSpec::Kind::zero: return x;
    case PsiSpec::Kind::l1: {
      const double shrink = psi_.lambda * t;
      return x.unaryExpr([shrink](double v) { return v > shrink ? v - shrink : (v < -shrink ? v + shrink : 0.0); });
    }
    case PsiSpec::Kind::box: return x.cwiseMax(psi_.lower).cwiseMin(psi_.upper);
  }
  return x;
}

ExtendedReal CompositeProblem::value(const Vector& x) const { return psi_value(x) + phi_.value(x); }

std::pair<double, Vector> CompositeProblem::inner_minimum(const Vector& z, double mu, const Vector& x0) const {
  phi_.check_dim(z, "z");
  phi_.check_dim(x0, "x0");
  // separable: ψ(u) + ⟨z,u⟩ + (μ/2)‖u − x0‖² is minimized at prox_{1/μ}(x0 − z/μ)
  const Vector u = prox(x0 - z / mu, 1.0 / mu);
  const double value = psi_value(u).value() + z.dot(u) + 0.5 * mu * (u - x0).squaredNorm();
  return {value, u};
}

MethodTrace run_proximal_accelerated(const CompositeProblem& cp, const Point& x0, std::size_t K) {
  const std::function<Vector(const Vector&, double)> prox = [&cp](const Vector& x, double t) { return cp.prox(x, t); };
  const std::function<double(const Vector&)> objective = [&cp](const Vector& x) {
    const ExtendedReal v = cp.value(x);
    return v.is_finite() ? v.value() : std::numeric_limits<double>::infinity();
  };
  if (cp.psi().kind == PsiSpec::Kind::zero) {
    // reproduce run_accelerated exactly: no prox call, f = φ
    return detail::run_accelerated_loop(cp.phi(), x0, K, nullptr,
                                        [&cp](const Vector& x) { return cp.phi().value(x); },
                                        Method::prox_accelerated);
  }
  return detail::run_accelerated_loop(cp.phi(), x0, K, &prox, objective, Method::prox_accelerated);
}

CertificateValue conjectured_certificate(const DualCertificate& cert, std::size_t k, const CompositeProblem& cp,
                                         const Vector& x0) {
  if (cp.psi().kind == PsiSpec::Kind::zero) return certificate_value(cert, k, cp.phi(), x0);
  require(cert.contains(k), ErrorKind::invalid_argument, "certificate index out of range");
  const Vector& z = cert.z_at(k).coords();
  const ExtendedReal conj = cp.phi().conjugate(z);
  const double inner = cp.inner_minimum(z, cert.mu_at(k), x0).first;
  return CertificateValue{-conj + inner, conj.is_plus_infinity(), conj};
}

ProbeResult probe_conjecture(const CompositeProblem& cp, const Point& x0, std::size_t K, const Tolerances& tol) {
  ProbeResult result;
  result.label = cp.phi().id() + " + " + cp.psi().describe();
  result.trace = run_proximal_accelerated(cp, x0, K);
  result.certificate = build_certificate(result.trace, cp.phi());
  for (std::size_t k = result.certificate.start_index; k <= result.certificate.last_index(); ++k) {
    ProbeRow row;
    row.k = k;
    const Vector& xk = result.trace.x[k].coords();
    row.fx = result.trace.fx[k];
    row.phi_x = cp.phi().value(xk);
    row.psi_x = cp.psi_value(xk).to_double();
    const CertificateValue cv = conjectured_certificate(result.certificate, k, cp, x0.coords());
    row.certificate = cv.value;
    row.vacuous = cv.vacuous;
    if (cv.vacuous) {
      row.margin = -std::numeric_limits<double>::infinity();
      row.tolerance = 0.0;
    } else {
      row.margin = cv.value.value() - row.fx;
      row.tolerance = tol.scaled({cv.value.value(), row.fx});
      row.violation = row.margin < -row.tolerance;
    }
    if (row.violation) ++result.violations;
    result.rows.push_back(row);
  }
  return result;
}

}  // namespace ccfom
