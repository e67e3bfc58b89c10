#include "ccfom/problems.hpp"

#include <cmath>
#include <memory>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

namespace ccfom {

ProblemInstance::ProblemInstance(std::string id, Eigen::Index dim, ProblemOracles oracles, ProblemConstants constants)
    : id_(std::move(id)), dim_(dim), oracles_(std::move(oracles)), constants_(std::move(constants)) {
  require(dim_ > 0, ErrorKind::construction, "problem dimension must be positive");
  require(oracles_.value && oracles_.subgradient && oracles_.conjugate, ErrorKind::construction,
          "problem requires value, subgradient and conjugate oracles");
  require(constants_.lipschitz_f.has_value() || constants_.lipschitz_grad.has_value(), ErrorKind::construction,
          "problem needs a Lipschitz constant for f or for its gradient");
  if (constants_.lipschitz_f) require(*constants_.lipschitz_f > 0, ErrorKind::construction, "G must be positive");
  if (constants_.lipschitz_grad) require(*constants_.lipschitz_grad > 0, ErrorKind::construction, "L must be positive");
}

void ProblemInstance::check_dim(const Vector& v, const char* what) const {
  if (v.size() != dim_) {
    fail(ErrorKind::invalid_argument, std::string(what) + " has dimension " + std::to_string(v.size()) +
                                          ", problem '" + id_ + "' has dimension " + std::to_string(dim_));
  }
}

double ProblemInstance::value(const Vector& x) const {
  check_dim(x, "x");
  return oracles_.value(x);
}

Vector ProblemInstance::subgradient(const Vector& x) const {
  check_dim(x, "x");
  return oracles_.subgradient(x);
}

Vector ProblemInstance::gradient(const Vector& x) const {
  require(constants_.differentiable, ErrorKind::configuration, "problem '" + id_ + "' is not differentiable");
  return subgradient(x);
}

ExtendedReal ProblemInstance::conjugate(const Vector& z) const {
  check_dim(z, "z");
  return oracles_.conjugate(z);
}

std::optional<Vector> ProblemInstance::nearest_solution(const Vector& x) const {
  check_dim(x, "x");
  if (!oracles_.nearest_solution) return std::nullopt;
  return oracles_.nearest_solution(x);
}

std::optional<double> ProblemInstance::distance_to_solution(const Vector& x) const {
  auto projection = nearest_solution(x);
  if (!projection) return std::nullopt;
  return (x - *projection).norm();
}

ExtendedReal fenchel_gap(const ProblemInstance& p, const Vector& z, const Vector& x) {
  p.check_dim(z, "z");
  p.check_dim(x, "x");
  return p.conjugate(z) + (p.value(x) - z.dot(x));
}

namespace {

std::string or_default(std::string id, std::string fallback) { return id.empty() ? std::move(fallback) : id; }

}  // namespace

ProblemInstance make_quadratic(const Matrix& A, const Vector& b, double c, std::string id) {
  const Eigen::Index n = A.rows();
  require(n > 0 && A.cols() == n, ErrorKind::construction, "quadratic: A must be square and non-empty");
  require(b.size() == n, ErrorKind::construction, "quadratic: b has the wrong dimension");
  require(A.allFinite() && b.allFinite() && std::isfinite(c), ErrorKind::construction, "quadratic: non-finite data");
  const double scale = A.cwiseAbs().maxCoeff();
  require((A - A.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * scale, ErrorKind::construction,
          "quadratic: A is not symmetric");

  Eigen::SelfAdjointEigenSolver<Matrix> eig(A, Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();
  require(lo > 0, ErrorKind::construction, "quadratic: A is not positive definite");
  require(hi / lo <= kMaxConditionNumber, ErrorKind::construction, "quadratic: condition number exceeds 1e12");

  auto data = std::make_shared<const std::tuple<Matrix, Vector, double, Eigen::LLT<Matrix>>>(A, b, c, A.llt());
  Vector minimizer = -std::get<3>(*data).solve(b);
  const double fbar = 0.5 * b.dot(minimizer) + c;

  ProblemOracles oracles;
  oracles.value = [data](const Vector& x) {
    const auto& [Am, bv, cv, llt] = *data;
    // no temporaries: this runs once per grid point in the oracle scans
    double s = cv;
    for (Eigen::Index j = 0; j < x.size(); ++j) s += x[j] * (0.5 * Am.col(j).dot(x) + bv[j]);
    return s;
  };
  oracles.subgradient = [data](const Vector& x) -> Vector {
    const auto& [Am, bv, cv, llt] = *data;
    return Am * x + bv;
  };
  oracles.conjugate = [data](const Vector& z) {
    const auto& [Am, bv, cv, llt] = *data;
    Vector shifted = z - bv;
    return ExtendedReal::finite(0.5 * shifted.dot(llt.solve(shifted)) - cv);
  };
  oracles.nearest_solution = [minimizer](const Vector&) -> std::optional<Vector> { return minimizer; };

  ProblemConstants constants;
  constants.lipschitz_grad = hi;
  constants.optimal_value = fbar;
  constants.differentiable = true;
  constants.solution_provenance = "closed form -A^-1 b";
  return ProblemInstance(or_default(std::move(id), "quad"), n, std::move(oracles), std::move(constants));
}

ProblemInstance make_scaled_norm(double G, Eigen::Index dim, std::string id) {
  require(std::isfinite(G) && G > 0, ErrorKind::construction, "norm: G must be positive");
  require(dim > 0, ErrorKind::construction, "norm: dim must be positive");

  ProblemOracles oracles;
  oracles.value = [G](const Vector& x) { return G * x.norm(); };
  oracles.subgradient = [G](const Vector& x) -> Vector {
    const double r = x.norm();
    if (r == 0.0) return Vector::Zero(x.size());
    return (G / r) * x;
  };
  oracles.conjugate = [G](const Vector& z) {
    return z.norm() <= G * (1.0 + kDomainSlack) ? ExtendedReal::finite(0.0) : ExtendedReal::plus_infinity();
  };
  oracles.nearest_solution = [](const Vector& x) -> std::optional<Vector> { return Vector::Zero(x.size()); };

  ProblemConstants constants;
  constants.lipschitz_f = G;
  constants.optimal_value = 0.0;
  constants.solution_provenance = "closed form X = {0}";
  return ProblemInstance(or_default(std::move(id), "norm"), dim, std::move(oracles), std::move(constants));
}

ProblemInstance make_log_sum_exp(Eigen::Index dim, std::optional<Vector> tilt, std::string id) {
  require(dim >= 1, ErrorKind::construction, "lse: dim must be at least 1");
  Vector c = Vector::Zero(dim);
  if (tilt) {
    require(tilt->size() == dim, ErrorKind::construction, "lse: tilt has the wrong dimension");
    require(tilt->minCoeff() > 0 && std::abs(tilt->sum() - 1.0) <= 1e-12, ErrorKind::construction,
            "lse: tilt must lie in the open probability simplex");
    c = *tilt;
  }
  const bool tilted = tilt.has_value();

  ProblemOracles oracles;
  oracles.value = [c](const Vector& x) {
    const double m = x.maxCoeff();
    double s = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) s += std::exp(x[i] - m);
    return m + std::log(s) - c.dot(x);
  };
  oracles.subgradient = [c](const Vector& x) -> Vector {
    Vector e = (x.array() - x.maxCoeff()).exp().matrix();
    return e / e.sum() - c;
  };
  oracles.conjugate = [c](const Vector& z) {
    // f*(z) = Σ w_i log w_i with w = z + c on the probability simplex
    const Vector w = z + c;
    const double n = static_cast<double>(w.size());
    if (w.minCoeff() < -kDomainSlack || std::abs(w.sum() - 1.0) > kDomainSlack * n) {
      return ExtendedReal::plus_infinity();
    }
    double s = 0.0;
    for (Eigen::Index i = 0; i < w.size(); ++i) {
      if (w[i] > 0) s += w[i] * std::log(w[i]);
    }
    return ExtendedReal::finite(s);
  };

  ProblemConstants constants;
  constants.lipschitz_grad = 1.0;
  constants.lipschitz_f = tilted ? std::sqrt(2.0) : 1.0;
  constants.differentiable = true;
  if (tilted) {
    const Vector log_c = c.array().log().matrix();
    constants.optimal_value = -c.dot(log_c);
    constants.solution_provenance = "closed-form projection onto the line log(c) + s*1";
    oracles.nearest_solution = [log_c](const Vector& x) -> std::optional<Vector> {
      const double shift = (x - log_c).mean();
      return Vector(log_c.array() + shift);
    };
  } else {
    constants.solution_provenance = "unbounded below: no minimizer";
  }
  return ProblemInstance(or_default(std::move(id), "lse"), dim, std::move(oracles), std::move(constants));
}

}  // namespace ccfom
