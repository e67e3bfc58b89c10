#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "ccfom/extended_real.hpp"
#include "ccfom/point.hpp"

namespace ccfom {

/// Relative slack used when deciding whether a dual vector lies in dom(f*).
/// Dual vectors built as convex combinations of subgradients sit on the
/// boundary of the domain up to roundoff.
inline constexpr double kDomainSlack = 1e-12;

/// Largest condition number accepted for a quadratic's Hessian.
inline constexpr double kMaxConditionNumber = 1e12;

struct ProblemOracles {
  std::function<double(const Vector&)> value;
  // One element of ∂f(x); the least-norm element where f is not differentiable.
  std::function<Vector(const Vector&)> subgradient;
  std::function<ExtendedReal(const Vector&)> conjugate;
  // Euclidean projection onto the solution set; empty when X̄ is unknown or empty.
  std::function<std::optional<Vector>(const Vector&)> nearest_solution;
};

struct ProblemConstants {
  std::optional<double> lipschitz_f;     // G
  std::optional<double> lipschitz_grad;  // L
  std::optional<double> optimal_value;   // f̄
  bool differentiable = false;
  std::string solution_provenance;       // how dist(x, X̄) is obtained
};

/// A convex objective on R^n with value, subgradient and conjugate oracles.
/// Immutable; copies share the underlying oracle state.
class ProblemInstance {
 public:
  ProblemInstance(std::string id, Eigen::Index dim, ProblemOracles oracles, ProblemConstants constants);

  const std::string& id() const noexcept { return id_; }
  Eigen::Index dim() const noexcept { return dim_; }

  double value(const Vector& x) const;
  Vector subgradient(const Vector& x) const;
  Vector gradient(const Vector& x) const;
  ExtendedReal conjugate(const Vector& z) const;

  const std::optional<double>& lipschitz_f() const noexcept { return constants_.lipschitz_f; }
  const std::optional<double>& lipschitz_grad() const noexcept { return constants_.lipschitz_grad; }
  const std::optional<double>& optimal_value() const noexcept { return constants_.optimal_value; }
  bool is_differentiable() const noexcept { return constants_.differentiable; }
  const std::string& solution_provenance() const noexcept { return constants_.solution_provenance; }

  std::optional<Vector> nearest_solution(const Vector& x) const;
  std::optional<double> distance_to_solution(const Vector& x) const;

  void check_dim(const Vector& v, const char* what) const;

  // Unchecked value oracle for hot loops (grid scans). Caller guarantees dim.
  double value_unchecked(const Vector& x) const { return oracles_.value(x); }

 private:
  std::string id_;
  Eigen::Index dim_;
  ProblemOracles oracles_;
  ProblemConstants constants_;
};

/// f*(z) + f(x) − ⟨z, x⟩; +∞ when z ∉ dom(f*).
ExtendedReal fenchel_gap(const ProblemInstance& p, const Vector& z, const Vector& x);

/// f(x) = ½⟨x, Ax⟩ + ⟨b, x⟩ + c with A symmetric positive definite.
ProblemInstance make_quadratic(const Matrix& A, const Vector& b, double c = 0.0, std::string id = {});

/// f(x) = G‖x‖.
ProblemInstance make_scaled_norm(double G, Eigen::Index dim, std::string id = {});

/// f(x) = log Σ exp(x_i) − ⟨c, x⟩. Without a tilt c the function is unbounded
/// below (no optimal value); with c in the open simplex, f̄ = −Σ c_i log c_i and
/// X̄ = {log c + s·1}.
ProblemInstance make_log_sum_exp(Eigen::Index dim, std::optional<Vector> tilt = std::nullopt, std::string id = {});

/// f(x) = max_i ⟨a_i, x⟩ + b_i with the pieces as rows of A. The conjugate is
/// evaluated by a small linear program over the convex-hull weights; f̄ is
/// −f*(0). X̄ is only known when a minimizer is supplied and is then assumed
/// to be the singleton {minimizer}.
ProblemInstance make_max_affine(const Matrix& A, const Vector& b, std::optional<Vector> unique_minimizer = std::nullopt,
                                std::string id = {});

/// ‖x‖_∞ = max_i ±x_i, a max-of-affine instance with closed-form conjugate
/// (indicator of the unit ℓ1 ball).
ProblemInstance make_linf_norm(Eigen::Index dim, std::string id = {});

/// ‖x‖_1 = max over sign vectors s of ⟨s, x⟩; conjugate is the indicator of
/// the unit ℓ∞ ball.
ProblemInstance make_l1_norm(Eigen::Index dim, std::string id = {});

/// Seeded max-of-affine instance with a unique, known minimizer and f̄ = 0:
/// pieces ±s·u_j with spanning random directions u_j.
ProblemInstance make_random_max_affine(Eigen::Index dim, Eigen::Index pieces, std::uint64_t seed, std::string id = {});

}  // namespace ccfom
