#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ccfom/problems.hpp"

namespace ccfom {

enum class Method { subgradient, gradient, accelerated, prox_accelerated };

std::string_view to_string(Method m);
Method parse_method(std::string_view name);

/// Step sizes t_k. `horizon_sqrt(K)` is tᵢ = 1/√(K+1) for i = 0..K and only
/// makes sense for a run whose horizon is exactly K.
class StepSchedule {
 public:
  struct Constant { double t; };
  struct HorizonSqrt { std::size_t horizon; };
  struct InverseL {};
  struct Explicit { std::vector<double> steps; };

  static StepSchedule constant(double t);
  static StepSchedule horizon_sqrt(std::size_t horizon);
  static StepSchedule inverse_lipschitz();
  static StepSchedule explicit_steps(std::vector<double> steps);

  /// Parses `constant:0.1`, `horizon_sqrt:K`, `inverse_L`, `explicit:1,0.5,...`.
  static StepSchedule parse(std::string_view text);
  std::string describe() const;

  double step(std::size_t k, const ProblemInstance& p) const;
  std::optional<std::size_t> horizon() const;

  const auto& kind() const noexcept { return kind_; }

 private:
  explicit StepSchedule(std::variant<Constant, HorizonSqrt, InverseL, Explicit> kind) : kind_(std::move(kind)) {}
  std::variant<Constant, HorizonSqrt, InverseL, Explicit> kind_;
};

/// Positive root of θ² + θ_k²θ − θ_k² = 0, in the cancellation-free form
/// 2θ_k / (√(θ_k² + 4) + θ_k).
double theta_next(double theta);

/// θ₀ = 1, θ_{k+1} = theta_next(θ_k).
class ThetaSequence {
 public:
  explicit ThetaSequence(std::size_t count);
  explicit ThetaSequence(std::vector<double> values);

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t k) const { return values_.at(k); }
  const std::vector<double>& values() const noexcept { return values_; }

  /// θ_{k+1}² − θ_k²(1 − θ_{k+1}).
  double recurrence_residual(std::size_t k) const;

 private:
  std::vector<double> values_;
};

/// Complete iterate history of one run. Index conventions:
///  - subgradient, horizon K: steps k = 0..K, so x₀..x_{K+1}, g₀..g_K, t₀..t_K
///    with g_k ∈ ∂f(x_k);
///  - gradient, K: x₀..x_K, g_k = ∇f(x_k) and t_k for k < K;
///  - accelerated, K: x₀..x_K, y₀..y_K, θ₀..θ_K, g_k = ∇f(y_k) for k < K.
/// fx[k] = f(x_k) as evaluated during the run.
struct MethodTrace {
  Method method = Method::gradient;
  std::string problem_id;
  std::size_t horizon = 0;
  std::vector<Point> x;
  std::vector<Point> y;
  std::vector<Point> g;
  std::vector<double> t;
  std::vector<double> theta;
  std::vector<double> fx;

  const Point& x0() const { return x.at(0); }
};

/// Budget on stored scalars per trace (K·dim).
inline constexpr double kMaxTraceScalars = 1e8;

MethodTrace run_subgradient(const ProblemInstance& p, const Point& x0, const StepSchedule& schedule, std::size_t K);
MethodTrace run_gradient(const ProblemInstance& p, const Point& x0, std::size_t K);
MethodTrace run_accelerated(const ProblemInstance& p, const Point& x0, std::size_t K);

namespace detail {

// Accelerated loop with an optional proximal step x_{k+1} = prox(y_k − t∇φ(y_k), t).
// fx_value evaluates the full objective stored in the trace.
MethodTrace run_accelerated_loop(const ProblemInstance& smooth, const Point& x0, std::size_t K,
                                 const std::function<Vector(const Vector&, double)>* prox,
                                 const std::function<double(const Vector&)>& fx_value, Method tag);

}  // namespace detail

}  // namespace ccfom
