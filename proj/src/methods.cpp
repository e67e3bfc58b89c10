#include "ccfom/methods.hpp"

#include <cmath>
#include <sstream>

namespace ccfom {

std::string_view to_string(Method m) {
  switch (m) {
    case Method::subgradient: return "subgradient";
    case Method::gradient: return "gradient";
    case Method::accelerated: return "accelerated";
    case Method::prox_accelerated: return "prox_accelerated";
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  if (name == "subgradient") return Method::subgradient;
  if (name == "gradient") return Method::gradient;
  if (name == "accelerated") return Method::accelerated;
  if (name == "prox_accelerated") return Method::prox_accelerated;
  fail(ErrorKind::configuration, "unknown method '" + std::string(name) + "'");
}

StepSchedule StepSchedule::constant(double t) {
  require(std::isfinite(t) && t > 0, ErrorKind::configuration, "constant step must be positive");
  return StepSchedule(Constant{t});
}

StepSchedule StepSchedule::horizon_sqrt(std::size_t horizon) { return StepSchedule(HorizonSqrt{horizon}); }

StepSchedule StepSchedule::inverse_lipschitz() { return StepSchedule(InverseL{}); }

StepSchedule StepSchedule::explicit_steps(std::vector<double> steps) {
  require(!steps.empty(), ErrorKind::configuration, "explicit schedule needs at least one step");
  for (double t : steps) require(std::isfinite(t) && t > 0, ErrorKind::configuration, "explicit steps must be positive");
  return StepSchedule(Explicit{std::move(steps)});
}

StepSchedule StepSchedule::parse(std::string_view text) {
  const std::string s(text);
  const auto colon = s.find(':');
  const std::string kind = s.substr(0, colon);
  const std::string arg = colon == std::string::npos ? std::string() : s.substr(colon + 1);
  try {
    if (kind == "inverse_L") {
      require(arg.empty(), ErrorKind::configuration, "inverse_L takes no argument");
      return inverse_lipschitz();
    }
    if (kind == "constant") return constant(std::stod(arg));
    if (kind == "horizon_sqrt") {
      require(!arg.empty(), ErrorKind::configuration, "horizon_sqrt requires a fixed horizon K");
      std::size_t used = 0;
      const long long k = std::stoll(arg, &used);
      require(used == arg.size() && k >= 0, ErrorKind::configuration, "horizon must be a non-negative integer");
      return horizon_sqrt(static_cast<std::size_t>(k));
    }
    if (kind == "explicit") {
      Vector v = parse_vector(arg);
      return explicit_steps(std::vector<double>(v.data(), v.data() + v.size()));
    }
  } catch (const std::logic_error&) {
    fail(ErrorKind::configuration, "cannot parse step schedule '" + s + "'");
  } catch (const Error& e) {
    fail(ErrorKind::configuration, std::string("step schedule '") + s + "': " + e.what());
  }
  fail(ErrorKind::configuration, "unknown step schedule '" + s + "'");
}

std::string StepSchedule::describe() const {
  std::ostringstream out;
  std::visit(
      [&](const auto& k) {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, Constant>) {
          out << "constant:" << format_point(Vector::Constant(1, k.t));
        } else if constexpr (std::is_same_v<T, HorizonSqrt>) {
          out << "horizon_sqrt:" << k.horizon;
        } else if constexpr (std::is_same_v<T, InverseL>) {
          out << "inverse_L";
        } else {
          out << "explicit:" << format_point(Eigen::Map<const Vector>(k.steps.data(), static_cast<Eigen::Index>(k.steps.size())));
        }
      },
      kind_);
  return out.str();
}

double StepSchedule::step(std::size_t k, const ProblemInstance& p) const {
  return std::visit(
      [&](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Constant>) {
          return s.t;
        } else if constexpr (std::is_same_v<T, HorizonSqrt>) {
          require(k <= s.horizon, ErrorKind::configuration, "horizon_sqrt schedule queried beyond its horizon");
          return 1.0 / std::sqrt(static_cast<double>(s.horizon) + 1.0);
        } else if constexpr (std::is_same_v<T, InverseL>) {
          require(p.lipschitz_grad().has_value(), ErrorKind::configuration,
                  "inverse_L schedule needs a gradient Lipschitz constant L");
          return 1.0 / *p.lipschitz_grad();
        } else {
          require(k < s.steps.size(), ErrorKind::configuration, "explicit schedule is shorter than the run");
          return s.steps[k];
        }
      },
      kind_);
}

std::optional<std::size_t> StepSchedule::horizon() const {
  if (const auto* h = std::get_if<HorizonSqrt>(&kind_)) return h->horizon;
  return std::nullopt;
}

double theta_next(double theta) {
  require(theta > 0 && theta <= 1, ErrorKind::invalid_argument, "theta must lie in (0, 1]");
  return 2.0 * theta / (std::sqrt(theta * theta + 4.0) + theta);
}

ThetaSequence::ThetaSequence(std::size_t count) {
  values_.reserve(count);
  if (count == 0) return;
  values_.push_back(1.0);
  while (values_.size() < count) values_.push_back(theta_next(values_.back()));
}

ThetaSequence::ThetaSequence(std::vector<double> values) : values_(std::move(values)) {}

double ThetaSequence::recurrence_residual(std::size_t k) const {
  const double a = values_.at(k);
  const double b = values_.at(k + 1);
  return b * b - a * a * (1.0 - b);
}

namespace {

void check_budget(const Point& x0, std::size_t K) {
  const double scalars = (static_cast<double>(K) + 2.0) * static_cast<double>(x0.dim());
  require(scalars <= kMaxTraceScalars, ErrorKind::guard, "trace would exceed 1e8 stored scalars");
}

Point finite_point(Vector v, const char* what, std::size_t k) {
  if (!all_finite(v)) {
    fail(ErrorKind::oracle_failure, std::string("non-finite ") + what + " at k=" + std::to_string(k));
  }
  return Point(std::move(v));
}

double finite_value(double v, std::size_t k) {
  if (!std::isfinite(v)) fail(ErrorKind::oracle_failure, "non-finite f(x_k) at k=" + std::to_string(k));
  return v;
}

// Subgradient loop for `steps` steps: x_{k+1} = x_k − t_k g_k.
MethodTrace descent_loop(const ProblemInstance& p, const Point& x0, std::size_t steps,
                         const std::function<double(std::size_t)>& step_at, Method tag) {
  p.check_dim(x0.coords(), "x0");
  MethodTrace trace;
  trace.method = tag;
  trace.problem_id = p.id();
  trace.x.reserve(steps + 1);
  trace.x.push_back(x0);
  trace.fx.push_back(finite_value(p.value(x0.coords()), 0));
  for (std::size_t k = 0; k < steps; ++k) {
    const Vector& xk = trace.x.back().coords();
    trace.g.push_back(finite_point(p.subgradient(xk), "subgradient", k));
    const double t = step_at(k);
    require(std::isfinite(t) && t > 0, ErrorKind::configuration, "step size must be positive at k=" + std::to_string(k));
    trace.t.push_back(t);
    Vector next = xk - t * trace.g.back().coords();
    trace.x.push_back(finite_point(std::move(next), "iterate", k + 1));
    trace.fx.push_back(finite_value(p.value(trace.x.back().coords()), k + 1));
  }
  return trace;
}

}  // namespace

MethodTrace run_subgradient(const ProblemInstance& p, const Point& x0, const StepSchedule& schedule, std::size_t K) {
  check_budget(x0, K);
  if (auto h = schedule.horizon()) {
    require(*h == K, ErrorKind::configuration,
            "horizon_sqrt schedule was fixed for K=" + std::to_string(*h) + " but the run uses K=" + std::to_string(K));
  }
  MethodTrace trace =
      descent_loop(p, x0, K + 1, [&](std::size_t k) { return schedule.step(k, p); }, Method::subgradient);
  trace.horizon = K;
  return trace;
}

MethodTrace run_gradient(const ProblemInstance& p, const Point& x0, std::size_t K) {
  require(p.lipschitz_grad().has_value(), ErrorKind::configuration, "gradient method needs L for '" + p.id() + "'");
  require(p.is_differentiable(), ErrorKind::configuration, "gradient method needs a differentiable problem");
  check_budget(x0, K);
  const double t = 1.0 / *p.lipschitz_grad();
  MethodTrace trace = descent_loop(p, x0, K, [t](std::size_t) { return t; }, Method::gradient);
  trace.horizon = K;
  return trace;
}

namespace detail {

MethodTrace run_accelerated_loop(const ProblemInstance& smooth, const Point& x0, std::size_t K,
                                 const std::function<Vector(const Vector&, double)>* prox,
                                 const std::function<double(const Vector&)>& fx_value, Method tag) {
  require(smooth.lipschitz_grad().has_value(), ErrorKind::configuration,
          "accelerated method needs L for '" + smooth.id() + "'");
  require(smooth.is_differentiable(), ErrorKind::configuration, "accelerated method needs a differentiable problem");
  smooth.check_dim(x0.coords(), "x0");
  check_budget(x0, K);
  const double t = 1.0 / *smooth.lipschitz_grad();

  MethodTrace trace;
  trace.method = tag;
  trace.problem_id = smooth.id();
  trace.horizon = K;
  trace.x.push_back(x0);
  trace.y.push_back(x0);
  trace.theta.push_back(1.0);
  trace.fx.push_back(finite_value(fx_value(x0.coords()), 0));
  for (std::size_t k = 0; k < K; ++k) {
    const Vector& yk = trace.y.back().coords();
    trace.g.push_back(finite_point(smooth.gradient(yk), "gradient", k));
    trace.t.push_back(t);
    Vector forward = yk - t * trace.g.back().coords();
    Vector next = prox ? (*prox)(forward, t) : std::move(forward);
    trace.x.push_back(finite_point(std::move(next), "iterate", k + 1));
    trace.fx.push_back(finite_value(fx_value(trace.x.back().coords()), k + 1));

    const double theta_k = trace.theta.back();
    const double theta_k1 = theta_next(theta_k);
    trace.theta.push_back(theta_k1);
    const Vector& x_new = trace.x[k + 1].coords();
    const Vector& x_old = trace.x[k].coords();
    const double momentum = theta_k1 * (1.0 - theta_k) / theta_k;
    trace.y.push_back(finite_point(x_new + momentum * (x_new - x_old), "extrapolated point", k + 1));
  }
  return trace;
}

}  // namespace detail

MethodTrace run_accelerated(const ProblemInstance& p, const Point& x0, std::size_t K) {
  return detail::run_accelerated_loop(p, x0, K, nullptr, [&p](const Vector& x) { return p.value(x); },
                                      Method::accelerated);
}

}  // namespace ccfom
