#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ccfom/methods.hpp"
#include "ccfom/tolerance.hpp"

namespace ccfom {

enum class Verdict { pass, fail, vacuous, skipped };

std::string_view to_string(Verdict v);

/// The dual sequences (z_k, μ_k) with z_{k+1} = (1−θ_k)z_k + θ_k g_k and
/// μ_{k+1} = (1−θ_k)μ_k, where g_k ∈ ∂f(y_k).
///
/// Per method:
///  - subgradient: start 0, μ₀ = 1/t₀, z₀ = g₀, θ_k = t_{k+1}/Σ_{i≤k+1}tᵢ, y_k = x_{k+1};
///  - gradient:    start 1, μ₁ = L, z₁ = ∇f(x₀), θ_k = 1/(k+1), y_k = x_k;
///  - accelerated: start 1, μ₁ = L, z₁ = ∇f(x₀), θ_k and y_k from the run.
///
/// z, mu, y are indexed by k − start_index for k = start..last; theta and g
/// hold the transition data k → k+1 and are one shorter.
struct DualCertificate {
  Method method = Method::gradient;
  std::size_t start_index = 1;
  std::vector<Point> z;
  std::vector<double> mu;
  std::vector<Point> y;
  std::vector<double> theta;
  std::vector<Point> g;
  std::size_t requeried = 0;  // designated subgradients the trace did not carry

  std::size_t last_index() const { return start_index + z.size() - 1; }
  bool contains(std::size_t k) const { return k >= start_index && k <= last_index(); }
  const Point& z_at(std::size_t k) const { return z.at(k - start_index); }
  double mu_at(std::size_t k) const { return mu.at(k - start_index); }
  const Point& y_at(std::size_t k) const { return y.at(k - start_index); }
  double theta_at(std::size_t k) const { return theta.at(k - start_index); }
  const Point& g_at(std::size_t k) const { return g.at(k - start_index); }
};

DualCertificate build_certificate(const MethodTrace& trace, const ProblemInstance& p);

struct CertificateValue {
  ExtendedReal value;  // −∞ when f*(z_k) = +∞
  bool vacuous;
  ExtendedReal conjugate;
};

/// −f*(z_k) + ⟨z_k, x₀⟩ − ‖z_k‖²/(2μ_k).
CertificateValue certificate_value(const DualCertificate& cert, std::size_t k, const ProblemInstance& p,
                                   const Vector& x0);

/// Left-hand sides of the bounds: the G²-corrected weighted average for the
/// subgradient method, the running average of f(x₁..x_k) for the gradient
/// method and f(x_k) for the accelerated method.
double lhs(const MethodTrace& trace, const ProblemInstance& p, std::size_t k);

/// Closed-form suboptimality bound at iteration k; empty when dist(x₀, X̄) is
/// unknown. `steps` are the step sizes of the run (used by the subgradient bound).
std::optional<double> theorem_bound(const ProblemInstance& p, const Vector& x0, Method method, std::size_t k,
                                    std::span<const double> steps);

/// One checked inequality or identity. `residual` is reported raw; the check
/// passes when residual <= tolerance (identities report a norm or relative
/// error, inequalities report lhs − rhs). The induction check follows the
/// opposite sign (RHS − LHS of the step inequality, passing when >= −tol).
struct CheckResult {
  std::string name;
  std::size_t k = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
  double tolerance = 0.0;
  Verdict verdict = Verdict::skipped;
};

struct ChainRecord {
  std::size_t k = 0;
  double fx = 0.0;
  double lhs = 0.0;
  ExtendedReal certificate = ExtendedReal::finite(0.0);
  bool vacuous = false;
  double mu = 0.0;
  std::optional<double> theta;
  std::optional<double> theorem_bound;
  std::optional<double> suboptimality;
  double residual_chain_max = 0.0;
  std::optional<double> residual_induction;
  std::vector<CheckResult> checks;
  Verdict verdict = Verdict::pass;

  void add(CheckResult check);
  void finalize();
};

struct BoundChain {
  Method method = Method::gradient;
  std::size_t start_index = 1;
  std::vector<Point> test_points;
  std::vector<ChainRecord> records;

  bool all_pass() const;
  std::size_t failures() const;
  std::size_t vacuous_records() const;
  ChainRecord& at(std::size_t k) { return records.at(k - start_index); }
  const ChainRecord& at(std::size_t k) const { return records.at(k - start_index); }
};

/// Checks, for every k ≥ start and every test point x:
///  (a) LHS_k ≤ certificate_k
///  (b) certificate_k ≤ −f*(z_k) + ⟨z_k, x⟩ + (μ_k/2)‖x − x₀‖²
///  (c) −f*(z_k) + ⟨z_k, x⟩ ≤ f(x)
///  (d) LHS_k ≤ f(x) + (μ_k/2)‖x − x₀‖²
BoundChain verify_chain(const MethodTrace& trace, const DualCertificate& cert, const ProblemInstance& p,
                        std::span<const Point> test_points, const Tolerances& tol);

struct InductionRecord {
  double lhs = 0.0;       // LHS_{k+1} − (1−θ_k)LHS_k
  double rhs = 0.0;       // θ_k(⟨g_k, x₀−y_k−z_k/μ_k⟩ + f(y_k) − θ_k/(2(1−θ_k)μ_k)‖g_k‖²)
  double residual = 0.0;  // rhs − lhs
  double tolerance = 0.0;
  Verdict verdict = Verdict::skipped;
  std::vector<CheckResult> identities;
};

/// The induction step k → k+1 together with the per-method identities at k.
InductionRecord verify_induction_step(const MethodTrace& trace, const DualCertificate& cert,
                                      const ProblemInstance& p, std::size_t k, const Tolerances& tol);

/// Identities that hold at every k of the certificate: x₀ − y_k − z_k/μ_k = 0
/// (subgradient, gradient); y_k = (1−θ_k)x_k + θ_k(x₀ − z_k/μ_k) and
/// (1−θ_k)(y_k−x_k) = θ_k(x₀−y_k−z_k/μ_k) (accelerated); μ_k closed forms.
std::vector<CheckResult> check_identities(const MethodTrace& trace, const DualCertificate& cert,
                                          const ProblemInstance& p, std::size_t k, const Tolerances& tol);

struct AuditOptions {
  Tolerances tol;
  std::vector<Point> extra_test_points;
  bool check_fidelity = true;
};

struct Audit {
  DualCertificate certificate;
  BoundChain chain;
};

/// Full per-iteration verification of a trace: chain (a)–(d), induction
/// residuals, identities, closed-form bounds, method invariants (monotone descent,
/// θ recurrence) and trace fidelity (stored values vs. recomputation).
Audit audit_trace(const MethodTrace& trace, const ProblemInstance& p, const AuditOptions& options = {});

/// Nearest minimizer (when known), x₀ and the origin.
std::vector<Point> default_test_points(const ProblemInstance& p, const Point& x0);

}  // namespace ccfom
