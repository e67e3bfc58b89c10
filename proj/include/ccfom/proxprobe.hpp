#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ccfom/certificates.hpp"

namespace ccfom {

/// Experimental. Composite objectives f = φ + ψ with φ smooth and ψ simple,
/// and the conjectured composite certificate
///   −φ*(z_k) + min_u { ψ(u) + ⟨z_k, u⟩ + (μ_k/2)‖u − x₀‖² }.
/// The dual sequences reuse the accelerated recipe with g_k = ∇φ(y_k). This is
/// a probe: violations are findings, not errors.

struct PsiSpec {
  enum class Kind { zero, l1, box };
  Kind kind = Kind::zero;
  double lambda = 0.0;  // l1 weight
  Vector lower;         // box bounds, may hold ±inf
  Vector upper;

  static PsiSpec zero();
  static PsiSpec l1(double lambda);
  static PsiSpec box(Vector lower, Vector upper);

  /// `zero`, `l1:lambda=0.1`, `box:lo=0,0:hi=inf,inf`.
  static PsiSpec parse(const std::string& text, Eigen::Index dim);
  std::string describe() const;
};

class CompositeProblem {
 public:
  CompositeProblem(ProblemInstance phi, PsiSpec psi);

  const ProblemInstance& phi() const noexcept { return phi_; }
  const PsiSpec& psi() const noexcept { return psi_; }
  Eigen::Index dim() const noexcept { return phi_.dim(); }

  /// ψ(x); +∞ outside a box.
  ExtendedReal psi_value(const Vector& x) const;
  /// argmin_y ψ(y) + ‖x − y‖²/(2t).
  Vector prox(const Vector& x, double t) const;
  /// φ(x) + ψ(x).
  ExtendedReal value(const Vector& x) const;
  /// min_u ψ(u) + ⟨z, u⟩ + (μ/2)‖u − x₀‖² and its minimizer.
  std::pair<double, Vector> inner_minimum(const Vector& z, double mu, const Vector& x0) const;

 private:
  ProblemInstance phi_;
  PsiSpec psi_;
};

/// Accelerated method with x_{k+1} = Prox_t(y_k − t∇φ(y_k)), t = 1/L(φ). With ψ ≡ 0
/// the trace is bitwise identical to run_accelerated on φ.
MethodTrace run_proximal_accelerated(const CompositeProblem& cp, const Point& x0, std::size_t K);

CertificateValue conjectured_certificate(const DualCertificate& cert, std::size_t k, const CompositeProblem& cp,
                                         const Vector& x0);

struct ProbeRow {
  std::size_t k = 0;
  double fx = 0.0;
  double phi_x = 0.0;
  double psi_x = 0.0;
  ExtendedReal certificate = ExtendedReal::finite(0.0);
  bool vacuous = false;
  double margin = 0.0;     // certificate − f(x_k)
  double tolerance = 0.0;
  bool violation = false;  // margin < −tolerance
};

struct ProbeResult {
  std::string label;
  MethodTrace trace;
  DualCertificate certificate;
  std::vector<ProbeRow> rows;
  std::size_t violations = 0;
};

ProbeResult probe_conjecture(const CompositeProblem& cp, const Point& x0, std::size_t K, const Tolerances& tol);

}  // namespace ccfom
