#pragma once

#include "ccfom/point.hpp"

namespace ccfom {

struct LpResult {
  enum class Status { optimal, infeasible, unbounded };
  Status status = Status::infeasible;
  double objective = 0.0;
  Vector solution;
  double phase_one_residual = 0.0;
};

/// minimize ⟨cost, λ⟩ subject to M λ = rhs, λ ≥ 0. Dense two-phase tableau
/// simplex with Bland's rule; intended for the tiny LPs behind max-of-affine
/// conjugates (a handful of rows).
LpResult solve_standard_form_lp(const Matrix& M, const Vector& rhs, const Vector& cost, double feasibility_tol);

/// Euclidean projection onto the probability simplex.
Vector project_onto_simplex(const Vector& v);

/// Weights λ in the simplex minimizing ‖Σ λ_i p_i‖ where p_i are the rows of
/// `points`. The returned weights always lie exactly in the simplex.
Vector least_norm_weights(const Matrix& points);

}  // namespace ccfom
