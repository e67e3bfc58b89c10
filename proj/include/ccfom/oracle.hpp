#pragma once

#include <span>
#include <vector>

#include "ccfom/problems.hpp"

namespace ccfom {

/// Brute-force oracles over a uniform box grid. They exist to validate the
/// closed-form conjugates and optima of the catalog, so they trade speed for
/// being obviously correct.
struct GridSpec {
  Vector lower;
  Vector upper;
  Eigen::Index points_per_axis = 2;

  static GridSpec cube(Eigen::Index dim, double half_width, Eigen::Index points_per_axis);

  void validate() const;
  Eigen::Index dim() const noexcept { return lower.size(); }
  double step() const;  // largest axis spacing h
  double total_points() const;
};

inline constexpr double kMaxGridPoints = 1e8;
inline constexpr Eigen::Index kMaxGridDim = 3;

/// Grid estimate of sup_x ⟨z, x⟩ − f(x). `value` is a lower bound on f*(z);
/// when the maximizer lies in the box, f*(z) ≤ value + error_bound with
/// error_bound = h·(‖z‖ + G_box).
struct GridConjugate {
  double value;
  double error_bound;
  Vector argmax;
};

struct GridMinimum {
  double value;       // upper bound on f̄
  Vector argmin;
  double resolution;  // h·G_box: f̄ ≥ value − resolution when the minimizer is in the box
};

struct GridScan {
  GridMinimum minimum;
  std::vector<GridConjugate> conjugates;
  double lipschitz_estimate;  // G_box, sampled
  double step;
};

/// One pass over the grid answering the minimum and several conjugate queries.
/// Ties are broken by the lowest linear grid index.
GridScan scan_grid(const ProblemInstance& p, std::span<const Vector> zs, const GridSpec& grid);

GridConjugate conjugate_by_grid(const ProblemInstance& p, const Vector& z, const GridSpec& grid);
GridMinimum min_by_grid(const ProblemInstance& p, const GridSpec& grid);

}  // namespace ccfom
