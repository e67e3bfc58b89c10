#pragma once

#include <algorithm>
#include <cmath>
#include <initializer_list>

namespace ccfom {

/// Tolerance model shared by every check: ε_rel scaled by one plus the sum of
/// the magnitudes of the participating terms, never below ε_abs.
struct Tolerances {
  double eps_rel = 1e-9;
  double eps_abs = 1e-9;

  double scaled(std::initializer_list<double> terms) const {
    double magnitude = 1.0;
    for (double t : terms) magnitude += std::abs(t);
    return std::max(eps_abs, eps_rel * magnitude);
  }
};

}  // namespace ccfom
