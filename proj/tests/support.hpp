#pragma once

#include <cstdint>
#include <random>

#include "ccfom/point.hpp"

namespace testing_support {

// Seeded generators for property tests. Every test picks its own seed so a
// failure reproduces in isolation.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  ccfom::Vector vector(Eigen::Index n, double lo = -3.0, double hi = 3.0) {
    ccfom::Vector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = uniform(lo, hi);
    return v;
  }

  // Symmetric positive definite with eigenvalues in [lo, hi].
  ccfom::Matrix spd(Eigen::Index n, double lo, double hi) {
    ccfom::Matrix g(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) g(i, j) = uniform(-1.0, 1.0);
    const Eigen::HouseholderQR<ccfom::Matrix> qr(g);
    const ccfom::Matrix q = qr.householderQ();
    ccfom::Vector eig(n);
    for (Eigen::Index i = 0; i < n; ++i) eig[i] = uniform(lo, hi);
    ccfom::Matrix a = q * eig.asDiagonal() * q.transpose();
    return 0.5 * (a + a.transpose());
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace testing_support
