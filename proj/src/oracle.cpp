#include "ccfom/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace ccfom {

GridSpec GridSpec::cube(Eigen::Index dim, double half_width, Eigen::Index points_per_axis) {
  return GridSpec{Vector::Constant(dim, -half_width), Vector::Constant(dim, half_width), points_per_axis};
}

void GridSpec::validate() const {
  require(lower.size() > 0 && lower.size() == upper.size(), ErrorKind::invalid_argument, "grid: bad box dimensions");
  require(lower.size() <= kMaxGridDim, ErrorKind::unsupported, "grid oracles support dimension <= 3");
  require((lower.array() < upper.array()).all(), ErrorKind::invalid_argument, "grid: lower must be < upper");
  require(points_per_axis >= 2, ErrorKind::invalid_argument, "grid: need at least 2 points per axis");
  require(total_points() <= kMaxGridPoints, ErrorKind::guard, "grid: more than 1e8 points");
}

double GridSpec::step() const {
  return (upper - lower).maxCoeff() / static_cast<double>(points_per_axis - 1);
}

double GridSpec::total_points() const {
  return std::pow(static_cast<double>(points_per_axis), static_cast<double>(lower.size()));
}

namespace {

double coordinate(const GridSpec& g, Eigen::Index axis, Eigen::Index i) {
  return g.lower[axis] + (g.upper[axis] - g.lower[axis]) * static_cast<double>(i) /
                             static_cast<double>(g.points_per_axis - 1);
}

// Max of ‖g(x)‖ over a coarse sub-grid that includes the box vertices.
double sample_lipschitz(const ProblemInstance& p, const GridSpec& grid) {
  const Eigen::Index d = grid.dim();
  const Eigen::Index n = std::min<Eigen::Index>(grid.points_per_axis, d == 1 ? 2001 : (d == 2 ? 201 : 41));
  GridSpec coarse{grid.lower, grid.upper, n};
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(d), 0);
  Vector x(d);
  double best = 0.0;
  while (true) {
    for (Eigen::Index a = 0; a < d; ++a) x[a] = coordinate(coarse, a, idx[static_cast<std::size_t>(a)]);
    best = std::max(best, p.subgradient(x).norm());
    Eigen::Index a = 0;
    while (a < d && ++idx[static_cast<std::size_t>(a)] == n) idx[static_cast<std::size_t>(a++)] = 0;
    if (a == d) break;
  }
  return best;
}

struct ChunkResult {
  double min_value = std::numeric_limits<double>::infinity();
  long long min_index = -1;
  std::vector<double> sup_value;
  std::vector<long long> sup_index;
};

void scan_chunk(const ProblemInstance& p, std::span<const Vector> zs, const GridSpec& grid, long long begin,
                long long end, ChunkResult& out) {
  const Eigen::Index d = grid.dim();
  const long long n = grid.points_per_axis;
  const std::size_t nz = zs.size();
  out.sup_value.assign(nz, -std::numeric_limits<double>::infinity());
  out.sup_index.assign(nz, -1);
  if (begin >= end) return;

  // coordinate tables, and z_q[0]·x_0 along the fast axis
  std::vector<std::vector<double>> coords(static_cast<std::size_t>(d));
  for (Eigen::Index a = 0; a < d; ++a) {
    auto& c = coords[static_cast<std::size_t>(a)];
    c.resize(static_cast<std::size_t>(n));
    for (long long i = 0; i < n; ++i) c[static_cast<std::size_t>(i)] = coordinate(grid, a, i);
  }
  std::vector<double> fast_dot(nz * static_cast<std::size_t>(n));
  for (std::size_t q = 0; q < nz; ++q) {
    for (long long i = 0; i < n; ++i) {
      fast_dot[q * static_cast<std::size_t>(n) + static_cast<std::size_t>(i)] = zs[q][0] * coords[0][static_cast<std::size_t>(i)];
    }
  }

  std::vector<long long> idx(static_cast<std::size_t>(d));
  long long rem = begin;
  for (Eigen::Index a = 0; a < d; ++a) {
    idx[static_cast<std::size_t>(a)] = rem % n;
    rem /= n;
  }
  Vector x(d);
  std::vector<double> slow_dot(nz);
  const auto load_row = [&] {
    for (Eigen::Index a = 1; a < d; ++a) x[a] = coords[static_cast<std::size_t>(a)][static_cast<std::size_t>(idx[static_cast<std::size_t>(a)])];
    for (std::size_t q = 0; q < nz; ++q) {
      double s = 0.0;
      for (Eigen::Index a = 1; a < d; ++a) s += zs[q][a] * x[a];
      slow_dot[q] = s;
    }
  };
  load_row();

  long long linear = begin;
  long long i = idx[0];
  while (linear < end) {
    const long long row_end = std::min(end, linear + (n - i));
    for (; linear < row_end; ++linear, ++i) {
      x[0] = coords[0][static_cast<std::size_t>(i)];
      const double f = p.value_unchecked(x);
      if (f < out.min_value) {
        out.min_value = f;
        out.min_index = linear;
      }
      for (std::size_t q = 0; q < nz; ++q) {
        const double s = (fast_dot[q * static_cast<std::size_t>(n) + static_cast<std::size_t>(i)] + slow_dot[q]) - f;
        if (s > out.sup_value[q]) {
          out.sup_value[q] = s;
          out.sup_index[q] = linear;
        }
      }
    }
    i = 0;
    for (Eigen::Index a = 1; a < d; ++a) {
      auto& j = idx[static_cast<std::size_t>(a)];
      if (++j < n) break;
      j = 0;
    }
    load_row();
  }
}

Vector point_at(const GridSpec& grid, long long linear) {
  const Eigen::Index d = grid.dim();
  Vector x(d);
  for (Eigen::Index a = 0; a < d; ++a) {
    x[a] = coordinate(grid, a, linear % grid.points_per_axis);
    linear /= grid.points_per_axis;
  }
  return x;
}

}  // namespace

GridScan scan_grid(const ProblemInstance& p, std::span<const Vector> zs, const GridSpec& grid) {
  grid.validate();
  require(grid.dim() == p.dim(), ErrorKind::invalid_argument, "grid dimension does not match the problem");
  for (const Vector& z : zs) p.check_dim(z, "z");

  const auto total = static_cast<long long>(grid.total_points());
  const unsigned workers = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
  std::vector<ChunkResult> chunks(workers);
  std::vector<std::thread> threads;
  const long long per = (total + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const long long begin = std::min(total, per * w);
    const long long end = std::min(total, begin + per);
    if (w + 1 == workers) {
      scan_chunk(p, zs, grid, begin, end, chunks[w]);
    } else {
      threads.emplace_back([&, begin, end, w] { scan_chunk(p, zs, grid, begin, end, chunks[w]); });
    }
  }
  for (auto& t : threads) t.join();

  // chunks are in increasing index order; strict comparisons keep the lowest index
  ChunkResult merged = chunks.front();
  for (std::size_t c = 1; c < chunks.size(); ++c) {
    if (chunks[c].min_value < merged.min_value) {
      merged.min_value = chunks[c].min_value;
      merged.min_index = chunks[c].min_index;
    }
    for (std::size_t q = 0; q < zs.size(); ++q) {
      if (chunks[c].sup_value[q] > merged.sup_value[q]) {
        merged.sup_value[q] = chunks[c].sup_value[q];
        merged.sup_index[q] = chunks[c].sup_index[q];
      }
    }
  }

  GridScan scan;
  scan.step = grid.step();
  scan.lipschitz_estimate = sample_lipschitz(p, grid);
  scan.minimum = GridMinimum{merged.min_value, point_at(grid, merged.min_index), scan.step * scan.lipschitz_estimate};
  for (std::size_t q = 0; q < zs.size(); ++q) {
    scan.conjugates.push_back(GridConjugate{merged.sup_value[q], scan.step * (zs[q].norm() + scan.lipschitz_estimate),
                                            point_at(grid, merged.sup_index[q])});
  }
  return scan;
}

GridConjugate conjugate_by_grid(const ProblemInstance& p, const Vector& z, const GridSpec& grid) {
  return scan_grid(p, std::span<const Vector>(&z, 1), grid).conjugates.front();
}

GridMinimum min_by_grid(const ProblemInstance& p, const GridSpec& grid) {
  return scan_grid(p, {}, grid).minimum;
}

}  // namespace ccfom
