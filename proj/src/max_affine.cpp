#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <random>
#include <vector>

#include <Eigen/Eigenvalues>

#include "ccfom/problems.hpp"
#include "ccfom/simplex_lp.hpp"

namespace ccfom {

namespace {

constexpr double kPivotTol = 1e-11;

// Tableau simplex over the columns in [0, allowed_cols). Rows of `tab` hold
// B^-1 [M | rhs]; the last column is the right-hand side.
LpResult::Status run_simplex(Matrix& tab, std::vector<Eigen::Index>& basis, const Vector& cost,
                             Eigen::Index allowed_cols) {
  const Eigen::Index rows = tab.rows();
  const Eigen::Index rhs = tab.cols() - 1;
  for (int iteration = 0; iteration < 100000; ++iteration) {
    Vector cb(rows);
    for (Eigen::Index i = 0; i < rows; ++i) cb[i] = cost[basis[i]];
    Eigen::Index entering = -1;
    for (Eigen::Index j = 0; j < allowed_cols; ++j) {
      const double reduced = cost[j] - cb.dot(tab.col(j));
      if (reduced >= -1e-12) continue;
      // a column with no usable pivot and a tiny reduced cost is roundoff, not a ray
      if (tab.col(j).head(rows).maxCoeff() <= kPivotTol) {
        if (reduced > -1e-9) continue;
        return LpResult::Status::unbounded;
      }
      entering = j;  // Bland: lowest index
      break;
    }
    if (entering < 0) return LpResult::Status::optimal;

    Eigen::Index leaving = -1;
    double best = 0.0;
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double a = tab(i, entering);
      if (a <= kPivotTol) continue;
      const double ratio = tab(i, rhs) / a;
      if (leaving < 0 || ratio < best - 1e-15 || (ratio <= best + 1e-15 && basis[i] < basis[leaving])) {
        leaving = i;
        best = ratio;
      }
    }
    if (leaving < 0) return LpResult::Status::unbounded;

    tab.row(leaving) /= tab(leaving, entering);
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (i != leaving && tab(i, entering) != 0.0) tab.row(i) -= tab(i, entering) * tab.row(leaving);
    }
    basis[leaving] = entering;
  }
  fail(ErrorKind::guard, "simplex iteration limit reached");
}

}  // namespace

LpResult solve_standard_form_lp(const Matrix& M, const Vector& rhs, const Vector& cost, double feasibility_tol) {
  const Eigen::Index m = M.rows();
  const Eigen::Index n = M.cols();
  require(rhs.size() == m && cost.size() == n, ErrorKind::invalid_argument, "LP dimensions are inconsistent");

  Matrix tab = Matrix::Zero(m, n + m + 1);
  tab.leftCols(n) = M;
  tab.col(n + m) = rhs;
  for (Eigen::Index i = 0; i < m; ++i) {
    if (tab(i, n + m) < 0) tab.row(i) *= -1.0;
    tab(i, n + i) = 1.0;
  }
  std::vector<Eigen::Index> basis(static_cast<std::size_t>(m));
  std::iota(basis.begin(), basis.end(), n);

  Vector phase_one_cost = Vector::Zero(n + m);
  phase_one_cost.tail(m).setOnes();
  run_simplex(tab, basis, phase_one_cost, n + m);

  LpResult result;
  double infeasibility = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    if (basis[i] >= n) infeasibility += tab(i, n + m);
  }
  result.phase_one_residual = infeasibility;
  if (infeasibility > feasibility_tol) {
    result.status = LpResult::Status::infeasible;
    return result;
  }

  // Drive remaining artificials out of the basis; drop redundant rows.
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < m; ++i) {
    if (basis[i] < n) {
      keep.push_back(i);
      continue;
    }
    Eigen::Index pivot_col = -1;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (std::abs(tab(i, j)) > 1e-9) {
        pivot_col = j;
        break;
      }
    }
    if (pivot_col < 0) continue;
    tab.row(i) /= tab(i, pivot_col);
    for (Eigen::Index r = 0; r < m; ++r) {
      if (r != i && tab(r, pivot_col) != 0.0) tab.row(r) -= tab(r, pivot_col) * tab.row(i);
    }
    basis[i] = pivot_col;
    keep.push_back(i);
  }
  Matrix reduced(static_cast<Eigen::Index>(keep.size()), n + m + 1);
  std::vector<Eigen::Index> reduced_basis;
  for (std::size_t r = 0; r < keep.size(); ++r) {
    reduced.row(static_cast<Eigen::Index>(r)) = tab.row(keep[r]);
    reduced_basis.push_back(basis[keep[r]]);
  }

  Vector phase_two_cost = Vector::Zero(n + m);
  phase_two_cost.head(n) = cost;
  result.status = run_simplex(reduced, reduced_basis, phase_two_cost, n);
  if (result.status != LpResult::Status::optimal) return result;

  result.solution = Vector::Zero(n);
  for (std::size_t r = 0; r < reduced_basis.size(); ++r) {
    if (reduced_basis[r] < n) result.solution[reduced_basis[r]] = std::max(0.0, reduced(static_cast<Eigen::Index>(r), n + m));
  }
  result.objective = cost.dot(result.solution);
  return result;
}

Vector project_onto_simplex(const Vector& v) {
  const Eigen::Index n = v.size();
  std::vector<double> sorted(v.data(), v.data() + n);
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double cumulative = 0.0;
  double shift = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    cumulative += sorted[static_cast<std::size_t>(i)];
    const double candidate = (cumulative - 1.0) / static_cast<double>(i + 1);
    if (sorted[static_cast<std::size_t>(i)] - candidate > 0) shift = candidate;
  }
  Vector w = (v.array() - shift).max(0.0).matrix();
  const double total = w.sum();
  return total > 0 ? Vector(w / total) : Vector::Constant(n, 1.0 / static_cast<double>(n));
}

Vector least_norm_weights(const Matrix& points) {
  const Eigen::Index k = points.rows();
  require(k > 0, ErrorKind::invalid_argument, "least_norm_weights: no points");
  if (k == 1) return Vector::Ones(1);
  const Matrix gram = points * points.transpose();
  const double lmax = Eigen::SelfAdjointEigenSolver<Matrix>(gram, Eigen::EigenvaluesOnly).eigenvalues().maxCoeff();
  Vector weights = Vector::Constant(k, 1.0 / static_cast<double>(k));
  if (lmax <= 0) return weights;
  // accelerated projected gradient on ½ λᵀ Q λ over the simplex
  Vector momentum = weights;
  double theta = 1.0;
  for (int it = 0; it < 20000; ++it) {
    Vector next = project_onto_simplex(momentum - (gram * momentum) / lmax);
    const double change = (next - weights).lpNorm<Eigen::Infinity>();
    const double theta_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * theta * theta));
    momentum = next + ((theta - 1.0) / theta_next) * (next - weights);
    weights = std::move(next);
    theta = theta_next;
    if (change < 1e-15) break;
  }
  return weights;
}

namespace {

std::string or_default(std::string id, std::string fallback) { return id.empty() ? std::move(fallback) : id; }

}  // namespace

ProblemInstance make_max_affine(const Matrix& A, const Vector& b, std::optional<Vector> unique_minimizer,
                                std::string id) {
  const Eigen::Index m = A.rows();
  const Eigen::Index n = A.cols();
  require(m >= 1 && n >= 1, ErrorKind::construction, "maxaff: need at least one piece");
  require(b.size() == m, ErrorKind::construction, "maxaff: b must have one entry per piece");
  require(A.allFinite() && b.allFinite(), ErrorKind::construction, "maxaff: non-finite data");

  auto pieces = std::make_shared<const std::pair<Matrix, Vector>>(A, b);

  ProblemOracles oracles;
  oracles.value = [pieces](const Vector& x) {
    const auto& [Am, bv] = *pieces;
    double best = -std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < Am.rows(); ++i) best = std::max(best, Am.row(i).dot(x) + bv[i]);
    return best;
  };
  oracles.subgradient = [pieces](const Vector& x) -> Vector {
    const auto& [Am, bv] = *pieces;
    Vector values = Am * x + bv;
    const double best = values.maxCoeff();
    std::vector<Eigen::Index> active;
    for (Eigen::Index i = 0; i < values.size(); ++i) {
      if (values[i] == best) active.push_back(i);
    }
    if (active.size() == 1) return Am.row(active.front()).transpose();
    Matrix rows(static_cast<Eigen::Index>(active.size()), Am.cols());
    for (std::size_t r = 0; r < active.size(); ++r) rows.row(static_cast<Eigen::Index>(r)) = Am.row(active[r]);
    return rows.transpose() * least_norm_weights(rows);
  };
  oracles.conjugate = [pieces](const Vector& z) {
    // f*(z) = min { −⟨b, λ⟩ : Aᵀλ = z, Σλ = 1, λ ≥ 0 }
    const auto& [Am, bv] = *pieces;
    Matrix M(Am.cols() + 1, Am.rows());
    M.topRows(Am.cols()) = Am.transpose();
    M.bottomRows(1).setOnes();
    Vector rhs(Am.cols() + 1);
    rhs.head(Am.cols()) = z;
    rhs[Am.cols()] = 1.0;
    const double tol = 1e-10 * (1.0 + z.lpNorm<1>());
    LpResult lp = solve_standard_form_lp(M, rhs, -bv, tol);
    if (lp.status != LpResult::Status::optimal) return ExtendedReal::plus_infinity();
    return ExtendedReal::finite(lp.objective);
  };

  ProblemConstants constants;
  constants.lipschitz_f = A.rowwise().norm().maxCoeff();
  require(*constants.lipschitz_f > 0, ErrorKind::construction, "maxaff: all slopes are zero");
  ExtendedReal at_zero = oracles.conjugate(Vector::Zero(n));
  if (at_zero.is_finite()) constants.optimal_value = -at_zero.value();

  if (unique_minimizer) {
    require(unique_minimizer->size() == n, ErrorKind::construction, "maxaff: minimizer has the wrong dimension");
    require(constants.optimal_value.has_value(), ErrorKind::construction, "maxaff: minimizer given but f is unbounded");
    const double at_min = oracles.value(*unique_minimizer);
    require(std::abs(at_min - *constants.optimal_value) <= 1e-9 * (1.0 + std::abs(at_min)), ErrorKind::construction,
            "maxaff: supplied minimizer does not attain the LP optimal value");
    // Unique iff the active normals positively span R^n: every ±e_i lies in their cone.
    const Vector values = A * *unique_minimizer + b;
    std::vector<Eigen::Index> active;
    for (Eigen::Index i = 0; i < m; ++i) {
      if (values[i] >= at_min - 1e-9 * (1.0 + std::abs(at_min))) active.push_back(i);
    }
    Matrix cone(n, static_cast<Eigen::Index>(active.size()));
    for (std::size_t j = 0; j < active.size(); ++j) cone.col(static_cast<Eigen::Index>(j)) = A.row(active[j]).transpose();
    for (Eigen::Index i = 0; i < n; ++i) {
      for (double sign : {1.0, -1.0}) {
        const Vector target = sign * Vector::Unit(n, i);
        const LpResult lp = solve_standard_form_lp(cone, target, Vector::Zero(cone.cols()), 1e-10);
        require(lp.status == LpResult::Status::optimal, ErrorKind::construction,
                "maxaff: supplied minimizer is not unique (active pieces do not positively span R^n; " +
                    std::to_string(sign > 0 ? 1 : -1) + "*e_" + std::to_string(i) +
                    " outside their cone, phase-one residual " + std::to_string(lp.phase_one_residual) + ")");
      }
    }
    Vector minimizer = *unique_minimizer;
    oracles.nearest_solution = [minimizer](const Vector&) -> std::optional<Vector> { return minimizer; };
    constants.solution_provenance = "supplied minimizer, optimal by LP value, unique by positive spanning";
  } else {
    constants.solution_provenance = "unknown";
  }
  return ProblemInstance(or_default(std::move(id), "maxaff"), n, std::move(oracles), std::move(constants));
}

ProblemInstance make_linf_norm(Eigen::Index dim, std::string id) {
  require(dim > 0, ErrorKind::construction, "linf: dim must be positive");
  ProblemOracles oracles;
  oracles.value = [](const Vector& x) { return x.cwiseAbs().maxCoeff(); };
  oracles.subgradient = [](const Vector& x) -> Vector {
    // least-norm point of conv{sign(x_i) e_i : |x_i| = ‖x‖_∞}: equal weights
    const double m = x.cwiseAbs().maxCoeff();
    Vector g = Vector::Zero(x.size());
    if (m == 0.0) return g;
    double count = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      if (std::abs(x[i]) == m) count += 1.0;
    }
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      if (std::abs(x[i]) == m) g[i] = (x[i] > 0 ? 1.0 : -1.0) / count;
    }
    return g;
  };
  oracles.conjugate = [](const Vector& z) {
    return z.lpNorm<1>() <= 1.0 + kDomainSlack ? ExtendedReal::finite(0.0) : ExtendedReal::plus_infinity();
  };
  oracles.nearest_solution = [](const Vector& x) -> std::optional<Vector> { return Vector::Zero(x.size()); };

  ProblemConstants constants;
  constants.lipschitz_f = 1.0;
  constants.optimal_value = 0.0;
  constants.solution_provenance = "closed form X = {0}";
  return ProblemInstance(or_default(std::move(id), "linf"), dim, std::move(oracles), std::move(constants));
}

ProblemInstance make_l1_norm(Eigen::Index dim, std::string id) {
  require(dim > 0, ErrorKind::construction, "l1: dim must be positive");
  ProblemOracles oracles;
  oracles.value = [](const Vector& x) { return x.lpNorm<1>(); };
  oracles.subgradient = [](const Vector& x) -> Vector {
    return x.unaryExpr([](double v) { return v > 0 ? 1.0 : (v < 0 ? -1.0 : 0.0); });
  };
  oracles.conjugate = [](const Vector& z) {
    return z.lpNorm<Eigen::Infinity>() <= 1.0 + kDomainSlack ? ExtendedReal::finite(0.0)
                                                             : ExtendedReal::plus_infinity();
  };
  oracles.nearest_solution = [](const Vector& x) -> std::optional<Vector> { return Vector::Zero(x.size()); };

  ProblemConstants constants;
  constants.lipschitz_f = std::sqrt(static_cast<double>(dim));
  constants.optimal_value = 0.0;
  constants.solution_provenance = "closed form X = {0}";
  return ProblemInstance(or_default(std::move(id), "l1"), dim, std::move(oracles), std::move(constants));
}

ProblemInstance make_random_max_affine(Eigen::Index dim, Eigen::Index pieces, std::uint64_t seed, std::string id) {
  require(dim > 0, ErrorKind::construction, "maxaff random: dim must be positive");
  require(pieces >= 2 * dim && pieces % 2 == 0, ErrorKind::construction,
          "maxaff random: pieces must be even and at least 2*dim");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> scale(0.5, 1.5);
  std::uniform_real_distribution<double> box(-1.0, 1.0);

  const Eigen::Index directions = pieces / 2;
  Matrix A(pieces, dim);
  for (Eigen::Index j = 0; j < directions; ++j) {
    Vector u(dim);
    for (Eigen::Index i = 0; i < dim; ++i) u[i] = normal(rng);
    A.row(2 * j) = scale(rng) * u.transpose();
    A.row(2 * j + 1) = -scale(rng) * u.transpose();
  }
  Vector minimizer(dim);
  for (Eigen::Index i = 0; i < dim; ++i) minimizer[i] = box(rng);
  Vector b = -(A * minimizer);
  return make_max_affine(A, b, minimizer, or_default(std::move(id), "maxaff:random"));
}

}  // namespace ccfom
