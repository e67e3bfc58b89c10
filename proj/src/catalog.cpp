#include "ccfom/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <map>
#include <random>
#include <sstream>

namespace ccfom {

namespace {

struct ParsedId {
  std::string family;
  std::map<std::string, std::string> params;
};

ParsedId split_id(std::string_view id) {
  ParsedId parsed;
  std::stringstream stream{std::string(id)};
  std::string part;
  bool first = true;
  while (std::getline(stream, part, ':')) {
    if (first) {
      parsed.family = part;
      first = false;
      continue;
    }
    const auto eq = part.find('=');
    require(eq != std::string::npos && eq > 0, ErrorKind::construction,
            "problem id '" + std::string(id) + "': expected key=value, got '" + part + "'");
    auto [it, inserted] = parsed.params.emplace(part.substr(0, eq), part.substr(eq + 1));
    require(inserted, ErrorKind::construction, "problem id '" + std::string(id) + "': duplicate key '" + it->first + "'");
  }
  require(!parsed.family.empty(), ErrorKind::construction, "empty problem id");
  return parsed;
}

class Params {
 public:
  Params(std::string id, std::map<std::string, std::string> values) : id_(std::move(id)), values_(std::move(values)) {}

  bool has(const std::string& key) const { return values_.count(key) > 0; }

  const std::string& text(const std::string& key) {
    auto it = values_.find(key);
    require(it != values_.end(), ErrorKind::construction, "problem id '" + id_ + "': missing '" + key + "'");
    used_.push_back(key);
    return it->second;
  }

  double number(const std::string& key, std::optional<double> fallback = std::nullopt) {
    if (!has(key)) {
      require(fallback.has_value(), ErrorKind::construction, "problem id '" + id_ + "': missing '" + key + "'");
      return *fallback;
    }
    const std::string& s = text(key);
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    require(end != s.c_str() && *end == '\0', ErrorKind::construction,
            "problem id '" + id_ + "': '" + key + "' is not a number");
    return v;
  }

  Eigen::Index integer(const std::string& key, std::optional<Eigen::Index> fallback = std::nullopt) {
    const double v = number(key, fallback ? std::optional<double>(static_cast<double>(*fallback)) : std::nullopt);
    require(v == std::floor(v) && v >= 0, ErrorKind::construction,
            "problem id '" + id_ + "': '" + key + "' must be a non-negative integer");
    return static_cast<Eigen::Index>(v);
  }

  Vector vector(const std::string& key) {
    try {
      return parse_vector(text(key));
    } catch (const Error& e) {
      fail(ErrorKind::construction, "problem id '" + id_ + "': " + e.what());
    }
  }

  Matrix matrix(const std::string& key) {
    std::stringstream stream(text(key));
    std::string row;
    std::vector<Vector> rows;
    while (std::getline(stream, row, '/')) {
      try {
        rows.push_back(parse_vector(row));
      } catch (const Error& e) {
        fail(ErrorKind::construction, "problem id '" + id_ + "': " + e.what());
      }
      require(rows.back().size() == rows.front().size(), ErrorKind::construction,
              "problem id '" + id_ + "': ragged matrix rows");
    }
    require(!rows.empty(), ErrorKind::construction, "problem id '" + id_ + "': empty matrix");
    Matrix m(static_cast<Eigen::Index>(rows.size()), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
    return m;
  }

  void finish() const {
    for (const auto& [key, value] : values_) {
      if (std::find(used_.begin(), used_.end(), key) == used_.end()) {
        fail(ErrorKind::construction, "problem id '" + id_ + "': unknown key '" + key + "'");
      }
    }
  }

 private:
  std::string id_;
  std::map<std::string, std::string> values_;
  std::vector<std::string> used_;
};

}  // namespace

ProblemInstance make_problem(std::string_view id_view) {
  const std::string id(id_view);
  ParsedId parsed = split_id(id);
  Params params(id, parsed.params);
  const std::string& family = parsed.family;

  if (family == "quad") {
    Matrix A;
    if (params.has("diag")) {
      require(!params.has("matrix"), ErrorKind::construction, "problem id '" + id + "': give diag or matrix, not both");
      A = params.vector("diag").asDiagonal();
    } else {
      A = params.matrix("matrix");
    }
    Vector b = params.has("b") ? params.vector("b") : Vector::Zero(A.rows());
    const double c = params.number("c", 0.0);
    params.finish();
    return make_quadratic(A, b, c, id);
  }
  if (family == "norm" || family == "abs") {
    const double G = params.number("G", 1.0);
    const Eigen::Index dim = params.integer("dim", 1);
    params.finish();
    return make_scaled_norm(G, dim, id);
  }
  if (family == "lse") {
    const Eigen::Index dim = params.integer("dim");
    std::optional<Vector> tilt;
    if (params.has("tilt")) {
      if (params.text("tilt") == "uniform") {
        tilt = Vector::Constant(dim, 1.0 / static_cast<double>(dim));
      } else {
        tilt = params.vector("tilt");
      }
    }
    params.finish();
    return make_log_sum_exp(dim, tilt, id);
  }
  if (family == "linf" || family == "l1") {
    const Eigen::Index dim = params.integer("dim");
    params.finish();
    return family == "linf" ? make_linf_norm(dim, id) : make_l1_norm(dim, id);
  }
  if (family == "maxaff") {
    if (params.has("a")) {
      Matrix A = params.matrix("a");
      Vector b = params.has("b") ? params.vector("b") : Vector::Zero(A.rows());
      std::optional<Vector> xstar;
      if (params.has("xstar")) xstar = params.vector("xstar");
      params.finish();
      return make_max_affine(A, b, xstar, id);
    }
    const Eigen::Index dim = params.integer("dim");
    const Eigen::Index pieces = params.integer("pieces", 2 * dim);
    const auto seed = static_cast<std::uint64_t>(params.integer("seed", 0));
    params.finish();
    return make_random_max_affine(dim, pieces, seed, id);
  }
  if (family == "lasso") {
    const Eigen::Index dim = params.integer("dim");
    const Eigen::Index rows = params.integer("rows", 2 * dim);
    const auto seed = static_cast<std::uint64_t>(params.integer("seed", 0));
    params.finish();
    require(dim >= 1 && rows >= dim, ErrorKind::construction, "problem id '" + id + "': need rows >= dim >= 1");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix M(rows, dim);
    Vector y(rows);
    for (Eigen::Index i = 0; i < rows; ++i) {
      for (Eigen::Index j = 0; j < dim; ++j) M(i, j) = normal(rng);
      y[i] = normal(rng);
    }
    return make_quadratic(M.transpose() * M, -(M.transpose() * y), 0.5 * y.squaredNorm(), id);
  }
  fail(ErrorKind::construction, "unknown problem family '" + family + "' in '" + id + "'");
}

std::vector<std::string> catalog_examples() {
  return {"quad:diag=1",        "quad:diag=1,10",   "quad:diag=1,10:b=1,0", "quad:diag=1,100",
          "quad:matrix=2,1/1,2:b=1,-1",             "norm:G=1:dim=1",       "norm:G=2:dim=2",
          "lse:dim=2",          "lse:dim=2:tilt=uniform",                   "lse:dim=3:tilt=0.2,0.3,0.5",
          "linf:dim=2",         "l1:dim=2",         "maxaff:a=1,0/-1,0/0,1/0,-1:b=0,0,0,0:xstar=0,0",
          "maxaff:a=1,1/-1,0/0,-1:b=-1,0,0",
          "maxaff:dim=2:pieces=6:seed=3",           "lasso:dim=3:rows=6:seed=1"};
}

}  // namespace ccfom
