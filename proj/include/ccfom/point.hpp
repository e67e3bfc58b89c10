#pragma once

#include <initializer_list>
#include <string>

#include <Eigen/Dense>

namespace ccfom {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// A point of R^n with finite coordinates. Every iterate, gradient and dual
/// vector stored in a trace or certificate is a Point, so a NaN can never be
/// recorded silently.
class Point {
 public:
  explicit Point(Vector coords);
  Point(std::initializer_list<double> coords);

  static Point zeros(Eigen::Index dim);
  static Point constant(Eigen::Index dim, double value);

  Eigen::Index dim() const noexcept { return coords_.size(); }
  const Vector& coords() const noexcept { return coords_; }
  double operator[](Eigen::Index i) const { return coords_[i]; }

  friend bool operator==(const Point& a, const Point& b) {
    return a.dim() == b.dim() && (a.coords_.array() == b.coords_.array()).all();
  }

 private:
  Vector coords_;
};

bool all_finite(const Vector& v);

// Comma-separated coordinates with 17 significant digits.
std::string format_point(const Vector& v, char separator = ',');
Vector parse_vector(const std::string& text, char separator = ',');

}  // namespace ccfom
