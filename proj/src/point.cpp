#include "ccfom/point.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "ccfom/error.hpp"

namespace ccfom {

bool all_finite(const Vector& v) { return v.allFinite(); }

Point::Point(Vector coords) : coords_(std::move(coords)) {
  require(coords_.size() > 0, ErrorKind::invalid_argument, "Point must have positive dimension");
  require(all_finite(coords_), ErrorKind::invalid_argument, "Point coordinates must be finite");
}

Point::Point(std::initializer_list<double> coords)
    : Point(Eigen::Map<const Vector>(coords.begin(), static_cast<Eigen::Index>(coords.size()))) {}

Point Point::zeros(Eigen::Index dim) { return Point(Vector::Zero(dim)); }

Point Point::constant(Eigen::Index dim, double value) { return Point(Vector::Constant(dim, value)); }

std::string format_point(const Vector& v, char separator) {
  std::string out;
  char buf[40];
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i > 0) out.push_back(separator);
    std::snprintf(buf, sizeof(buf), "%.17g", v[i]);
    out += buf;
  }
  return out;
}

Vector parse_vector(const std::string& text, char separator) {
  std::vector<double> values;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, separator)) {
    auto first = item.find_first_not_of(" \t");
    if (first == std::string::npos) {
      // space-separated vectors produce empty items between repeated spaces
      if (separator == ' ') continue;
      fail(ErrorKind::invalid_argument, "empty coordinate in '" + text + "'");
    }
    auto last = item.find_last_not_of(" \t");
    std::string token = item.substr(first, last - first + 1);
    char* end = nullptr;
    errno = 0;
    double value = std::strtod(token.c_str(), &end);
    require(end != token.c_str() && *end == '\0' && errno != ERANGE, ErrorKind::invalid_argument,
            "cannot parse number '" + token + "'");
    values.push_back(value);
  }
  require(!values.empty(), ErrorKind::invalid_argument, "empty vector '" + text + "'");
  return Eigen::Map<Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
}

}  // namespace ccfom
