#include "ccfom/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace ccfom {

namespace {

constexpr double kWidth = 800, kHeight = 600;
constexpr double kLeft = 80, kRight = 200, kTop = 40, kBottom = 60;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

void write_svg(std::ostream& out, const std::vector<PlotSeries>& series, const std::string& title) {
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
  const auto extend = [&](const std::vector<std::pair<double, double>>& pts) {
    for (auto [x, y] : pts) {
      if (!(x > 0) || !(y > 0) || !std::isfinite(x) || !std::isfinite(y)) continue;
      xmin = std::min(xmin, x), xmax = std::max(xmax, x);
      ymin = std::min(ymin, y), ymax = std::max(ymax, y);
    }
  };
  for (const auto& s : series) extend(s.measured), extend(s.bound);
  if (!(xmin <= xmax)) xmin = 1, xmax = 10, ymin = 1e-3, ymax = 1;

  const double lx0 = std::floor(std::log10(xmin)), lx1 = std::max(lx0 + 1, std::ceil(std::log10(xmax)));
  const double ly0 = std::floor(std::log10(ymin)), ly1 = std::max(ly0 + 1, std::ceil(std::log10(ymax)));
  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  const auto sx = [&](double x) { return kLeft + (std::log10(x) - lx0) / (lx1 - lx0) * pw; };
  const auto sy = [&](double y) { return kTop + (ly1 - std::log10(y)) / (ly1 - ly0) * ph; };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" viewBox=\"0 0 800 600\">\n"
      << "<rect width=\"800\" height=\"600\" fill=\"white\"/>\n"
      << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" << escape(title)
      << "</text>\n"
      << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\"" << num(pw) << "\" height=\"" << num(ph)
      << "\" fill=\"none\" stroke=\"black\"/>\n";

  const int ystep = std::max(1, static_cast<int>((ly1 - ly0) / 10) + 1);
  for (double e = lx0; e <= lx1; ++e) {
    const double x = kLeft + (e - lx0) / (lx1 - lx0) * pw;
    out << "<line x1=\"" << num(x) << "\" y1=\"" << num(kTop) << "\" x2=\"" << num(x) << "\" y2=\"" << num(kTop + ph)
        << "\" stroke=\"#ddd\"/>\n<text x=\"" << num(x) << "\" y=\"" << num(kTop + ph + 18)
        << "\" text-anchor=\"middle\" font-size=\"12\">1e" << static_cast<int>(e) << "</text>\n";
  }
  for (double e = ly0; e <= ly1; e += ystep) {
    const double y = kTop + (ly1 - e) / (ly1 - ly0) * ph;
    out << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(y) << "\" x2=\"" << num(kLeft + pw) << "\" y2=\"" << num(y)
        << "\" stroke=\"#ddd\"/>\n<text x=\"" << num(kLeft - 6) << "\" y=\"" << num(y + 4)
        << "\" text-anchor=\"end\" font-size=\"12\">1e" << static_cast<int>(e) << "</text>\n";
  }
  out << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"" << num(kHeight - 20)
      << "\" text-anchor=\"middle\" font-size=\"13\">k</text>\n"
      << "<text x=\"20\" y=\"" << num(kTop + ph / 2) << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 20 "
      << num(kTop + ph / 2) << ")\">f(x_k) - f*</text>\n";

  const auto polyline = [&](const std::vector<std::pair<double, double>>& pts, const char* color, bool dashed) {
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\"";
    if (dashed) out << " stroke-dasharray=\"6 4\"";
    out << " points=\"";
    for (auto [x, y] : pts) {
      if (x > 0 && y > 0 && std::isfinite(x) && std::isfinite(y)) out << num(sx(x)) << ',' << num(sy(y)) << ' ';
    }
    out << "\"/>\n";
  };
  for (std::size_t i = 0; i < series.size(); ++i) {
    const char* color = kPalette[i % std::size(kPalette)];
    polyline(series[i].measured, color, false);
    polyline(series[i].bound, color, true);
    const double ly = kTop + 14 + 18.0 * static_cast<double>(i);
    out << "<line x1=\"" << num(kWidth - kRight + 10) << "\" y1=\"" << num(ly - 4) << "\" x2=\""
        << num(kWidth - kRight + 30) << "\" y2=\"" << num(ly - 4) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n"
        << "<text x=\"" << num(kWidth - kRight + 34) << "\" y=\"" << num(ly) << "\" font-size=\"11\">"
        << escape(series[i].label) << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace ccfom
