#include "dgswp/svg.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace dgswp {

namespace {

constexpr Scalar kMargin = 48.0;

std::string num(Scalar v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

SvgPlot::SvgPlot(Scalar width, Scalar height) : width_(width), height_(height) {}

void SvgPlot::include_point(Scalar x, Scalar y) {
  if (!std::isfinite(x) || !std::isfinite(y)) return;
  if (!has_data_) {
    xmin_ = xmax_ = x;
    ymin_ = ymax_ = y;
    has_data_ = true;
    return;
  }
  xmin_ = std::min(xmin_, x);
  xmax_ = std::max(xmax_, x);
  ymin_ = std::min(ymin_, y);
  ymax_ = std::max(ymax_, y);
}

void SvgPlot::add_scatter(const Mat& points_xy, const std::string& color, Scalar radius) {
  if (points_xy.cols() < 2) throw std::invalid_argument("svg: scatter needs 2 columns");
  for (Index i = 0; i < points_xy.rows(); ++i) include_point(points_xy(i, 0), points_xy(i, 1));
  scatters_.push_back({points_xy.leftCols(2), color, radius});
}

void SvgPlot::add_polyline(const std::vector<Scalar>& xs, const std::vector<Scalar>& ys,
                           const std::string& color, Scalar stroke_width) {
  if (xs.size() != ys.size()) throw std::invalid_argument("svg: polyline length mismatch");
  for (std::size_t i = 0; i < xs.size(); ++i) include_point(xs[i], ys[i]);
  lines_.push_back({xs, ys, color, stroke_width});
}

void SvgPlot::add_segments(const Mat& endpoints, const std::string& color, Scalar opacity) {
  if (endpoints.cols() != 4) throw std::invalid_argument("svg: segments need 4 columns");
  for (Index i = 0; i < endpoints.rows(); ++i) {
    include_point(endpoints(i, 0), endpoints(i, 1));
    include_point(endpoints(i, 2), endpoints(i, 3));
  }
  segments_.push_back({endpoints, color, opacity});
}

void SvgPlot::save(const std::string& path) const {
  Scalar xmin = xmin_, xmax = xmax_, ymin = ymin_, ymax = ymax_;
  if (xmax - xmin < 1e-12) { xmin -= 0.5; xmax += 0.5; }
  if (ymax - ymin < 1e-12) { ymin -= 0.5; ymax += 0.5; }
  const Scalar sx = (width_ - 2 * kMargin) / (xmax - xmin);
  const Scalar sy = (height_ - 2 * kMargin) / (ymax - ymin);
  auto px = [&](Scalar x) { return kMargin + (x - xmin) * sx; };
  auto py = [&](Scalar y) { return height_ - kMargin - (y - ymin) * sy; };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width_)
      << "\" height=\"" << num(height_) << "\" viewBox=\"0 0 " << num(width_) << ' '
      << num(height_) << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // axes
  out << "<line x1=\"" << num(kMargin) << "\" y1=\"" << num(height_ - kMargin)
      << "\" x2=\"" << num(width_ - kMargin) << "\" y2=\"" << num(height_ - kMargin)
      << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << num(kMargin) << "\" y1=\"" << num(kMargin) << "\" x2=\""
      << num(kMargin) << "\" y2=\"" << num(height_ - kMargin) << "\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const Scalar fx = xmin + (xmax - xmin) * k / 4.0;
    const Scalar fy = ymin + (ymax - ymin) * k / 4.0;
    out << "<text x=\"" << num(px(fx)) << "\" y=\"" << num(height_ - kMargin + 16)
        << "\" font-size=\"10\" text-anchor=\"middle\">" << num(fx) << "</text>\n";
    out << "<text x=\"" << num(kMargin - 6) << "\" y=\"" << num(py(fy) + 3)
        << "\" font-size=\"10\" text-anchor=\"end\">" << num(fy) << "</text>\n";
  }
  if (!title_.empty())
    out << "<text x=\"" << num(width_ / 2) << "\" y=\"20\" font-size=\"13\" "
        << "text-anchor=\"middle\">" << title_ << "</text>\n";

  for (const auto& seg : segments_) {
    for (Index i = 0; i < seg.ends.rows(); ++i) {
      out << "<line x1=\"" << num(px(seg.ends(i, 0))) << "\" y1=\"" << num(py(seg.ends(i, 1)))
          << "\" x2=\"" << num(px(seg.ends(i, 2))) << "\" y2=\"" << num(py(seg.ends(i, 3)))
          << "\" stroke=\"" << seg.color << "\" stroke-opacity=\"" << num(seg.opacity)
          << "\"/>\n";
    }
  }
  for (const auto& line : lines_) {
    out << "<polyline fill=\"none\" stroke=\"" << line.color << "\" stroke-width=\""
        << num(line.width) << "\" points=\"";
    for (std::size_t i = 0; i < line.xs.size(); ++i) {
      if (!std::isfinite(line.xs[i]) || !std::isfinite(line.ys[i])) continue;
      out << num(px(line.xs[i])) << ',' << num(py(line.ys[i])) << ' ';
    }
    out << "\"/>\n";
  }
  for (const auto& sc : scatters_) {
    for (Index i = 0; i < sc.pts.rows(); ++i) {
      out << "<circle cx=\"" << num(px(sc.pts(i, 0))) << "\" cy=\"" << num(py(sc.pts(i, 1)))
          << "\" r=\"" << num(sc.radius) << "\" fill=\"" << sc.color << "\"/>\n";
    }
  }
  out << "</svg>\n";

  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open for write: " + path);
  f << out.str();
}

}  // namespace dgswp
