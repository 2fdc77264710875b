#pragma once

#include <string>
#include <vector>

#include "dgswp/types.hpp"

namespace dgswp {

/// Minimal SVG plot: axes with ticks, scatter layers, polylines and plan
/// segments, mapped from data coordinates. Output is deterministic for
/// identical inputs.
class SvgPlot {
 public:
  SvgPlot(Scalar width = 640.0, Scalar height = 480.0);

  void set_title(const std::string& title) { title_ = title; }

  void add_scatter(const Mat& points_xy, const std::string& color, Scalar radius = 3.0);
  void add_polyline(const std::vector<Scalar>& xs, const std::vector<Scalar>& ys,
                    const std::string& color, Scalar stroke_width = 1.5);
  /// One line per row of [x0 y0 x1 y1].
  void add_segments(const Mat& endpoints, const std::string& color, Scalar opacity = 0.4);

  void save(const std::string& path) const;

 private:
  struct Scatter { Mat pts; std::string color; Scalar radius; };
  struct Line { std::vector<Scalar> xs, ys; std::string color; Scalar width; };
  struct Segments { Mat ends; std::string color; Scalar opacity; };

  void include_point(Scalar x, Scalar y);

  Scalar width_, height_;
  Scalar xmin_ = 0, xmax_ = 1, ymin_ = 0, ymax_ = 1;
  bool has_data_ = false;
  std::string title_;
  std::vector<Scatter> scatters_;
  std::vector<Line> lines_;
  std::vector<Segments> segments_;
};

}  // namespace dgswp
