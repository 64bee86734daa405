#pragma once

// Minimal SVG 1.1 figure writer. Data coordinates are y-up; the view box is
// the data bounding box plus a 5% margin. Elements are emitted in layer order.

#include <string>
#include <vector>

#include "filament/geom.hpp"

namespace filament {

struct SvgStyle {
  std::string stroke = "#000000";
  std::string fill = "none";
  double stroke_width = 1.0;  // screen pixels
  double point_radius = 0.004;  // fraction of the larger view extent
  double opacity = 1.0;
};

class SvgFigure {
 public:
  explicit SvgFigure(std::string title = {}) : title_(std::move(title)) {}

  void add_points(const std::vector<Point2>& points, SvgStyle style);
  void add_polyline(const Polyline& poly, SvgStyle style);
  /// One path element per arc.
  void add_arcs(const std::vector<Arc>& arcs, SvgStyle style);
  void add_segments(const std::vector<std::pair<Point2, Point2>>& segments, SvgStyle style);
  /// Grid cells of side `cell` centered on each point.
  void add_raster(const std::vector<Point2>& centers, double cell, SvgStyle style);

  /// Renders at `width` pixels; height follows the aspect ratio.
  std::string render(int width = 600) const;
  void save(const std::string& path, int width = 600) const;

 private:
  enum class Kind { points, polyline, arcs, segments, raster };
  struct Layer {
    Kind kind;
    SvgStyle style;
    std::vector<Point2> points;
    bool closed = false;
    std::vector<Arc> arcs;
    double cell = 0.0;
  };
  std::string title_;
  std::vector<Layer> layers_;
  BoundingBox box_;
};

}  // namespace filament
