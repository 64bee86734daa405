#include "filament/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "filament/io.hpp"

namespace filament {

namespace {

std::string num(double v) {
  std::ostringstream ss;
  ss.precision(7);
  ss << v;
  return ss.str();
}

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

std::string style_attrs(const SvgStyle& s) {
  std::ostringstream ss;
  ss << " stroke=\"" << escape(s.stroke) << "\" fill=\"" << escape(s.fill) << "\" stroke-width=\""
     << num(s.stroke_width) << "\" vector-effect=\"non-scaling-stroke\"";
  if (s.opacity < 1.0) ss << " opacity=\"" << num(s.opacity) << "\"";
  return ss.str();
}

// Screen coordinates flip y.
std::string xy(Point2 p) { return num(p.x) + "," + num(-p.y); }

}  // namespace

void SvgFigure::add_points(const std::vector<Point2>& points, SvgStyle style) {
  if (points.empty()) return;
  for (Point2 p : points) box_.add(p);
  layers_.push_back({Kind::points, std::move(style), points, false, {}, 0.0});
}

void SvgFigure::add_polyline(const Polyline& poly, SvgStyle style) {
  if (poly.vertices.empty()) return;
  for (Point2 p : poly.vertices) box_.add(p);
  layers_.push_back({Kind::polyline, std::move(style), poly.vertices, poly.closed, {}, 0.0});
}

void SvgFigure::add_arcs(const std::vector<Arc>& arcs, SvgStyle style) {
  if (arcs.empty()) return;
  for (const Arc& a : arcs) {
    box_.add(a.center - Point2{a.radius, a.radius});
    box_.add(a.center + Point2{a.radius, a.radius});
  }
  layers_.push_back({Kind::arcs, std::move(style), {}, false, arcs, 0.0});
}

void SvgFigure::add_segments(const std::vector<std::pair<Point2, Point2>>& segments, SvgStyle style) {
  if (segments.empty()) return;
  Layer layer{Kind::segments, std::move(style), {}, false, {}, 0.0};
  for (const auto& [a, b] : segments) {
    box_.add(a);
    box_.add(b);
    layer.points.push_back(a);
    layer.points.push_back(b);
  }
  layers_.push_back(std::move(layer));
}

void SvgFigure::add_raster(const std::vector<Point2>& centers, double cell, SvgStyle style) {
  if (centers.empty()) return;
  for (Point2 p : centers) box_.add(p);
  layers_.push_back({Kind::raster, std::move(style), centers, false, {}, cell});
}

std::string SvgFigure::render(int width) const {
  BoundingBox box = box_;
  if (box.empty()) box = {{0.0, 0.0}, {1.0, 1.0}};
  const double w0 = std::max(box.width(), 1e-9);
  const double h0 = std::max(box.height(), 1e-9);
  const double vx = box.lo.x - 0.05 * w0;
  const double vy = -box.hi.y - 0.05 * h0;
  const double vw = 1.1 * w0;
  const double vh = 1.1 * h0;
  const int height = std::max(1, static_cast<int>(std::lround(width * vh / vw)));
  const double extent = std::max(vw, vh);

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width << "\" height=\""
      << height << "\" viewBox=\"" << num(vx) << ' ' << num(vy) << ' ' << num(vw) << ' ' << num(vh) << "\">\n";
  if (!title_.empty()) out << "<title>" << escape(title_) << "</title>\n";
  out << "<rect x=\"" << num(vx) << "\" y=\"" << num(vy) << "\" width=\"" << num(vw) << "\" height=\"" << num(vh)
      << "\" fill=\"#ffffff\"/>\n";
  for (const Layer& layer : layers_) {
    const std::string attrs = style_attrs(layer.style);
    switch (layer.kind) {
      case Kind::points: {
        const double r = layer.style.point_radius * extent;
        out << "<g" << attrs << ">\n";
        for (Point2 p : layer.points) {
          out << "<circle cx=\"" << num(p.x) << "\" cy=\"" << num(-p.y) << "\" r=\"" << num(r) << "\"/>\n";
        }
        out << "</g>\n";
        break;
      }
      case Kind::polyline: {
        out << (layer.closed ? "<polygon" : "<polyline") << " points=\"";
        for (std::size_t i = 0; i < layer.points.size(); ++i) out << (i ? " " : "") << xy(layer.points[i]);
        out << "\"" << attrs << "/>\n";
        break;
      }
      case Kind::arcs: {
        for (const Arc& a : layer.arcs) {
          const std::string r = num(a.radius);
          out << "<path d=\"";
          if (a.full_circle) {
            const Point2 p0 = a.point_at_angle(0.0);
            const Point2 p1 = a.point_at_angle(0.5 * kTwoPi);
            out << "M " << xy(p0) << " A " << r << ' ' << r << " 0 0 0 " << xy(p1) << " A " << r << ' ' << r
                << " 0 0 0 " << xy(p0);
          } else {
            const int large = a.span() > 0.5 * kTwoPi ? 1 : 0;
            out << "M " << xy(a.start_point()) << " A " << r << ' ' << r << " 0 " << large << " 0 "
                << xy(a.end_point());
          }
          out << "\"" << attrs << "/>\n";
        }
        break;
      }
      case Kind::segments: {
        out << "<g" << attrs << ">\n";
        for (std::size_t i = 0; i + 1 < layer.points.size(); i += 2) {
          const Point2 a = layer.points[i], b = layer.points[i + 1];
          out << "<line x1=\"" << num(a.x) << "\" y1=\"" << num(-a.y) << "\" x2=\"" << num(b.x) << "\" y2=\""
              << num(-b.y) << "\"/>\n";
        }
        out << "</g>\n";
        break;
      }
      case Kind::raster: {
        const std::string c = num(layer.cell);
        out << "<g fill=\"" << escape(layer.style.fill == "none" ? layer.style.stroke : layer.style.fill)
            << "\" stroke=\"none\"";
        if (layer.style.opacity < 1.0) out << " opacity=\"" << num(layer.style.opacity) << "\"";
        out << ">\n";
        for (Point2 p : layer.points) {
          out << "<rect x=\"" << num(p.x - 0.5 * layer.cell) << "\" y=\"" << num(-p.y - 0.5 * layer.cell)
              << "\" width=\"" << c << "\" height=\"" << c << "\"/>\n";
        }
        out << "</g>\n";
        break;
      }
    }
  }
  out << "</svg>\n";
  return out.str();
}

void SvgFigure::save(const std::string& path, int width) const { write_text(path, render(width)); }

}  // namespace filament
