#pragma once

// CSV files for points, curves and medial samples. Floats are written with
// 17 significant digits so values round-trip exactly.

#include <iosfwd>
#include <string>
#include <vector>

#include "filament/geom.hpp"
#include "filament/medial.hpp"
#include "filament/sampler.hpp"

namespace filament {

std::string format_double(double v);

/// `x,y,label` rows.
void write_points_csv(std::ostream& out, const std::vector<Point2>& points, const std::vector<int>& labels);
void write_points_csv(const std::string& path, const LabeledSample& sample);
/// Accepts `x,y` or `x,y,label` with a header row; missing labels become 0.
LabeledSample read_points_csv(std::istream& in);
LabeledSample read_points_csv(const std::string& path);

/// `x,y` rows in curve order.
void write_curve_csv(std::ostream& out, const std::vector<Point2>& vertices);
void write_curve_csv(const std::string& path, const std::vector<Point2>& vertices);
std::vector<Point2> read_curve_csv(const std::string& path);

/// `y_x,y_y,yhat_x,yhat_y,mid_x,mid_y` rows.
void write_medial_csv(const std::string& path, const MedialEstimate& estimate);

void write_text(const std::string& path, const std::string& text);
std::string read_text(const std::string& path);

}  // namespace filament
