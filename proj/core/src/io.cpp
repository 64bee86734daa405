#include "filament/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "filament/error.hpp"

namespace filament {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  return in;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
    while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
    out.push_back(cell);
  }
  return out;
}

double parse_double(const std::string& s, std::size_t line_no) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw Error("CSV line " + std::to_string(line_no) + ": not a number: '" + s + "'");
  }
  return v;
}

}  // namespace

void write_points_csv(std::ostream& out, const std::vector<Point2>& points, const std::vector<int>& labels) {
  if (points.size() != labels.size()) throw Error("points and labels differ in length");
  out << "x,y,label\n";
  for (std::size_t i = 0; i < points.size(); ++i) {
    out << format_double(points[i].x) << ',' << format_double(points[i].y) << ',' << labels[i] << '\n';
  }
}

void write_points_csv(const std::string& path, const LabeledSample& sample) {
  auto out = open_out(path);
  write_points_csv(out, sample.points, sample.labels);
}

LabeledSample read_points_csv(std::istream& in) {
  LabeledSample s;
  std::string line;
  std::size_t line_no = 0;
  bool header = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto cells = split_csv(line);
    if (header) {
      header = false;
      if (cells.size() >= 2 && cells[0] == "x" && cells[1] == "y") continue;
    }
    if (cells.size() < 2) throw Error("CSV line " + std::to_string(line_no) + ": expected x,y[,label]");
    s.points.push_back({parse_double(cells[0], line_no), parse_double(cells[1], line_no)});
    s.labels.push_back(cells.size() >= 3 ? static_cast<int>(parse_double(cells[2], line_no)) : 0);
  }
  return s;
}

LabeledSample read_points_csv(const std::string& path) {
  auto in = open_in(path);
  return read_points_csv(in);
}

void write_curve_csv(std::ostream& out, const std::vector<Point2>& vertices) {
  out << "x,y\n";
  for (Point2 p : vertices) out << format_double(p.x) << ',' << format_double(p.y) << '\n';
}

void write_curve_csv(const std::string& path, const std::vector<Point2>& vertices) {
  auto out = open_out(path);
  write_curve_csv(out, vertices);
}

std::vector<Point2> read_curve_csv(const std::string& path) {
  auto in = open_in(path);
  return read_points_csv(in).points;
}

void write_medial_csv(const std::string& path, const MedialEstimate& estimate) {
  auto out = open_out(path);
  out << "y_x,y_y,yhat_x,yhat_y,mid_x,mid_y\n";
  for (const MedialSample& s : estimate.samples) {
    out << format_double(s.y.x) << ',' << format_double(s.y.y) << ',' << format_double(s.y_hat.x) << ','
        << format_double(s.y_hat.y) << ',' << format_double(s.mid.x) << ',' << format_double(s.mid.y) << '\n';
  }
}

void write_text(const std::string& path, const std::string& text) {
  auto out = open_out(path);
  out << text;
}

std::string read_text(const std::string& path) {
  auto in = open_in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace filament
