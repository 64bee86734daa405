// filament-lab: command line front end for the filament estimation pipeline.

#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "filament/io.hpp"
#include "filament/pipeline.hpp"
#include "filament/svg.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using filament::Point2;
using nlohmann::json;

namespace {

struct Common {
  std::string config_path;
  std::string out_dir = "out";
  std::optional<std::uint64_t> seed;
  std::vector<std::string> overrides;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--config", c.config_path, "JSON pipeline configuration")->check(CLI::ExistingFile);
  cmd->add_option("--out", c.out_dir, "Output directory")->capture_default_str();
  cmd->add_option("--seed", c.seed, "Random seed (overrides sampler.seed)");
  cmd->add_option("--set", c.overrides, "Override a configuration key, e.g. --set edt.delta=0.05")
      ->take_all()
      ->expected(1);
}

filament::PipelineConfig load(const Common& c) {
  const std::string text = c.config_path.empty() ? std::string() : filament::read_text(c.config_path);
  std::vector<std::string> overrides = c.overrides;
  if (c.seed) overrides.push_back("sampler.seed=" + std::to_string(*c.seed));
  return filament::parse_config(text, overrides);
}

std::string out_file(const Common& c, const std::string& name) {
  fs::create_directories(c.out_dir);
  return (fs::path(c.out_dir) / name).string();
}

std::vector<Point2> read_input(const std::string& path) { return filament::read_points_csv(path).points; }

void write_json(const std::string& path, const json& j) { filament::write_text(path, j.dump(2) + "\n"); }

json point_json(Point2 p) { return json::array({p.x, p.y}); }

filament::SvgStyle dots(const std::string& fill, double radius = 0.003) { return {"none", fill, 0.0, radius, 1.0}; }
filament::SvgStyle line(const std::string& stroke, double width = 1.5) { return {stroke, "none", width, 0.0, 1.0}; }

std::vector<filament::Arc> boundary_arcs(const filament::SupportEstimate& s) {
  std::vector<filament::Arc> arcs;
  for (const auto& a : s.arrangement().arcs()) arcs.push_back(a.arc);
  return arcs;
}

int cmd_simulate(const Common& c) {
  const auto config = load(c);
  const auto data = filament::simulate(config);
  filament::write_points_csv(out_file(c, "points.csv"), data);
  const auto curves = filament::build_curves(config);
  for (std::size_t k = 0; k < curves.size(); ++k) {
    filament::write_curve_csv(out_file(c, "truth_" + std::to_string(k) + ".csv"), curves[k].vertices());
  }
  filament::write_text(out_file(c, "config.json"), filament::config_to_json(config) + "\n");
  std::cout << "simulated " << data.points.size() << " points -> " << c.out_dir << "\n";
  return 0;
}

int cmd_declutter(const Common& c, const std::string& input) {
  const auto config = load(c);
  const auto data = filament::read_points_csv(input);
  filament::Declutterer d = [&] {
    try {
      return filament::Declutterer::fit(data.points, config.declutter.region, config.declutter.bandwidth);
    } catch (const filament::Error& e) {
      throw filament::StageError("declutter", e.what());
    }
  }();
  const auto pred = d.classify(data.points);
  std::ostringstream all;
  all << "x,y,label,predicted\n";
  filament::LabeledSample kept;
  for (std::size_t i = 0; i < data.points.size(); ++i) {
    all << filament::format_double(data.points[i].x) << ',' << filament::format_double(data.points[i].y) << ','
        << data.labels[i] << ',' << (pred[i] ? 1 : 0) << '\n';
    if (pred[i]) {
      kept.points.push_back(data.points[i]);
      kept.labels.push_back(data.labels[i]);
    }
  }
  filament::write_text(out_file(c, "decluttered.csv"), all.str());
  filament::write_points_csv(out_file(c, "filament_points.csv"), kept);
  const auto m = filament::confusion(data.labels, pred);
  write_json(out_file(c, "declutter.json"),
             {{"bandwidth", d.bandwidth()},
              {"volume", d.volume()},
              {"kept", kept.points.size()},
              {"confusion", {{"tp", m.tp}, {"fn", m.fn}, {"fp", m.fp}, {"tn", m.tn}}}});
  std::cout << "kept " << kept.points.size() << " of " << data.points.size() << " points\n";
  return 0;
}

int cmd_estimate_edt(const Common& c, const std::string& input) {
  const auto config = load(c);
  const auto pts = read_input(input);
  const auto support = filament::estimate_support(pts, config);
  const auto edt = filament::estimate_edt(support, config);
  filament::write_curve_csv(out_file(c, "edt_region.csv"), edt.region_points());
  write_json(out_file(c, "edt.json"), {{"epsilon", edt.epsilon()},
                                       {"sigma_hat", edt.sigma_hat()},
                                       {"y_hat", point_json(edt.y_hat())},
                                       {"delta", edt.delta()},
                                       {"grid_step", edt.grid_step()},
                                       {"region_points", edt.region_points().size()},
                                       {"boundary_loops", support->arrangement().loops().size()}});
  filament::SvgFigure fig("EDT estimator");
  fig.add_arcs(boundary_arcs(*support), line("#999999", 0.5));
  fig.add_raster(edt.region_points(), edt.grid_step(), {"#1f77b4", "none", 0.0, 0.0, 0.7});
  fig.add_points(pts, dots("#000000", 0.002));
  fig.save(out_file(c, "edt.svg"));
  std::cout << "sigma_hat=" << edt.sigma_hat() << " region=" << edt.region_points().size() << " points\n";
  return 0;
}

int cmd_extract(const Common& c, const std::string& input) {
  const auto config = load(c);
  const auto pts = read_input(input);
  const auto support = filament::estimate_support(pts, config);
  const auto edt = filament::estimate_edt(support, config);
  const auto curve = filament::extract(edt, config);
  filament::write_curve_csv(out_file(c, "curve.csv"), curve.path.vertices);
  json j{{"topology", filament::to_string(curve.topology)},
         {"x0", point_json(curve.x0)},
         {"x1", point_json(curve.x1)},
         {"path_length", curve.path_length},
         {"relax_iterations", curve.relax_iterations},
         {"epsilon", edt.epsilon()}};
  if (curve.winding) j["winding"] = *curve.winding;
  write_json(out_file(c, "extract.json"), j);
  filament::SvgFigure fig("extracted curve");
  fig.add_points(pts, dots("#bbbbbb"));
  fig.add_polyline(curve.path, line("#d62728", 2.0));
  fig.save(out_file(c, "extract.svg"));
  std::cout << filament::to_string(curve.topology) << " curve with " << curve.path.vertices.size()
            << " vertices\n";
  return 0;
}

int cmd_estimate_medial(const Common& c, const std::string& input) {
  const auto config = load(c);
  const auto pts = read_input(input);
  const auto support = filament::estimate_support(pts, config);
  const auto edt = filament::estimate_edt(support, config);
  std::optional<filament::ExtractedCurve> curve;
  const auto& loops = support->arrangement().loops();
  const bool has_hole = std::any_of(loops.begin(), loops.end(), [](const auto& l) { return l.is_hole(); });
  if (!has_hole) curve = filament::extract(edt, config);
  const auto m = filament::estimate_medial(*support, edt.sigma_hat(), config, curve ? &*curve : nullptr);
  filament::write_medial_csv(out_file(c, "medial.csv"), m.estimate);
  if (m.completed) filament::write_curve_csv(out_file(c, "completion.csv"), m.completed->vertices);
  json j{{"samples", m.estimate.samples.size()},
         {"breakpoints", m.estimate.breakpoints},
         {"closed", m.estimate.closed},
         {"completed", m.completed.has_value()}};
  if (!m.completion_error.empty()) j["completion_error"] = m.completion_error;
  write_json(out_file(c, "medial.json"), j);
  filament::SvgFigure fig("medial estimator");
  fig.add_arcs(boundary_arcs(*support), line("#999999", 0.5));
  fig.add_points(m.estimate.midpoints(), dots("#2ca02c", 0.002));
  if (m.completed) fig.add_polyline(*m.completed, line("#d62728", 1.0));
  fig.save(out_file(c, "medial.svg"));
  std::cout << m.estimate.samples.size() << " midpoints\n";
  return 0;
}

int cmd_evaluate(const Common& c, const std::string& curve_path, bool closed, const std::string& points_path) {
  const auto config = load(c);
  const auto truths = filament::build_curves(config);
  const double spacing = 1e-3;
  json out;
  if (!curve_path.empty()) {
    filament::Polyline poly{filament::read_curve_csv(curve_path), closed};
    const auto r = filament::hausdorff_report(truths.front(), poly, spacing);
    out["curve"] = {{"hausdorff", r.hausdorff},
                    {"truth_to_estimate", r.truth_to_estimate},
                    {"estimate_to_truth", r.estimate_to_truth}};
  }
  if (!points_path.empty()) {
    const auto pts = read_input(points_path);
    const auto r = filament::hausdorff_report(truths.front(), pts, spacing);
    out["points"] = {{"hausdorff", r.hausdorff},
                     {"truth_to_estimate", r.truth_to_estimate},
                     {"estimate_to_truth", r.estimate_to_truth}};
  }
  if (out.empty()) throw filament::StageError("evaluate", "nothing to evaluate (give --curve or --points)");
  write_json(out_file(c, "evaluation.json"), out);
  std::cout << out.dump() << "\n";
  return 0;
}

int cmd_rate(const Common& c) {
  const auto config = load(c);
  const auto rep = filament::run_rate_experiment(config);
  std::ostringstream csv;
  csv << "n,log_rate,median_dh,failures\n";
  filament::SvgFigure fig("log median d_H against log(log n / n)");
  std::vector<Point2> pts;
  for (std::size_t i = 0; i < rep.n_grid.size(); ++i) {
    const double n = static_cast<double>(rep.n_grid[i]);
    const double x = std::log(std::log(n) / n);
    csv << rep.n_grid[i] << ',' << filament::format_double(x) << ',' << filament::format_double(rep.dh_values[i])
        << ',' << rep.failures[i] << '\n';
    pts.push_back({x, std::log(rep.dh_values[i])});
  }
  fig.add_points(pts, dots("#1f77b4", 0.012));
  filament::Polyline fit;
  for (const Point2& p : pts) fit.vertices.push_back({p.x, rep.intercept + rep.fitted_slope * p.x});
  fig.add_polyline(fit, line("#d62728"));
  fig.save(out_file(c, "rate.svg"));
  filament::write_text(out_file(c, "rate.csv"), csv.str());
  write_json(out_file(c, "rate.json"), {{"estimator", config.eval.estimator},
                                        {"n_grid", rep.n_grid},
                                        {"dh_values", rep.dh_values},
                                        {"failures", rep.failures},
                                        {"replications", rep.replications},
                                        {"fitted_slope", rep.fitted_slope},
                                        {"intercept", rep.intercept},
                                        {"theoretical_slope", rep.theoretical_slope},
                                        {"rate_ratio", rep.rate_ratio()},
                                        {"alpha", rep.alpha}});
  std::cout << "slope " << rep.fitted_slope << " (theory " << rep.theoretical_slope << ")\n";
  return 0;
}

int cmd_render(const Common& c, const std::string& input, const std::vector<std::string>& curves,
               const std::string& name) {
  filament::SvgFigure fig;
  if (!input.empty()) fig.add_points(read_input(input), dots("#000000"));
  static const char* colors[] = {"#d62728", "#1f77b4", "#2ca02c", "#9467bd"};
  for (std::size_t k = 0; k < curves.size(); ++k) {
    fig.add_polyline({filament::read_curve_csv(curves[k]), false}, line(colors[k % 4]));
  }
  fig.save(out_file(c, name));
  return 0;
}

int cmd_reproduce(const Common& c, int example) {
  const auto config = load(c);
  const std::uint64_t seed = c.seed ? *c.seed : 1;
  const auto rep = filament::reproduce_example(example, c.out_dir, seed, config);
  std::cout << "example " << example << ": " << rep.points << " points, eps=" << rep.epsilon
            << ", filament recall " << rep.confusion.filament_recall() << ", clutter recall "
            << rep.confusion.clutter_recall() << ", " << rep.components << " components\n";
  for (const auto& f : rep.files) std::cout << "  " << f << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"filament-lab: estimate filaments from noisy planar point clouds"};
  app.require_subcommand(1);
  Common common;
  std::string input, curve_path, points_path, render_name = "figure.svg";
  std::vector<std::string> render_curves;
  bool closed = false;
  int example = 1;

  auto* simulate = app.add_subcommand("simulate", "Draw a labeled sample from the configured model");
  add_common(simulate, common);

  auto* declutter = app.add_subcommand("declutter", "Mark points as filament or clutter");
  add_common(declutter, common);
  declutter->add_option("--input", input, "Points CSV (x,y[,label])")->required()->check(CLI::ExistingFile);

  auto* edt = app.add_subcommand("estimate-edt", "Support estimate and EDT region");
  add_common(edt, common);
  edt->add_option("--input", input, "Points CSV")->required()->check(CLI::ExistingFile);

  auto* medial = app.add_subcommand("estimate-medial", "Medial estimator and its completion");
  add_common(medial, common);
  medial->add_option("--input", input, "Points CSV")->required()->check(CLI::ExistingFile);

  auto* extract = app.add_subcommand("extract", "Extract a curve from the EDT region");
  add_common(extract, common);
  extract->add_option("--input", input, "Points CSV")->required()->check(CLI::ExistingFile);

  auto* evaluate = app.add_subcommand("evaluate", "Hausdorff distance to the configured true curve");
  add_common(evaluate, common);
  evaluate->add_option("--curve", curve_path, "Curve CSV (x,y)")->check(CLI::ExistingFile);
  evaluate->add_flag("--closed", closed, "Treat the curve as closed");
  evaluate->add_option("--points", points_path, "Point set CSV")->check(CLI::ExistingFile);

  auto* rate = app.add_subcommand("rate-experiment", "Replicated runs over eval.n_grid and a log-log slope fit");
  add_common(rate, common);

  auto* render = app.add_subcommand("render", "Render points and curves to SVG");
  add_common(render, common);
  render->add_option("--input", input, "Points CSV")->check(CLI::ExistingFile);
  render->add_option("--curve", render_curves, "Curve CSV (repeatable)")->check(CLI::ExistingFile);
  render->add_option("--name", render_name, "Output file name")->capture_default_str();

  auto* reproduce = app.add_subcommand("reproduce-example", "Run the full chain on example 1, 2 or 3");
  add_common(reproduce, common);
  reproduce->add_option("example", example, "Example number")->required()->check(CLI::Range(1, 3));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*simulate) return cmd_simulate(common);
    if (*declutter) return cmd_declutter(common, input);
    if (*edt) return cmd_estimate_edt(common, input);
    if (*medial) return cmd_estimate_medial(common, input);
    if (*extract) return cmd_extract(common, input);
    if (*evaluate) return cmd_evaluate(common, curve_path, closed, points_path);
    if (*rate) return cmd_rate(common);
    if (*render) return cmd_render(common, input, render_curves, render_name);
    if (*reproduce) return cmd_reproduce(common, example);
  } catch (const filament::ConfigError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const filament::StageError& e) {
    std::cerr << "stage " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
