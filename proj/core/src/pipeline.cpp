#include "filament/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <numbers>
#include <sstream>

#include "filament/io.hpp"
#include "json.hpp"
#include "filament/svg.hpp"

namespace filament {

using nlohmann::json;

StageError::StageError(std::string stage, const std::string& cause)
    : Error(stage + ": " + cause), stage_(std::move(stage)) {}

namespace {

// ---------------------------------------------------------------------------
// Configuration <-> JSON

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }
json negative_as_null(double v) { return v < 0.0 ? json(nullptr) : json(v); }
json box_json(const BoundingBox& b) { return json::array({b.lo.x, b.lo.y, b.hi.x, b.hi.y}); }

const char* mode_name(ExtractMode m) {
  switch (m) {
    case ExtractMode::open: return "open";
    case ExtractMode::closed: return "closed";
    case ExtractMode::general: return "general";
  }
  return "general";
}

json curve_json(const CurveSpec& c) {
  json j;
  j["family"] = c.family;
  j["params"] = json::object();
  for (const auto& [k, v] : c.params) j["params"][k] = v;
  json pts = json::array();
  for (Point2 p : c.points) pts.push_back({p.x, p.y});
  j["points"] = pts;
  j["closed"] = c.closed;
  j["resolution"] = c.resolution;
  return j;
}

json to_json_doc(const PipelineConfig& c) {
  json j;
  json curves = json::array();
  for (const CurveSpec& s : c.model.curves) curves.push_back(curve_json(s));
  j["model"] = {{"curves", curves}, {"weights", c.model.weights}, {"density_amplitude", c.model.density_amplitude}};
  j["noise"] = {{"sigma", c.noise.sigma}, {"beta", c.noise.beta}};
  j["sampler"] = {{"n", c.sampler.n},
                  {"eta", c.sampler.eta},
                  {"seed", c.sampler.seed},
                  {"clutter_region", box_json(c.sampler.clutter_region)},
                  {"enforce_thickness", c.sampler.enforce_thickness}};
  j["support"] = {{"epsilon_method", c.support.rule.method == EpsilonMethod::nn_max ? "nn-max" : "rate-formula"},
                  {"C", c.support.rule.constant},
                  {"epsilon", optional_number(c.support.epsilon)}};
  j["edt"] = {{"delta", negative_as_null(c.edt.delta)}, {"grid_step", negative_as_null(c.edt.grid_step)}};
  j["medial"] = {{"spacing", negative_as_null(c.medial.spacing)}, {"c", c.medial.c}};
  j["extract"] = {{"mode", mode_name(c.extract.mode)},
                  {"xi", negative_as_null(c.extract.xi)},
                  {"eta_gap", negative_as_null(c.extract.eta_gap)},
                  {"cut_radius_factor", c.extract.cut_radius_factor},
                  {"relax", c.extract.relax},
                  {"hitting_time", c.extract.hitting_time}};
  j["declutter"] = {{"enabled", c.declutter.enabled},
                    {"bandwidth", c.declutter.bandwidth ? json(*c.declutter.bandwidth) : json("auto")},
                    {"region", c.declutter.region ? box_json(*c.declutter.region) : json(nullptr)}};
  j["eval"] = {{"n_grid", c.eval.n_grid}, {"replications", c.eval.replications}, {"estimator", c.eval.estimator}};
  return j;
}

/// Overlays `src` onto `dst`, rejecting keys the defaults do not have.
void merge(json& dst, const json& src, const std::string& path, std::vector<std::string>& errors) {
  if (!src.is_object()) {
    errors.push_back(path + ": expected an object");
    return;
  }
  for (auto it = src.begin(); it != src.end(); ++it) {
    const std::string key = path.empty() ? it.key() : path + "." + it.key();
    if (!dst.contains(it.key())) {
      errors.push_back(key + ": unknown key");
      continue;
    }
    json& d = dst[it.key()];
    if (d.is_object() && it->is_object() && key != "model") {
      merge(d, *it, key, errors);
    } else {
      d = *it;
    }
  }
}

class Reader {
 public:
  explicit Reader(std::vector<std::string>& errors) : errors_(errors) {}

  const json* at(const json& j, const std::string& section, const std::string& key) {
    if (!j.contains(section) || !j[section].contains(key)) {
      errors_.push_back(section + "." + key + ": missing");
      return nullptr;
    }
    return &j[section][key];
  }
  double number(const json& v, const std::string& name, double fallback) {
    if (!v.is_number()) {
      errors_.push_back(name + ": expected a number");
      return fallback;
    }
    return v.get<double>();
  }
  std::size_t count(const json& v, const std::string& name, std::size_t fallback) {
    if (!v.is_number_integer() && !v.is_number_unsigned()) {
      errors_.push_back(name + ": expected a nonnegative integer");
      return fallback;
    }
    if (v.is_number_integer() && v.get<long long>() < 0) {
      errors_.push_back(name + ": expected a nonnegative integer");
      return fallback;
    }
    return v.get<std::size_t>();
  }
  bool boolean(const json& v, const std::string& name, bool fallback) {
    if (!v.is_boolean()) {
      errors_.push_back(name + ": expected true or false");
      return fallback;
    }
    return v.get<bool>();
  }
  std::string text(const json& v, const std::string& name, const std::string& fallback) {
    if (!v.is_string()) {
      errors_.push_back(name + ": expected a string");
      return fallback;
    }
    return v.get<std::string>();
  }
  BoundingBox box(const json& v, const std::string& name, BoundingBox fallback) {
    if (!v.is_array() || v.size() != 4 || !std::all_of(v.begin(), v.end(), [](const json& x) { return x.is_number(); })) {
      errors_.push_back(name + ": expected [xmin, ymin, xmax, ymax]");
      return fallback;
    }
    BoundingBox b{{v[0].get<double>(), v[1].get<double>()}, {v[2].get<double>(), v[3].get<double>()}};
    if (!(b.hi.x > b.lo.x && b.hi.y > b.lo.y)) {
      errors_.push_back(name + ": box must have positive area");
      return fallback;
    }
    return b;
  }
  /// null -> -1 (module default).
  double defaulted(const json& v, const std::string& name) {
    if (v.is_null()) return -1.0;
    const double x = number(v, name, -1.0);
    if (!(x > 0.0) && name != "edt.delta") errors_.push_back(name + ": must be positive or null");
    if (name == "edt.delta" && x < 0.0) errors_.push_back(name + ": must be >= 0 or null");
    return x;
  }
  void error(const std::string& e) { errors_.push_back(e); }

 private:
  std::vector<std::string>& errors_;
};

PipelineConfig from_json_doc(const json& j) {
  std::vector<std::string> errors;
  Reader r(errors);
  PipelineConfig c;

  // model
  if (const json* curves = r.at(j, "model", "curves")) {
    if (!curves->is_array() || curves->empty()) {
      r.error("model.curves: expected a nonempty array");
    } else {
      for (std::size_t k = 0; k < curves->size(); ++k) {
        const json& cj = (*curves)[k];
        const std::string name = "model.curves." + std::to_string(k);
        if (!cj.is_object()) {
          r.error(name + ": expected an object");
          continue;
        }
        CurveSpec s;
        for (auto it = cj.begin(); it != cj.end(); ++it) {
          const std::string key = it.key();
          if (key == "family") {
            s.family = r.text(*it, name + ".family", s.family);
          } else if (key == "params") {
            if (!it->is_object()) {
              r.error(name + ".params: expected an object");
              continue;
            }
            for (auto p = it->begin(); p != it->end(); ++p) s.params[p.key()] = r.number(*p, name + ".params." + p.key(), 0.0);
          } else if (key == "points") {
            if (!it->is_array()) {
              r.error(name + ".points: expected [[x, y], ...]");
              continue;
            }
            for (const json& p : *it) {
              if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
                r.error(name + ".points: expected [[x, y], ...]");
                break;
              }
              s.points.push_back({p[0].get<double>(), p[1].get<double>()});
            }
          } else if (key == "closed") {
            s.closed = r.boolean(*it, name + ".closed", false);
          } else if (key == "resolution") {
            s.resolution = static_cast<int>(r.count(*it, name + ".resolution", 512));
          } else {
            r.error(name + "." + key + ": unknown key");
          }
        }
        c.model.curves.push_back(std::move(s));
      }
    }
  }
  if (const json* w = r.at(j, "model", "weights")) {
    if (!w->is_array()) r.error("model.weights: expected an array");
    else for (const json& x : *w) c.model.weights.push_back(r.number(x, "model.weights", 1.0));
  }
  if (const json* v = r.at(j, "model", "density_amplitude")) c.model.density_amplitude = r.number(*v, "model.density_amplitude", 0.0);

  if (const json* v = r.at(j, "noise", "sigma")) c.noise.sigma = r.number(*v, "noise.sigma", 0.2);
  if (const json* v = r.at(j, "noise", "beta")) c.noise.beta = r.number(*v, "noise.beta", 0.0);
  if (!(c.noise.sigma > 0.0)) r.error("noise.sigma: must be positive");
  if (!(c.noise.beta >= 0.0)) r.error("noise.beta: must be >= 0");

  if (const json* v = r.at(j, "sampler", "n")) c.sampler.n = r.count(*v, "sampler.n", 2000);
  if (const json* v = r.at(j, "sampler", "eta")) c.sampler.eta = r.number(*v, "sampler.eta", 1.0);
  if (const json* v = r.at(j, "sampler", "seed")) c.sampler.seed = r.count(*v, "sampler.seed", 1);
  if (const json* v = r.at(j, "sampler", "clutter_region")) c.sampler.clutter_region = r.box(*v, "sampler.clutter_region", c.sampler.clutter_region);
  if (const json* v = r.at(j, "sampler", "enforce_thickness")) c.sampler.enforce_thickness = r.boolean(*v, "sampler.enforce_thickness", true);
  if (!(c.sampler.eta >= 0.0 && c.sampler.eta <= 1.0)) r.error("sampler.eta: must lie in [0, 1]");

  if (const json* v = r.at(j, "support", "epsilon_method")) {
    const std::string m = r.text(*v, "support.epsilon_method", "nn-max");
    if (m == "nn-max") c.support.rule.method = EpsilonMethod::nn_max;
    else if (m == "rate-formula") c.support.rule.method = EpsilonMethod::rate_formula;
    else r.error("support.epsilon_method: expected nn-max or rate-formula");
  }
  if (const json* v = r.at(j, "support", "C")) c.support.rule.constant = r.number(*v, "support.C", 1.6);
  if (const json* v = r.at(j, "support", "epsilon")) {
    if (!v->is_null()) {
      c.support.epsilon = r.number(*v, "support.epsilon", 0.1);
      if (!(*c.support.epsilon > 0.0)) r.error("support.epsilon: must be positive or null");
    }
  }
  c.support.rule.alpha = c.noise.alpha();

  if (const json* v = r.at(j, "edt", "delta")) c.edt.delta = r.defaulted(*v, "edt.delta");
  if (const json* v = r.at(j, "edt", "grid_step")) c.edt.grid_step = r.defaulted(*v, "edt.grid_step");
  if (const json* v = r.at(j, "medial", "spacing")) c.medial.spacing = r.defaulted(*v, "medial.spacing");
  if (const json* v = r.at(j, "medial", "c")) c.medial.c = r.number(*v, "medial.c", 17.0);
  if (!(c.medial.c >= 1.0)) r.error("medial.c: must be >= 1");

  if (const json* v = r.at(j, "extract", "mode")) {
    const std::string m = r.text(*v, "extract.mode", "general");
    if (m == "open") c.extract.mode = ExtractMode::open;
    else if (m == "closed") c.extract.mode = ExtractMode::closed;
    else if (m == "general") c.extract.mode = ExtractMode::general;
    else r.error("extract.mode: expected open, closed or general");
  }
  if (const json* v = r.at(j, "extract", "xi")) c.extract.xi = r.defaulted(*v, "extract.xi");
  if (const json* v = r.at(j, "extract", "eta_gap")) c.extract.eta_gap = r.defaulted(*v, "extract.eta_gap");
  if (const json* v = r.at(j, "extract", "cut_radius_factor")) c.extract.cut_radius_factor = r.number(*v, "extract.cut_radius_factor", 6.0);
  if (const json* v = r.at(j, "extract", "relax")) c.extract.relax = r.boolean(*v, "extract.relax", true);
  if (const json* v = r.at(j, "extract", "hitting_time")) c.extract.hitting_time = r.boolean(*v, "extract.hitting_time", false);

  if (const json* v = r.at(j, "declutter", "enabled")) c.declutter.enabled = r.boolean(*v, "declutter.enabled", false);
  if (const json* v = r.at(j, "declutter", "bandwidth")) {
    if (v->is_string() && v->get<std::string>() == "auto") {
      c.declutter.bandwidth.reset();
    } else {
      c.declutter.bandwidth = r.number(*v, "declutter.bandwidth", 0.1);
      if (!(*c.declutter.bandwidth > 0.0)) r.error("declutter.bandwidth: must be positive or \"auto\"");
    }
  }
  if (const json* v = r.at(j, "declutter", "region")) {
    if (!v->is_null()) c.declutter.region = r.box(*v, "declutter.region", BoundingBox{{-1, -1}, {1, 1}});
  }

  if (const json* v = r.at(j, "eval", "n_grid")) {
    c.eval.n_grid.clear();
    if (!v->is_array()) r.error("eval.n_grid: expected an array");
    else for (const json& x : *v) c.eval.n_grid.push_back(r.count(x, "eval.n_grid", 0));
  }
  if (const json* v = r.at(j, "eval", "replications")) c.eval.replications = r.count(*v, "eval.replications", 20);
  if (const json* v = r.at(j, "eval", "estimator")) {
    c.eval.estimator = r.text(*v, "eval.estimator", "edt");
    static const std::vector<std::string> known{"edt", "medial-raw", "medial-completed", "support"};
    if (std::find(known.begin(), known.end(), c.eval.estimator) == known.end()) {
      r.error("eval.estimator: expected edt, medial-raw, medial-completed or support");
    }
  }

  if (!errors.empty()) {
    std::ostringstream msg;
    msg << "invalid configuration:";
    for (const auto& e : errors) msg << "\n  " << e;
    throw ConfigError(msg.str());
  }
  return c;
}

void apply_override(json& doc, const std::string& assignment, std::vector<std::string>& errors) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    errors.push_back(assignment + ": expected key.path=value");
    return;
  }
  const std::string path = assignment.substr(0, eq);
  const std::string raw = assignment.substr(eq + 1);
  json value = json::parse(raw, nullptr, false);
  if (value.is_discarded()) value = raw;

  json* node = &doc;
  std::istringstream ss(path);
  std::string token;
  std::vector<std::string> tokens;
  while (std::getline(ss, token, '.')) tokens.push_back(token);
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const std::string& t = tokens[i];
    const bool last = i + 1 == tokens.size();
    if (node->is_array()) {
      const bool numeric = !t.empty() && std::all_of(t.begin(), t.end(), ::isdigit);
      if (!numeric || std::stoul(t) >= node->size()) {
        errors.push_back(path + ": no element '" + t + "'");
        return;
      }
      node = &(*node)[std::stoul(t)];
    } else if (node->is_object()) {
      const bool free_form = i > 0 && tokens[i - 1] == "params";
      if (!node->contains(t) && !free_form) {
        errors.push_back(path + ": unknown key");
        return;
      }
      node = &(*node)[t];
    } else {
      errors.push_back(path + ": cannot descend into a scalar");
      return;
    }
    if (last) *node = value;
  }
}

}  // namespace

PipelineConfig default_config() {
  PipelineConfig c;
  CurveSpec circle;
  circle.family = "circle";
  circle.params = {{"r", 1.0}};
  c.model.curves.push_back(circle);
  c.support.rule.alpha = c.noise.alpha();
  return c;
}

PipelineConfig parse_config(const std::string& json_text, const std::vector<std::string>& overrides) {
  json doc = to_json_doc(default_config());
  std::vector<std::string> errors;
  if (!json_text.empty()) {
    json user = json::parse(json_text, nullptr, false);
    if (user.is_discarded()) throw ConfigError("invalid configuration: not valid JSON");
    // Shorthand: {"model": {"family": ..., "params": ...}} for a single curve.
    if (user.is_object() && user.contains("model") && user["model"].is_object() &&
        user["model"].contains("family")) {
      json m = user["model"];
      json curve = curve_json(CurveSpec{});
      curve["params"] = json::object();
      for (const char* k : {"family", "params", "points", "closed", "resolution"}) {
        if (m.contains(k)) {
          curve[k] = m[k];
          m.erase(k);
        }
      }
      m["curves"] = json::array({curve});
      user["model"] = m;
    }
    if (user.is_object() && user.contains("model") && user["model"].is_object()) {
      json& model = doc["model"];
      for (auto it = user["model"].begin(); it != user["model"].end(); ++it) {
        if (!model.contains(it.key())) errors.push_back("model." + it.key() + ": unknown key");
        else model[it.key()] = *it;
      }
      user.erase("model");
    }
    merge(doc, user, "", errors);
  }
  for (const std::string& o : overrides) apply_override(doc, o, errors);
  if (!errors.empty()) {
    std::ostringstream msg;
    msg << "invalid configuration:";
    for (const auto& e : errors) msg << "\n  " << e;
    throw ConfigError(msg.str());
  }
  return from_json_doc(doc);
}

std::string config_to_json(const PipelineConfig& config) { return to_json_doc(config).dump(2); }

// ---------------------------------------------------------------------------
// Stages

std::vector<FilamentCurve> build_curves(const PipelineConfig& config) {
  std::vector<FilamentCurve> out;
  try {
    for (const CurveSpec& s : config.model.curves) out.push_back(build_curve(s));
  } catch (const Error& e) {
    throw StageError("model", e.what());
  }
  return out;
}

SamplerConfig sampler_config(const PipelineConfig& config) {
  SamplerConfig s;
  s.curves = build_curves(config);
  s.weights = config.model.weights;
  s.h.cosine_amplitude = config.model.density_amplitude;
  s.noise = config.noise;
  s.n = config.sampler.n;
  s.eta = config.sampler.eta;
  s.clutter_region = config.sampler.clutter_region;
  s.seed = config.sampler.seed;
  s.enforce_thickness = config.sampler.enforce_thickness;
  return s;
}

LabeledSample simulate(const PipelineConfig& config) {
  const SamplerConfig s = sampler_config(config);
  try {
    return sample(s);
  } catch (const Error& e) {
    throw StageError("simulate", e.what());
  }
}

double choose_epsilon(const std::vector<Point2>& points, const PipelineConfig& config) {
  if (config.support.epsilon) return *config.support.epsilon;
  try {
    return select_epsilon(points, config.support.rule);
  } catch (const Error& e) {
    throw StageError("support", e.what());
  }
}

std::shared_ptr<const SupportEstimate> estimate_support(const std::vector<Point2>& points,
                                                        const PipelineConfig& config) {
  const double eps = choose_epsilon(points, config);
  try {
    return SupportEstimate::build(points, eps);
  } catch (const Error& e) {
    throw StageError("support", e.what());
  }
}

EdtEstimate estimate_edt(std::shared_ptr<const SupportEstimate> support, const PipelineConfig& config) {
  try {
    return edt_region(std::move(support), config.edt);
  } catch (const Error& e) {
    throw StageError("estimate-edt", e.what());
  }
}

ExtractedCurve extract(const EdtEstimate& edt, const PipelineConfig& config) {
  try {
    return extract_curve(region_view(edt), config.extract);
  } catch (const Error& e) {
    throw StageError("extract", e.what());
  }
}

MedialResult estimate_medial(const SupportEstimate& support, double sigma_hat, const PipelineConfig& config,
                             const ExtractedCurve* curve) {
  try {
    MedialResult r;
    const BoundaryArrangement& arr = support.arrangement();
    const double eps = support.epsilon();
    const bool has_hole = std::any_of(arr.loops().begin(), arr.loops().end(), [eps](const BoundaryLoop& l) {
      return l.is_hole() && -l.signed_area >= std::numbers::pi * eps * eps;
    });
    if (has_hole || !curve) {
      r.split = split_closed(arr, eps);
    } else {
      EndpointSplitConfig sc;
      sc.c = config.medial.c;
      sc.sigma_hat = sigma_hat;
      sc.epsilon = eps;
      r.split = split_open(arr, curve->x0, curve->x1, sc);
    }
    const double spacing = config.medial.spacing > 0.0 ? config.medial.spacing : 0.25 * eps;
    r.estimate = medial_fit(r.split, spacing);
    try {
      r.completed = complete(r.estimate);
    } catch (const Error& e) {
      r.completion_error = e.what();
    }
    return r;
  } catch (const StageError&) {
    throw;
  } catch (const Error& e) {
    throw StageError("estimate-medial", e.what());
  }
}

std::vector<ComponentResult> run_components(const std::vector<Point2>& points, double epsilon,
                                            const PipelineConfig& config, std::size_t min_points) {
  const BallUnion balls(points, epsilon);
  std::vector<ComponentResult> out;
  for (const auto& members : balls.components()) {
    if (members.size() < min_points) continue;
    ComponentResult cr;
    for (std::size_t i : members) cr.points.push_back(points[i]);
    try {
      cr.support = SupportEstimate::build(cr.points, epsilon);
    } catch (const Error& e) {
      cr.errors.push_back(std::string("support: ") + e.what());
      out.push_back(std::move(cr));
      continue;
    }
    try {
      cr.edt = estimate_edt(cr.support, config);
      cr.curve = extract(*cr.edt, config);
    } catch (const Error& e) {
      cr.errors.push_back(e.what());
    }
    try {
      const double sigma_hat = cr.edt ? cr.edt->sigma_hat() : 0.0;
      cr.medial = estimate_medial(*cr.support, sigma_hat, config, cr.curve ? &*cr.curve : nullptr);
    } catch (const Error& e) {
      cr.errors.push_back(e.what());
    }
    out.push_back(std::move(cr));
  }
  return out;
}

double replicate_error(const PipelineConfig& base, std::size_t n, std::uint64_t seed) {
  PipelineConfig config = base;
  config.sampler.n = n;
  config.sampler.seed = seed;
  const LabeledSample data = simulate(config);
  const std::vector<FilamentCurve> curves = build_curves(config);
  const FilamentCurve& truth = curves.front();
  const std::vector<Point2> pts = data.filament_points();
  const auto support = estimate_support(pts, config);
  const double eps = support->epsilon();
  const double spacing = std::min(0.1 * eps, 0.005);
  const std::string& which = config.eval.estimator;
  if (which == "support") {
    const SupportModel model = SupportModel::unchecked(truth, config.noise.sigma);
    return boundary_error(model, *support, spacing).hausdorff;
  }
  const EdtEstimate edt = estimate_edt(support, config);
  if (which == "edt") return hausdorff_report(truth, extract(edt, config).path, spacing).hausdorff;
  const std::optional<ExtractedCurve> curve =
      truth.closed() ? std::nullopt : std::optional<ExtractedCurve>(extract(edt, config));
  const MedialResult m = estimate_medial(*support, edt.sigma_hat(), config, curve ? &*curve : nullptr);
  if (which == "medial-raw") {
    return hausdorff_report(truth, m.estimate.midpoints(), spacing).truth_to_estimate;
  }
  if (!m.completed) throw StageError("estimate-medial", m.completion_error);
  return hausdorff_report(truth, *m.completed, spacing).hausdorff;
}

RateReport run_rate_experiment(const PipelineConfig& config) {
  RateExperiment ex;
  ex.n_grid = config.eval.n_grid;
  ex.replications = config.eval.replications;
  ex.base_seed = config.sampler.seed;
  ex.alpha = config.noise.alpha();
  ex.run = [&config](std::size_t n, std::uint64_t seed) { return replicate_error(config, n, seed); };
  try {
    return fit_rate(ex);
  } catch (const Error& e) {
    throw StageError("rate-experiment", e.what());
  }
}

// ---------------------------------------------------------------------------
// Examples

namespace {

FilamentCurve bent_segment(Point2 center, double angle, double length, double bend) {
  const Point2 t = unit_vector(angle);
  const Point2 nrm = perp(t);
  return FilamentCurve::from_parametric(
      [=](double u) {
        const double s = length * (u - 0.5);
        return center + s * t + (bend * s * s) * nrm;
      },
      Topology::open, 512,
      [=](double u) {
        const double s = length * (u - 0.5);
        return length * t + (2.0 * bend * s * length) * nrm;
      });
}

}  // namespace

ExampleSetup example_setup(int example) {
  ExampleSetup s;
  s.region = {{-1.0, -1.0}, {1.0, 1.0}};
  switch (example) {
    case 1: {
      s.curves.push_back(build_curve({"circle", {{"r", 0.35}, {"cx", -0.45}, {"cy", 0.0}}, {}, false, 512}));
      s.curves.push_back(build_curve(
          {"sine-arc", {{"length", 0.9}, {"amplitude", 0.12}, {"cycles", 1.0}, {"cx", 0.5}, {"cy", 0.0}}, {}, false, 512}));
      s.counts = {500, 500};
      s.clutter = 500;
      s.noise = {0.05, 0.0};
      break;
    }
    case 2: {
      s.curves.push_back(build_curve({"circle", {{"r", 0.45}, {"cx", 0.0}, {"cy", 0.0}}, {}, false, 512}));
      s.curves.push_back(build_curve({"segment", {{"x0", -0.9}, {"y0", -0.6}, {"x1", 0.9}, {"y1", 0.6}}, {}, false, 512}));
      s.counts = {500, 500};
      s.clutter = 500;
      s.noise = {0.05, 0.0};
      s.enforce_thickness = false;
      break;
    }
    case 3: {
      // Twelve bent segments from a fixed layout stream.
      Rng layout(20120412);
      for (int k = 0; k < 12; ++k) {
        const Point2 c{layout.uniform(-0.7, 0.7), layout.uniform(-0.7, 0.7)};
        const double angle = layout.uniform(0.0, kTwoPi / 2.0);
        const double length = layout.uniform(0.4, 0.8);
        const double bend = layout.uniform(-0.8, 0.8);
        s.curves.push_back(bent_segment(c, angle, length, bend));
      }
      s.counts.assign(12, 80);
      s.clutter = 350;
      s.noise = {0.03, 0.0};
      s.enforce_thickness = false;
      break;
    }
    default:
      throw Error("unknown example " + std::to_string(example) + " (expected 1, 2 or 3)");
  }
  return s;
}

LabeledSample example_sample(int example, std::uint64_t seed) {
  const ExampleSetup s = example_setup(example);
  SamplerConfig sc;
  sc.curves = s.curves;
  sc.noise = s.noise;
  sc.clutter_region = s.region;
  sc.seed = seed;
  sc.enforce_thickness = s.enforce_thickness;
  return sample_counts(sc, s.counts, s.clutter);
}

ExampleReport reproduce_example(int example, const std::string& out_dir, std::uint64_t seed,
                                const PipelineConfig& config) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  const ExampleSetup setup = example_setup(example);
  const LabeledSample data = example_sample(example, seed);
  ExampleReport rep;
  rep.example = example;
  rep.points = data.points.size();
  auto path = [&](const std::string& name) {
    const std::string p = (fs::path(out_dir) / name).string();
    rep.files.push_back(p);
    return p;
  };

  const std::vector<std::string> palette{"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b", "#e377c2",
                                         "#7f7f7f", "#bcbd22", "#17becf", "#ff7f0e", "#393b79", "#637939"};
  auto color = [&](std::size_t k) { return palette[k % palette.size()]; };
  auto add_truth = [&](SvgFigure& fig, const std::string& stroke, double width) {
    for (std::size_t k = 0; k < setup.curves.size(); ++k) {
      fig.add_polyline(setup.curves[k].polyline(), {stroke.empty() ? color(k) : stroke, "none", width, 0.004, 1.0});
    }
  };

  // Truth and support.
  {
    SvgFigure fig("true curves and support");
    for (std::size_t k = 0; k < setup.curves.size(); ++k) {
      const SupportModel m = SupportModel::unchecked(setup.curves[k], setup.noise.sigma);
      fig.add_points(m.boundary_samples(0.005), {"none", "#bbbbbb", 0.0, 0.002, 1.0});
    }
    add_truth(fig, "", 1.5);
    fig.save(path("1_truth.svg"));
  }
  // Data.
  {
    SvgFigure fig("data");
    fig.add_points(data.points, {"none", "#000000", 0.0, 0.003, 1.0});
    fig.save(path("2_data.svg"));
  }
  write_points_csv(path("points.csv"), data);

  // Declutter.
  Declutterer d = Declutterer::fit(data.points, config.declutter.region ? config.declutter.region : setup.region,
                                   config.declutter.bandwidth);
  const std::vector<bool> pred = d.classify(data.points);
  rep.confusion = confusion(data.labels, pred);
  std::vector<Point2> kept, dropped;
  for (std::size_t i = 0; i < data.points.size(); ++i) (pred[i] ? kept : dropped).push_back(data.points[i]);
  {
    SvgFigure fig("points marked as clutter");
    fig.add_points(data.points, {"none", "#dddddd", 0.0, 0.003, 1.0});
    fig.add_points(dropped, {"none", "#d62728", 0.0, 0.003, 1.0});
    fig.save(path("3_clutter.svg"));
  }
  {
    SvgFigure fig("decluttered data");
    fig.add_points(kept, {"none", "#000000", 0.0, 0.003, 1.0});
    fig.save(path("4_decluttered.svg"));
  }
  {
    std::ostringstream csv;
    csv << "x,y,label,predicted\n";
    for (std::size_t i = 0; i < data.points.size(); ++i) {
      csv << format_double(data.points[i].x) << ',' << format_double(data.points[i].y) << ',' << data.labels[i]
          << ',' << (pred[i] ? 1 : 0) << '\n';
    }
    write_text(path("decluttered.csv"), csv.str());
  }

  // Estimators per component of S^.
  rep.epsilon = choose_epsilon(kept, config);
  const auto comps = run_components(kept, rep.epsilon, config);
  rep.components = comps.size();
  {
    SvgFigure fig("EDT estimator");
    add_truth(fig, "#aaaaaa", 1.0);
    for (std::size_t k = 0; k < comps.size(); ++k) {
      if (comps[k].edt) fig.add_raster(comps[k].edt->region_points(), comps[k].edt->grid_step(), {color(k), "none", 0.0, 0.0, 0.6});
    }
    fig.save(path("5_edt.svg"));
  }
  {
    SvgFigure fig("medial estimator");
    add_truth(fig, "#aaaaaa", 1.0);
    for (std::size_t k = 0; k < comps.size(); ++k) {
      if (!comps[k].support) continue;
      std::vector<Arc> arcs;
      for (const BoundaryArc& a : comps[k].support->arrangement().arcs()) arcs.push_back(a.arc);
      fig.add_arcs(arcs, {"#999999", "none", 0.5, 0.0, 1.0});
      if (comps[k].medial) {
        fig.add_points(comps[k].medial->estimate.midpoints(), {"none", color(k), 0.0, 0.002, 1.0});
        if (comps[k].medial->completed) fig.add_polyline(*comps[k].medial->completed, {color(k), "none", 1.0, 0.0, 1.0});
      }
    }
    fig.save(path("6_medial.svg"));
  }
  {
    SvgFigure fig("curves extracted from the EDT estimator");
    fig.add_points(data.points, {"none", "#bbbbbb", 0.0, 0.003, 1.0});
    for (std::size_t k = 0; k < comps.size(); ++k) {
      if (comps[k].curve) fig.add_polyline(comps[k].curve->path, {color(k), "none", 2.0, 0.0, 1.0});
    }
    fig.save(path("extract.svg"));
  }

  json report;
  report["example"] = example;
  report["seed"] = seed;
  report["points"] = rep.points;
  report["epsilon"] = rep.epsilon;
  report["bandwidth"] = d.bandwidth();
  report["confusion"] = {{"tp", rep.confusion.tp}, {"fn", rep.confusion.fn}, {"fp", rep.confusion.fp}, {"tn", rep.confusion.tn}};
  json cj = json::array();
  for (const ComponentResult& c : comps) {
    json e;
    e["points"] = c.points.size();
    if (c.edt) e["sigma_hat"] = c.edt->sigma_hat();
    if (c.curve) e["topology"] = to_string(c.curve->topology);
    e["errors"] = c.errors;
    cj.push_back(e);
  }
  report["components"] = cj;
  write_text(path("report.json"), report.dump(2) + "\n");
  return rep;
}

}  // namespace filament
