#pragma once

// End-to-end orchestration shared by the command line tool and the tests:
// configuration, the simulate -> declutter -> support -> EDT -> extract /
// medial chain, rate experiments and the example reproductions.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "filament/declutter.hpp"
#include "filament/edt.hpp"
#include "filament/error.hpp"
#include "filament/eval.hpp"
#include "filament/extract.hpp"
#include "filament/medial.hpp"
#include "filament/model.hpp"
#include "filament/sampler.hpp"
#include "filament/support.hpp"

namespace filament {

struct PipelineConfig {
  struct Model {
    std::vector<CurveSpec> curves;
    std::vector<double> weights;
    double density_amplitude = 0.0;
  } model;
  NoiseSpec noise{0.2, 0.0};
  struct Sampler {
    std::size_t n = 2000;
    double eta = 1.0;
    std::uint64_t seed = 1;
    BoundingBox clutter_region{{-1.5, -1.5}, {1.5, 1.5}};
    bool enforce_thickness = true;
  } sampler;
  struct Support {
    EpsilonRule rule;
    std::optional<double> epsilon;  // fixed value overrides the rule
  } support;
  EdtOptions edt;
  struct Medial {
    double spacing = -1.0;  // negative: eps / 4
    double c = 17.0;
  } medial;
  ExtractOptions extract;
  struct Declutter {
    bool enabled = false;
    std::optional<double> bandwidth;
    std::optional<BoundingBox> region;
  } declutter;
  struct Eval {
    std::vector<std::size_t> n_grid{500, 2000, 8000, 32000};
    std::size_t replications = 20;
    std::string estimator = "edt";  // edt | medial-raw | medial-completed
  } eval;
};

/// Invalid configuration; the message lists every problem found.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Pipeline stage failure; what() is "<stage>: <cause>".
class StageError : public Error {
 public:
  StageError(std::string stage, const std::string& cause);
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

PipelineConfig default_config();
/// Parses a JSON document (empty text means defaults) and then applies
/// `key.path=value` overrides, where value is JSON or a bare string.
PipelineConfig parse_config(const std::string& json_text, const std::vector<std::string>& overrides = {});
std::string config_to_json(const PipelineConfig& config);

std::vector<FilamentCurve> build_curves(const PipelineConfig& config);
SamplerConfig sampler_config(const PipelineConfig& config);
LabeledSample simulate(const PipelineConfig& config);

double choose_epsilon(const std::vector<Point2>& points, const PipelineConfig& config);
std::shared_ptr<const SupportEstimate> estimate_support(const std::vector<Point2>& points,
                                                        const PipelineConfig& config);
EdtEstimate estimate_edt(std::shared_ptr<const SupportEstimate> support, const PipelineConfig& config);
ExtractedCurve extract(const EdtEstimate& edt, const PipelineConfig& config);

struct MedialResult {
  SplitBoundary split;
  MedialEstimate estimate;
  std::optional<Polyline> completed;
  std::string completion_error;
};

/// Closed split when S^ has one hole; otherwise the open split using the
/// endpoints of `curve` (required in that case).
MedialResult estimate_medial(const SupportEstimate& support, double sigma_hat, const PipelineConfig& config,
                             const ExtractedCurve* curve = nullptr);

struct ComponentResult {
  std::vector<Point2> points;
  std::shared_ptr<const SupportEstimate> support;
  std::optional<EdtEstimate> edt;
  std::optional<ExtractedCurve> curve;
  std::optional<MedialResult> medial;
  std::vector<std::string> errors;
};

/// Splits the points into connected components of S^ (dropping components
/// with fewer than `min_points` points) and runs EDT, extraction and the
/// medial estimator on each. Stage failures are recorded, not thrown.
std::vector<ComponentResult> run_components(const std::vector<Point2>& points, double epsilon,
                                            const PipelineConfig& config, std::size_t min_points = 20);

/// d_H of one replication for the configured estimator.
double replicate_error(const PipelineConfig& config, std::size_t n, std::uint64_t seed);
RateReport run_rate_experiment(const PipelineConfig& config);

struct ExampleReport {
  int example = 0;
  std::size_t points = 0;
  double epsilon = 0.0;
  ConfusionMatrix confusion;
  std::size_t components = 0;
  std::vector<std::string> files;
};

/// The three example datasets: two well-separated filaments (one closed, one
/// open), two intersecting filaments, and twelve open filaments.
struct ExampleSetup {
  std::vector<FilamentCurve> curves;
  std::vector<std::size_t> counts;
  std::size_t clutter = 0;
  NoiseSpec noise;
  BoundingBox region;
  bool enforce_thickness = true;
};
ExampleSetup example_setup(int example);
LabeledSample example_sample(int example, std::uint64_t seed);

/// Runs the full chain on example k and writes figures and tables to out_dir.
ExampleReport reproduce_example(int example, const std::string& out_dir, std::uint64_t seed,
                                const PipelineConfig& config);

}  // namespace filament
