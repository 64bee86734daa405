#include "filament/edt.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "filament/error.hpp"
#include "filament/parallel.hpp"

namespace filament {

namespace {

constexpr std::size_t kRefinedStarts = 64;
constexpr int kDirections = 16;

struct Candidate {
  double value;
  Point2 point;
};

Candidate pattern_search(const SupportEstimate& s, Point2 start, double value, double step) {
  Candidate best{value, start};
  while (step >= 1e-6) {
    bool moved = false;
    for (int k = 0; k < kDirections; ++k) {
      const Point2 trial = best.point + step * unit_vector(kTwoPi * k / kDirections);
      if (!s.contains(trial)) continue;
      const double v = s.distance_to_boundary(trial);
      if (v > best.value) {
        best = {v, trial};
        moved = true;
      }
    }
    if (!moved) step *= 0.5;
  }
  return best;
}

}  // namespace

SigmaEstimate estimate_sigma(const SupportEstimate& s) {
  const double eps = s.epsilon();
  std::vector<Point2> starts = s.balls().centers();
  const BoundingBox box = s.balls().bounds();
  for (double y = box.lo.y; y <= box.hi.y; y += eps) {
    for (double x = box.lo.x; x <= box.hi.x; x += eps) {
      if (s.contains({x, y})) starts.push_back({x, y});
    }
  }
  std::vector<Candidate> cands(starts.size());
  for (std::size_t i = 0; i < starts.size(); ++i) {
    cands[i] = {s.distance_to_boundary(starts[i]), starts[i]};
  }
  // Descending value; ties by position for determinism.
  std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
    if (a.value != b.value) return a.value > b.value;
    if (a.point.x != b.point.x) return a.point.x < b.point.x;
    return a.point.y < b.point.y;
  });
  const double floor_value = cands.front().value - eps;
  Candidate best = cands.front();
  for (std::size_t i = 0; i < cands.size() && i < kRefinedStarts; ++i) {
    if (cands[i].value < floor_value) break;
    const Candidate c = pattern_search(s, cands[i].point, cands[i].value, 0.5 * eps);
    if (c.value > best.value) best = c;
  }
  return {best.value, best.point};
}

EdtEstimate::EdtEstimate(std::shared_ptr<const SupportEstimate> support, SigmaEstimate sigma, double delta,
                         double grid_step, std::vector<Point2> region_points)
    : support_(std::move(support)),
      sigma_(sigma),
      delta_(delta),
      grid_step_(grid_step),
      region_points_(std::move(region_points)) {}

bool EdtEstimate::contains(Point2 y) const {
  return support_->contains(y) && support_->distance_to_boundary(y) >= threshold();
}

EdtEstimate edt_region(std::shared_ptr<const SupportEstimate> support, const EdtOptions& options) {
  const double eps = support->epsilon();
  const double delta = options.delta < 0.0 ? 2.0 * eps : options.delta;
  const double step = options.grid_step < 0.0 ? 0.25 * eps : options.grid_step;
  const SigmaEstimate sigma = estimate_sigma(*support);
  return edt_region(std::move(support), sigma, delta, step);
}

EdtEstimate edt_region(std::shared_ptr<const SupportEstimate> support, const SigmaEstimate& sigma,
                       double delta, double grid_step) {
  if (!(delta >= 0.0)) throw Error("EDT delta must be >= 0");
  if (!(grid_step > 0.0)) throw Error("EDT grid step must be positive");
  const BoundingBox box = support->balls().bounds();
  const auto nx = static_cast<std::size_t>(std::floor(box.width() / grid_step)) + 1;
  const auto ny = static_cast<std::size_t>(std::floor(box.height() / grid_step)) + 1;
  const double threshold = sigma.sigma_hat - delta;

  std::vector<char> keep(nx * ny, 0);
  const SupportEstimate& s = *support;
  parallel_for(nx * ny, [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      const Point2 y{box.lo.x + grid_step * static_cast<double>(k % nx),
                     box.lo.y + grid_step * static_cast<double>(k / nx)};
      keep[k] = s.contains(y) && s.distance_to_boundary(y) >= threshold;
    }
  });
  std::vector<Point2> pts;
  for (std::size_t k = 0; k < keep.size(); ++k) {
    if (keep[k]) {
      pts.push_back({box.lo.x + grid_step * static_cast<double>(k % nx),
                     box.lo.y + grid_step * static_cast<double>(k / nx)});
    }
  }
  if (pts.empty()) throw Error("empty EDT region");
  return EdtEstimate(std::move(support), sigma, delta, grid_step, std::move(pts));
}

EdtCheck edt_lipschitz_check(const SupportModel& truth, const SupportEstimate& support,
                             std::span<const Point2> probes, double spacing) {
  EdtCheck check;
  for (Point2 y : probes) {
    check.max_violation = std::max(check.max_violation, std::abs(support.distance_to_boundary(y) - truth.edt(y)));
  }
  check.boundary_hausdorff = boundary_error(truth, support, spacing).hausdorff;
  return check;
}

}  // namespace filament
