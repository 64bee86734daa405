#include "filament/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "filament/error.hpp"
#include "filament/parallel.hpp"
#include "filament/spatial_grid.hpp"

namespace filament {

namespace {

double directed_to_curve(std::span<const Point2> pts, const FilamentCurve& curve) {
  double worst = 0.0;
  for (Point2 p : pts) worst = std::max(worst, curve.distance(p));
  return worst;
}

}  // namespace

HausdorffReport hausdorff_report(const FilamentCurve& truth, std::span<const Point2> estimate, double spacing) {
  if (estimate.empty()) throw Error("empty set");
  if (!(spacing > 0.0)) throw Error("hausdorff spacing must be positive");
  HausdorffReport r;
  const std::vector<Point2> ts = truth.sample(spacing);
  r.truth_to_estimate = directed_hausdorff(ts, estimate);
  r.estimate_to_truth = directed_to_curve(estimate, truth);
  r.hausdorff = std::max(r.truth_to_estimate, r.estimate_to_truth);
  return r;
}

HausdorffReport hausdorff_report(const FilamentCurve& truth, const Polyline& estimate, double spacing) {
  if (estimate.vertices.empty()) throw Error("empty set");
  const std::vector<Point2> pts = estimate.vertices.size() == 1 ? estimate.vertices : estimate.sample(spacing);
  return hausdorff_report(truth, std::span<const Point2>(pts), spacing);
}

LogLogFit fit_loglog(std::span<const std::size_t> n, std::span<const double> y) {
  if (n.size() != y.size() || n.size() < 2) throw Error("log-log fit needs >= 2 matched points");
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < n.size(); ++i) {
    const double nn = static_cast<double>(n[i]);
    xs.push_back(std::log(std::log(nn) / nn));
    if (!(y[i] > 0.0)) throw Error("log-log fit needs positive values");
    ys.push_back(std::log(y[i]));
  }
  const double k = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= k;
  my /= k;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  if (!(sxx > 0.0)) throw Error("log-log fit needs distinct sample sizes");
  LogLogFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  return fit;
}

std::uint64_t replication_seed(std::uint64_t base, std::size_t grid_index, std::size_t replicate) {
  return base + 1000003ULL * grid_index + replicate;
}

RateReport fit_rate(const RateExperiment& ex) {
  if (ex.n_grid.size() < 3) throw Error("rate fit needs at least 3 sample sizes");
  for (std::size_t i = 1; i < ex.n_grid.size(); ++i) {
    if (ex.n_grid[i] <= ex.n_grid[i - 1]) throw Error("n grid must be strictly increasing");
  }
  if (ex.replications < 10) throw Error("rate fit needs at least 10 replications");
  if (!ex.run) throw Error("rate experiment has no replication function");

  const std::size_t g = ex.n_grid.size();
  const std::size_t r = ex.replications;
  std::vector<double> results(g * r, std::numeric_limits<double>::quiet_NaN());
  std::vector<std::string> errors(g * r);
  parallel_for(g * r, [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      const std::size_t i = k / r;
      try {
        results[k] = ex.run(ex.n_grid[i], replication_seed(ex.base_seed, i, k % r));
      } catch (const std::exception& e) {
        errors[k] = e.what();
      }
    }
  });

  RateReport rep;
  rep.n_grid = ex.n_grid;
  rep.replications = r;
  rep.alpha = ex.alpha;
  rep.theoretical_slope = 1.0 / (2.0 + ex.alpha);
  for (std::size_t i = 0; i < g; ++i) {
    std::vector<double> ok;
    std::size_t failed = 0;
    std::string first_error;
    for (std::size_t j = 0; j < r; ++j) {
      const double v = results[i * r + j];
      if (std::isfinite(v)) {
        ok.push_back(v);
      } else {
        ++failed;
        if (first_error.empty()) first_error = errors[i * r + j];
      }
    }
    if (5 * failed > r) {
      std::ostringstream msg;
      msg << "rate experiment: " << failed << "/" << r << " replications failed at n=" << ex.n_grid[i]
          << " (first error: " << first_error << ")";
      throw Error(msg.str());
    }
    std::sort(ok.begin(), ok.end());
    const std::size_t m = ok.size();
    rep.dh_values.push_back(m % 2 ? ok[m / 2] : 0.5 * (ok[m / 2 - 1] + ok[m / 2]));
    rep.failures.push_back(failed);
  }
  const LogLogFit fit = fit_loglog(rep.n_grid, rep.dh_values);
  rep.fitted_slope = fit.slope;
  rep.intercept = fit.intercept;
  return rep;
}

double ConfusionMatrix::filament_recall() const {
  return tp + fn == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fn);
}

double ConfusionMatrix::clutter_recall() const {
  return tn + fp == 0 ? 0.0 : static_cast<double>(tn) / static_cast<double>(tn + fp);
}

ConfusionMatrix confusion(std::span<const int> truth, const std::vector<bool>& predicted_filament) {
  if (truth.size() != predicted_filament.size()) throw Error("confusion: length mismatch");
  ConfusionMatrix m;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const bool fil = truth[i] >= 0;
    const bool pred = predicted_filament[i];
    if (fil && pred) ++m.tp;
    else if (fil) ++m.fn;
    else if (pred) ++m.fp;
    else ++m.tn;
  }
  return m;
}

MultiFilamentReport multi_filament_eval(const std::vector<FilamentCurve>& truths,
                                        const std::vector<std::vector<Point2>>& estimates, double sigma,
                                        double spacing) {
  MultiFilamentReport rep;
  const std::size_t t = truths.size();
  const std::size_t e = estimates.size();
  rep.count_mismatch = t != e;
  rep.match.assign(e, -1);
  rep.hausdorff.assign(e, std::numeric_limits<double>::infinity());

  std::vector<std::vector<Point2>> dense;
  for (const FilamentCurve& c : truths) {
    std::vector<Point2> s;
    for (int k = 0; k < 1000; ++k) s.push_back(c.eval(c.closed() ? k / 1000.0 : k / 999.0));
    dense.push_back(std::move(s));
  }
  for (std::size_t a = 0; a < t; ++a) {
    for (std::size_t b = a + 1; b < t; ++b) {
      if (hausdorff_distance(dense[a], dense[b]) < 1e-9) rep.degenerate = true;
    }
  }

  // Pairwise distances, then greedy matching on the smallest remaining pair.
  struct Pair {
    double d;
    std::size_t est, truth;
  };
  std::vector<Pair> pairs;
  for (std::size_t k = 0; k < e; ++k) {
    if (estimates[k].empty()) continue;
    for (std::size_t j = 0; j < t; ++j) {
      pairs.push_back({hausdorff_report(truths[j], estimates[k], spacing).hausdorff, k, j});
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const Pair& p, const Pair& q) {
    if (p.d != q.d) return p.d < q.d;
    if (p.est != q.est) return p.est < q.est;
    return p.truth < q.truth;
  });
  std::vector<char> used(t, 0);
  for (const Pair& p : pairs) {
    if (rep.match[p.est] >= 0 || used[p.truth]) continue;
    rep.match[p.est] = static_cast<int>(p.truth);
    rep.hausdorff[p.est] = p.d;
    used[p.truth] = 1;
  }
  rep.max_hausdorff = 0.0;
  for (std::size_t k = 0; k < e; ++k) {
    if (rep.match[k] >= 0) rep.max_hausdorff = std::max(rep.max_hausdorff, rep.hausdorff[k]);
  }

  // Well-separated part and the directed distances against it.
  std::vector<Point2> all_est;
  for (const auto& s : estimates) all_est.insert(all_est.end(), s.begin(), s.end());
  if (all_est.empty()) return rep;
  std::vector<Point2> separated;
  for (std::size_t j = 0; j < t; ++j) {
    for (Point2 p : dense[j]) {
      bool alone = true;
      for (std::size_t o = 0; o < t && alone; ++o) {
        if (o == j) continue;
        if (truths[o].distance(p) <= 2.0 * sigma) alone = false;
      }
      if (alone) separated.push_back(p);
    }
  }
  if (!separated.empty()) rep.separated_to_estimate = directed_hausdorff(separated, all_est);
  for (Point2 q : all_est) {
    double best = std::numeric_limits<double>::infinity();
    for (const FilamentCurve& c : truths) best = std::min(best, c.distance(q));
    rep.estimate_to_truth = std::max(rep.estimate_to_truth, best);
  }
  return rep;
}

}  // namespace filament
