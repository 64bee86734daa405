#pragma once

// Curve extraction from the EDT region: xi-net, minimum spanning tree,
// max-min endpoints, shortest path and relaxation.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "filament/edt.hpp"
#include "filament/geom.hpp"
#include "filament/model.hpp"

namespace filament {

struct Edge {
  std::size_t a = 0;
  std::size_t b = 0;
  double weight = 0.0;
};

struct NetGraph {
  std::vector<Point2> nodes;
  std::vector<Edge> edges;
  double xi = 0.0;

  std::vector<std::vector<std::pair<std::size_t, double>>> adjacency() const;
};

/// Greedy xi-net in scan order; nodes within 2.5 xi are joined.
NetGraph build_net(std::span<const Point2> region_points, double xi);
NetGraph build_net(const EdtEstimate& region, double xi);

/// Kruskal with ties broken by (weight, a, b). Throws "net not connected".
std::vector<Edge> mst(const NetGraph& graph);

/// Same node set, tree edges only.
NetGraph tree_graph(const NetGraph& graph, std::vector<Edge> tree_edges);

using NodePredicate = std::function<bool(std::size_t)>;

/// Node pair maximizing the tree path length with x0 in E0 and x1 in E1
/// (double sweep when unconstrained, exhaustive over admissible nodes
/// otherwise).
/// Empty predicates accept every node.
std::pair<std::size_t, std::size_t> max_min_endpoints(const NetGraph& tree, const NodePredicate& e0 = {},
                                                      const NodePredicate& e1 = {});

/// Refines the endpoints by alternately maximizing the expected hitting time
/// of a random walk on `graph` (at most `max_alternations`).
std::pair<std::size_t, std::size_t> refine_endpoints_hitting_time(const NetGraph& graph,
                                                                  std::pair<std::size_t, std::size_t> ends,
                                                                  const NodePredicate& e0 = {},
                                                                  const NodePredicate& e1 = {},
                                                                  int max_alternations = 10);

/// Dijkstra; returns node ids from `from` to `to`. Throws on identical or
/// unreachable endpoints.
std::vector<std::size_t> shortest_path(const NetGraph& graph, std::size_t from, std::size_t to);
Polyline path_polyline(const NetGraph& graph, const std::vector<std::size_t>& path);

using Membership = std::function<bool(Point2)>;

struct RelaxResult {
  Polyline path;
  int iterations = 0;
};

/// Moves each interior vertex toward the midpoint of its neighbors as far as
/// membership allows (8 bisection steps), until the largest move is below
/// `threshold` or 200 sweeps.
RelaxResult relax(Polyline path, const Membership& inside, double threshold);

/// Region consumed by extraction: grid points, exact membership, the EDT
/// argmax and the scale eps.
struct RegionView {
  std::vector<Point2> points;
  Membership contains;
  Point2 y_hat;
  double epsilon = 0.0;
  std::optional<Point2> hole_point;  // interior of the tube's hole, if known
};

RegionView region_view(const EdtEstimate& edt);

enum class ExtractMode { open, closed, general };

struct ExtractOptions {
  ExtractMode mode = ExtractMode::general;
  double xi = -1.0;       // negative: eps / 8
  double eta_gap = -1.0;  // negative: eps / 10
  double cut_radius_factor = 6.0;
  bool relax = true;
  bool hitting_time = false;
};

struct ExtractedCurve {
  Polyline path;
  Topology topology = Topology::open;
  Point2 x0;
  Point2 x1;
  double path_length = 0.0;
  std::optional<int> winding;
  int relax_iterations = 0;
};

/// Throws "unexpected topology" when general mode finds other than one or
/// two components after the cut.
ExtractedCurve extract_curve(const RegionView& region, const ExtractOptions& options = {});

}  // namespace filament
