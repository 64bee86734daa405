#include "filament/extract.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <numeric>
#include <queue>
#include <unordered_map>

#include "filament/error.hpp"
#include "filament/spatial_grid.hpp"

namespace filament {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kNone = static_cast<std::size_t>(-1);

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  }
};

/// Subgraph on the nodes with keep[i] set; `origin` maps new ids to old ones.
struct Subgraph {
  NetGraph graph;
  std::vector<std::size_t> origin;
};

Subgraph induced(const NetGraph& g, const std::vector<char>& keep) {
  Subgraph sub;
  sub.graph.xi = g.xi;
  std::vector<std::size_t> id(g.nodes.size(), kNone);
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    if (!keep[i]) continue;
    id[i] = sub.graph.nodes.size();
    sub.graph.nodes.push_back(g.nodes[i]);
    sub.origin.push_back(i);
  }
  for (const Edge& e : g.edges) {
    if (id[e.a] != kNone && id[e.b] != kNone) sub.graph.edges.push_back({id[e.a], id[e.b], e.weight});
  }
  return sub;
}

/// Component label per node, numbered by smallest member.
std::vector<std::size_t> component_labels(const NetGraph& g, std::size_t& count) {
  DisjointSets sets(g.nodes.size());
  for (const Edge& e : g.edges) sets.unite(e.a, e.b);
  std::vector<std::size_t> label(g.nodes.size(), kNone), root_label(g.nodes.size(), kNone);
  count = 0;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const std::size_t r = sets.find(i);
    if (root_label[r] == kNone) root_label[r] = count++;
    label[i] = root_label[r];
  }
  return label;
}

std::size_t nearest_node(const NetGraph& g, Point2 p) {
  std::size_t best = 0;
  double best_d = kInf;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const double d = norm2(g.nodes[i] - p);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

Subgraph component_of(const NetGraph& g, std::size_t node) {
  std::size_t count = 0;
  const auto label = component_labels(g, count);
  std::vector<char> keep(g.nodes.size());
  for (std::size_t i = 0; i < g.nodes.size(); ++i) keep[i] = label[i] == label[node];
  return induced(g, keep);
}

std::vector<double> tree_distances(const std::vector<std::vector<std::pair<std::size_t, double>>>& adj,
                                   std::size_t source) {
  std::vector<double> dist(adj.size(), kInf);
  std::vector<std::size_t> stack{source};
  dist[source] = 0.0;
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    for (const auto& [w, len] : adj[v]) {
      if (dist[w] == kInf) {
        dist[w] = dist[v] + len;
        stack.push_back(w);
      }
    }
  }
  return dist;
}

std::size_t farthest(const std::vector<double>& dist, const NodePredicate& accept, std::size_t exclude) {
  std::size_t best = kNone;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    if (i == exclude || dist[i] == kInf || (accept && !accept(i))) continue;
    if (best == kNone || dist[i] > dist[best]) best = i;
  }
  return best;
}

}  // namespace

std::vector<std::vector<std::pair<std::size_t, double>>> NetGraph::adjacency() const {
  std::vector<std::vector<std::pair<std::size_t, double>>> adj(nodes.size());
  for (const Edge& e : edges) {
    adj[e.a].push_back({e.b, e.weight});
    adj[e.b].push_back({e.a, e.weight});
  }
  return adj;
}

NetGraph build_net(std::span<const Point2> region_points, double xi) {
  if (region_points.empty()) throw Error("empty EDT region");
  if (!(xi > 0.0)) throw Error("net spacing xi must be positive");
  NetGraph g;
  g.xi = xi;
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> cells;
  auto key = [](std::int64_t ix, std::int64_t iy) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(ix)) << 32) |
           static_cast<std::uint32_t>(iy);
  };
  const Point2 origin = region_points.front();
  for (Point2 p : region_points) {
    const auto ix = static_cast<std::int64_t>(std::floor((p.x - origin.x) / xi));
    const auto iy = static_cast<std::int64_t>(std::floor((p.y - origin.y) / xi));
    bool covered = false;
    for (std::int64_t dy = -1; dy <= 1 && !covered; ++dy) {
      for (std::int64_t dx = -1; dx <= 1 && !covered; ++dx) {
        const auto it = cells.find(key(ix + dx, iy + dy));
        if (it == cells.end()) continue;
        for (std::size_t k : it->second) {
          if (distance(g.nodes[k], p) < xi) {
            covered = true;
            break;
          }
        }
      }
    }
    if (covered) continue;
    cells[key(ix, iy)].push_back(g.nodes.size());
    g.nodes.push_back(p);
  }
  const double reach = 2.5 * xi;
  const SpatialGrid grid(g.nodes, reach);
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    grid.for_each_within(g.nodes[i], reach, [&](std::size_t j) {
      if (j > i) g.edges.push_back({i, j, distance(g.nodes[i], g.nodes[j])});
    });
  }
  std::sort(g.edges.begin(), g.edges.end(), [](const Edge& p, const Edge& q) {
    return p.a != q.a ? p.a < q.a : p.b < q.b;
  });
  return g;
}

NetGraph build_net(const EdtEstimate& region, double xi) { return build_net(region.region_points(), xi); }

std::vector<Edge> mst(const NetGraph& graph) {
  std::vector<Edge> edges = graph.edges;
  for (Edge& e : edges) {
    if (e.a > e.b) std::swap(e.a, e.b);
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& p, const Edge& q) {
    if (p.weight != q.weight) return p.weight < q.weight;
    if (p.a != q.a) return p.a < q.a;
    return p.b < q.b;
  });
  DisjointSets sets(graph.nodes.size());
  std::vector<Edge> tree;
  for (const Edge& e : edges) {
    if (sets.unite(e.a, e.b)) tree.push_back(e);
  }
  if (graph.nodes.size() > 0 && tree.size() + 1 != graph.nodes.size()) throw Error("net not connected");
  return tree;
}

NetGraph tree_graph(const NetGraph& graph, std::vector<Edge> tree_edges) {
  NetGraph t;
  t.nodes = graph.nodes;
  t.xi = graph.xi;
  t.edges = std::move(tree_edges);
  return t;
}

std::pair<std::size_t, std::size_t> max_min_endpoints(const NetGraph& tree, const NodePredicate& e0,
                                                      const NodePredicate& e1) {
  if (tree.nodes.empty()) throw Error("empty tree");
  if (tree.nodes.size() == 1) return {0, 0};
  const auto adj = tree.adjacency();
  if (!e0 && !e1) {
    const std::size_t u = farthest(tree_distances(adj, 0), {}, kNone);
    const std::size_t v = farthest(tree_distances(adj, u), {}, u);
    return {u, v};
  }
  // Every admissible node, not only leaves: a constrained set can hold
  // leaves on one side of the cut and none on the other.
  auto candidates = [&](const NodePredicate& pred) {
    std::vector<std::size_t> all;
    for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
      if (!pred || pred(i)) all.push_back(i);
    }
    if (all.empty()) throw Error("endpoint constraint matches no node");
    return all;
  };
  const auto c0 = candidates(e0);
  const auto c1 = candidates(e1);
  std::pair<std::size_t, std::size_t> best{kNone, kNone};
  double best_len = -1.0;
  for (std::size_t a : c0) {
    const auto dist = tree_distances(adj, a);
    for (std::size_t b : c1) {
      if (b == a || dist[b] == kInf) continue;
      if (dist[b] > best_len) {
        best_len = dist[b];
        best = {a, b};
      }
    }
  }
  if (best.first == kNone) throw Error("endpoint constraint matches no node");
  return best;
}

std::pair<std::size_t, std::size_t> refine_endpoints_hitting_time(const NetGraph& graph,
                                                                  std::pair<std::size_t, std::size_t> ends,
                                                                  const NodePredicate& e0,
                                                                  const NodePredicate& e1,
                                                                  int max_alternations) {
  const std::size_t n = graph.nodes.size();
  if (n < 3) return ends;
  std::vector<double> degree(n, 0.0);
  for (const Edge& e : graph.edges) {
    degree[e.a] += 1.0;
    degree[e.b] += 1.0;
  }
  // Expected hitting time of `target` from every node: on the other nodes,
  // (D - A) h = D 1 with h(target) = 0.
  auto hitting_times = [&](std::size_t target) {
    std::vector<std::ptrdiff_t> id(n, -1);
    std::ptrdiff_t m = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (i != target) id[i] = m++;
    }
    std::vector<Eigen::Triplet<double>> trip;
    Eigen::VectorXd rhs(m);
    for (std::size_t i = 0; i < n; ++i) {
      if (id[i] < 0) continue;
      trip.emplace_back(id[i], id[i], degree[i]);
      rhs[id[i]] = degree[i];
    }
    for (const Edge& e : graph.edges) {
      if (id[e.a] >= 0 && id[e.b] >= 0) {
        trip.emplace_back(id[e.a], id[e.b], -1.0);
        trip.emplace_back(id[e.b], id[e.a], -1.0);
      }
    }
    Eigen::SparseMatrix<double> lap(m, m);
    lap.setFromTriplets(trip.begin(), trip.end());
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(lap);
    if (solver.info() != Eigen::Success) throw Error("net not connected");
    const Eigen::VectorXd h = solver.solve(rhs);
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      if (id[i] >= 0) out[i] = h[id[i]];
    }
    return out;
  };
  for (int it = 0; it < max_alternations; ++it) {
    const auto prev = ends;
    const std::size_t b = farthest(hitting_times(ends.first), e1, ends.first);
    if (b != kNone) ends.second = b;
    const std::size_t a = farthest(hitting_times(ends.second), e0, ends.second);
    if (a != kNone) ends.first = a;
    if (ends == prev) break;
  }
  return ends;
}

std::vector<std::size_t> shortest_path(const NetGraph& graph, std::size_t from, std::size_t to) {
  if (from == to) throw Error("shortest path needs two distinct endpoints");
  const std::size_t n = graph.nodes.size();
  if (from >= n || to >= n) throw Error("shortest path endpoint out of range");
  const auto adj = graph.adjacency();
  std::vector<double> dist(n, kInf);
  std::vector<std::size_t> parent(n, kNone);
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  dist[from] = 0.0;
  queue.push({0.0, from});
  while (!queue.empty()) {
    const auto [d, v] = queue.top();
    queue.pop();
    if (d > dist[v]) continue;
    if (v == to) break;
    for (const auto& [w, len] : adj[v]) {
      const double nd = d + len;
      if (nd < dist[w] || (nd == dist[w] && v < parent[w])) {
        dist[w] = nd;
        parent[w] = v;
        queue.push({nd, w});
      }
    }
  }
  if (dist[to] == kInf) throw Error("endpoints are not connected");
  std::vector<std::size_t> path;
  for (std::size_t v = to; v != kNone; v = parent[v]) path.push_back(v);
  std::reverse(path.begin(), path.end());
  return path;
}

Polyline path_polyline(const NetGraph& graph, const std::vector<std::size_t>& path) {
  Polyline poly;
  for (std::size_t v : path) poly.vertices.push_back(graph.nodes[v]);
  return poly;
}

RelaxResult relax(Polyline path, const Membership& inside, double threshold) {
  RelaxResult out;
  const std::size_t m = path.vertices.size();
  auto& v = path.vertices;
  if (m < 3) {
    out.path = std::move(path);
    return out;
  }
  const std::size_t first = path.closed ? 0 : 1;
  const std::size_t last = path.closed ? m : m - 1;
  for (int it = 0; it < 200; ++it) {
    double largest = 0.0;
    for (std::size_t i = first; i < last; ++i) {
      const Point2 prev = v[(i + m - 1) % m];
      const Point2 next = v[(i + 1) % m];
      const Point2 target = midpoint(prev, next);
      const Point2 dir = target - v[i];
      double t = 1.0;
      if (!inside(target)) {
        double lo = 0.0, hi = 1.0;
        for (int k = 0; k < 8; ++k) {
          const double mid = 0.5 * (lo + hi);
          if (inside(v[i] + mid * dir)) lo = mid; else hi = mid;
        }
        t = lo;
      }
      const double moved = t * norm(dir);
      if (moved > 0.0) v[i] = v[i] + t * dir;
      largest = std::max(largest, moved);
    }
    out.iterations = it + 1;
    if (largest < threshold) break;
  }
  out.path = std::move(path);
  return out;
}

RegionView region_view(const EdtEstimate& edt) {
  RegionView view;
  view.points = edt.region_points();
  view.contains = [&edt](Point2 y) { return edt.contains(y); };
  view.y_hat = edt.y_hat();
  view.epsilon = edt.epsilon();
  const auto& arr = edt.support().arrangement();
  // The hole of a closed tube: the longest hole loop, ignoring pinholes.
  const double min_area = std::numbers::pi * view.epsilon * view.epsilon;
  std::optional<std::size_t> hole;
  for (std::size_t l = 0; l < arr.loops().size(); ++l) {
    if (!arr.loops()[l].is_hole() || -arr.loops()[l].signed_area < min_area) continue;
    if (!hole || arr.loops()[l].length > arr.loops()[*hole].length) hole = l;
  }
  if (hole) view.hole_point = arr.hole_probe(*hole);
  return view;
}

namespace {

struct Context {
  const RegionView& region;
  const ExtractOptions& options;
  double eps, xi, eta, cut, shell;
};

/// Nodes of `g` on the shell just outside the dilated cut.
NodePredicate shell_predicate(const NetGraph& g, const Context& ctx) {
  return [&g, &ctx](std::size_t i) {
    const double d = distance(g.nodes[i], ctx.region.y_hat);
    return d > ctx.cut && d <= ctx.shell;
  };
}

std::vector<std::size_t> tree_path(const NetGraph& g, const Context& ctx, const NodePredicate& e0,
                                   const NodePredicate& e1) {
  const NetGraph tree = tree_graph(g, mst(g));
  auto ends = max_min_endpoints(tree, e0, e1);
  if (ctx.options.hitting_time) ends = refine_endpoints_hitting_time(g, ends, e0, e1);
  if (ends.first == ends.second) return {ends.first};
  return shortest_path(tree, ends.first, ends.second);
}

/// Interior points of a route from a to b through the cut: nothing if the
/// straight segment stays within eta of the region, else a net path.
std::vector<Point2> join_through_cut(const NetGraph& net, const Context& ctx, Point2 a, Point2 b) {
  const SpatialGrid grid(ctx.region.points, ctx.eps);
  bool straight = true;
  const double len = distance(a, b);
  const auto steps = static_cast<std::size_t>(std::ceil(len / (0.5 * ctx.eta))) + 1;
  for (std::size_t k = 0; k <= steps && straight; ++k) {
    const Point2 q = a + (static_cast<double>(k) / static_cast<double>(steps)) * (b - a);
    if (!ctx.region.contains(q) && grid.nearest(q).distance > ctx.eta) straight = false;
  }
  if (straight) return {};
  std::vector<char> keep(net.nodes.size());
  for (std::size_t i = 0; i < net.nodes.size(); ++i) {
    keep[i] = distance(net.nodes[i], ctx.region.y_hat) <= ctx.shell;
  }
  const Subgraph sub = induced(net, keep);
  const std::size_t ia = nearest_node(sub.graph, a);
  const std::size_t ib = nearest_node(sub.graph, b);
  if (ia == ib) return {};
  const auto path = shortest_path(sub.graph, ia, ib);
  std::vector<Point2> out;
  for (std::size_t k = 0; k < path.size(); ++k) {
    const Point2 p = sub.graph.nodes[path[k]];
    if (!(p == a) && !(p == b)) out.push_back(p);
  }
  return out;
}

/// Components of the net outside the dilated cut, dropping specks smaller
/// than a tenth of the largest.
std::vector<Subgraph> outside_components(const NetGraph& net, const Context& ctx) {
  std::vector<char> keep(net.nodes.size());
  for (std::size_t i = 0; i < net.nodes.size(); ++i) {
    keep[i] = distance(net.nodes[i], ctx.region.y_hat) > ctx.cut;
  }
  const Subgraph outside = induced(net, keep);
  std::size_t count = 0;
  const auto label = component_labels(outside.graph, count);
  std::vector<std::size_t> size(count, 0);
  for (std::size_t l : label) ++size[l];
  const std::size_t largest = count ? *std::max_element(size.begin(), size.end()) : 0;
  std::vector<Subgraph> out;
  for (std::size_t c = 0; c < count; ++c) {
    if (10 * size[c] < largest) continue;
    std::vector<char> mine(outside.graph.nodes.size());
    for (std::size_t i = 0; i < mine.size(); ++i) mine[i] = label[i] == c;
    Subgraph s = induced(outside.graph, mine);
    for (auto& o : s.origin) o = outside.origin[o];
    out.push_back(std::move(s));
  }
  return out;
}

Polyline extract_closed(const NetGraph& net, const Subgraph& ring, const Context& ctx) {
  const NodePredicate shell = shell_predicate(ring.graph, ctx);
  const auto ids = tree_path(ring.graph, ctx, shell, shell);
  Polyline poly = path_polyline(ring.graph, ids);
  poly.closed = true;
  if (poly.vertices.size() >= 2) {
    const auto join = join_through_cut(net, ctx, poly.vertices.back(), poly.vertices.front());
    poly.vertices.insert(poly.vertices.end(), join.begin(), join.end());
  }
  return poly;
}

Polyline extract_two_arms(const NetGraph& net, const std::vector<Subgraph>& arms, const Context& ctx) {
  std::vector<Polyline> legs;
  for (const Subgraph& arm : arms) {
    // Free end first, shell end last.
    const auto ids = tree_path(arm.graph, ctx, {}, shell_predicate(arm.graph, ctx));
    legs.push_back(path_polyline(arm.graph, ids));
  }
  Polyline poly;
  poly.vertices = legs[0].vertices;
  const auto join = join_through_cut(net, ctx, legs[0].vertices.back(), legs[1].vertices.back());
  poly.vertices.insert(poly.vertices.end(), join.begin(), join.end());
  poly.vertices.insert(poly.vertices.end(), legs[1].vertices.rbegin(), legs[1].vertices.rend());
  return poly;
}

}  // namespace

ExtractedCurve extract_curve(const RegionView& region, const ExtractOptions& options) {
  if (region.points.empty()) throw Error("empty EDT region");
  if (!(region.epsilon > 0.0)) throw Error("extraction needs a positive epsilon");
  const double eps = region.epsilon;
  Context ctx{region, options, eps, options.xi > 0.0 ? options.xi : eps / 8.0,
              options.eta_gap > 0.0 ? options.eta_gap : eps / 10.0, 0.0, 0.0};
  if (!(ctx.xi < eps / 4.0)) throw Error("net spacing xi must satisfy 0 < xi < eps/4");
  ctx.cut = options.cut_radius_factor * eps + ctx.eta;
  ctx.shell = ctx.cut + 0.5 * eps;

  const NetGraph full = build_net(region.points, ctx.xi);
  // Work on the component holding the EDT argmax; far specks are ignored.
  const NetGraph net = component_of(full, nearest_node(full, region.y_hat)).graph;

  ExtractedCurve out;
  Polyline poly;
  switch (options.mode) {
    case ExtractMode::open: {
      const auto ids = tree_path(net, ctx, {}, {});
      poly = path_polyline(net, ids);
      break;
    }
    case ExtractMode::closed: {
      auto comps = outside_components(net, ctx);
      if (comps.empty()) throw Error("unexpected topology");
      std::size_t big = 0;
      for (std::size_t k = 1; k < comps.size(); ++k) {
        if (comps[k].graph.nodes.size() > comps[big].graph.nodes.size()) big = k;
      }
      poly = extract_closed(net, comps[big], ctx);
      break;
    }
    case ExtractMode::general: {
      auto comps = outside_components(net, ctx);
      if (comps.size() == 1) {
        poly = extract_closed(net, comps[0], ctx);
      } else if (comps.size() == 2) {
        poly = extract_two_arms(net, comps, ctx);
      } else {
        throw Error("unexpected topology");
      }
      break;
    }
  }
  if (options.relax && poly.vertices.size() >= 3) {
    RelaxResult r = relax(std::move(poly), region.contains, 1e-3 * eps);
    poly = std::move(r.path);
    out.relax_iterations = r.iterations;
  }
  out.topology = poly.closed ? Topology::closed : Topology::open;
  out.x0 = poly.vertices.front();
  out.x1 = poly.vertices.back();
  out.path_length = poly.length();
  if (poly.closed && region.hole_point && poly.vertices.size() >= 3) {
    try {
      out.winding = winding_number(poly, *region.hole_point);
    } catch (const Error&) {
      out.winding.reset();
    }
  }
  out.path = std::move(poly);
  return out;
}

}  // namespace filament
