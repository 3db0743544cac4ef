#include "routecog/routing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <queue>
#include <string>

#include "routecog/cost.hpp"
#include "routecog/error.hpp"

namespace routecog {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Lower bounds are shrunk by this factor so that rounding in the
// origin-first cost accumulation can never push a true completion below
// its bound.
constexpr double kBoundSlack = 1.0 - 1e-9;

bool ranks_less(const Network& net, std::span<const EdgeIndex> a, std::span<const EdgeIndex> b) {
  return std::lexicographical_compare(
      a.begin(), a.end(), b.begin(), b.end(),
      [&net](EdgeIndex x, EdgeIndex y) { return net.edge_rank(x) < net.edge_rank(y); });
}

void check_query(const Network& net, const RouteQuery& q) {
  if (q.origin_zone >= net.zones().size() || q.dest_zone >= net.zones().size())
    throw RoutingError("route query: zone index out of range");
  if (q.origin_zone == q.dest_zone)
    throw RoutingError("route query: origin and destination are both " +
                       net.zone(q.origin_zone).id);
  if (q.k < 1) throw RoutingError("route query: k must be >= 1");
  if (q.edge_costs.size() != net.edges().size())
    throw RoutingError("route query: one cost per edge required");
  for (EdgeIndex e = 0; e < q.edge_costs.size(); ++e) {
    if (!std::isfinite(q.edge_costs[e]) || q.edge_costs[e] < 0.0)
      throw RoutingError("route query: cost of edge '" + net.edge(e).id +
                         "' must be finite and >= 0");
  }
}

// Buffers reused across the spur searches of one query.
struct Scratch {
  std::vector<double> dist;
  std::vector<std::pair<double, NodeIndex>> node_heap;
  struct Step {
    double cost;
    NodeIndex node;
    EdgeIndex edge;  // edge into `node`, kNoIndex for the start
    std::size_t parent;
  };
  std::vector<Step> arena;  // partial paths, linked back to their parent step
  std::vector<std::pair<double, std::size_t>> open;
};

// Dijkstra on reversed edges: cheapest cost from every node to `target`
// avoiding blocked nodes and edges. Result in scratch.dist.
void distances_to(const Network& net, NodeIndex target, std::span<const double> costs,
                  const std::vector<bool>& blocked_nodes, const std::vector<bool>& blocked_edges,
                  Scratch& scratch) {
  auto& dist = scratch.dist;
  auto& heap = scratch.node_heap;
  const std::greater<> later;
  dist.assign(net.nodes().size(), kInf);
  heap.clear();
  dist[target] = 0.0;
  heap.emplace_back(0.0, target);
  while (!heap.empty()) {
    std::pop_heap(heap.begin(), heap.end(), later);
    auto [d, n] = heap.back();
    heap.pop_back();
    if (d > dist[n]) continue;
    for (EdgeIndex e : net.incoming(n)) {
      const NodeIndex from = net.edge_from(e);
      if (blocked_edges[e] || blocked_nodes[from]) continue;
      const double nd = d + costs[e];
      if (nd < dist[from]) {
        dist[from] = nd;
        heap.emplace_back(nd, from);
        std::push_heap(heap.begin(), heap.end(), later);
      }
    }
  }
}

bool on_path(const std::vector<Scratch::Step>& arena, std::size_t step, NodeIndex node) {
  for (std::size_t s = step;; s = arena[s].parent) {
    if (arena[s].node == node) return true;
    if (arena[s].edge == kNoIndex) return false;
  }
}

std::vector<EdgeIndex> path_edges(const std::vector<Scratch::Step>& arena, std::size_t step) {
  std::vector<EdgeIndex> edges;
  for (std::size_t s = step; arena[s].edge != kNoIndex; s = arena[s].parent)
    edges.push_back(arena[s].edge);
  std::reverse(edges.begin(), edges.end());
  return edges;
}

struct SpurResult {
  double cost;
  std::vector<EdgeIndex> edges;
};

// Minimum (cost, edge-id sequence) loopless path from `start` to `target`,
// where cost is accumulated on top of `start_cost` in path order. Best-first
// over partial paths with the distance-to-target in the restricted graph as
// an admissible bound; a finished path is accepted once no open partial
// path can reach or tie its cost.
std::optional<SpurResult> best_path(const Network& net, std::span<const double> costs,
                                    NodeIndex start, NodeIndex target, double start_cost,
                                    const std::vector<bool>& blocked_nodes,
                                    const std::vector<bool>& blocked_edges, Scratch& scratch) {
  if (blocked_nodes[target]) return std::nullopt;
  distances_to(net, target, costs, blocked_nodes, blocked_edges, scratch);
  const auto& to_target = scratch.dist;
  if (to_target[start] == kInf) return std::nullopt;

  auto& arena = scratch.arena;
  auto& open = scratch.open;
  const std::greater<> later;
  arena.clear();
  open.clear();
  arena.push_back({start_cost, start, kNoIndex, 0});
  open.emplace_back((start_cost + to_target[start]) * kBoundSlack, 0);

  std::optional<SpurResult> best;
  while (!open.empty()) {
    if (best && best->cost < open.front().first) break;
    std::pop_heap(open.begin(), open.end(), later);
    const std::size_t top = open.back().second;
    open.pop_back();
    const Scratch::Step step = arena[top];
    if (step.node == target) {
      auto edges = path_edges(arena, top);
      if (!best || step.cost < best->cost ||
          (step.cost == best->cost && ranks_less(net, edges, best->edges))) {
        best = SpurResult{step.cost, std::move(edges)};
      }
      continue;
    }
    for (EdgeIndex e : net.outgoing(step.node)) {
      if (blocked_edges[e]) continue;
      const NodeIndex to = net.edge_to(e);
      if (blocked_nodes[to] || to_target[to] == kInf || on_path(arena, top, to)) continue;
      const double cost = step.cost + costs[e];
      const double bound = (cost + to_target[to]) * kBoundSlack;
      if (best && best->cost < bound) continue;
      arena.push_back({cost, to, e, top});
      open.emplace_back(bound, arena.size() - 1);
      std::push_heap(open.begin(), open.end(), later);
    }
  }
  return best;
}

struct Candidate {
  double cost;
  std::vector<EdgeIndex> edges;
};

}  // namespace

bool route_order_less(const Network& net, std::span<const double> edge_costs, const Route& a,
                      const Route& b) {
  const double ca = route_general_cost(net, a, edge_costs);
  const double cb = route_general_cost(net, b, edge_costs);
  if (ca != cb) return ca < cb;
  return ranks_less(net, a.edges, b.edges);
}

std::vector<Route> k_shortest_routes(const Network& net, const RouteQuery& query) {
  check_query(net, query);
  const NodeIndex source = net.zone_centroid(query.origin_zone);
  const NodeIndex target = net.zone_centroid(query.dest_zone);
  const auto costs = query.edge_costs;
  const std::size_t node_count = net.nodes().size();
  const std::size_t edge_count = net.edges().size();

  Scratch scratch;
  std::vector<bool> blocked_edges(edge_count, false);
  auto first = best_path(net, costs, source, target, 0.0, std::vector<bool>(node_count, false),
                         blocked_edges, scratch);
  if (!first) {
    throw RoutingError("no route from " + net.zone(query.origin_zone).id + " to " +
                       net.zone(query.dest_zone).id);
  }

  std::vector<std::vector<EdgeIndex>> accepted{std::move(first->edges)};
  std::vector<Candidate> candidates;
  auto known = [&](const std::vector<EdgeIndex>& edges) {
    return std::find(accepted.begin(), accepted.end(), edges) != accepted.end() ||
           std::any_of(candidates.begin(), candidates.end(),
                       [&](const Candidate& c) { return c.edges == edges; });
  };

  while (accepted.size() < query.k) {
    const std::vector<EdgeIndex> previous = accepted.back();
    std::vector<bool> blocked_nodes(node_count, false);
    double root_cost = 0.0;
    NodeIndex spur = source;
    for (std::size_t j = 0; j < previous.size(); ++j) {
      const std::span<const EdgeIndex> root(previous.data(), j);
      std::fill(blocked_edges.begin(), blocked_edges.end(), false);
      for (const auto& path : accepted) {
        if (path.size() > j && std::equal(root.begin(), root.end(), path.begin()))
          blocked_edges[path[j]] = true;
      }
      auto tail = best_path(net, costs, spur, target, root_cost, blocked_nodes, blocked_edges,
                            scratch);
      if (tail) {
        std::vector<EdgeIndex> edges(root.begin(), root.end());
        edges.insert(edges.end(), tail->edges.begin(), tail->edges.end());
        if (!known(edges)) candidates.push_back({tail->cost, std::move(edges)});
      }
      blocked_nodes[spur] = true;
      root_cost += costs[previous[j]];
      spur = net.edge_to(previous[j]);
    }
    if (candidates.empty()) break;
    auto next = std::min_element(candidates.begin(), candidates.end(),
                                 [&net](const Candidate& a, const Candidate& b) {
                                   if (a.cost != b.cost) return a.cost < b.cost;
                                   return ranks_less(net, a.edges, b.edges);
                                 });
    accepted.push_back(std::move(next->edges));
    candidates.erase(next);
  }

  std::vector<Route> routes;
  routes.reserve(accepted.size());
  for (auto& edges : accepted)
    routes.push_back(Route{query.origin_zone, query.dest_zone, std::move(edges)});
  return routes;
}

std::vector<Route> brute_force_routes(const Network& net, ZoneIndex origin, ZoneIndex dest,
                                      std::size_t max_partial_paths) {
  if (origin >= net.zones().size() || dest >= net.zones().size())
    throw RoutingError("brute_force_routes: zone index out of range");
  const NodeIndex source = net.zone_centroid(origin);
  const NodeIndex target = net.zone_centroid(dest);
  std::vector<Route> routes;
  std::vector<bool> visited(net.nodes().size(), false);
  std::vector<EdgeIndex> path;
  std::size_t expanded = 0;

  auto dfs = [&](auto&& self, NodeIndex node) -> void {
    if (++expanded > max_partial_paths) {
      throw EnumerationLimitError("brute_force_routes: more than " +
                                  std::to_string(max_partial_paths) + " partial paths from " +
                                  net.zone(origin).id + " to " + net.zone(dest).id);
    }
    if (node == target) {
      routes.push_back(Route{origin, dest, path});
      return;
    }
    for (EdgeIndex e : net.outgoing(node)) {
      const NodeIndex to = net.edge_to(e);
      if (visited[to]) continue;
      visited[to] = true;
      path.push_back(e);
      self(self, to);
      path.pop_back();
      visited[to] = false;
    }
  };
  visited[source] = true;
  if (source != target) dfs(dfs, source);
  return routes;
}

}  // namespace routecog
