#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "routecog/cost.hpp"
#include "routecog/network.hpp"
#include "routecog/routing.hpp"

namespace routecog::testing {

/// Directed graph of single-link edges between plain node ids. Every node
/// named in `zones` becomes a zone centroid "C<id>" with zone id "Z<id>".
struct GraphSpec {
  std::vector<std::string> nodes;
  std::vector<std::pair<std::string, std::string>> arcs;
  std::vector<std::string> zones;
};

inline Link make_link(const std::string& id, const std::string& from, const std::string& to,
                      double length = 100.0) {
  Link l;
  l.id = id;
  l.from_node = from;
  l.to_node = to;
  l.length = length;
  l.lanes = 1;
  l.free_flow_speed = 10.0;
  l.capacity = 1000.0;
  l.road_class = RoadClass::minor;
  return l;
}

inline Network build_graph(const GraphSpec& spec) {
  std::vector<Node> nodes;
  std::vector<Link> links;
  std::vector<Edge> edges;
  std::vector<Zone> zones;
  for (const auto& n : spec.nodes) nodes.push_back({n, NodeKind::inner_node, n});
  for (const auto& [from, to] : spec.arcs) {
    const std::string id = from + "-" + to;
    links.push_back(make_link("l" + id, from, to));
    edges.push_back({"e" + id, {"l" + id}});
  }
  for (const auto& z : spec.zones) {
    const std::string c = "C" + z;
    nodes.push_back({c, NodeKind::zone_centroid, c});
    zones.push_back({"Z" + z, c, "Zone " + z});
    for (const auto& [from, to] : {std::pair{c, z}, std::pair{z, c}}) {
      const std::string id = from + "-" + to;
      links.push_back(make_link("l" + id, from, to));
      edges.push_back({"e" + id, {"l" + id}});
    }
  }
  return Network(std::move(nodes), std::move(links), std::move(edges), std::move(zones));
}

/// Random digraph on 4..10 plain nodes (at most 12 with centroids), two
/// zones, arc density p. Costs are drawn from a small integer set or a
/// continuous range so that exact ties are common in half the cases.
struct RandomGraph {
  Network network;
  std::vector<double> costs;
};

inline RandomGraph random_graph(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> size(4, 10);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int n = size(rng);
  const double density = 0.25 + 0.5 * unit(rng);
  GraphSpec spec;
  for (int i = 0; i < n; ++i) spec.nodes.push_back("n" + std::to_string(i));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && unit(rng) < density) spec.arcs.emplace_back(spec.nodes[i], spec.nodes[j]);
  spec.zones = {spec.nodes[0], spec.nodes[static_cast<std::size_t>(n - 1)]};
  RandomGraph g{build_graph(spec), {}};
  const bool integral = unit(rng) < 0.5;
  std::uniform_int_distribution<int> small(0, 4);
  for (std::size_t e = 0; e < g.network.edges().size(); ++e)
    g.costs.push_back(integral ? static_cast<double>(small(rng)) + 1.0 : 0.5 + 99.5 * unit(rng));
  return g;
}

/// The k cheapest routes by exhaustive enumeration, ordered by
/// (left-to-right summed cost, edge-id sequence).
inline std::vector<Route> cheapest_by_enumeration(const Network& net, std::span<const double> costs,
                                                  ZoneIndex origin, ZoneIndex dest, std::size_t k) {
  auto all = brute_force_routes(net, origin, dest);
  auto cost_of = [&](const Route& r) {
    double c = 0.0;
    for (EdgeIndex e : r.edges) c += costs[e];
    return c;
  };
  std::sort(all.begin(), all.end(), [&](const Route& a, const Route& b) {
    const double ca = cost_of(a), cb = cost_of(b);
    if (ca != cb) return ca < cb;
    return route_ids_less(net, a, b);
  });
  if (all.size() > k) all.resize(k);
  return all;
}

/// Power-form Kirchhoff probabilities in long double, straight from
/// p_j = U_j^k / sum U_i^k with U = 1/C.
inline std::vector<double> kirchhoff_power_oracle(std::span<const double> costs, double k) {
  std::vector<long double> w;
  long double sum = 0.0L;
  for (double c : costs) {
    w.push_back(std::pow(1.0L / static_cast<long double>(c), static_cast<long double>(k)));
    sum += w.back();
  }
  std::vector<double> p;
  for (auto x : w) p.push_back(static_cast<double>(x / sum));
  return p;
}

}  // namespace routecog::testing
