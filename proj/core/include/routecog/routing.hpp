#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "routecog/network.hpp"

namespace routecog {

struct RouteQuery {
  ZoneIndex origin_zone = kNoIndex;
  ZoneIndex dest_zone = kNoIndex;
  std::size_t k = 5;
  std::span<const double> edge_costs;  // general cost per edge, all >= 0
};

/// Total order on routes: route_general_cost first, then the edge-id
/// sequence lexicographically.
bool route_order_less(const Network& network, std::span<const double> edge_costs,
                      const Route& a, const Route& b);

/// Up to k loopless routes in route_order_less order, computed with Yen's
/// algorithm. Throws RoutingError when the destination is unreachable.
std::vector<Route> k_shortest_routes(const Network& network, const RouteQuery& query);

inline constexpr std::size_t kDefaultEnumerationLimit = 1'000'000;

/// Every loopless route from origin to destination, in depth-first
/// discovery order. Throws EnumerationLimitError once more than
/// `max_partial_paths` partial paths have been expanded.
std::vector<Route> brute_force_routes(const Network& network, ZoneIndex origin, ZoneIndex dest,
                                      std::size_t max_partial_paths = kDefaultEnumerationLimit);

}  // namespace routecog
