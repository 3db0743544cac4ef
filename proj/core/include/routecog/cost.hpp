#pragma once

#include <span>
#include <string>
#include <vector>

#include "routecog/network.hpp"

namespace routecog {

/// Weights of the general cost, one set per driver class. The weights carry
/// the unit conversions, so the resulting general cost is dimensionless.
struct CostWeights {
  std::string driver_class = "default";
  double alpha = 1.0;  // per second of travel time
  double beta = 0.0;   // per metre of distance
  double gamma = 0.0;  // on the financial link cost
  double delta = 0.0;  // on the summed road-quality penalty
};

/// Throws ConfigError unless all weights are finite, >= 0, and one is > 0.
void validate(const CostWeights& weights);

struct EdgeState {
  EdgeIndex edge = kNoIndex;
  double travel_time = 0.0;  // s
  double volume = 0.0;       // veh/h
};

/// BPR-form volume-delay parameters: t = t0 * (1 + a * (v/c)^b).
struct VolumeDelayParams {
  double a = 0.15;
  double b = 4.0;
};

void validate(const VolumeDelayParams& params);

/// length * cost_rate + supplement1.
double link_financial_cost(const Link& link);

/// alpha*time + beta*distance + gamma*financial + delta*quality + sum(supplement2),
/// with distance, financial cost, quality and supplement2 summed over the
/// edge's links.
double edge_general_cost(const Network& network, EdgeIndex edge, const EdgeState& state,
                         const CostWeights& weights);

/// General cost of every edge given per-edge travel times.
std::vector<double> edge_general_costs(const Network& network,
                                       std::span<const double> travel_times,
                                       const CostWeights& weights);

/// Sum of the route's edge costs, accumulated from the origin. Throws
/// InputError naming the first edge without a finite cost.
double route_general_cost(const Network& network, const Route& route,
                          std::span<const double> edge_costs);

double congested_travel_time(double free_flow_time, double volume, double capacity,
                             const VolumeDelayParams& params);

}  // namespace routecog
