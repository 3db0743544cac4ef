#include "routecog/cost.hpp"

#include <cmath>
#include <stdexcept>

#include "routecog/error.hpp"

namespace routecog {

void validate(const CostWeights& w) {
  const double values[] = {w.alpha, w.beta, w.gamma, w.delta};
  bool any_positive = false;
  for (double v : values) {
    if (!std::isfinite(v) || v < 0.0)
      throw ConfigError("weights '" + w.driver_class + "': every weight must be finite and >= 0");
    any_positive = any_positive || v > 0.0;
  }
  if (!any_positive)
    throw ConfigError("weights '" + w.driver_class + "': at least one weight must be > 0");
}

void validate(const VolumeDelayParams& p) {
  if (!std::isfinite(p.a) || p.a < 0.0) throw ConfigError("volume_delay.a must be >= 0");
  if (!std::isfinite(p.b) || p.b < 1.0) throw ConfigError("volume_delay.b must be >= 1");
}

double link_financial_cost(const Link& link) {
  return link.length * link.cost_rate + link.supplement1;
}

double edge_general_cost(const Network& network, EdgeIndex edge, const EdgeState& state,
                         const CostWeights& weights) {
  if (state.edge != edge)
    throw std::invalid_argument("edge_general_cost: state belongs to a different edge");
  double distance = 0.0;
  double financial = 0.0;
  double quality = 0.0;
  double supplement2 = 0.0;
  for (LinkIndex l : network.edge_links(edge)) {
    const Link& link = network.link(l);
    distance += link.length;
    financial += link_financial_cost(link);
    quality += link.road_quality;
    supplement2 += link.supplement2;
  }
  return weights.alpha * state.travel_time + weights.beta * distance +
         weights.gamma * financial + weights.delta * quality + supplement2;
}

std::vector<double> edge_general_costs(const Network& network,
                                       std::span<const double> travel_times,
                                       const CostWeights& weights) {
  const std::size_t n = network.edges().size();
  if (travel_times.size() != n)
    throw std::invalid_argument("edge_general_costs: one travel time per edge required");
  std::vector<double> costs(n);
  for (EdgeIndex e = 0; e < n; ++e)
    costs[e] = edge_general_cost(network, e, {e, travel_times[e], 0.0}, weights);
  return costs;
}

double route_general_cost(const Network& network, const Route& route,
                          std::span<const double> edge_costs) {
  double total = 0.0;
  for (EdgeIndex e : route.edges) {
    if (e >= edge_costs.size() || !std::isfinite(edge_costs[e])) {
      const std::string id = e < network.edges().size() ? network.edge(e).id : std::to_string(e);
      throw InputError("no general cost available for edge '" + id + "'");
    }
    total += edge_costs[e];
  }
  return total;
}

double congested_travel_time(double free_flow_time, double volume, double capacity,
                             const VolumeDelayParams& params) {
  return free_flow_time * (1.0 + params.a * std::pow(volume / capacity, params.b));
}

}  // namespace routecog
