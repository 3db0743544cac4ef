#include "routecog/assignment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>
#include <stdexcept>

#include "routecog/error.hpp"
#include "routecog/routing.hpp"

namespace routecog {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Per-edge travel times for the given edge volumes: each link sees the sum
// of the volumes of the edges containing it.
std::vector<double> travel_times_for(const Network& network, std::span<const double> edge_volume,
                                     const VolumeDelayParams& params,
                                     std::span<const double> multipliers) {
  std::vector<double> link_volume(network.links().size(), 0.0);
  for (EdgeIndex e = 0; e < network.edges().size(); ++e)
    for (LinkIndex l : network.edge_links(e)) link_volume[l] += edge_volume[e];

  std::vector<double> link_time(network.links().size());
  for (LinkIndex l = 0; l < network.links().size(); ++l) {
    const Link& link = network.link(l);
    link_time[l] = congested_travel_time(link.free_flow_time(), link_volume[l], link.capacity, params);
  }

  std::vector<double> edge_time(network.edges().size(), 0.0);
  for (EdgeIndex e = 0; e < network.edges().size(); ++e) {
    for (LinkIndex l : network.edge_links(e)) edge_time[e] += link_time[l];
    if (!multipliers.empty()) edge_time[e] *= multipliers[e];
  }
  return edge_time;
}

ZoneIndex zone_of(const Network& network, const std::string& id) {
  auto z = network.find_zone(id);
  if (!z) throw InputError("zone '" + id + "' is not in the network");
  return *z;
}

const DriverProfile kRoster[] = {
    {{AgeBand::young, Gender::female, ExperienceBand::novice}, Urgency::low, Physiological::normal},
    {{AgeBand::young, Gender::male, ExperienceBand::experienced}, Urgency::high, Physiological::normal},
    {{AgeBand::middle, Gender::female, ExperienceBand::experienced}, Urgency::low, Physiological::normal},
    {{AgeBand::middle, Gender::male, ExperienceBand::novice}, Urgency::high, Physiological::fatigued},
    {{AgeBand::senior, Gender::female, ExperienceBand::experienced}, Urgency::low, Physiological::fatigued},
    {{AgeBand::senior, Gender::male, ExperienceBand::novice}, Urgency::low, Physiological::normal},
    {{AgeBand::middle, Gender::male, ExperienceBand::experienced}, Urgency::high, Physiological::normal},
    {{AgeBand::young, Gender::female, ExperienceBand::experienced}, Urgency::low, Physiological::fatigued},
};

void apply_change(DriverPacket& packet, const AttributeChange& change) {
  if (change.weather) packet.environment.weather = *change.weather;
  if (change.road_condition) packet.environment.road_condition = *change.road_condition;
  if (change.urgency) packet.temporary.urgency = *change.urgency;
  if (change.physiological) packet.temporary.physiological = *change.physiological;
}

}  // namespace

std::string_view to_string(Averaging v) { return v == Averaging::none ? "none" : "successive"; }
std::string_view to_string(DemandMode v) { return v == DemandMode::flat ? "flat" : "peak"; }

std::optional<Averaging> parse_averaging(std::string_view text) {
  if (text == "none") return Averaging::none;
  if (text == "successive") return Averaging::successive;
  return std::nullopt;
}

std::optional<DemandMode> parse_demand_mode(std::string_view text) {
  if (text == "flat") return DemandMode::flat;
  if (text == "peak") return DemandMode::peak;
  return std::nullopt;
}

SimulationConfig default_config() {
  SimulationConfig config;
  config.weights["experienced"] = CostWeights{"experienced", 1.0, 0.002, 1.0, 10.0};
  config.weights["novice"] = CostWeights{"novice", 1.0, 0.002, 1.0, 40.0};
  return config;
}

void validate(const SimulationConfig& c) {
  validate(c.choice);
  validate(c.volume_delay);
  if (c.weights.empty()) throw ConfigError("weights: at least one driver class required");
  for (const auto& [name, w] : c.weights) {
    if (w.driver_class != name)
      throw ConfigError("weights: entry '" + name + "' carries driver class '" + w.driver_class + "'");
    validate(w);
  }
  for (const auto& profile : default_roster()) {
    const auto cls = std::string(to_string(profile.static_attributes.experience));
    if (!c.weights.contains(cls) && !c.weights.contains("default"))
      throw ConfigError("weights: no entry for driver class '" + cls + "' and no 'default'");
  }
  if (c.k_routes < 1) throw ConfigError("k_routes must be >= 1");
  if (!(c.work_period > 0.0) || !std::isfinite(c.work_period))
    throw ConfigError("work_period must be > 0");
  if (c.max_iterations < 1) throw ConfigError("max_iterations must be >= 1");
  if (!(c.epsilon > 0.0) || !std::isfinite(c.epsilon)) throw ConfigError("epsilon must be > 0");
  if (!(c.peak_factor >= 1.0) || !std::isfinite(c.peak_factor))
    throw ConfigError("peak_factor must be >= 1");
  if (c.packets_per_od < 1) throw ConfigError("packets_per_od must be >= 1");
  for (const auto& e : c.events) {
    if (!(e.time >= 0.0) || !std::isfinite(e.time)) throw ConfigError("events: time must be >= 0");
    if (!(e.incident_factor >= 1.0) || !std::isfinite(e.incident_factor))
      throw ConfigError("events: incident_factor must be >= 1");
  }
}

const CostWeights& weights_for(const SimulationConfig& config, std::string_view driver_class) {
  if (auto it = config.weights.find(std::string(driver_class)); it != config.weights.end())
    return it->second;
  if (auto it = config.weights.find("default"); it != config.weights.end()) return it->second;
  throw ConfigError("weights: no entry for driver class '" + std::string(driver_class) + "'");
}

std::size_t event_iteration(const EnvironmentEvent& event, double work_period) {
  return static_cast<std::size_t>(std::ceil(event.time / work_period)) + 1;
}

NetworkState free_flow_state(const Network& network) {
  NetworkState state;
  state.edge_volume.assign(network.edges().size(), 0.0);
  state.edge_travel_time.resize(network.edges().size());
  for (EdgeIndex e = 0; e < network.edges().size(); ++e)
    state.edge_travel_time[e] = network.edge_free_flow_time(e);
  return state;
}

NetworkState update_travel_times(const Network& network, const NetworkState& state,
                                 std::span<const double> candidate_volumes,
                                 const SimulationConfig& config,
                                 std::span<const double> incident_multipliers) {
  const std::size_t n_edges = network.edges().size();
  if (candidate_volumes.size() != n_edges || state.edge_volume.size() != n_edges)
    throw std::invalid_argument("update_travel_times: one volume per edge required");
  if (!incident_multipliers.empty() && incident_multipliers.size() != n_edges)
    throw std::invalid_argument("update_travel_times: one multiplier per edge required");

  NetworkState next;
  next.iteration = state.iteration + 1;
  const double n = static_cast<double>(next.iteration);
  next.edge_volume.resize(n_edges);
  for (EdgeIndex e = 0; e < n_edges; ++e) {
    const double previous = state.edge_volume[e];
    const double candidate = candidate_volumes[e];
    next.edge_volume[e] = (config.averaging == Averaging::none || next.iteration == 1)
                              ? candidate
                              : previous + (candidate - previous) / n;
  }
  next.edge_travel_time =
      travel_times_for(network, next.edge_volume, config.volume_delay, incident_multipliers);
  return next;
}

bool check_convergence(std::span<const double> history, double epsilon) {
  if (history.size() < 2) return false;
  const std::size_t pairs = std::min<std::size_t>(3, history.size() - 1);
  for (std::size_t i = history.size() - pairs; i < history.size(); ++i) {
    const double prev = history[i - 1];
    const double cur = history[i];
    double change = 0.0;
    if (prev != 0.0)
      change = std::abs(cur - prev) / std::abs(prev);
    else if (cur != 0.0)
      return false;
    if (!(change < epsilon)) return false;
  }
  return true;
}

IterationReport compute_metrics(std::size_t iteration, std::span<const PacketOutcome> outcomes,
                                std::size_t hits, std::size_t lookups, double route_search_time) {
  IterationReport report;
  report.iteration = iteration;
  report.hits = hits;
  report.lookups = lookups;
  report.route_search_time = route_search_time;
  report.cache_hit_rate =
      lookups == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(lookups);

  double total_demand = 0.0;
  double weighted = 0.0;
  for (const auto& o : outcomes) {
    total_demand += o.demand;
    weighted += o.demand * o.realized_cost;
  }
  if (total_demand > 0.0) {
    report.average_travel_cost = weighted / total_demand;
    double spread = 0.0;
    for (const auto& o : outcomes) {
      const double d = o.realized_cost - report.average_travel_cost;
      spread += o.demand * d * d;
    }
    report.cost_variance = spread / total_demand;
  }
  return report;
}

std::span<const DriverProfile> default_roster() { return kRoster; }

std::vector<DriverPacket> make_packets(const ODMatrix& od, const SimulationConfig& config) {
  const double scale = config.mode == DemandMode::peak ? config.peak_factor : 1.0;
  const auto roster = default_roster();
  std::vector<DriverPacket> packets;
  for (std::size_t i = 0; i < od.size(); ++i) {
    for (std::size_t j = 0; j < od.size(); ++j) {
      const double demand = od.at(i, j) * scale;
      if (i == j || demand <= 0.0) continue;
      const double share = demand / static_cast<double>(config.packets_per_od);
      for (std::size_t p = 0; p < config.packets_per_od; ++p) {
        const DriverProfile& profile = roster[p % roster.size()];
        DriverPacket packet;
        packet.id = packets.size();
        packet.origin_zone = od.zone_ids[i];
        packet.static_attributes = profile.static_attributes;
        packet.temporary = {od.zone_ids[j], profile.urgency, profile.physiological};
        packet.environment = config.environment;
        packet.demand = share;
        packets.push_back(std::move(packet));
      }
    }
  }
  return packets;
}

RouteSets enumerate_route_sets(const Network& network, std::span<const DriverPacket> packets,
                               const std::map<std::string, std::vector<double>>& class_costs,
                               std::size_t k) {
  std::set<RouteSetKey> wanted;
  for (const auto& p : packets) {
    wanted.insert({zone_of(network, p.origin_zone), zone_of(network, p.temporary.dest_zone),
                   driver_class(perceive(p))});
  }
  RouteSets sets;
  for (const auto& key : wanted) {
    auto costs = class_costs.find(key.driver_class);
    if (costs == class_costs.end())
      throw std::logic_error("enumerate_route_sets: no edge costs for class " + key.driver_class);
    ChoiceSet set;
    set.routes = k_shortest_routes(network, {key.origin_zone, key.dest_zone, k, costs->second});
    set.costs.reserve(set.routes.size());
    for (const auto& r : set.routes) set.costs.push_back(route_general_cost(network, r, costs->second));
    sets.emplace(key, std::move(set));
  }
  return sets;
}

DemandAssignment assign_demand(const Network& network, std::span<DriverPacket> packets,
                               const RouteSets& route_sets, FeatureLibrary& library,
                               const SimulationConfig& config, std::size_t iteration,
                               const AttributeChange& change) {
  DemandAssignment out;
  out.edge_volume.assign(network.edges().size(), 0.0);
  out.plans.reserve(packets.size());
  for (auto& packet : packets) {
    if (!change.empty()) apply_change(packet, change);
    const FeatureKey key = perceive(packet);
    const RouteSetKey set_key{zone_of(network, packet.origin_zone),
                              zone_of(network, packet.temporary.dest_zone), driver_class(key)};
    auto set = route_sets.find(set_key);
    if (set == route_sets.end() || set->second.routes.empty()) {
      throw RoutingError("empty route set for " + packet.origin_zone + " -> " +
                         packet.temporary.dest_zone);
    }
    auto stream = RandomStream::derive(config.seed, {iteration, packet.id});

    TripPlan plan{key, {}, false};
    if (config.cognition) {
      const auto start = Clock::now();
      auto entry = retrieve(library, key);
      out.lookup_time += seconds_since(start);
      ++out.lookups;
      if (entry) {
        plan.route = std::move(entry->route);
        plan.from_library = true;
        ++out.hits;
      }
    }
    if (!plan.from_library) plan.route = reason(key, set->second, config.choice, stream);

    for (EdgeIndex e : plan.route.edges) out.edge_volume[e] += packet.demand;
    packet.chosen_route = plan.route;
    out.plans.push_back(std::move(plan));
  }
  return out;
}

std::vector<RouteFlow> aggregate_route_flows(const Network& network,
                                             std::span<const DriverPacket> packets,
                                             std::span<const TripPlan> plans) {
  if (packets.size() != plans.size())
    throw std::invalid_argument("aggregate_route_flows: one plan per packet required");
  std::vector<RouteFlow> flows;
  for (std::size_t i = 0; i < plans.size(); ++i) {
    const Route& route = plans[i].route;
    auto it = std::find_if(flows.begin(), flows.end(),
                           [&route](const RouteFlow& f) { return f.route == route; });
    if (it == flows.end())
      flows.push_back({route, packets[i].demand});
    else
      it->demand += packets[i].demand;
  }
  std::stable_sort(flows.begin(), flows.end(), [&network](const RouteFlow& a, const RouteFlow& b) {
    if (a.route.origin_zone != b.route.origin_zone) return a.route.origin_zone < b.route.origin_zone;
    if (a.route.dest_zone != b.route.dest_zone) return a.route.dest_zone < b.route.dest_zone;
    return route_ids_less(network, a.route, b.route);
  });
  return flows;
}

AssignmentResult run_assignment(const Network& network, const ODMatrix& od,
                                const SimulationConfig& config, FeatureLibrary library,
                                const IterationObserver& observer) {
  validate(config);
  validate(od);
  resolve_od_zones(od, network);

  // incident edges resolved up-front so a bad id fails before any work
  std::vector<std::vector<EdgeIndex>> event_edges;
  for (const auto& event : config.events) {
    auto& edges = event_edges.emplace_back();
    for (const auto& id : event.incident_edges) {
      auto e = network.find_edge(id);
      if (!e) throw ConfigError("events: unknown incident edge '" + id + "'");
      edges.push_back(*e);
    }
  }

  AssignmentResult result;
  result.library = std::move(library);
  NetworkState state = free_flow_state(network);
  std::vector<DriverPacket> packets = make_packets(od, config);

  if (packets.empty()) {
    IterationReport report = compute_metrics(1, {}, 0, 0, 0.0);
    report.converged = true;
    state.iteration = 1;
    result.reports.push_back(report);
    result.converged = true;
    result.converged_at = 1;
    if (observer) observer({result.reports.back(), {}, state, result.library});
    result.final_state = std::move(state);
    return result;
  }

  std::set<std::string> classes;
  for (const auto& p : packets) classes.insert(driver_class(perceive(p)));
  auto price_edges = [&](const NetworkState& s) {
    std::map<std::string, std::vector<double>> costs;
    for (const auto& cls : classes)
      costs[cls] = edge_general_costs(network, s.edge_travel_time, weights_for(config, cls));
    return costs;
  };

  std::vector<double> multipliers(network.edges().size(), 1.0);
  std::vector<double> history;
  std::vector<PacketOutcome> outcomes(packets.size());

  for (std::size_t n = 1; n <= config.max_iterations; ++n) {
    AttributeChange change;
    bool times_changed = false;
    for (std::size_t ev = 0; ev < config.events.size(); ++ev) {
      const auto& event = config.events[ev];
      if (event_iteration(event, config.work_period) != n) continue;
      if (event.weather) change.weather = event.weather;
      if (event.road_condition) {
        change.road_condition = event.road_condition;
        if (*event.road_condition == RoadCondition::normal)
          std::fill(multipliers.begin(), multipliers.end(), 1.0);
        else
          for (EdgeIndex e : event_edges[ev]) multipliers[e] = event.incident_factor;
        times_changed = true;
      }
    }
    if (times_changed) {
      state.edge_travel_time =
          travel_times_for(network, state.edge_volume, config.volume_delay, multipliers);
    }

    const auto before = price_edges(state);
    const auto search_start = Clock::now();
    const RouteSets route_sets = enumerate_route_sets(network, packets, before, config.k_routes);
    const double enumeration_time = seconds_since(search_start);

    DemandAssignment assignment =
        assign_demand(network, packets, route_sets, result.library, config, n, change);
    state = update_travel_times(network, state, assignment.edge_volume, config, multipliers);
    const auto after = price_edges(state);

    std::map<FeatureKey, double> previous_scores;
    for (const auto& [key, entry] : result.library.entries()) previous_scores[key] = entry.score;

    for (std::size_t i = 0; i < packets.size(); ++i) {
      const TripPlan& plan = assignment.plans[i];
      const std::string cls = driver_class(plan.key);
      const auto& costs = after.at(cls);
      const double realized = route_general_cost(network, plan.route, costs);
      outcomes[i] = {packets[i].demand, realized};
      if (!config.cognition) continue;

      // Post-trip evaluation: the driven route, then the best candidate under
      // the network state the trip produced.
      evaluate_and_store(result.library, plan.key, plan.route, realized);
      const ChoiceSet& set = route_sets.at({plan.route.origin_zone, plan.route.dest_zone, cls});
      const Route* best = nullptr;
      double best_cost = 0.0;
      for (const auto& candidate : set.routes) {
        const double c = route_general_cost(network, candidate, costs);
        if (!best || c < best_cost ||
            (c == best_cost && route_ids_less(network, candidate, *best))) {
          best = &candidate;
          best_cost = c;
        }
      }
      evaluate_and_store(result.library, plan.key, *best, best_cost);
    }

    for (const auto& [key, score] : previous_scores) {
      if (result.library.find(key)->score > score)
        throw std::logic_error("feature library score increased for " + to_string(key));
    }

    IterationReport report = compute_metrics(n, outcomes, assignment.hits, assignment.lookups,
                                             enumeration_time + assignment.lookup_time);
    history.push_back(report.average_travel_cost);
    report.converged = check_convergence(history, config.epsilon);
    result.reports.push_back(report);
    result.route_flows = aggregate_route_flows(network, packets, assignment.plans);
    if (observer) observer({result.reports.back(), result.route_flows, state, result.library});
    if (report.converged && !result.converged) {
      result.converged = true;
      result.converged_at = n;
    }
    if (report.converged && config.stop_at_convergence) break;
  }
  result.final_state = std::move(state);
  return result;
}

}  // namespace routecog
