#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "routecog/choice.hpp"
#include "routecog/cognition.hpp"
#include "routecog/cost.hpp"
#include "routecog/network.hpp"
#include "routecog/od_matrix.hpp"

namespace routecog {

enum class Averaging { none, successive };
enum class DemandMode { flat, peak };

std::string_view to_string(Averaging v);
std::string_view to_string(DemandMode v);
std::optional<Averaging> parse_averaging(std::string_view text);
std::optional<DemandMode> parse_demand_mode(std::string_view text);

/// Environment change sensed at the first work-period boundary at or after
/// `time` (seconds since the start of the run).
struct EnvironmentEvent {
  double time = 0.0;
  std::optional<Weather> weather;
  std::optional<RoadCondition> road_condition;
  /// Edges whose travel time is multiplied by incident_factor while the
  /// road condition is "incident".
  std::vector<std::string> incident_edges;
  double incident_factor = 10.0;
};

struct SimulationConfig {
  ChoiceParams choice;
  /// Weights by driver class; "default" is used for classes without an entry.
  std::map<std::string, CostWeights> weights;
  VolumeDelayParams volume_delay;
  std::size_t k_routes = 5;
  double work_period = 120.0;  // s
  std::size_t max_iterations = 100;
  /// When false the loop runs all max_iterations; the converged flag is
  /// still reported per iteration.
  bool stop_at_convergence = true;
  double epsilon = 1e-3;
  Averaging averaging = Averaging::successive;
  DemandMode mode = DemandMode::flat;
  double peak_factor = 1.5;
  bool cognition = true;
  std::uint64_t seed = 42;
  std::size_t packets_per_od = 8;
  EnvironmentState environment;
  std::vector<EnvironmentEvent> events;
};

/// Defaults: Kirchhoff with k = 3, weights for the "novice" and
/// "experienced" classes, BPR a = 0.15, b = 4.
SimulationConfig default_config();

/// Throws ConfigError on the first invalid field.
void validate(const SimulationConfig& config);

/// Weights for a driver class, falling back to "default".
const CostWeights& weights_for(const SimulationConfig& config, std::string_view driver_class);

/// Iteration a timed event is applied at (1-based).
std::size_t event_iteration(const EnvironmentEvent& event, double work_period);

struct NetworkState {
  std::size_t iteration = 0;
  std::vector<double> edge_volume;       // veh/h
  std::vector<double> edge_travel_time;  // s, incident multipliers included
};

NetworkState free_flow_state(const Network& network);

/// Blends candidate volumes into the state (v_n = v_{n-1} + (c - v_{n-1}) / n
/// under successive averaging, v_n = c otherwise) and recomputes every
/// edge's travel time from its links' congested times. `incident_multipliers`
/// is either empty or one factor per edge.
NetworkState update_travel_times(const Network& network, const NetworkState& state,
                                 std::span<const double> candidate_volumes,
                                 const SimulationConfig& config,
                                 std::span<const double> incident_multipliers = {});

struct IterationReport {
  std::size_t iteration = 0;
  double average_travel_cost = 0.0;
  double cost_variance = 0.0;
  double route_search_time = 0.0;  // s of wall-clock in route enumeration + library queries
  double cache_hit_rate = 0.0;
  bool converged = false;
  std::size_t lookups = 0;
  std::size_t hits = 0;
};

/// Relative change of the last min(3, n-1) consecutive pairs all below
/// epsilon. A pair of zeros counts as no change.
bool check_convergence(std::span<const double> history, double epsilon);

struct PacketOutcome {
  double demand = 0.0;
  double realized_cost = 0.0;
};

/// Demand-weighted mean and population variance of realized costs;
/// hit rate is 0 when there were no lookups.
IterationReport compute_metrics(std::size_t iteration, std::span<const PacketOutcome> outcomes,
                                std::size_t hits, std::size_t lookups, double route_search_time);

/// Attribute roster the packets of every OD pair cycle through.
struct DriverProfile {
  StaticAttributes static_attributes;
  Urgency urgency = Urgency::low;
  Physiological physiological = Physiological::normal;
};

std::span<const DriverProfile> default_roster();

/// packets_per_od packets for every positive OD entry, demand split evenly
/// (scaled by peak_factor in peak mode). Ids follow OD order.
std::vector<DriverPacket> make_packets(const ODMatrix& od, const SimulationConfig& config);

struct RouteSetKey {
  ZoneIndex origin_zone = kNoIndex;
  ZoneIndex dest_zone = kNoIndex;
  std::string driver_class;

  friend auto operator<=>(const RouteSetKey&, const RouteSetKey&) = default;
};

using RouteSets = std::map<RouteSetKey, ChoiceSet>;

/// Priced k-shortest candidate sets for every (OD pair, driver class) that
/// has a packet. `class_costs` maps driver class to per-edge general cost.
RouteSets enumerate_route_sets(const Network& network, std::span<const DriverPacket> packets,
                               const std::map<std::string, std::vector<double>>& class_costs,
                               std::size_t k);

struct DemandAssignment {
  std::vector<TripPlan> plans;      // one per packet, in packet order
  std::vector<double> edge_volume;  // candidate volumes, veh/h
  std::size_t hits = 0;
  std::size_t lookups = 0;
  double lookup_time = 0.0;  // s
};

/// Places each packet's demand on one route: the library's route on a hit,
/// a sampled route otherwise (always sampled with cognition off). Packets
/// listed in `resensing` first apply `change` (see resense).
DemandAssignment assign_demand(const Network& network, std::span<DriverPacket> packets,
                               const RouteSets& route_sets, FeatureLibrary& library,
                               const SimulationConfig& config, std::size_t iteration,
                               const AttributeChange& change = {});

struct RouteFlow {
  Route route;
  double demand = 0.0;  // veh/h
};

/// Per-route demand, sorted by (origin, destination, edge-id sequence).
std::vector<RouteFlow> aggregate_route_flows(const Network& network,
                                             std::span<const DriverPacket> packets,
                                             std::span<const TripPlan> plans);

struct IterationSnapshot {
  const IterationReport& report;
  std::span<const RouteFlow> flows;
  const NetworkState& state;
  const FeatureLibrary& library;
};

using IterationObserver = std::function<void(const IterationSnapshot&)>;

struct AssignmentResult {
  std::vector<IterationReport> reports;
  std::vector<RouteFlow> route_flows;  // flows of the final iteration
  NetworkState final_state;
  FeatureLibrary library;
  bool converged = false;
  std::size_t converged_at = 0;  // first converged iteration, 0 if none
};

/// Iterative route-choice assignment. Iteration 1 prices routes at
/// free-flow times; every later iteration uses the state left by the
/// previous one. Stops on convergence or after max_iterations.
AssignmentResult run_assignment(const Network& network, const ODMatrix& od,
                                const SimulationConfig& config, FeatureLibrary library = {},
                                const IterationObserver& observer = {});

}  // namespace routecog
