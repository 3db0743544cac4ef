#pragma once

#include <string>
#include <string_view>

#include "routecog/assignment.hpp"

namespace routecog {

/// Reads a JSON run configuration on top of `base`. Every key is optional;
/// unknown keys and ill-typed values throw ConfigError naming the key.
///
///   {"seed": 42, "choice": {"model": "kirchhoff", "sensitivity": 3},
///    "weights": {"novice": {"alpha": 1, "beta": 0.002, "gamma": 1, "delta": 40}},
///    "volume_delay": {"a": 0.15, "b": 4}, "k_routes": 5, "work_period": 120,
///    "max_iterations": 100, "epsilon": 0.001, "averaging": "successive",
///    "mode": "flat", "peak_factor": 1.5, "cognition": "on", "packets_per_od": 8,
///    "environment": {"weather": "clear", "road_condition": "normal"},
///    "events": [{"time": 240, "weather": "rain", "road_condition": "incident",
///                "incident_edges": ["e3-4"], "incident_factor": 10}]}
///
/// A "weights" object replaces the base weight table as a whole.
SimulationConfig parse_config(std::string_view json_text, SimulationConfig base = default_config());

/// Canonical JSON form of a configuration, accepted by parse_config.
std::string serialize_config(const SimulationConfig& config);

}  // namespace routecog
