#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "routecog/assignment.hpp"

namespace routecog::cli {

/// Runs the command line `args` (without the program name). Returns the
/// process exit code: 0 success, 1 input error, 2 internal error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct CompareResult {
  AssignmentResult on;
  AssignmentResult off;
  double on_mean_cost = 0.0;   // mean over iterations of avg_travel_cost
  double off_mean_cost = 0.0;
  double on_mean_variance = 0.0;
  double off_mean_variance = 0.0;
  /// Coefficient of variation of route_search_time over the last
  /// `search_window` cognition-on iterations (fewer if the run was shorter).
  double on_search_cv = 0.0;
  std::size_t search_window = 0;
};

/// Cognition on and off over the same network, demand and configuration,
/// each run for exactly `iterations` iterations.
CompareResult run_compare(const Network& network, const ODMatrix& od, SimulationConfig config,
                          std::size_t iterations = 50, std::size_t window = 10);

/// compare.csv: one row per iteration of the longer run; cells of the
/// shorter run are left empty past its end.
std::string compare_csv(const CompareResult& result);

}  // namespace routecog::cli
