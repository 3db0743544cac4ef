#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>

namespace routecog {

struct IterationReport;
struct RouteFlow;
class Network;

/// Shortest decimal text that parses back to the same double.
std::string format_number(double value);

/// iterations.csv: iteration,avg_travel_cost,cost_variance,route_search_ms,cache_hit_rate,converged
std::string iterations_csv(std::span<const IterationReport> reports);

/// flows.csv: od_origin,od_dest,route_edge_ids,demand (edge ids joined by ';')
std::string flows_csv(const Network& network, std::span<const RouteFlow> flows);

/// Writes through a temporary sibling file and renames it into place, so
/// the target is either complete or absent.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::string read_file(const std::filesystem::path& path);

}  // namespace routecog
