#include "routecog/output.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

#include "routecog/assignment.hpp"
#include "routecog/error.hpp"
#include "routecog/network.hpp"

namespace routecog {

std::string format_number(double value) {
  if (value == 0.0) return "0";  // also folds -0
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc{}) throw std::runtime_error("format_number: conversion failed");
  return std::string(buf.data(), end);
}

std::string iterations_csv(std::span<const IterationReport> reports) {
  std::string out = "iteration,avg_travel_cost,cost_variance,route_search_ms,cache_hit_rate,converged\n";
  for (const auto& r : reports) {
    out += std::to_string(r.iteration);
    out += ',';
    out += format_number(r.average_travel_cost);
    out += ',';
    out += format_number(r.cost_variance);
    out += ',';
    out += format_number(r.route_search_time * 1000.0);
    out += ',';
    out += format_number(r.cache_hit_rate);
    out += ',';
    out += r.converged ? '1' : '0';
    out += '\n';
  }
  return out;
}

std::string flows_csv(const Network& network, std::span<const RouteFlow> flows) {
  std::string out = "od_origin,od_dest,route_edge_ids,demand\n";
  for (const auto& f : flows) {
    out += network.zone(f.route.origin_zone).id;
    out += ',';
    out += network.zone(f.route.dest_zone).id;
    out += ',';
    bool first = true;
    for (const auto& id : route_edge_ids(network, f.route)) {
      if (!first) out += ';';
      out += id;
      first = false;
    }
    out += ',';
    out += format_number(f.demand);
    out += '\n';
  }
  return out;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw InputError("cannot write " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw InputError("cannot move " + tmp.string() + " into place");
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace routecog
