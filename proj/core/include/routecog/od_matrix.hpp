#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "routecog/network.hpp"

namespace routecog {

/// Square origin-destination demand table in vehicles/hour.
struct ODMatrix {
  std::vector<std::string> zone_ids;
  std::vector<double> demand;  // row-major, origin x destination

  std::size_t size() const { return zone_ids.size(); }
  double at(std::size_t origin, std::size_t dest) const { return demand.at(origin * size() + dest); }
  double& at(std::size_t origin, std::size_t dest) { return demand.at(origin * size() + dest); }
  double total() const;

  friend bool operator==(const ODMatrix&, const ODMatrix&) = default;
};

/// Throws ODFormatError on a broken invariant (diagonal, sign, finiteness,
/// duplicate zone ids, shape).
void validate(const ODMatrix& matrix);

/// Reads the OD text format:
///   * comment lines start with '*'; blank lines are ignored
///   first data line: zone count Z
///   second: Z zone ids
///   then Z rows of Z non-negative reals (origin rows, destination columns)
ODMatrix parse_od(std::string_view text);

/// Canonical text: a fixed comment header, single-space separators and
/// shortest round-trip numbers. parse_od(write_od(m)) == m.
std::string write_od(const ODMatrix& matrix);

/// Network zone index of every OD zone. Throws ODFormatError naming the
/// first zone id the network does not know.
std::vector<ZoneIndex> resolve_od_zones(const ODMatrix& matrix, const Network& network);

/// The bundled flat-time OD table of the 12-zone experiment.
std::string_view flat_time_od_document();
ODMatrix flat_time_od();

}  // namespace routecog
