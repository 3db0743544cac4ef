#include "routecog/od_matrix.hpp"

#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

#include "routecog/error.hpp"
#include "routecog/output.hpp"

namespace routecog {

namespace detail {
std::string_view bundled_flat_time_od();
}

namespace {

constexpr std::string_view kHeader = "* OD demand (veh/h): zone count, zone ids, one row per origin\n";

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) tokens.push_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

struct DataLine {
  std::size_t line_no;
  std::vector<std::string_view> tokens;
};

std::vector<DataLine> data_lines(std::string_view text) {
  std::vector<DataLine> lines;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    auto tokens = split_ws(line);
    if (tokens.empty() || tokens.front().front() == '*') continue;
    lines.push_back({line_no, std::move(tokens)});
  }
  return lines;
}

[[noreturn]] void od_error(std::size_t line_no, const std::string& what) {
  throw ODFormatError("OD file line " + std::to_string(line_no) + ": " + what);
}

}  // namespace

double ODMatrix::total() const {
  double sum = 0.0;
  for (double d : demand) sum += d;
  return sum;
}

void validate(const ODMatrix& m) {
  const std::size_t n = m.size();
  if (n == 0) throw ODFormatError("OD matrix: no zones");
  if (m.demand.size() != n * n) throw ODFormatError("OD matrix: not square");
  std::set<std::string> seen;
  for (const auto& id : m.zone_ids) {
    if (!seen.insert(id).second) throw ODFormatError("OD matrix: duplicate zone id '" + id + "'");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double v = m.at(i, j);
      const std::string cell = "(" + m.zone_ids[i] + "," + m.zone_ids[j] + ")";
      if (!std::isfinite(v)) throw ODFormatError("OD matrix: non-finite entry at " + cell);
      if (v < 0.0) throw ODFormatError("OD matrix: negative entry at " + cell);
      if (i == j && v != 0.0) throw ODFormatError("OD matrix: nonzero diagonal entry at " + cell);
    }
  }
}

ODMatrix parse_od(std::string_view text) {
  const auto lines = data_lines(text);
  if (lines.empty()) throw ODFormatError("OD file: no data lines");

  const auto& count_line = lines[0];
  if (count_line.tokens.size() != 1) od_error(count_line.line_no, "expected the zone count alone");
  std::size_t count = 0;
  {
    const auto tok = count_line.tokens[0];
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), count);
    if (ec != std::errc{} || ptr != tok.data() + tok.size() || count == 0)
      od_error(count_line.line_no, "zone count must be a positive integer");
  }
  if (lines.size() < 2) throw ODFormatError("OD file: missing zone id line");
  if (lines[1].tokens.size() != count) {
    od_error(lines[1].line_no, "expected " + std::to_string(count) + " zone ids, found " +
                                   std::to_string(lines[1].tokens.size()));
  }
  ODMatrix m;
  for (auto tok : lines[1].tokens) m.zone_ids.emplace_back(tok);

  if (lines.size() != count + 2) {
    throw ODFormatError("OD file: matrix is not square: expected " + std::to_string(count) +
                        " rows, found " + std::to_string(lines.size() - 2));
  }
  m.demand.resize(count * count);
  for (std::size_t i = 0; i < count; ++i) {
    const auto& row = lines[i + 2];
    if (row.tokens.size() != count) {
      od_error(row.line_no, "matrix is not square: row " + m.zone_ids[i] + " has " +
                                std::to_string(row.tokens.size()) + " entries, expected " +
                                std::to_string(count));
    }
    for (std::size_t j = 0; j < count; ++j) {
      const auto tok = row.tokens[j];
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      const std::string cell = "(" + m.zone_ids[i] + "," + m.zone_ids[j] + ")";
      if (ec != std::errc{} || ptr != tok.data() + tok.size())
        od_error(row.line_no, "malformed number '" + std::string(tok) + "' at " + cell);
      if (!std::isfinite(v)) od_error(row.line_no, "non-finite entry at " + cell);
      if (v < 0.0) od_error(row.line_no, "negative entry " + std::string(tok) + " at " + cell);
      if (i == j && v != 0.0) od_error(row.line_no, "nonzero diagonal entry at " + cell);
      m.at(i, j) = v;
    }
  }
  validate(m);
  return m;
}

std::string write_od(const ODMatrix& m) {
  validate(m);
  std::string out(kHeader);
  out += std::to_string(m.size()) + "\n";
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) out += ' ';
    out += m.zone_ids[i];
  }
  out += '\n';
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (j) out += ' ';
      out += format_number(m.at(i, j));
    }
    out += '\n';
  }
  return out;
}

std::vector<ZoneIndex> resolve_od_zones(const ODMatrix& m, const Network& network) {
  std::vector<ZoneIndex> zones;
  zones.reserve(m.size());
  for (const auto& id : m.zone_ids) {
    auto z = network.find_zone(id);
    if (!z) throw ODFormatError("OD matrix: zone '" + id + "' is not in the network");
    zones.push_back(*z);
  }
  return zones;
}

std::string_view flat_time_od_document() { return detail::bundled_flat_time_od(); }

ODMatrix flat_time_od() { return parse_od(flat_time_od_document()); }

}  // namespace routecog
