#include "routecog/network.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "routecog/error.hpp"

namespace routecog {

namespace detail {
std::string_view bundled_fixture_network();
}

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr std::string_view kNodeKindNames[] = {"edge-node", "inner-node", "zone-centroid"};
constexpr std::string_view kRoadClassNames[] = {"express", "major", "minor", "slip"};

bool valid_id(std::string_view id) {
  if (id.empty()) return false;
  return std::none_of(id.begin(), id.end(), [](char c) {
    return std::isspace(static_cast<unsigned char>(c)) || c == ',' || c == ';' || c == '|' ||
           c == '"';
  });
}

template <class T>
std::unordered_map<std::string, std::size_t> index_by_id(const std::vector<T>& items) {
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < items.size(); ++i) index.emplace(items[i].id, i);  // first wins
  return index;
}

std::size_t lookup(const std::unordered_map<std::string, std::size_t>& index,
                   const std::string& id) {
  auto it = index.find(id);
  return it == index.end() ? kNoIndex : it->second;
}

// ---- schema helpers -------------------------------------------------------

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
  throw NetworkError("network document: " + path + ": " + what);
}

void check_fields(const json& obj, const std::string& path,
                  std::initializer_list<std::string_view> fields) {
  if (!obj.is_object()) schema_error(path, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    if (std::find(fields.begin(), fields.end(), key) == fields.end())
      schema_error(path + "." + key, "unknown field");
  }
  for (auto field : fields) {
    if (!obj.contains(field)) schema_error(path + "." + std::string(field), "missing field");
  }
}

std::string get_string(const json& obj, const std::string& path, const char* field) {
  const auto& v = obj.at(field);
  if (!v.is_string()) schema_error(path + "." + field, "expected a string");
  return v.get<std::string>();
}

double get_number(const json& obj, const std::string& path, const char* field) {
  const auto& v = obj.at(field);
  if (!v.is_number()) schema_error(path + "." + field, "expected a number");
  return v.get<double>();
}

int get_integer(const json& obj, const std::string& path, const char* field) {
  const auto& v = obj.at(field);
  if (!v.is_number_integer()) schema_error(path + "." + field, "expected an integer");
  return v.get<int>();
}

const json& get_array(const json& doc, const char* field) {
  const auto& v = doc.at(field);
  if (!v.is_array()) schema_error(field, "expected an array");
  return v;
}

std::string item_path(const char* array, std::size_t i) {
  return std::string(array) + "[" + std::to_string(i) + "]";
}

}  // namespace

std::string_view to_string(NodeKind kind) { return kNodeKindNames[static_cast<int>(kind)]; }
std::string_view to_string(RoadClass road_class) {
  return kRoadClassNames[static_cast<int>(road_class)];
}

std::optional<NodeKind> parse_node_kind(std::string_view text) {
  for (int i = 0; i < 3; ++i)
    if (kNodeKindNames[i] == text) return static_cast<NodeKind>(i);
  return std::nullopt;
}

std::optional<RoadClass> parse_road_class(std::string_view text) {
  for (int i = 0; i < 4; ++i)
    if (kRoadClassNames[i] == text) return static_cast<RoadClass>(i);
  return std::nullopt;
}

// ---- Network ----------------------------------------------------------------

Network::Network(std::vector<Node> nodes, std::vector<Link> links, std::vector<Edge> edges,
                 std::vector<Zone> zones)
    : nodes_(std::move(nodes)),
      links_(std::move(links)),
      edges_(std::move(edges)),
      zones_(std::move(zones)) {
  node_index_ = index_by_id(nodes_);
  link_index_ = index_by_id(links_);
  edge_index_ = index_by_id(edges_);
  zone_index_ = index_by_id(zones_);

  edge_links_.resize(edges_.size());
  edge_from_.assign(edges_.size(), kNoIndex);
  edge_to_.assign(edges_.size(), kNoIndex);
  outgoing_.resize(nodes_.size());
  incoming_.resize(nodes_.size());
  for (EdgeIndex e = 0; e < edges_.size(); ++e) {
    for (const auto& lid : edges_[e].link_ids) edge_links_[e].push_back(lookup(link_index_, lid));
    if (edge_links_[e].empty()) continue;
    const LinkIndex first = edge_links_[e].front();
    const LinkIndex last = edge_links_[e].back();
    if (first != kNoIndex) edge_from_[e] = lookup(node_index_, links_[first].from_node);
    if (last != kNoIndex) edge_to_[e] = lookup(node_index_, links_[last].to_node);
    if (edge_from_[e] != kNoIndex && edge_to_[e] != kNoIndex) {
      outgoing_[edge_from_[e]].push_back(e);
      incoming_[edge_to_[e]].push_back(e);
    }
  }

  zone_centroid_.reserve(zones_.size());
  for (const auto& z : zones_) zone_centroid_.push_back(lookup(node_index_, z.centroid_node));

  std::vector<EdgeIndex> order(edges_.size());
  std::iota(order.begin(), order.end(), EdgeIndex{0});
  std::stable_sort(order.begin(), order.end(),
                   [this](EdgeIndex a, EdgeIndex b) { return edges_[a].id < edges_[b].id; });
  edge_rank_.resize(edges_.size());
  for (std::size_t r = 0; r < order.size(); ++r) edge_rank_[order[r]] = r;
}

std::optional<NodeIndex> Network::find_node(std::string_view id) const {
  auto it = node_index_.find(std::string(id));
  if (it == node_index_.end()) return std::nullopt;
  return it->second;
}
std::optional<LinkIndex> Network::find_link(std::string_view id) const {
  auto it = link_index_.find(std::string(id));
  if (it == link_index_.end()) return std::nullopt;
  return it->second;
}
std::optional<EdgeIndex> Network::find_edge(std::string_view id) const {
  auto it = edge_index_.find(std::string(id));
  if (it == edge_index_.end()) return std::nullopt;
  return it->second;
}
std::optional<ZoneIndex> Network::find_zone(std::string_view id) const {
  auto it = zone_index_.find(std::string(id));
  if (it == zone_index_.end()) return std::nullopt;
  return it->second;
}

double Network::edge_length(EdgeIndex e) const {
  double total = 0.0;
  for (LinkIndex l : edge_links_.at(e))
    if (l != kNoIndex) total += links_[l].length;
  return total;
}

double Network::edge_free_flow_time(EdgeIndex e) const {
  double total = 0.0;
  for (LinkIndex l : edge_links_.at(e))
    if (l != kNoIndex) total += links_[l].free_flow_time();
  return total;
}

// ---- validation ---------------------------------------------------------------

std::string to_string(const Diagnostic& d) { return d.entity + " [" + d.rule + "] " + d.message; }

namespace {

template <class T>
void check_ids(const std::vector<T>& items, std::string_view what, std::vector<Diagnostic>& out) {
  std::set<std::string> seen;
  for (const auto& item : items) {
    if (!valid_id(item.id)) {
      out.push_back({item.id, "invalid-id",
                     std::string(what) + " id must be non-empty without whitespace or ,;|\""});
    }
    if (!seen.insert(item.id).second)
      out.push_back({item.id, "duplicate-id", "duplicate " + std::string(what) + " id"});
  }
}

void check_link(const Network& net, const Link& l, std::vector<Diagnostic>& out) {
  auto bad = [&](std::string rule, std::string msg) {
    out.push_back({l.id, std::move(rule), std::move(msg)});
  };
  if (!net.find_node(l.from_node))
    bad("dangling-reference", "from_node '" + l.from_node + "' does not exist");
  if (!net.find_node(l.to_node))
    bad("dangling-reference", "to_node '" + l.to_node + "' does not exist");
  if (l.from_node == l.to_node) bad("self-loop", "from_node equals to_node");
  auto positive = [&](double v, const char* field) {
    if (!(std::isfinite(v) && v > 0.0)) bad("range", std::string(field) + " must be finite and > 0");
  };
  auto non_negative = [&](double v, const char* field) {
    if (!(std::isfinite(v) && v >= 0.0))
      bad("range", std::string(field) + " must be finite and >= 0");
  };
  positive(l.length, "length");
  positive(l.free_flow_speed, "free_flow_speed");
  positive(l.capacity, "capacity");
  if (l.lanes < 1) bad("range", "lanes must be >= 1");
  non_negative(l.cost_rate, "cost_rate");
  non_negative(l.supplement1, "supplement1");
  non_negative(l.supplement2, "supplement2");
  non_negative(l.road_quality, "road_quality");
  if (l.length > 0.0 && l.free_flow_speed > 0.0) {
    const double t = l.free_flow_time();
    if (!(std::isfinite(t) && t > 0.0)) bad("range", "free-flow time must be finite and > 0");
  }
}

void check_edge(const Network& net, EdgeIndex e, std::vector<Diagnostic>& out) {
  const Edge& edge = net.edge(e);
  if (edge.link_ids.empty()) {
    out.push_back({edge.id, "empty-edge", "edge has no links"});
    return;
  }
  std::set<std::string> seen;
  for (const auto& lid : edge.link_ids) {
    if (!net.find_link(lid))
      out.push_back({edge.id, "dangling-reference", "link '" + lid + "' does not exist"});
    if (!seen.insert(lid).second)
      out.push_back({edge.id, "repeated-link", "link '" + lid + "' appears more than once"});
  }
  const auto links = net.edge_links(e);
  for (std::size_t i = 0; i + 1 < links.size(); ++i) {
    if (links[i] == kNoIndex || links[i + 1] == kNoIndex) continue;
    const Link& a = net.link(links[i]);
    const Link& b = net.link(links[i + 1]);
    if (a.to_node != b.from_node) {
      out.push_back({edge.id, "disconnected-links",
                     "link '" + a.id + "' ends at " + a.to_node + " but '" + b.id +
                         "' starts at " + b.from_node});
    }
  }
}

std::vector<bool> reachable_from(const Network& net, NodeIndex start) {
  std::vector<bool> seen(net.nodes().size(), false);
  std::queue<NodeIndex> queue;
  seen[start] = true;
  queue.push(start);
  while (!queue.empty()) {
    NodeIndex n = queue.front();
    queue.pop();
    for (EdgeIndex e : net.outgoing(n)) {
      NodeIndex to = net.edge_to(e);
      if (!seen[to]) {
        seen[to] = true;
        queue.push(to);
      }
    }
  }
  return seen;
}

}  // namespace

std::vector<Diagnostic> validate_network(const Network& net) {
  std::vector<Diagnostic> out;
  if (net.zones().size() < 2) out.push_back({"network", "zone-count", "at least 2 zones required"});
  std::vector<Node> nodes(net.nodes().begin(), net.nodes().end());
  std::vector<Link> links(net.links().begin(), net.links().end());
  std::vector<Edge> edges(net.edges().begin(), net.edges().end());
  std::vector<Zone> zones(net.zones().begin(), net.zones().end());
  check_ids(nodes, "node", out);
  check_ids(links, "link", out);
  check_ids(edges, "edge", out);
  check_ids(zones, "zone", out);

  for (const auto& l : links) check_link(net, l, out);
  for (EdgeIndex e = 0; e < edges.size(); ++e) check_edge(net, e, out);

  std::unordered_map<std::string, int> centroid_refs;
  for (ZoneIndex z = 0; z < zones.size(); ++z) {
    const Zone& zone = zones[z];
    NodeIndex c = net.zone_centroid(z);
    if (c == kNoIndex) {
      out.push_back({zone.id, "dangling-reference",
                     "centroid_node '" + zone.centroid_node + "' does not exist"});
      continue;
    }
    if (net.node(c).kind != NodeKind::zone_centroid) {
      out.push_back({zone.id, "centroid-kind",
                     "centroid_node '" + zone.centroid_node + "' is not a zone-centroid"});
    }
    if (++centroid_refs[zone.centroid_node] == 2) {
      out.push_back({zone.centroid_node, "shared-centroid",
                     "zone-centroid node is referenced by more than one zone"});
    }
  }
  for (const auto& n : nodes) {
    if (n.kind == NodeKind::zone_centroid && !centroid_refs.contains(n.id))
      out.push_back({n.id, "orphan-centroid", "zone-centroid node is not referenced by any zone"});
  }

  if (zones.size() < 2) return out;
  for (ZoneIndex a = 0; a < zones.size(); ++a) {
    NodeIndex ca = net.zone_centroid(a);
    if (ca == kNoIndex) continue;
    const auto seen = reachable_from(net, ca);
    for (ZoneIndex b = 0; b < zones.size(); ++b) {
      NodeIndex cb = net.zone_centroid(b);
      if (a == b || cb == kNoIndex || seen[cb]) continue;
      out.push_back({zones[a].id + "," + zones[b].id, "disconnected-zones",
                     "zone " + zones[b].id + " is unreachable from " + zones[a].id});
    }
  }
  return out;
}

// ---- JSON I/O -----------------------------------------------------------------

Network parse_network(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw NetworkError(std::string("network document: invalid JSON: ") + e.what());
  }
  check_fields(doc, "document", {"nodes", "links", "edges", "zones"});

  std::vector<Node> nodes;
  const auto& jn = get_array(doc, "nodes");
  for (std::size_t i = 0; i < jn.size(); ++i) {
    const std::string path = item_path("nodes", i);
    check_fields(jn[i], path, {"id", "kind", "label"});
    Node n;
    n.id = get_string(jn[i], path, "id");
    const auto kind = parse_node_kind(get_string(jn[i], path, "kind"));
    if (!kind) schema_error(path + ".kind", "expected one of edge-node, inner-node, zone-centroid");
    n.kind = *kind;
    n.label = get_string(jn[i], path, "label");
    nodes.push_back(std::move(n));
  }

  std::vector<Link> links;
  const auto& jl = get_array(doc, "links");
  for (std::size_t i = 0; i < jl.size(); ++i) {
    const std::string path = item_path("links", i);
    check_fields(jl[i], path,
                 {"id", "from_node", "to_node", "length", "lanes", "free_flow_speed", "capacity",
                  "cost_rate", "supplement1", "supplement2", "road_quality", "road_class"});
    const json& o = jl[i];
    Link l;
    l.id = get_string(o, path, "id");
    l.from_node = get_string(o, path, "from_node");
    l.to_node = get_string(o, path, "to_node");
    l.length = get_number(o, path, "length");
    l.lanes = get_integer(o, path, "lanes");
    l.free_flow_speed = get_number(o, path, "free_flow_speed");
    l.capacity = get_number(o, path, "capacity");
    l.cost_rate = get_number(o, path, "cost_rate");
    l.supplement1 = get_number(o, path, "supplement1");
    l.supplement2 = get_number(o, path, "supplement2");
    l.road_quality = get_number(o, path, "road_quality");
    const auto cls = parse_road_class(get_string(o, path, "road_class"));
    if (!cls) schema_error(path + ".road_class", "expected one of express, major, minor, slip");
    l.road_class = *cls;
    links.push_back(std::move(l));
  }

  std::vector<Edge> edges;
  const auto& je = get_array(doc, "edges");
  for (std::size_t i = 0; i < je.size(); ++i) {
    const std::string path = item_path("edges", i);
    check_fields(je[i], path, {"id", "link_ids"});
    Edge e;
    e.id = get_string(je[i], path, "id");
    const auto& ids = je[i].at("link_ids");
    if (!ids.is_array()) schema_error(path + ".link_ids", "expected an array");
    for (std::size_t k = 0; k < ids.size(); ++k) {
      if (!ids[k].is_string())
        schema_error(path + ".link_ids[" + std::to_string(k) + "]", "expected a string");
      e.link_ids.push_back(ids[k].get<std::string>());
    }
    edges.push_back(std::move(e));
  }

  std::vector<Zone> zones;
  const auto& jz = get_array(doc, "zones");
  for (std::size_t i = 0; i < jz.size(); ++i) {
    const std::string path = item_path("zones", i);
    check_fields(jz[i], path, {"id", "centroid_node", "name"});
    zones.push_back({get_string(jz[i], path, "id"), get_string(jz[i], path, "centroid_node"),
                     get_string(jz[i], path, "name")});
  }

  return Network(std::move(nodes), std::move(links), std::move(edges), std::move(zones));
}

Network load_network(std::string_view json_text) {
  Network net = parse_network(json_text);
  const auto diagnostics = validate_network(net);
  if (!diagnostics.empty()) {
    std::ostringstream msg;
    msg << "network document: " << diagnostics.size() << " invariant violation(s): ";
    const std::size_t shown = std::min<std::size_t>(diagnostics.size(), 5);
    for (std::size_t i = 0; i < shown; ++i) {
      if (i) msg << "; ";
      msg << (diagnostics[i].rule == "zone-count" ? diagnostics[i].message
                                                   : to_string(diagnostics[i]));
    }
    if (shown < diagnostics.size()) msg << "; ...";
    throw NetworkError(msg.str());
  }
  return net;
}

std::string serialize_network(const Network& net) {
  ordered_json doc;
  doc["nodes"] = ordered_json::array();
  for (const auto& n : net.nodes()) {
    ordered_json o;
    o["id"] = n.id;
    o["kind"] = to_string(n.kind);
    o["label"] = n.label;
    doc["nodes"].push_back(std::move(o));
  }
  doc["links"] = ordered_json::array();
  for (const auto& l : net.links()) {
    ordered_json o;
    o["id"] = l.id;
    o["from_node"] = l.from_node;
    o["to_node"] = l.to_node;
    o["length"] = l.length;
    o["lanes"] = l.lanes;
    o["free_flow_speed"] = l.free_flow_speed;
    o["capacity"] = l.capacity;
    o["cost_rate"] = l.cost_rate;
    o["supplement1"] = l.supplement1;
    o["supplement2"] = l.supplement2;
    o["road_quality"] = l.road_quality;
    o["road_class"] = to_string(l.road_class);
    doc["links"].push_back(std::move(o));
  }
  doc["edges"] = ordered_json::array();
  for (const auto& e : net.edges()) {
    ordered_json o;
    o["id"] = e.id;
    o["link_ids"] = e.link_ids;
    doc["edges"].push_back(std::move(o));
  }
  doc["zones"] = ordered_json::array();
  for (const auto& z : net.zones()) {
    ordered_json o;
    o["id"] = z.id;
    o["centroid_node"] = z.centroid_node;
    o["name"] = z.name;
    doc["zones"].push_back(std::move(o));
  }
  return doc.dump(2) + "\n";
}

std::string_view fixture_network_document() { return detail::bundled_fixture_network(); }

const Network& fixture_network() {
  static const Network network = load_network(fixture_network_document());
  return network;
}

// ---- routes -------------------------------------------------------------------

std::vector<NodeIndex> route_nodes(const Network& net, const Route& route) {
  std::vector<NodeIndex> nodes;
  if (route.edges.empty()) return nodes;
  nodes.push_back(net.edge_from(route.edges.front()));
  for (EdgeIndex e : route.edges) nodes.push_back(net.edge_to(e));
  return nodes;
}

std::vector<Diagnostic> validate_route(const Network& net, const Route& route) {
  std::vector<Diagnostic> out;
  const std::string entity = "route";
  if (route.origin_zone >= net.zones().size() || route.dest_zone >= net.zones().size()) {
    out.push_back({entity, "dangling-reference", "route zone index out of range"});
    return out;
  }
  if (route.edges.empty()) {
    out.push_back({entity, "empty-route", "route has no edges"});
    return out;
  }
  for (EdgeIndex e : route.edges) {
    if (e >= net.edges().size()) {
      out.push_back({entity, "dangling-reference", "edge index out of range"});
      return out;
    }
  }
  if (net.edge_from(route.edges.front()) != net.zone_centroid(route.origin_zone))
    out.push_back({entity, "endpoint", "route does not start at the origin centroid"});
  if (net.edge_to(route.edges.back()) != net.zone_centroid(route.dest_zone))
    out.push_back({entity, "endpoint", "route does not end at the destination centroid"});
  for (std::size_t i = 0; i + 1 < route.edges.size(); ++i) {
    if (net.edge_to(route.edges[i]) != net.edge_from(route.edges[i + 1])) {
      out.push_back({net.edge(route.edges[i + 1]).id, "disconnected-route",
                     "edge does not continue from " + net.edge(route.edges[i]).id});
    }
  }
  auto nodes = route_nodes(net, route);
  std::sort(nodes.begin(), nodes.end());
  if (std::adjacent_find(nodes.begin(), nodes.end()) != nodes.end())
    out.push_back({entity, "loop", "route visits a node twice"});
  return out;
}

std::vector<std::string> route_edge_ids(const Network& net, const Route& route) {
  std::vector<std::string> ids;
  ids.reserve(route.edges.size());
  for (EdgeIndex e : route.edges) ids.push_back(net.edge(e).id);
  return ids;
}

bool route_ids_less(const Network& net, const Route& a, const Route& b) {
  return std::lexicographical_compare(
      a.edges.begin(), a.edges.end(), b.edges.begin(), b.edges.end(),
      [&net](EdgeIndex x, EdgeIndex y) { return net.edge_rank(x) < net.edge_rank(y); });
}

}  // namespace routecog
