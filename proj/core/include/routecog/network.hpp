#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace routecog {

using NodeIndex = std::size_t;
using LinkIndex = std::size_t;
using EdgeIndex = std::size_t;
using ZoneIndex = std::size_t;

inline constexpr std::size_t kNoIndex = std::numeric_limits<std::size_t>::max();

enum class NodeKind { edge_node, inner_node, zone_centroid };
enum class RoadClass { express, major, minor, slip };

std::string_view to_string(NodeKind kind);
std::string_view to_string(RoadClass road_class);
std::optional<NodeKind> parse_node_kind(std::string_view text);
std::optional<RoadClass> parse_road_class(std::string_view text);

struct Node {
  std::string id;
  NodeKind kind = NodeKind::inner_node;
  std::string label;
};

struct Link {
  std::string id;
  std::string from_node;
  std::string to_node;
  double length = 0.0;           // m
  int lanes = 1;
  double free_flow_speed = 0.0;  // m/s
  double capacity = 0.0;         // veh/h
  double cost_rate = 0.0;        // currency per m
  double supplement1 = 0.0;      // currency, enters the financial cost
  double supplement2 = 0.0;      // currency, added unweighted to the general cost
  double road_quality = 0.0;     // dimensionless penalty
  RoadClass road_class = RoadClass::minor;

  double free_flow_time() const { return length / free_flow_speed; }
};

/// Routing unit: an ordered chain of links.
struct Edge {
  std::string id;
  std::vector<std::string> link_ids;
};

struct Zone {
  std::string id;
  std::string centroid_node;
  std::string name;
};

/// Ordered edge sequence between two zone centroids.
struct Route {
  ZoneIndex origin_zone = kNoIndex;
  ZoneIndex dest_zone = kNoIndex;
  std::vector<EdgeIndex> edges;

  friend bool operator==(const Route&, const Route&) = default;
};

/// Immutable road network. Construction resolves id references and derives
/// the node -> outgoing-edge adjacency; it never throws on invariant
/// violations (dangling references resolve to kNoIndex) so that
/// validate_network can report them.
class Network {
 public:
  Network() = default;
  Network(std::vector<Node> nodes, std::vector<Link> links, std::vector<Edge> edges,
          std::vector<Zone> zones);

  std::span<const Node> nodes() const { return nodes_; }
  std::span<const Link> links() const { return links_; }
  std::span<const Edge> edges() const { return edges_; }
  std::span<const Zone> zones() const { return zones_; }

  const Node& node(NodeIndex i) const { return nodes_.at(i); }
  const Link& link(LinkIndex i) const { return links_.at(i); }
  const Edge& edge(EdgeIndex i) const { return edges_.at(i); }
  const Zone& zone(ZoneIndex i) const { return zones_.at(i); }

  std::optional<NodeIndex> find_node(std::string_view id) const;
  std::optional<LinkIndex> find_link(std::string_view id) const;
  std::optional<EdgeIndex> find_edge(std::string_view id) const;
  std::optional<ZoneIndex> find_zone(std::string_view id) const;

  /// Resolved links of an edge (kNoIndex for dangling ids).
  std::span<const LinkIndex> edge_links(EdgeIndex e) const { return edge_links_.at(e); }
  /// First link's from-node and last link's to-node; kNoIndex if unresolved.
  NodeIndex edge_from(EdgeIndex e) const { return edge_from_.at(e); }
  NodeIndex edge_to(EdgeIndex e) const { return edge_to_.at(e); }
  NodeIndex zone_centroid(ZoneIndex z) const { return zone_centroid_.at(z); }

  std::span<const EdgeIndex> outgoing(NodeIndex n) const { return outgoing_.at(n); }
  std::span<const EdgeIndex> incoming(NodeIndex n) const { return incoming_.at(n); }

  /// Position of the edge id in byte-wise sorted id order; used for
  /// lexicographic tie-breaking between routes.
  std::size_t edge_rank(EdgeIndex e) const { return edge_rank_.at(e); }

  double edge_length(EdgeIndex e) const;
  double edge_free_flow_time(EdgeIndex e) const;

 private:
  std::vector<Node> nodes_;
  std::vector<Link> links_;
  std::vector<Edge> edges_;
  std::vector<Zone> zones_;

  std::unordered_map<std::string, NodeIndex> node_index_;
  std::unordered_map<std::string, LinkIndex> link_index_;
  std::unordered_map<std::string, EdgeIndex> edge_index_;
  std::unordered_map<std::string, ZoneIndex> zone_index_;

  std::vector<std::vector<LinkIndex>> edge_links_;
  std::vector<NodeIndex> edge_from_;
  std::vector<NodeIndex> edge_to_;
  std::vector<NodeIndex> zone_centroid_;
  std::vector<std::vector<EdgeIndex>> outgoing_;
  std::vector<std::vector<EdgeIndex>> incoming_;
  std::vector<std::size_t> edge_rank_;
};

struct Diagnostic {
  std::string entity;  // id of the offending entity, or "Z1,Z5" for zone pairs
  std::string rule;    // short rule tag, e.g. "dangling-reference"
  std::string message;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

std::string to_string(const Diagnostic& d);

/// Checks every network invariant. Empty result iff the network is valid.
std::vector<Diagnostic> validate_network(const Network& network);

/// Parses the JSON network document, enforcing the schema only (field set,
/// field types). Throws NetworkError naming the offending field.
Network parse_network(std::string_view json_text);

/// parse_network followed by validate_network; throws NetworkError listing
/// the diagnostics when any invariant fails.
Network load_network(std::string_view json_text);

/// Canonical JSON form: fixed key order, two-space indent, trailing newline.
std::string serialize_network(const Network& network);

/// The bundled 12-zone fixture (document text and parsed network).
std::string_view fixture_network_document();
const Network& fixture_network();

/// Diagnostics for a route: connectivity, endpoints, looplessness.
std::vector<Diagnostic> validate_route(const Network& network, const Route& route);

/// Node sequence visited by a route (origin centroid first).
std::vector<NodeIndex> route_nodes(const Network& network, const Route& route);

std::vector<std::string> route_edge_ids(const Network& network, const Route& route);

/// Lexicographic comparison of two routes' edge-id sequences.
bool route_ids_less(const Network& network, const Route& a, const Route& b);

}  // namespace routecog
