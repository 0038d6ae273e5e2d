#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <utility>
#include <vector>

namespace council {

/// Node identity. Valid identities are >= 1.
using NodeId = std::uint32_t;
using NodeSet = std::set<NodeId>;
using Edge = std::pair<NodeId, NodeId>;

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

double distance(Point a, Point b);

struct NodeSpec {
  NodeId nid = 0;
  Point position;
};

/// Undirected, loop-free network graph. Immutable once built; the `with_*`
/// members return modified copies.
class Topology {
 public:
  Topology() = default;

  /// Unit-disk construction: u~v iff distance(u, v) <= radius (inclusive).
  static Topology from_positions(std::span<const NodeSpec> nodes, double radius);

  /// Explicit construction from an edge list.
  static Topology from_edges(std::span<const NodeId> nodes, std::span<const Edge> edges);

  const NodeSet& nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }
  bool empty() const { return nodes_.empty(); }
  bool contains(NodeId u) const { return nodes_.contains(u); }

  /// Throws Errc::unknown_node.
  const NodeSet& neighbors(NodeId u) const;
  bool adjacent(NodeId u, NodeId v) const;

  /// Each undirected edge once, as (lo, hi), ascending.
  std::vector<Edge> edges() const;
  std::size_t edge_count() const;

  std::optional<Point> position(NodeId u) const;
  std::optional<double> radius() const { return radius_; }

  Topology with_link(NodeId u, NodeId v) const;
  Topology without_link(NodeId u, NodeId v) const;

  friend bool operator==(const Topology& a, const Topology& b) {
    return a.adjacency_ == b.adjacency_;
  }

 private:
  void require(NodeId u) const;

  NodeSet nodes_;
  std::map<NodeId, NodeSet> adjacency_;
  std::map<NodeId, Point> positions_;
  std::optional<double> radius_;
};

Topology build_topology(std::span<const NodeSpec> nodes, double radius);

const NodeSet& neighbors(const Topology& t, NodeId u);

/// What `owner` learns from two HELLO rounds: its direct neighbors, and for
/// every node one hop beyond a neighbor, which neighbors relay it. A node can
/// be both direct and two-hop (it closes a triangle with owner and a relay).
struct TwoHopView {
  NodeId owner = 0;
  NodeSet direct;
  std::map<NodeId, NodeSet> via;

  friend bool operator==(const TwoHopView&, const TwoHopView&) = default;
};

TwoHopView two_hop_view(const Topology& t, NodeId u);

using Triangle = std::array<NodeId, 3>;

/// Triangles through view.owner, found from the view alone (no global graph).
/// Each triangle is sorted ascending; the list is sorted and duplicate free.
std::vector<Triangle> triangles_from_view(const TwoHopView& view);

bool is_clique(const Topology& t, const NodeSet& s);
bool is_dominating_set(const Topology& t, const NodeSet& d);
bool is_connected(const Topology& t);

/// Connected components, each ascending, ordered by smallest member.
std::vector<NodeSet> components(const Topology& t);

}  // namespace council
