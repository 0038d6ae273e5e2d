#include "council/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>

#include "council/errors.hpp"

namespace council {

double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

namespace {

void check_nid(NodeId u) {
  if (u == 0) throw Error(Errc::invalid_nid, "node identities start at 1");
}

}  // namespace

Topology Topology::from_positions(std::span<const NodeSpec> nodes, double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw Error(Errc::invalid_radius, "radius must be positive and finite");
  }
  Topology t;
  t.radius_ = radius;
  for (const auto& spec : nodes) {
    check_nid(spec.nid);
    if (!t.nodes_.insert(spec.nid).second) {
      throw Error(Errc::duplicate_nid, "node " + std::to_string(spec.nid) + " listed twice");
    }
    t.adjacency_[spec.nid];
    t.positions_[spec.nid] = spec.position;
  }
  for (auto a = t.positions_.begin(); a != t.positions_.end(); ++a) {
    for (auto b = std::next(a); b != t.positions_.end(); ++b) {
      if (distance(a->second, b->second) <= radius) {
        t.adjacency_[a->first].insert(b->first);
        t.adjacency_[b->first].insert(a->first);
      }
    }
  }
  return t;
}

Topology Topology::from_edges(std::span<const NodeId> nodes, std::span<const Edge> edges) {
  Topology t;
  for (NodeId u : nodes) {
    check_nid(u);
    if (!t.nodes_.insert(u).second) {
      throw Error(Errc::duplicate_nid, "node " + std::to_string(u) + " listed twice");
    }
    t.adjacency_[u];
  }
  for (auto [u, v] : edges) {
    t.require(u);
    t.require(v);
    if (u == v) continue;
    t.adjacency_[u].insert(v);
    t.adjacency_[v].insert(u);
  }
  return t;
}

void Topology::require(NodeId u) const {
  if (!nodes_.contains(u)) {
    throw Error(Errc::unknown_node, "node " + std::to_string(u) + " is not in the topology");
  }
}

const NodeSet& Topology::neighbors(NodeId u) const {
  require(u);
  return adjacency_.at(u);
}

bool Topology::adjacent(NodeId u, NodeId v) const {
  auto it = adjacency_.find(u);
  return it != adjacency_.end() && it->second.contains(v);
}

std::vector<Edge> Topology::edges() const {
  std::vector<Edge> out;
  for (const auto& [u, ns] : adjacency_) {
    for (NodeId v : ns) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

std::size_t Topology::edge_count() const {
  std::size_t twice = 0;
  for (const auto& [u, ns] : adjacency_) twice += ns.size();
  return twice / 2;
}

std::optional<Point> Topology::position(NodeId u) const {
  require(u);
  if (auto it = positions_.find(u); it != positions_.end()) return it->second;
  return std::nullopt;
}

Topology Topology::with_link(NodeId u, NodeId v) const {
  require(u);
  require(v);
  Topology t = *this;
  if (u != v) {
    t.adjacency_[u].insert(v);
    t.adjacency_[v].insert(u);
  }
  return t;
}

Topology Topology::without_link(NodeId u, NodeId v) const {
  require(u);
  require(v);
  Topology t = *this;
  t.adjacency_[u].erase(v);
  t.adjacency_[v].erase(u);
  return t;
}

Topology build_topology(std::span<const NodeSpec> nodes, double radius) {
  return Topology::from_positions(nodes, radius);
}

const NodeSet& neighbors(const Topology& t, NodeId u) { return t.neighbors(u); }

TwoHopView two_hop_view(const Topology& t, NodeId u) {
  TwoHopView view;
  view.owner = u;
  view.direct = t.neighbors(u);
  for (NodeId relay : view.direct) {
    for (NodeId w : t.neighbors(relay)) {
      if (w != u) view.via[w].insert(relay);
    }
  }
  return view;
}

std::vector<Triangle> triangles_from_view(const TwoHopView& view) {
  std::set<Triangle> found;
  for (const auto& [far, relays] : view.via) {
    if (!view.direct.contains(far)) continue;
    for (NodeId relay : relays) {
      Triangle tri{view.owner, relay, far};
      std::sort(tri.begin(), tri.end());
      found.insert(tri);
    }
  }
  return {found.begin(), found.end()};
}

bool is_clique(const Topology& t, const NodeSet& s) {
  for (NodeId u : s) t.neighbors(u);  // validates membership
  for (auto a = s.begin(); a != s.end(); ++a) {
    for (auto b = std::next(a); b != s.end(); ++b) {
      if (!t.adjacent(*a, *b)) return false;
    }
  }
  return true;
}

bool is_dominating_set(const Topology& t, const NodeSet& d) {
  NodeSet covered;
  for (NodeId u : d) {
    covered.insert(u);
    const auto& ns = t.neighbors(u);
    covered.insert(ns.begin(), ns.end());
  }
  return covered.size() == t.size();
}

std::vector<NodeSet> components(const Topology& t) {
  std::vector<NodeSet> out;
  NodeSet seen;
  for (NodeId start : t.nodes()) {
    if (seen.contains(start)) continue;
    NodeSet comp;
    std::deque<NodeId> queue{start};
    seen.insert(start);
    while (!queue.empty()) {
      NodeId u = queue.front();
      queue.pop_front();
      comp.insert(u);
      for (NodeId v : t.neighbors(u)) {
        if (seen.insert(v).second) queue.push_back(v);
      }
    }
    out.push_back(std::move(comp));
  }
  return out;
}

bool is_connected(const Topology& t) { return components(t).size() <= 1; }

}  // namespace council
