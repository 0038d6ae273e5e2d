#include "council/election.hpp"

#include <algorithm>

#include "council/errors.hpp"

namespace council {

std::string_view to_string(Role role) {
  switch (role) {
    case Role::undecided: return "undecided";
    case Role::head: return "head";
    case Role::member: return "member";
    case Role::gateway: return "gateway";
  }
  return "undecided";
}

NodeSet RoleAssignment::with_role(Role role) const {
  NodeSet out;
  for (const auto& [u, entry] : roles) {
    if (entry.role == role) out.insert(u);
  }
  return out;
}

NodeSet RoleAssignment::cluster_of(ClusterId cid) const {
  NodeSet out;
  for (const auto& [u, entry] : roles) {
    if (entry.cluster == cid) out.insert(u);
  }
  return out;
}

bool DominatingSet::contains(NodeId u) const {
  return std::binary_search(members.begin(), members.end(), u);
}

RoleAssignment elect_heads(const Topology& t) {
  if (!is_connected(t)) {
    throw Error(Errc::disconnected_topology, "phase 1 requires a connected topology");
  }
  RoleAssignment ra;
  for (NodeId u : t.nodes()) ra.roles[u] = {};

  // The lowest undecided NID is always the minimum of its own closed
  // undecided neighborhood, so scanning in ascending order is the iterative
  // rule.
  for (NodeId u : t.nodes()) {
    if (ra.roles[u].role != Role::undecided) continue;
    ra.roles[u] = {Role::head, u};
    for (NodeId v : t.neighbors(u)) {
      if (ra.roles[v].role == Role::undecided) ra.roles[v] = {Role::member, u};
    }
  }
  return ra;
}

RoleAssignment identify_gateways(const Topology& t, RoleAssignment ra) {
  NodeSet promote;
  for (const auto& [u, entry] : ra.roles) {
    if (entry.role != Role::member) continue;
    for (NodeId v : t.neighbors(u)) {
      if (ra.roles.at(v).cluster != entry.cluster) {
        promote.insert(u);
        break;
      }
    }
  }
  for (NodeId u : promote) ra.roles[u].role = Role::gateway;
  return ra;
}

ClusterAdjacencyTable cluster_adjacency(const Topology& t, const RoleAssignment& ra,
                                        NodeId owner) {
  ClusterAdjacencyTable table;
  table.owner = owner;
  const auto& mine = ra.roles.at(owner);

  auto touched_by = [&](NodeId g) {
    NodeSet clusters;
    const ClusterId own = ra.roles.at(g).cluster;
    for (NodeId v : t.neighbors(g)) {
      ClusterId c = ra.roles.at(v).cluster;
      if (c != own) clusters.insert(c);
    }
    return clusters;
  };

  if (mine.role == Role::gateway) {
    for (ClusterId c : touched_by(owner)) table.entries[c] = owner;
  }
  // Neighbors are visited in ascending order, so the first gateway recorded
  // for a cluster is the lowest-NID route.
  for (NodeId v : t.neighbors(owner)) {
    const auto& entry = ra.roles.at(v);
    if (entry.role != Role::gateway || entry.cluster != mine.cluster) continue;
    for (ClusterId c : touched_by(v)) {
      if (c != mine.cluster) table.entries.try_emplace(c, v);
    }
  }
  return table;
}

DominatingSet build_dominating_set(const Topology& t, const RoleAssignment& ra) {
  DominatingSet d;
  for (const auto& [u, entry] : ra.roles) {
    if (entry.role == Role::head || entry.role == Role::gateway) d.members.push_back(u);
  }
  if (!is_dominating_set(t, d.as_set())) {
    throw Error(Errc::domination_violated, "heads and gateways do not dominate the topology");
  }
  return d;
}

Phase1Result run_phase1(const Topology& t) {
  Phase1Result out;
  out.roles = identify_gateways(t, elect_heads(t));
  out.dominating = build_dominating_set(t, out.roles);
  return out;
}

}  // namespace council
