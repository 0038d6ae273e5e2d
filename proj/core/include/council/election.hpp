#pragma once

#include <map>
#include <string_view>
#include <vector>

#include "council/graph.hpp"

namespace council {

/// Identity of a cluster: the NID of its founding (Phase 1) head, or the
/// lowest NID in its COUNCIL (Phase 2).
using ClusterId = NodeId;

enum class Role { undecided, head, member, gateway };

std::string_view to_string(Role role);

struct RoleEntry {
  Role role = Role::undecided;
  ClusterId cluster = 0;

  friend bool operator==(const RoleEntry&, const RoleEntry&) = default;
};

struct RoleAssignment {
  std::map<NodeId, RoleEntry> roles;

  NodeSet with_role(Role role) const;
  NodeSet heads() const { return with_role(Role::head); }
  NodeSet gateways() const { return with_role(Role::gateway); }
  NodeSet cluster_of(ClusterId cid) const;

  friend bool operator==(const RoleAssignment&, const RoleAssignment&) = default;
};

/// Neighbor -> role as last advertised by that neighbor.
struct NeighborTable {
  NodeId owner = 0;
  std::map<NodeId, Role> entries;

  friend bool operator==(const NeighborTable&, const NeighborTable&) = default;
};

/// Adjacent cluster -> the gateway used to reach it (owner itself or one of
/// its neighbors).
struct ClusterAdjacencyTable {
  NodeId owner = 0;
  std::map<ClusterId, NodeId> entries;

  friend bool operator==(const ClusterAdjacencyTable&, const ClusterAdjacencyTable&) = default;
};

struct HelloMessage {
  NodeId sender = 0;
  Role sender_role = Role::undecided;
  ClusterId sender_cluster = 0;
  NeighborTable neighbor_table;
  ClusterAdjacencyTable cluster_adjacency;
  std::uint64_t round = 0;

  friend bool operator==(const HelloMessage&, const HelloMessage&) = default;
};

/// The dominating set D = H u G in ascending NID order.
struct DominatingSet {
  std::vector<NodeId> members;

  std::size_t size() const { return members.size(); }
  NodeSet as_set() const { return {members.begin(), members.end()}; }
  bool contains(NodeId u) const;

  friend bool operator==(const DominatingSet&, const DominatingSet&) = default;
};

/// Lowest-ID clustering. Repeatedly the lowest undecided NID (which is the
/// lowest in its closed undecided neighborhood) becomes a head with CID = NID
/// and claims its undecided neighbors as members. No two heads are adjacent.
/// Throws Errc::disconnected_topology.
RoleAssignment elect_heads(const Topology& t);

/// Re-tags every member adjacent to another cluster as a gateway.
RoleAssignment identify_gateways(const Topology& t, RoleAssignment ra);

/// The owner's view of adjacent clusters. A gateway routes to the clusters it
/// touches itself; other nodes route through their lowest-NID neighboring
/// gateway of the same cluster that touches the target.
ClusterAdjacencyTable cluster_adjacency(const Topology& t, const RoleAssignment& ra,
                                        NodeId owner);

/// D = heads u gateways. Throws Errc::domination_violated if the result does
/// not dominate `t` (this would be a bug in the election).
DominatingSet build_dominating_set(const Topology& t, const RoleAssignment& ra);

struct Phase1Result {
  RoleAssignment roles;
  DominatingSet dominating;
};

Phase1Result run_phase1(const Topology& t);

}  // namespace council
