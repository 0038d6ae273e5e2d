#pragma once

#include <cstdint>
#include <map>

#include "council/election.hpp"
#include "council/graph.hpp"

namespace council {

/// Local protocol state of one node, i.e. what it advertises.
struct NodeState {
  NodeId id = 0;
  Role role = Role::undecided;
  ClusterId cluster = 0;
  NeighborTable neighbors;
  ClusterAdjacencyTable clusters;
};

/// Snapshot of `state` stamped with `round`. Pure.
HelloMessage build_hello(const NodeState& state, std::uint64_t round);

/// One node's side of the periodic HELLO exchange. Neighbors are learned from
/// received HELLOs and expire after `missed_limit` consecutive silent rounds.
class NodeAgent {
 public:
  explicit NodeAgent(NodeId id, std::uint64_t missed_limit = 2);

  NodeId id() const { return state_.id; }
  const NodeState& state() const { return state_; }
  std::uint64_t round() const { return round_; }

  void set_role(Role role, ClusterId cluster);
  void set_cluster_adjacency(ClusterAdjacencyTable table);

  /// HELLO stamped with the current round. end_round() advances the round,
  /// so successive rounds advertise strictly increasing numbers.
  HelloMessage next_hello();

  void receive(const HelloMessage& msg);

  /// Closes the current round: neighbors silent for `missed_limit`
  /// consecutive rounds are dropped along with what they reported.
  void end_round();

  /// Two-hop view reconstructed purely from received HELLOs.
  TwoHopView two_hop_view() const;

 private:
  NodeState state_;
  std::uint64_t missed_limit_;
  std::uint64_t round_ = 0;
  std::map<NodeId, std::uint64_t> last_heard_;
  std::map<NodeId, NeighborTable> reported_;
};

/// Synchronous HELLO rounds over a whole topology: every node broadcasts once
/// per round, messages reach exactly the current neighbors.
class HelloNetwork {
 public:
  explicit HelloNetwork(const NodeSet& nodes, std::uint64_t missed_limit = 2);

  /// Runs one round and returns the number of HELLOs broadcast. When `roles`
  /// is given, agents advertise those roles and cluster adjacency tables.
  std::size_t exchange(const Topology& t, const RoleAssignment* roles = nullptr);

  const NodeAgent& agent(NodeId u) const;

  /// Links both endpoints currently list in their neighbor tables.
  Topology known_topology() const;

 private:
  std::map<NodeId, NodeAgent> agents_;
};

}  // namespace council
