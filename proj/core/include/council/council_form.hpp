#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "council/election.hpp"
#include "council/graph.hpp"

namespace council {

/// The fully connected head group HC of one cluster.
struct Council {
  NodeSet heads;
  ClusterId cluster_id = 0;

  friend bool operator==(const Council&, const Council&) = default;
};

struct Cluster {
  Council council;
  NodeSet members;
  NodeSet gateways;
  std::size_t k = 1;

  ClusterId id() const { return council.cluster_id; }
  std::size_t n() const { return council.heads.size(); }
  bool contains(NodeId u) const;
  Role role_of(NodeId u) const;

  friend bool operator==(const Cluster&, const Cluster&) = default;
};

struct Partition {
  std::vector<Cluster> clusters;
  std::map<NodeId, ClusterId> node_index;

  const Cluster* find(ClusterId cid) const;
  Cluster* find(ClusterId cid);
  std::optional<ClusterId> cluster_of(NodeId u) const;
  /// Role inside its cluster, Role::undecided when unassigned.
  Role role_of(NodeId u) const;
  NodeSet all_heads() const;

  friend bool operator==(const Partition&, const Partition&) = default;
};

/// Greedy COUNCIL growth around h. Candidates are N(h) minus `forbidden`,
/// ranked by how many triangles they close with h inside the candidate set
/// (more first), then membership in `preferred`, then ascending NID. A
/// candidate is admitted iff it is adjacent to every node admitted so far.
/// Returns a clique containing h. Throws Errc::unknown_node.
NodeSet find_council_clique(const Topology& t, NodeId h, const NodeSet& forbidden,
                            const NodeSet& preferred = {});

/// Walks the dominating set and forms COUNCIL based clusters:
///  1. start from the lowest unmarked h in D,
///  2. grow HC around h avoiding assigned nodes (gateways and everything next
///     to an existing head), absorb every unassigned neighbor of HC,
///  3. pick the lowest-NID gateway g in Nd(s), s in HC n D, among the newly
///     absorbed nodes, drop HC n D and g from D,
///  4. continue from Nd(g); otherwise from the lowest unassigned D node;
///     otherwise the lowest unassigned node becomes a lone head.
/// Each cluster gets k = choose_threshold(n).
/// Throws Errc::invalid_dominating_set if d does not dominate t.
Partition cluster_form(const Topology& t, const DominatingSet& d);

struct Violation {
  std::string invariant;
  std::vector<NodeId> nodes;

  friend bool operator==(const Violation&, const Violation&) = default;
};

std::string to_string(const Violation& v);

/// Empty iff every Partition, Cluster and Council invariant holds on t.
std::vector<Violation> verify_partition(const Topology& t, const Partition& p);

}  // namespace council
