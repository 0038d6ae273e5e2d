#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "council/council_form.hpp"
#include "council/graph.hpp"

namespace council {

struct MobilityEvent {
  enum class Kind { link_up, link_down, position_update };

  std::uint64_t round = 0;
  NodeId node = 0;
  Kind kind = Kind::link_up;
  NodeId peer = 0;   // link events
  Point position;    // position_update

  friend bool operator==(const MobilityEvent&, const MobilityEvent&) = default;
};

std::string_view to_string(MobilityEvent::Kind kind);

/// Link changes between two snapshots over the same node set, one event per
/// undirected link (node < peer), ascending.
std::vector<MobilityEvent> diff_links(const Topology& before, const Topology& after,
                                      std::uint64_t round);

enum class MaintenanceAction { none, local_update, reform };

std::string_view to_string(MaintenanceAction action);

/// Bookkeeping for one cluster since it was formed. The reform trigger
/// compares departed heads against n_ref - k where n_ref = n0 + heads_joined.
struct ClusterHealth {
  ClusterId cluster_id = 0;
  std::size_t n0 = 1;
  std::size_t k = 1;
  std::size_t heads_departed = 0;
  std::size_t heads_joined = 0;
  std::size_t members_changed = 0;
  std::size_t gateways0 = 0;
  std::size_t gateways_lost = 0;

  std::size_t reference_size() const { return n0 + heads_joined; }
  /// gateways_lost / gateways0, 0 when the cluster had no gateway.
  double gateways_lost_fraction() const;
  bool changed() const {
    return heads_departed + heads_joined + members_changed + gateways_lost > 0;
  }

  friend bool operator==(const ClusterHealth&, const ClusterHealth&) = default;
};

ClusterHealth health_at_formation(const Cluster& c);

struct MaintenanceDecision {
  MaintenanceAction action = MaintenanceAction::none;
  std::string trigger;
};

inline constexpr double kDefaultGatewayThreshold = 0.5;

/// reform iff more than n_ref - k heads departed or the lost-gateway fraction
/// exceeds `gateway_threshold`; local_update iff anything else changed.
MaintenanceDecision classify_change(const ClusterHealth& h,
                                    double gateway_threshold = kDefaultGatewayThreshold);

enum class ShareAction { issue_new_share, member_only };

std::string_view to_string(ShareAction action);

struct VisitOutcome {
  Partition partition;
  ShareAction action = ShareAction::member_only;
};

/// Places `node` into cluster `visiting` (removing it from any other cluster
/// first). It joins the COUNCIL iff it is adjacent to every current head, it
/// was not a gateway, and no head of another cluster is adjacent to it; k is
/// then recomputed with choose_threshold. Otherwise it becomes a member.
/// The cluster keeps its identity.
/// Throws UnknownCluster, UnknownNode, NotAdjacent (no head of `visiting` is
/// a neighbor).
VisitOutcome handle_visitor(const Topology& t, Partition p, NodeId node, ClusterId visiting);

struct DepartureOutcome {
  Partition partition;
  ClusterId host = 0;
  Role former_role = Role::undecided;
  /// Heads hold shares; a departed head's share must be excluded from future
  /// quorums and is neutralized at the next refresh epoch.
  bool share_revoked = false;
};

/// Removes `node` from its host cluster. Throws UnknownNode if unassigned.
DepartureOutcome handle_departure(Partition p, NodeId node);

void record_departure(ClusterHealth& h, const DepartureOutcome& d);
void record_visit(ClusterHealth& h, ShareAction action, std::size_t new_k);

/// Largest subset of `heads` that is still a clique in t; ties go to the
/// lexicographically smallest set. Heads missing from t never survive.
NodeSet surviving_council(const Topology& t, const NodeSet& heads);

/// Nodes that have lost their place in their cluster on t: heads outside the
/// surviving council, and members/gateways adjacent to no surviving head.
NodeSet detached_nodes(const Topology& t, const Partition& p);

/// Global re-formation: phase 1 then cluster_form on the current snapshot.
/// Throws DisconnectedTopology.
Partition reform(const Topology& t);

}  // namespace council
