#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "council/audit.hpp"
#include "council/council_form.hpp"
#include "council/hello.hpp"
#include "council/maintenance.hpp"
#include "council/scenario.hpp"
#include "council/shamir.hpp"

namespace council {

/// Current sharing of one cluster's secret. Shares of departed heads stay in
/// `shares` (flagged in `revoked`) until the next refresh drops them.
struct ClusterShares {
  FieldElement secret = 0;
  ThresholdPolicy policy;
  std::map<NodeId, Share> shares;
  NodeSet revoked;
  /// Bumped on every fresh split, so stale holdings never match.
  std::uint64_t generation = 0;
  std::uint64_t epoch = 0;

  /// Non-revoked shares in ascending holder order.
  std::vector<Share> live_shares() const;
};

struct AdversaryHolding {
  ClusterId cluster = 0;
  std::uint64_t generation = 0;
  NodeId holder = 0;
  Share share;

  friend auto operator<=>(const AdversaryHolding& a, const AdversaryHolding& b) {
    return std::tie(a.cluster, a.generation, a.holder, a.share.epoch, a.share.x, a.share.y) <=>
           std::tie(b.cluster, b.generation, b.holder, b.share.epoch, b.share.x, b.share.y);
  }
  friend bool operator==(const AdversaryHolding& a, const AdversaryHolding& b) {
    return (a <=> b) == 0;
  }
};

struct MetricsRow {
  std::uint64_t round = 0;
  std::size_t cluster_count = 0;
  double mean_council = 0.0;
  std::size_t min_council = 0;
  std::size_t max_council = 0;
  std::uint64_t updates = 0;
  std::uint64_t reforms = 0;
  std::uint64_t hellos = 0;
  bool secrecy_ok = true;
};

struct DecisionRecord {
  std::uint64_t round = 0;
  ClusterId cluster_id = 0;
  MaintenanceAction action = MaintenanceAction::none;
  std::size_t heads_departed = 0;
  std::size_t n_ref = 0;
  std::size_t k = 0;
  double gateways_lost_fraction = 0.0;
  std::string trigger;
};

inline constexpr const char* kMetricsHeader =
    "round,cluster_count,mean_council,min_council,max_council,updates,reforms,hellos,secrecy_ok";

struct MetricsReport {
  std::vector<MetricsRow> rows;
  std::vector<DecisionRecord> decisions;
  bool invariant_violation = false;
  /// Sub-threshold holdings that were not information-theoretically hidden.
  bool anomaly = false;
  bool halted = false;
  std::string halt_reason;

  std::string to_csv() const;
  std::string decisions_csv() const;
};

struct SimState {
  Scenario scenario;
  std::uint64_t round = 0;
  /// Ground-truth links this round.
  Topology topology;
  /// Links as learned from HELLOs; maintenance works on this view.
  Topology known;
  Partition partition;
  std::map<ClusterId, ClusterShares> share_ledger;
  std::map<ClusterId, ClusterHealth> health;
  NodeSet compromised;
  std::set<AdversaryHolding> adversary;
  std::map<NodeId, Point> positions;
  std::map<NodeId, std::size_t> next_waypoint;
  std::optional<HelloNetwork> hello;
  FieldSampler rng{0};
  std::uint64_t next_generation = 0;
  std::uint64_t hello_rounds = 0;
  std::uint64_t updates = 0;
  std::uint64_t reforms = 0;
  std::uint64_t hellos = 0;
  MetricsReport report;

  PrimeField field() const { return PrimeField(scenario.field_prime); }
};

/// Phase 1 + Phase 2 on the initial topology and a fresh split of every
/// cluster secret. A compromise scheduled for round 0 is applied here.
/// Throws DisconnectedTopology and ValidationError.
SimState initialize(const Scenario& s);

/// One round: movement, topology rebuild, HELLO exchange and maintenance
/// every hello interval, periodic refresh, scheduled compromise, metrics.
/// A reform on a disconnected view halts the run.
SimState step(SimState state);

/// Marks nodes compromised and hands their current shares to the adversary.
/// Throws UnknownNode.
SimState compromise(SimState state, const NodeSet& nodes);

AuditResult audit_secrecy(const SimState& state);

MetricsReport run(const Scenario& s);

/// Runs the scenario at `scenario_path` and writes the metrics CSV.
MetricsReport run(const std::filesystem::path& scenario_path,
                  const std::filesystem::path& out_path);

/// 0 on a clean run, 1 on an invariant violation or secrecy anomaly.
int exit_status(const MetricsReport& report);

}  // namespace council
