#pragma once

#include <optional>
#include <span>
#include <vector>

#include "council/election.hpp"
#include "council/shamir.hpp"

namespace council {

/// Fields up to this size are small enough to brute-force every polynomial.
inline constexpr FieldElement kBruteForcePrimeLimit = 17;

/// What the adversary holds against one cluster's current sharing.
struct AuditCluster {
  ClusterId cluster_id = 0;
  std::size_t k = 1;
  FieldElement p = PrimeField::kMersenne61;
  std::uint64_t epoch = 0;
  /// Adversary-held shares of this sharing generation (any epoch).
  std::vector<Share> adversary_shares;
};

struct ClusterAudit {
  ClusterId cluster_id = 0;
  /// Distinct adversary-held shares from the current epoch.
  std::size_t compromised_head_count = 0;
  std::size_t k = 1;
  bool breached = false;
  /// Number of secrets consistent with the holdings; only for p <= 17.
  std::optional<std::size_t> consistent_secrets;
  /// Below threshold, reconstruct refused with InsufficientShares.
  bool reconstruct_refused = false;
  /// Sub-threshold holdings that nevertheless pin the secret down.
  bool anomaly = false;
};

struct AuditResult {
  std::vector<ClusterAudit> clusters;

  bool any_breach() const;
  bool any_anomaly() const;
};

/// breached iff count >= k. For small fields the sub-threshold case is
/// confirmed by enumeration (>= 2 consistent secrets) and reconstruct must
/// refuse; failing either marks an anomaly.
AuditResult audit_holdings(std::span<const AuditCluster> clusters);

}  // namespace council
