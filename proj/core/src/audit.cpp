#include "council/audit.hpp"

#include <algorithm>
#include <map>

#include "council/errors.hpp"

namespace council {

bool AuditResult::any_breach() const {
  return std::any_of(clusters.begin(), clusters.end(), [](const auto& c) { return c.breached; });
}

bool AuditResult::any_anomaly() const {
  return std::any_of(clusters.begin(), clusters.end(), [](const auto& c) { return c.anomaly; });
}

AuditResult audit_holdings(std::span<const AuditCluster> clusters) {
  AuditResult result;
  for (const auto& c : clusters) {
    std::map<FieldElement, Share> current;
    for (const auto& s : c.adversary_shares) {
      if (s.epoch == c.epoch && s.p == c.p) current.emplace(s.x, s);
    }
    std::vector<Share> held;
    for (const auto& [x, s] : current) held.push_back(s);

    ClusterAudit a;
    a.cluster_id = c.cluster_id;
    a.k = c.k;
    a.compromised_head_count = held.size();
    a.breached = held.size() >= c.k;

    const PrimeField field(c.p);
    if (c.p <= kBruteForcePrimeLimit) {
      a.consistent_secrets = consistent_secrets(held, c.k, field).size();
    }
    if (!a.breached) {
      try {
        reconstruct(held, c.k, field);
      } catch (const Error& e) {
        a.reconstruct_refused = e.code() == Errc::insufficient_shares;
      }
      a.anomaly = !a.reconstruct_refused || (a.consistent_secrets && *a.consistent_secrets < 2);
    }
    result.clusters.push_back(a);
  }
  return result;
}

}  // namespace council
