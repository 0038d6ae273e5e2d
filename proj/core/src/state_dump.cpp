#include "council/state_dump.hpp"

#include "council/errors.hpp"
#include "json.hpp"

namespace council {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

ordered_json ids(const NodeSet& s) { return ordered_json(std::vector<NodeId>(s.begin(), s.end())); }

}  // namespace

std::string dump_state(const SimState& s) {
  ordered_json root;
  root["round"] = s.round;
  root["field_prime"] = s.scenario.field_prime;
  root["compromised"] = ids(s.compromised);

  ordered_json clusters = ordered_json::array();
  for (const auto& c : s.partition.clusters) {
    ordered_json j;
    j["cluster_id"] = c.id();
    j["heads"] = ids(c.council.heads);
    j["members"] = ids(c.members);
    j["gateways"] = ids(c.gateways);
    j["k"] = c.k;
    if (auto it = s.share_ledger.find(c.id()); it != s.share_ledger.end()) {
      const ClusterShares& ledger = it->second;
      j["generation"] = ledger.generation;
      j["epoch"] = ledger.epoch;
      j["secret"] = ledger.secret;
      ordered_json shares = ordered_json::array();
      for (const auto& [holder, share] : ledger.shares) {
        shares.push_back({{"holder", holder}, {"share", to_string(share)}});
      }
      j["shares"] = std::move(shares);
      j["revoked"] = ids(ledger.revoked);
    }
    clusters.push_back(std::move(j));
  }
  root["clusters"] = std::move(clusters);

  ordered_json adversary = ordered_json::array();
  for (const auto& h : s.adversary) {
    adversary.push_back({{"cluster_id", h.cluster},
                         {"generation", h.generation},
                         {"holder", h.holder},
                         {"share", to_string(h.share)}});
  }
  root["adversary"] = std::move(adversary);
  return root.dump(2) + "\n";
}

std::vector<AuditCluster> audit_input_from_dump(std::string_view json_text) {
  std::vector<AuditCluster> out;
  try {
    const json root = json::parse(json_text);
    const FieldElement p = root.at("field_prime").get<FieldElement>();
    for (const auto& c : root.at("clusters")) {
      AuditCluster a;
      a.cluster_id = c.at("cluster_id").get<ClusterId>();
      a.k = c.at("k").get<std::size_t>();
      a.p = p;
      a.epoch = c.value("epoch", std::uint64_t{0});
      const auto generation = c.value("generation", std::uint64_t{0});
      for (const auto& h : root.at("adversary")) {
        if (h.at("cluster_id").get<ClusterId>() != a.cluster_id) continue;
        if (h.at("generation").get<std::uint64_t>() != generation) continue;
        a.adversary_shares.push_back(parse_share(h.at("share").get<std::string>()));
      }
      out.push_back(std::move(a));
    }
  } catch (const json::exception& e) {
    throw Error(Errc::parse_error, std::string("state dump: ") + e.what());
  }
  return out;
}

}  // namespace council
