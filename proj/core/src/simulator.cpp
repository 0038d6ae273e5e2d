#include "council/simulator.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "council/errors.hpp"

namespace council {

std::vector<Share> ClusterShares::live_shares() const {
  std::vector<Share> out;
  for (const auto& [holder, s] : shares) {
    if (!revoked.contains(holder)) out.push_back(s);
  }
  return out;
}

std::string MetricsReport::to_csv() const {
  std::ostringstream out;
  out << kMetricsHeader << '\n';
  for (const auto& r : rows) {
    out << r.round << ',' << r.cluster_count << ',' << std::fixed << std::setprecision(4)
        << r.mean_council << ',' << r.min_council << ',' << r.max_council << ',' << r.updates
        << ',' << r.reforms << ',' << r.hellos << ',' << (r.secrecy_ok ? 1 : 0) << '\n';
  }
  return out.str();
}

std::string MetricsReport::decisions_csv() const {
  std::ostringstream out;
  out << "round,cluster_id,action,heads_departed,n_ref,k,gateways_lost_fraction,trigger\n";
  for (const auto& d : decisions) {
    out << d.round << ',' << d.cluster_id << ',' << to_string(d.action) << ',' << d.heads_departed
        << ',' << d.n_ref << ',' << d.k << ',' << std::fixed << std::setprecision(4)
        << d.gateways_lost_fraction << ",\"" << d.trigger << "\"\n";
  }
  return out.str();
}

namespace {

RoleAssignment roles_of(const Partition& p) {
  RoleAssignment ra;
  for (const auto& [u, cid] : p.node_index) ra.roles[u] = {p.role_of(u), cid};
  return ra;
}

void sync_adversary(SimState& s) {
  for (const auto& [cid, ledger] : s.share_ledger) {
    for (const auto& [holder, share] : ledger.shares) {
      if (s.compromised.contains(holder)) {
        s.adversary.insert({cid, ledger.generation, holder, share});
      }
    }
  }
}

ClusterShares fresh_split(SimState& s, const Cluster& c, FieldElement secret) {
  const PrimeField field = s.field();
  ClusterShares ledger;
  ledger.secret = secret;
  ledger.policy = {c.n(), c.k};
  ledger.generation = s.next_generation++;
  std::vector<FieldElement> xs;
  for (NodeId h : c.council.heads) xs.push_back(share_x(h, field));
  auto shares = split_secret(secret, ledger.policy, xs, field, s.rng.next_seed());
  std::size_t i = 0;
  for (NodeId h : c.council.heads) ledger.shares[h] = shares[i++];
  return ledger;
}

void split_all(SimState& s) {
  const PrimeField field = s.field();
  s.share_ledger.clear();
  s.health.clear();
  for (const auto& c : s.partition.clusters) {
    s.share_ledger[c.id()] = fresh_split(s, c, s.rng.uniform(field));
    s.health[c.id()] = health_at_formation(c);
  }
}

/// Re-randomizes the live shares under `policy` and drops revoked ones.
void refresh_ledger(SimState& s, ClusterShares& ledger, ThresholdPolicy policy) {
  std::vector<NodeId> holders;
  std::vector<Share> live;
  for (const auto& [holder, share] : ledger.shares) {
    if (ledger.revoked.contains(holder)) continue;
    holders.push_back(holder);
    live.push_back(share);
  }
  auto fresh = refresh_shares(live, policy, s.field(), s.rng.next_seed());
  ledger.shares.clear();
  ledger.revoked.clear();
  for (std::size_t i = 0; i < holders.size(); ++i) ledger.shares[holders[i]] = fresh[i];
  ledger.policy = policy;
  ++ledger.epoch;
}

/// Share bookkeeping for a head that joined cluster c (k already updated).
/// Returns false when no quorum of live shares is left.
bool admit_head(SimState& s, const Cluster& c, NodeId node) {
  ClusterShares& ledger = s.share_ledger.at(c.id());
  const PrimeField field = s.field();
  auto live = ledger.live_shares();
  const std::size_t old_k = ledger.policy.k;
  if (live.size() < old_k) return false;

  if (c.k < old_k) {
    // A refresh cannot lower the polynomial degree, so a smaller k needs a
    // new polynomial for the same secret.
    const FieldElement secret = reconstruct(std::span(live).first(old_k), old_k, field);
    ledger = fresh_split(s, c, secret);
    return true;
  }
  const std::span<const Share> quorum = std::span(live).first(old_k);
  ledger.shares[node] = issue_share(quorum, share_x(node, field), old_k, field);
  ledger.revoked.erase(node);
  refresh_ledger(s, ledger, {c.n(), c.k});
  return true;
}

std::optional<ClusterId> pick_visiting(const Topology& t, const Partition& p, NodeId u) {
  if (!t.contains(u)) return std::nullopt;
  const NodeSet& around = t.neighbors(u);
  std::optional<ClusterId> any;
  for (const auto& c : p.clusters) {
    const auto& heads = c.council.heads;
    if (heads.empty()) continue;
    const bool all = std::all_of(heads.begin(), heads.end(),
                                 [&](NodeId h) { return around.contains(h); });
    if (all) return c.id();
    if (!any && std::any_of(heads.begin(), heads.end(),
                            [&](NodeId h) { return around.contains(h); })) {
      any = c.id();
    }
  }
  return any;
}

DecisionRecord record_of(std::uint64_t round, const ClusterHealth& h, MaintenanceAction action,
                         std::string trigger) {
  return {round,           h.cluster_id, action, h.heads_departed, h.reference_size(),
          h.k,             h.gateways_lost_fraction(), std::move(trigger)};
}

void halt(SimState& s, const std::string& reason) {
  s.report.halted = true;
  s.report.invariant_violation = true;
  s.report.halt_reason = reason;
}

/// Global re-formation on the HELLO view; returns false when the run halts.
bool do_reform(SimState& s) {
  try {
    s.partition = reform(s.known);
  } catch (const Error& e) {
    if (e.code() != Errc::disconnected_topology) throw;
    halt(s, "round " + std::to_string(s.round + 1) + ": " + e.what());
    return false;
  }
  const auto violations = verify_partition(s.known, s.partition);
  if (!violations.empty()) {
    halt(s, "round " + std::to_string(s.round + 1) + ": reform left " + to_string(violations[0]));
    return false;
  }
  split_all(s);
  return true;
}

void maintain(SimState& s, std::uint64_t r) {
  const double threshold = s.scenario.gateway_threshold;
  const auto before = s.health;

  for (NodeId u : detached_nodes(s.known, s.partition)) {
    auto out = handle_departure(std::move(s.partition), u);
    s.partition = std::move(out.partition);
    record_departure(s.health.at(out.host), out);
    if (out.share_revoked) s.share_ledger.at(out.host).revoked.insert(u);
  }

  std::vector<DecisionRecord> reform_records;
  auto collect_reforms = [&] {
    for (const auto& [cid, h] : s.health) {
      auto d = classify_change(h, threshold);
      if (d.action == MaintenanceAction::reform) {
        reform_records.push_back(record_of(r, h, d.action, d.trigger));
      }
    }
  };
  collect_reforms();

  if (reform_records.empty()) {
    for (NodeId u : s.known.nodes()) {
      if (s.partition.cluster_of(u)) continue;
      auto visiting = pick_visiting(s.known, s.partition, u);
      if (!visiting) continue;
      auto out = handle_visitor(s.known, std::move(s.partition), u, *visiting);
      s.partition = std::move(out.partition);
      const Cluster& c = *s.partition.find(*visiting);
      record_visit(s.health.at(c.id()), out.action, c.k);
      if (out.action == ShareAction::issue_new_share && !admit_head(s, c, u)) {
        reform_records.push_back(record_of(r, s.health.at(c.id()), MaintenanceAction::reform,
                                           "no live quorum to issue a share"));
      }
    }
    collect_reforms();
    if (reform_records.empty()) {
      const auto violations = verify_partition(s.known, s.partition);
      if (!violations.empty()) {
        reform_records.push_back(
            {r, 0, MaintenanceAction::reform, 0, 0, 0, 0.0, "invariant " + to_string(violations[0])});
      }
    }
  }

  if (!reform_records.empty()) {
    ++s.reforms;
    for (auto& d : reform_records) s.report.decisions.push_back(std::move(d));
    do_reform(s);
    return;
  }

  bool updated = false;
  for (const auto& [cid, h] : s.health) {
    auto it = before.find(cid);
    if (it != before.end() && it->second == h) continue;
    auto d = classify_change(h, threshold);
    s.report.decisions.push_back(record_of(r, h, MaintenanceAction::local_update, d.trigger));
    updated = true;
  }
  if (updated) ++s.updates;
}

void advance(Point& at, const std::vector<Point>& waypoints, std::size_t& next, double budget) {
  while (budget > 0.0 && next < waypoints.size()) {
    const Point target = waypoints[next];
    const double d = distance(at, target);
    if (d <= budget) {
      at = target;
      budget -= d;
      ++next;
    } else {
      at.x += (target.x - at.x) * budget / d;
      at.y += (target.y - at.y) * budget / d;
      budget = 0.0;
    }
  }
}

Topology ground_truth(const SimState& s, std::uint64_t r) {
  if (s.scenario.explicit_edges()) {
    Topology t = s.topology;
    for (const auto& e : s.scenario.link_events) {
      if (e.round != r) continue;
      t = e.up ? t.with_link(e.a, e.b) : t.without_link(e.a, e.b);
    }
    return t;
  }
  std::vector<NodeSpec> specs;
  for (const auto& [u, at] : s.positions) specs.push_back({u, at});
  return Topology::from_positions(specs, s.scenario.radius);
}

void record_row(SimState& s, std::uint64_t r) {
  const auto audit = audit_secrecy(s);
  if (audit.any_anomaly()) s.report.anomaly = true;

  MetricsRow row;
  row.round = r;
  row.cluster_count = s.partition.clusters.size();
  if (row.cluster_count > 0) {
    std::size_t total = 0;
    row.min_council = s.partition.clusters.front().n();
    for (const auto& c : s.partition.clusters) {
      total += c.n();
      row.min_council = std::min(row.min_council, c.n());
      row.max_council = std::max(row.max_council, c.n());
    }
    row.mean_council = static_cast<double>(total) / static_cast<double>(row.cluster_count);
  }
  row.updates = s.updates;
  row.reforms = s.reforms;
  row.hellos = s.hellos;
  row.secrecy_ok = !audit.any_breach() && !audit.any_anomaly();
  s.report.rows.push_back(row);
}

}  // namespace

SimState initialize(const Scenario& scenario) {
  validate(scenario);
  SimState s;
  s.scenario = scenario;
  s.rng = FieldSampler(scenario.seed);
  s.topology = initial_topology(scenario);
  for (const auto& n : scenario.nodes) {
    s.positions[n.nid] = n.start;
    s.next_waypoint[n.nid] = 0;
  }
  if (!is_connected(s.topology)) {
    throw Error(Errc::disconnected_topology, "initial topology is not connected");
  }

  s.hello.emplace(s.topology.nodes());
  s.hello->exchange(s.topology);
  s.known = s.hello->known_topology();

  s.partition = reform(s.known);
  split_all(s);

  if (scenario.adversary && scenario.adversary->compromise_round == 0) {
    const auto& ns = scenario.adversary->nodes;
    s = compromise(std::move(s), NodeSet(ns.begin(), ns.end()));
  }
  return s;
}

SimState step(SimState s) {
  if (s.report.halted) return s;
  const std::uint64_t r = s.round + 1;

  if (!s.scenario.explicit_edges()) {
    for (const auto& n : s.scenario.nodes) {
      advance(s.positions.at(n.nid), n.waypoints, s.next_waypoint.at(n.nid), n.speed);
    }
  }
  s.topology = ground_truth(s, r);

  bool reformed = false;
  if (r % s.scenario.hello_interval_rounds == 0) {
    const RoleAssignment roles = roles_of(s.partition);
    s.hellos += s.hello->exchange(s.topology, &roles);
    ++s.hello_rounds;
    s.known = s.hello->known_topology();
    const auto reforms_before = s.reforms;
    maintain(s, r);
    reformed = s.reforms != reforms_before;
  }

  if (!s.report.halted && !reformed && s.scenario.refresh_interval_rounds > 0 &&
      r % s.scenario.refresh_interval_rounds == 0) {
    for (const auto& c : s.partition.clusters) {
      ClusterShares& ledger = s.share_ledger.at(c.id());
      if (ledger.live_shares().size() == c.n()) refresh_ledger(s, ledger, {c.n(), c.k});
    }
  }

  if (s.scenario.adversary && s.scenario.adversary->compromise_round == r) {
    const auto& ns = s.scenario.adversary->nodes;
    s = compromise(std::move(s), NodeSet(ns.begin(), ns.end()));
  }
  sync_adversary(s);

  record_row(s, r);
  s.round = r;
  return s;
}

SimState compromise(SimState s, const NodeSet& nodes) {
  for (NodeId u : nodes) {
    if (!s.topology.contains(u)) {
      throw Error(Errc::unknown_node, "cannot compromise unknown node " + std::to_string(u));
    }
  }
  s.compromised.insert(nodes.begin(), nodes.end());
  sync_adversary(s);
  return s;
}

AuditResult audit_secrecy(const SimState& s) {
  std::vector<AuditCluster> input;
  for (const auto& [cid, ledger] : s.share_ledger) {
    AuditCluster a;
    a.cluster_id = cid;
    a.k = ledger.policy.k;
    a.p = s.scenario.field_prime;
    a.epoch = ledger.epoch;
    for (const auto& h : s.adversary) {
      if (h.cluster == cid && h.generation == ledger.generation) {
        a.adversary_shares.push_back(h.share);
      }
    }
    input.push_back(std::move(a));
  }
  return audit_holdings(input);
}

MetricsReport run(const Scenario& scenario) {
  SimState s = initialize(scenario);
  while (s.round < scenario.rounds && !s.report.halted) s = step(std::move(s));
  return s.report;
}

MetricsReport run(const std::filesystem::path& scenario_path,
                  const std::filesystem::path& out_path) {
  MetricsReport report = run(load_scenario(scenario_path));
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw Error(Errc::validation_error, "cannot write " + out_path.string());
  out << report.to_csv();
  return report;
}

int exit_status(const MetricsReport& report) {
  return report.invariant_violation || report.anomaly ? 1 : 0;
}

}  // namespace council
