#include "council/maintenance.hpp"

#include <algorithm>
#include <sstream>

#include "council/errors.hpp"
#include "council/shamir.hpp"

namespace council {

std::string_view to_string(MobilityEvent::Kind kind) {
  switch (kind) {
    case MobilityEvent::Kind::link_up: return "link_up";
    case MobilityEvent::Kind::link_down: return "link_down";
    case MobilityEvent::Kind::position_update: return "position_update";
  }
  return "link_up";
}

std::vector<MobilityEvent> diff_links(const Topology& before, const Topology& after,
                                      std::uint64_t round) {
  const auto old_edges = before.edges();
  const auto new_edges = after.edges();
  std::vector<Edge> gone;
  std::vector<Edge> born;
  std::set_difference(old_edges.begin(), old_edges.end(), new_edges.begin(), new_edges.end(),
                      std::back_inserter(gone));
  std::set_difference(new_edges.begin(), new_edges.end(), old_edges.begin(), old_edges.end(),
                      std::back_inserter(born));
  std::vector<MobilityEvent> out;
  for (auto [u, v] : gone) out.push_back({round, u, MobilityEvent::Kind::link_down, v, {}});
  for (auto [u, v] : born) out.push_back({round, u, MobilityEvent::Kind::link_up, v, {}});
  std::sort(out.begin(), out.end(), [](const MobilityEvent& a, const MobilityEvent& b) {
    return std::tie(a.node, a.peer) < std::tie(b.node, b.peer);
  });
  return out;
}

std::string_view to_string(MaintenanceAction action) {
  switch (action) {
    case MaintenanceAction::none: return "none";
    case MaintenanceAction::local_update: return "local_update";
    case MaintenanceAction::reform: return "reform";
  }
  return "none";
}

std::string_view to_string(ShareAction action) {
  return action == ShareAction::issue_new_share ? "issue_new_share" : "member_only";
}

double ClusterHealth::gateways_lost_fraction() const {
  if (gateways0 == 0) return 0.0;
  return static_cast<double>(gateways_lost) / static_cast<double>(gateways0);
}

ClusterHealth health_at_formation(const Cluster& c) {
  ClusterHealth h;
  h.cluster_id = c.id();
  h.n0 = c.n();
  h.k = c.k;
  h.gateways0 = c.gateways.size();
  return h;
}

MaintenanceDecision classify_change(const ClusterHealth& h, double gateway_threshold) {
  const auto slack = static_cast<long long>(h.reference_size()) - static_cast<long long>(h.k);
  const bool too_many_heads = static_cast<long long>(h.heads_departed) > slack;
  const bool gateways_gone = h.gateways_lost_fraction() > gateway_threshold;

  std::ostringstream why;
  why << "heads_departed=" << h.heads_departed << " n-k=" << slack
      << " gateways_lost_fraction=" << h.gateways_lost_fraction();
  if (too_many_heads || gateways_gone) return {MaintenanceAction::reform, why.str()};
  if (h.changed()) return {MaintenanceAction::local_update, why.str()};
  return {MaintenanceAction::none, why.str()};
}

VisitOutcome handle_visitor(const Topology& t, Partition p, NodeId node, ClusterId visiting) {
  if (p.find(visiting) == nullptr) {
    throw Error(Errc::unknown_cluster, "no cluster " + std::to_string(visiting));
  }
  const NodeSet& around = t.neighbors(node);

  const bool was_gateway = p.role_of(node) == Role::gateway;
  if (auto host = p.cluster_of(node)) {
    Cluster* c = p.find(*host);
    c->council.heads.erase(node);
    c->members.erase(node);
    c->gateways.erase(node);
    p.node_index.erase(node);
  }

  Cluster& target = *p.find(visiting);
  const auto& heads = target.council.heads;
  const bool sees_any = std::any_of(heads.begin(), heads.end(),
                                    [&](NodeId h) { return around.contains(h); });
  if (!sees_any) {
    throw Error(Errc::not_adjacent, "node " + std::to_string(node) +
                                        " has no link to a head of cluster " +
                                        std::to_string(visiting));
  }
  const bool sees_all = std::all_of(heads.begin(), heads.end(),
                                    [&](NodeId h) { return around.contains(h); });
  bool foreign_head_nearby = false;
  for (const auto& c : p.clusters) {
    if (c.id() == visiting) continue;
    for (NodeId h : c.council.heads) foreign_head_nearby |= around.contains(h);
  }

  VisitOutcome out;
  if (sees_all && !was_gateway && !foreign_head_nearby) {
    target.council.heads.insert(node);
    target.k = choose_threshold(target.n()).k;
    out.action = ShareAction::issue_new_share;
  } else {
    target.members.insert(node);
    out.action = ShareAction::member_only;
  }
  p.node_index[node] = visiting;
  out.partition = std::move(p);
  return out;
}

DepartureOutcome handle_departure(Partition p, NodeId node) {
  auto host = p.cluster_of(node);
  if (!host) throw Error(Errc::unknown_node, "node " + std::to_string(node) + " is unassigned");
  DepartureOutcome out;
  out.host = *host;
  Cluster* c = p.find(*host);
  out.former_role = c->role_of(node);
  out.share_revoked = out.former_role == Role::head;
  c->council.heads.erase(node);
  c->members.erase(node);
  c->gateways.erase(node);
  p.node_index.erase(node);
  out.partition = std::move(p);
  return out;
}

void record_departure(ClusterHealth& h, const DepartureOutcome& d) {
  switch (d.former_role) {
    case Role::head: ++h.heads_departed; break;
    case Role::gateway: ++h.gateways_lost; break;
    default: ++h.members_changed; break;
  }
}

void record_visit(ClusterHealth& h, ShareAction action, std::size_t new_k) {
  if (action == ShareAction::issue_new_share) {
    ++h.heads_joined;
    h.k = new_k;
  } else {
    ++h.members_changed;
  }
}

namespace {

NodeSet greedy_clique(const Topology& t, const std::vector<NodeId>& pool) {
  NodeSet best;
  for (NodeId seed : pool) {
    NodeSet c{seed};
    for (NodeId v : pool) {
      if (std::all_of(c.begin(), c.end(), [&](NodeId w) { return w == v || t.adjacent(v, w); })) {
        c.insert(v);
      }
    }
    if (c.size() > best.size()) best = c;
  }
  return best;
}

}  // namespace

NodeSet surviving_council(const Topology& t, const NodeSet& heads) {
  std::vector<NodeId> pool;
  for (NodeId h : heads) {
    if (t.contains(h)) pool.push_back(h);
  }
  if (pool.size() > 20) return greedy_clique(t, pool);

  const std::size_t n = pool.size();
  std::vector<NodeId> best;
  for (std::uint32_t mask = 1; mask < (1U << n); ++mask) {
    std::vector<NodeId> pick;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1U << i)) pick.push_back(pool[i]);
    }
    if (pick.size() < best.size()) continue;
    bool clique = true;
    for (std::size_t i = 0; i < pick.size() && clique; ++i) {
      for (std::size_t j = i + 1; j < pick.size() && clique; ++j) {
        clique = t.adjacent(pick[i], pick[j]);
      }
    }
    if (!clique) continue;
    if (pick.size() > best.size() || pick < best) best = std::move(pick);
  }
  return {best.begin(), best.end()};
}

NodeSet detached_nodes(const Topology& t, const Partition& p) {
  NodeSet out;
  for (const auto& c : p.clusters) {
    const NodeSet alive = surviving_council(t, c.council.heads);
    for (NodeId h : c.council.heads) {
      if (!alive.contains(h)) out.insert(h);
    }
    auto attached = [&](NodeId u) {
      return t.contains(u) &&
             std::any_of(alive.begin(), alive.end(), [&](NodeId h) { return t.adjacent(u, h); });
    };
    for (const NodeSet* group : {&c.members, &c.gateways}) {
      for (NodeId u : *group) {
        if (!attached(u)) out.insert(u);
      }
    }
  }
  return out;
}

Partition reform(const Topology& t) {
  const auto phase1 = run_phase1(t);
  return cluster_form(t, phase1.dominating);
}

}  // namespace council
