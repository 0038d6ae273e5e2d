#include "council/council_form.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

#include "council/errors.hpp"
#include "council/shamir.hpp"

namespace council {

bool Cluster::contains(NodeId u) const {
  return council.heads.contains(u) || members.contains(u) || gateways.contains(u);
}

Role Cluster::role_of(NodeId u) const {
  if (council.heads.contains(u)) return Role::head;
  if (gateways.contains(u)) return Role::gateway;
  if (members.contains(u)) return Role::member;
  return Role::undecided;
}

const Cluster* Partition::find(ClusterId cid) const {
  for (const auto& c : clusters) {
    if (c.id() == cid) return &c;
  }
  return nullptr;
}

Cluster* Partition::find(ClusterId cid) {
  for (auto& c : clusters) {
    if (c.id() == cid) return &c;
  }
  return nullptr;
}

std::optional<ClusterId> Partition::cluster_of(NodeId u) const {
  if (auto it = node_index.find(u); it != node_index.end()) return it->second;
  return std::nullopt;
}

Role Partition::role_of(NodeId u) const {
  auto cid = cluster_of(u);
  if (!cid) return Role::undecided;
  const Cluster* c = find(*cid);
  return c ? c->role_of(u) : Role::undecided;
}

NodeSet Partition::all_heads() const {
  NodeSet out;
  for (const auto& c : clusters) out.insert(c.council.heads.begin(), c.council.heads.end());
  return out;
}

NodeSet find_council_clique(const Topology& t, NodeId h, const NodeSet& forbidden,
                            const NodeSet& preferred) {
  const NodeSet& around = t.neighbors(h);
  NodeSet pool;
  for (NodeId v : around) {
    if (!forbidden.contains(v)) pool.insert(v);
  }

  struct Ranked {
    std::size_t triangles;
    NodeId nid;
  };
  std::vector<Ranked> order;
  order.reserve(pool.size());
  for (NodeId v : pool) {
    std::size_t closes = 0;
    for (NodeId w : t.neighbors(v)) closes += pool.contains(w) ? 1 : 0;
    order.push_back({closes, v});
  }
  std::sort(order.begin(), order.end(), [&](const Ranked& a, const Ranked& b) {
    return std::make_tuple(-static_cast<long long>(a.triangles), !preferred.contains(a.nid), a.nid) <
           std::make_tuple(-static_cast<long long>(b.triangles), !preferred.contains(b.nid), b.nid);
  });

  NodeSet council{h};
  for (const auto& cand : order) {
    bool fits = std::all_of(council.begin(), council.end(),
                            [&](NodeId w) { return t.adjacent(cand.nid, w); });
    if (fits) council.insert(cand.nid);
  }
  return council;
}

Partition cluster_form(const Topology& t, const DominatingSet& d) {
  const NodeSet dom = d.as_set();
  bool dominates = false;
  try {
    dominates = is_dominating_set(t, dom);
  } catch (const Error&) {
    dominates = false;
  }
  if (!dominates) {
    throw Error(Errc::invalid_dominating_set, "D does not dominate the topology");
  }

  Partition out;
  NodeSet remaining = dom;
  std::optional<NodeId> next;

  auto unassigned = [&](NodeId u) { return !out.node_index.contains(u); };

  while (out.node_index.size() < t.size()) {
    NodeId h = 0;
    bool dominating_head = true;
    if (next) {
      h = *next;
    } else if (auto it = std::find_if(remaining.begin(), remaining.end(), unassigned);
               it != remaining.end()) {
      h = *it;
    } else {
      h = *std::find_if(t.nodes().begin(), t.nodes().end(), unassigned);
      dominating_head = false;
    }

    // Every assigned node is a head, a marked gateway, or adjacent to a head,
    // so excluding assigned nodes keeps heads of different clusters apart.
    NodeSet forbidden;
    for (const auto& [u, cid] : out.node_index) forbidden.insert(u);

    Cluster cluster;
    cluster.council.heads = dominating_head ? find_council_clique(t, h, forbidden, dom) : NodeSet{h};
    cluster.council.cluster_id = *cluster.council.heads.begin();
    const ClusterId cid = cluster.id();
    for (NodeId x : cluster.council.heads) out.node_index[x] = cid;

    NodeSet absorbed;
    for (NodeId x : cluster.council.heads) {
      for (NodeId v : t.neighbors(x)) {
        if (unassigned(v)) {
          out.node_index[v] = cid;
          absorbed.insert(v);
        }
      }
    }

    std::optional<NodeId> gateway;
    for (NodeId s : cluster.council.heads) {
      if (!dom.contains(s)) continue;
      for (NodeId v : t.neighbors(s)) {
        if (dom.contains(v) && absorbed.contains(v) && (!gateway || v < *gateway)) gateway = v;
      }
    }

    cluster.members = absorbed;
    if (gateway) {
      cluster.members.erase(*gateway);
      cluster.gateways.insert(*gateway);
      remaining.erase(*gateway);
    }
    for (NodeId x : cluster.council.heads) remaining.erase(x);
    cluster.k = choose_threshold(cluster.n()).k;
    out.clusters.push_back(std::move(cluster));

    next.reset();
    if (gateway) {
      for (NodeId v : t.neighbors(*gateway)) {
        if (remaining.contains(v) && unassigned(v)) {
          next = v;
          break;
        }
      }
    }
  }
  return out;
}

std::string to_string(const Violation& v) {
  std::ostringstream os;
  os << v.invariant << ":";
  for (NodeId u : v.nodes) os << ' ' << u;
  return os.str();
}

std::vector<Violation> verify_partition(const Topology& t, const Partition& p) {
  std::vector<Violation> out;
  std::map<NodeId, std::vector<ClusterId>> seen;
  NodeSet ids;

  for (const auto& c : p.clusters) {
    const auto& heads = c.council.heads;
    if (!ids.insert(c.id()).second) out.push_back({"duplicate_cluster_id", {c.id()}});
    if (!t.contains(c.id())) out.push_back({"cluster_id_unknown", {c.id()}});
    if (heads.empty()) out.push_back({"council_empty", {c.id()}});

    for (const NodeSet* group : {&heads, &c.members, &c.gateways}) {
      for (NodeId u : *group) {
        seen[u].push_back(c.id());
        if (!t.contains(u)) out.push_back({"unknown_node", {u}});
      }
    }

    std::vector<NodeId> missing;
    for (auto a = heads.begin(); a != heads.end(); ++a) {
      for (auto b = std::next(a); b != heads.end(); ++b) {
        if (!t.adjacent(*a, *b)) {
          missing.push_back(*a);
          missing.push_back(*b);
        }
      }
    }
    if (!missing.empty()) out.push_back({"council_not_clique", missing});

    auto touches_head = [&](NodeId u) {
      return std::any_of(heads.begin(), heads.end(), [&](NodeId h) { return t.adjacent(u, h); });
    };
    std::vector<NodeId> detached;
    for (NodeId u : c.members) {
      if (!touches_head(u)) detached.push_back(u);
    }
    if (!detached.empty()) out.push_back({"member_without_head", detached});
    detached.clear();
    for (NodeId u : c.gateways) {
      if (!touches_head(u)) detached.push_back(u);
    }
    if (!detached.empty()) out.push_back({"gateway_without_head", detached});

    if (c.k < 1 || c.k > c.n()) out.push_back({"threshold_out_of_range", {c.id()}});
  }

  std::vector<NodeId> uncovered;
  for (NodeId u : t.nodes()) {
    auto it = seen.find(u);
    if (it == seen.end()) {
      uncovered.push_back(u);
    } else if (it->second.size() > 1) {
      out.push_back({"multiple_roles", {u}});
    }
  }
  if (!uncovered.empty()) out.push_back({"coverage", uncovered});

  std::vector<NodeId> bad_index;
  for (const auto& [u, cids] : seen) {
    auto it = p.node_index.find(u);
    if (it == p.node_index.end() || it->second != cids.front()) bad_index.push_back(u);
  }
  for (const auto& [u, cid] : p.node_index) {
    if (!seen.contains(u)) bad_index.push_back(u);
  }
  if (!bad_index.empty()) out.push_back({"node_index_mismatch", bad_index});

  for (std::size_t i = 0; i < p.clusters.size(); ++i) {
    for (std::size_t j = i + 1; j < p.clusters.size(); ++j) {
      for (NodeId a : p.clusters[i].council.heads) {
        for (NodeId b : p.clusters[j].council.heads) {
          if (t.adjacent(a, b)) out.push_back({"adjacent_heads_across_clusters", {a, b}});
        }
      }
    }
  }
  return out;
}

}  // namespace council
