#include "council/hello.hpp"

#include <string>
#include <vector>

#include "council/errors.hpp"

namespace council {

HelloMessage build_hello(const NodeState& state, std::uint64_t round) {
  HelloMessage msg;
  msg.sender = state.id;
  msg.sender_role = state.role;
  msg.sender_cluster = state.cluster;
  msg.neighbor_table = state.neighbors;
  msg.neighbor_table.owner = state.id;
  msg.cluster_adjacency = state.clusters;
  msg.cluster_adjacency.owner = state.id;
  msg.round = round;
  return msg;
}

NodeAgent::NodeAgent(NodeId id, std::uint64_t missed_limit) : missed_limit_(missed_limit) {
  state_.id = id;
  state_.neighbors.owner = id;
  state_.clusters.owner = id;
}

void NodeAgent::set_role(Role role, ClusterId cluster) {
  state_.role = role;
  state_.cluster = cluster;
}

void NodeAgent::set_cluster_adjacency(ClusterAdjacencyTable table) {
  table.owner = state_.id;
  state_.clusters = std::move(table);
}

HelloMessage NodeAgent::next_hello() { return build_hello(state_, round_); }

void NodeAgent::receive(const HelloMessage& msg) {
  if (msg.sender == state_.id) return;
  state_.neighbors.entries[msg.sender] = msg.sender_role;
  last_heard_[msg.sender] = round_;
  reported_[msg.sender] = msg.neighbor_table;
}

void NodeAgent::end_round() {
  std::vector<NodeId> stale;
  for (const auto& [v, heard] : last_heard_) {
    // Silent in rounds heard+1 .. round_ inclusive.
    if (round_ - heard >= missed_limit_) stale.push_back(v);
  }
  for (NodeId v : stale) {
    last_heard_.erase(v);
    reported_.erase(v);
    state_.neighbors.entries.erase(v);
  }
  ++round_;
}

TwoHopView NodeAgent::two_hop_view() const {
  TwoHopView view;
  view.owner = state_.id;
  for (const auto& [v, role] : state_.neighbors.entries) view.direct.insert(v);
  for (const auto& [relay, table] : reported_) {
    for (const auto& [w, role] : table.entries) {
      if (w != state_.id) view.via[w].insert(relay);
    }
  }
  return view;
}

HelloNetwork::HelloNetwork(const NodeSet& nodes, std::uint64_t missed_limit) {
  for (NodeId u : nodes) agents_.emplace(u, NodeAgent(u, missed_limit));
}

std::size_t HelloNetwork::exchange(const Topology& t, const RoleAssignment* roles) {
  if (roles != nullptr) {
    for (auto& [u, agent] : agents_) {
      auto it = roles->roles.find(u);
      if (it == roles->roles.end()) {
        agent.set_role(Role::undecided, 0);
        agent.set_cluster_adjacency({});
      } else {
        agent.set_role(it->second.role, it->second.cluster);
        agent.set_cluster_adjacency(cluster_adjacency(t, *roles, u));
      }
    }
  }
  std::vector<HelloMessage> outbox;
  outbox.reserve(agents_.size());
  for (auto& [u, agent] : agents_) outbox.push_back(agent.next_hello());
  for (const auto& msg : outbox) {
    for (NodeId v : t.neighbors(msg.sender)) agents_.at(v).receive(msg);
  }
  for (auto& [u, agent] : agents_) agent.end_round();
  return outbox.size();
}

const NodeAgent& HelloNetwork::agent(NodeId u) const {
  auto it = agents_.find(u);
  if (it == agents_.end()) {
    throw Error(Errc::unknown_node, "no agent for node " + std::to_string(u));
  }
  return it->second;
}

Topology HelloNetwork::known_topology() const {
  std::vector<NodeId> nodes;
  std::vector<Edge> edges;
  for (const auto& [u, agent] : agents_) {
    nodes.push_back(u);
    for (const auto& [v, role] : agent.state().neighbors.entries) {
      if (u < v && agents_.at(v).state().neighbors.entries.contains(u)) edges.emplace_back(u, v);
    }
  }
  return Topology::from_edges(nodes, edges);
}

}  // namespace council
