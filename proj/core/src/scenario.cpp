#include "council/scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "council/errors.hpp"
#include "json.hpp"

namespace council {

namespace {

using nlohmann::json;

[[noreturn]] void bad_field(const std::string& path, const std::string& expected) {
  throw Error(Errc::parse_error, "field '" + path + "' must be " + expected);
}

[[noreturn]] void invalid(const std::string& what) { throw Error(Errc::validation_error, what); }

double number(const json& j, const std::string& path) {
  if (!j.is_number()) bad_field(path, "a number");
  return j.get<double>();
}

std::uint64_t count(const json& j, const std::string& path) {
  if (!j.is_number_integer() || (!j.is_number_unsigned() && j.get<std::int64_t>() < 0)) {
    bad_field(path, "a non-negative integer");
  }
  return j.get<std::uint64_t>();
}

NodeId node_id(const json& j, const std::string& path) {
  std::uint64_t v = count(j, path);
  if (v > 0xFFFFFFFFULL) bad_field(path, "a 32-bit node identity");
  return static_cast<NodeId>(v);
}

Point point(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) bad_field(path, "an [x, y] pair");
  return {number(j[0], path + "[0]"), number(j[1], path + "[1]")};
}

const json* optional_field(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return nullptr;
  return &*it;
}

}  // namespace

Scenario parse_scenario(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::parse_error, e.what());
  }
  if (!root.is_object()) throw Error(Errc::parse_error, "scenario must be a JSON object");

  Scenario s;
  if (auto* v = optional_field(root, "seed")) s.seed = count(*v, "seed");
  if (auto* v = optional_field(root, "radius")) s.radius = number(*v, "radius");
  if (auto* v = optional_field(root, "hello_interval_rounds")) {
    s.hello_interval_rounds = count(*v, "hello_interval_rounds");
  }
  if (auto* v = optional_field(root, "rounds")) s.rounds = count(*v, "rounds");
  if (auto* v = optional_field(root, "refresh_interval_rounds")) {
    s.refresh_interval_rounds = count(*v, "refresh_interval_rounds");
  }
  if (auto* v = optional_field(root, "field_prime")) s.field_prime = count(*v, "field_prime");
  if (auto* v = optional_field(root, "gateway_threshold")) {
    s.gateway_threshold = number(*v, "gateway_threshold");
  }

  const json* nodes = optional_field(root, "nodes");
  if (nodes == nullptr || !nodes->is_array()) bad_field("nodes", "an array");
  for (std::size_t i = 0; i < nodes->size(); ++i) {
    const std::string path = "nodes[" + std::to_string(i) + "]";
    const json& n = (*nodes)[i];
    if (!n.is_object()) bad_field(path, "an object");
    ScenarioNode node;
    const json* nid = optional_field(n, "nid");
    if (nid == nullptr) bad_field(path + ".nid", "present");
    node.nid = node_id(*nid, path + ".nid");
    if (auto* v = optional_field(n, "position")) node.start = point(*v, path + ".position");
    if (auto* v = optional_field(n, "speed")) node.speed = number(*v, path + ".speed");
    if (auto* v = optional_field(n, "waypoints")) {
      if (!v->is_array()) bad_field(path + ".waypoints", "an array");
      for (std::size_t w = 0; w < v->size(); ++w) {
        node.waypoints.push_back(point((*v)[w], path + ".waypoints[" + std::to_string(w) + "]"));
      }
    }
    s.nodes.push_back(std::move(node));
  }

  if (auto* v = optional_field(root, "edges")) {
    if (!v->is_array()) bad_field("edges", "an array");
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < v->size(); ++i) {
      const std::string path = "edges[" + std::to_string(i) + "]";
      const json& e = (*v)[i];
      if (!e.is_array() || e.size() != 2) bad_field(path, "a [u, v] pair");
      edges.emplace_back(node_id(e[0], path + "[0]"), node_id(e[1], path + "[1]"));
    }
    s.edges = std::move(edges);
  }

  if (auto* v = optional_field(root, "link_events")) {
    if (!v->is_array()) bad_field("link_events", "an array");
    for (std::size_t i = 0; i < v->size(); ++i) {
      const std::string path = "link_events[" + std::to_string(i) + "]";
      const json& e = (*v)[i];
      if (!e.is_object()) bad_field(path, "an object");
      LinkEvent ev;
      const json* round = optional_field(e, "round");
      const json* a = optional_field(e, "a");
      const json* b = optional_field(e, "b");
      const json* kind = optional_field(e, "kind");
      if (round == nullptr || a == nullptr || b == nullptr || kind == nullptr) {
        bad_field(path, "an object with round, kind, a, b");
      }
      ev.round = count(*round, path + ".round");
      ev.a = node_id(*a, path + ".a");
      ev.b = node_id(*b, path + ".b");
      if (!kind->is_string()) bad_field(path + ".kind", "\"link_up\" or \"link_down\"");
      const auto k = kind->get<std::string>();
      if (k == "link_up") {
        ev.up = true;
      } else if (k == "link_down") {
        ev.up = false;
      } else {
        bad_field(path + ".kind", "\"link_up\" or \"link_down\"");
      }
      s.link_events.push_back(ev);
    }
  }

  if (auto* v = optional_field(root, "adversary")) {
    if (!v->is_object()) bad_field("adversary", "an object");
    AdversarySpec adv;
    if (auto* r = optional_field(*v, "compromise_round")) {
      adv.compromise_round = count(*r, "adversary.compromise_round");
    }
    if (auto* ns = optional_field(*v, "nodes")) {
      if (!ns->is_array()) bad_field("adversary.nodes", "an array");
      for (std::size_t i = 0; i < ns->size(); ++i) {
        adv.nodes.push_back(node_id((*ns)[i], "adversary.nodes[" + std::to_string(i) + "]"));
      }
    }
    s.adversary = std::move(adv);
  }

  validate(s);
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::parse_error, "cannot open scenario file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_scenario(text.str());
}

void validate(const Scenario& s) {
  std::set<NodeId> ids;
  NodeId largest = 0;
  for (const auto& n : s.nodes) {
    if (n.nid == 0) invalid("node identities must be >= 1");
    if (!ids.insert(n.nid).second) invalid("duplicate node identity " + std::to_string(n.nid));
    if (!(n.speed >= 0.0) || !std::isfinite(n.speed)) {
      invalid("speed of node " + std::to_string(n.nid) + " must be >= 0");
    }
    largest = std::max(largest, n.nid);
  }
  if (!s.explicit_edges() && (!(s.radius > 0.0) || !std::isfinite(s.radius))) {
    invalid("radius must be > 0");
  }
  if (s.hello_interval_rounds < 1) invalid("hello_interval_rounds must be >= 1");
  if (!(s.gateway_threshold >= 0.0 && s.gateway_threshold <= 1.0)) {
    invalid("gateway_threshold must lie in [0, 1]");
  }
  if (s.field_prime >= (FieldElement{1} << 63) || !is_prime(s.field_prime)) {
    invalid("field_prime " + std::to_string(s.field_prime) + " is not a prime below 2^63");
  }
  if (s.field_prime <= largest) {
    invalid("field_prime must exceed the largest node identity " + std::to_string(largest));
  }
  auto known = [&](NodeId u, const std::string& where) {
    if (!ids.contains(u)) invalid(where + " refers to unknown node " + std::to_string(u));
  };
  if (s.edges) {
    for (auto [u, v] : *s.edges) {
      known(u, "edges");
      known(v, "edges");
      if (u == v) invalid("edges contain a self-loop at node " + std::to_string(u));
    }
  }
  if (!s.link_events.empty() && !s.explicit_edges()) {
    invalid("link_events require explicit edges");
  }
  for (const auto& e : s.link_events) {
    known(e.a, "link_events");
    known(e.b, "link_events");
    if (e.a == e.b) invalid("link_events contain a self-loop at node " + std::to_string(e.a));
    if (e.round == 0) invalid("link_events start at round 1");
  }
  if (s.adversary) {
    for (NodeId u : s.adversary->nodes) known(u, "adversary.nodes");
  }
}

Topology initial_topology(const Scenario& s) {
  if (s.explicit_edges()) {
    std::vector<NodeId> ids;
    for (const auto& n : s.nodes) ids.push_back(n.nid);
    return Topology::from_edges(ids, *s.edges);
  }
  std::vector<NodeSpec> specs;
  for (const auto& n : s.nodes) specs.push_back({n.nid, n.start});
  return Topology::from_positions(specs, s.radius);
}

}  // namespace council
