#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string_view>
#include <vector>

#include "council/graph.hpp"
#include "council/shamir.hpp"

namespace council {

struct ScenarioNode {
  NodeId nid = 0;
  Point start;
  std::vector<Point> waypoints;
  double speed = 0.0;  // length units per round
};

/// Scripted link change for explicit edge-list scenarios, applied at the
/// start of `round`.
struct LinkEvent {
  std::uint64_t round = 0;
  NodeId a = 0;
  NodeId b = 0;
  bool up = false;
};

struct AdversarySpec {
  std::uint64_t compromise_round = 0;
  std::vector<NodeId> nodes;
};

struct Scenario {
  std::uint64_t seed = 0;
  double radius = 1.0;
  std::uint64_t hello_interval_rounds = 1;
  std::uint64_t rounds = 0;
  /// 0 disables periodic refresh; shares are still re-split on every reform.
  std::uint64_t refresh_interval_rounds = 0;
  std::vector<ScenarioNode> nodes;
  /// When present the topology is this edge list (plus link_events) and
  /// positions/waypoints are ignored for connectivity.
  std::optional<std::vector<Edge>> edges;
  std::vector<LinkEvent> link_events;
  std::optional<AdversarySpec> adversary;
  FieldElement field_prime = PrimeField::kMersenne61;
  double gateway_threshold = 0.5;

  bool explicit_edges() const { return edges.has_value(); }
};

/// Parses and validates scenario JSON. Throws ParseError (malformed JSON,
/// with line/column, or a field of the wrong type, with its path) and
/// ValidationError (naming the violated invariant).
Scenario parse_scenario(std::string_view json_text);
Scenario load_scenario(const std::filesystem::path& path);

/// Throws ValidationError.
void validate(const Scenario& s);

/// Topology at round 0.
Topology initial_topology(const Scenario& s);

}  // namespace council
