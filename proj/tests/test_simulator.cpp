#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "council/errors.hpp"
#include "council/generators.hpp"
#include "council/scenario.hpp"
#include "council/simulator.hpp"
#include "council/state_dump.hpp"
#include "test_support.hpp"

using namespace council;

namespace {

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return Errc::validation_error;
}

std::string message_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

Scenario mobile_scenario(std::uint64_t seed, std::size_t n, double speed, std::uint64_t rounds) {
  std::mt19937_64 rng(seed);
  const auto t = random_connected_unit_disk(n, 1.0, rng, 0.6);
  const double side = std::max(1.0, 0.6 * std::sqrt(static_cast<double>(n)));
  Scenario s;
  s.seed = seed;
  s.rounds = rounds;
  s.radius = 1.0;
  for (NodeId u : t.nodes()) {
    ScenarioNode node{u, *t.position(u), {}, speed};
    node.waypoints = random_walk(node.start, 6, 0.4, side, rng);
    s.nodes.push_back(node);
  }
  return s;
}

TEST(Scenario, MinimalFile) {
  const auto s = load_scenario(oracle::fixture("minimal.json"));
  EXPECT_EQ(s.nodes.size(), 1U);
  EXPECT_EQ(s.rounds, 0U);
  EXPECT_DOUBLE_EQ(s.gateway_threshold, 0.5);
  EXPECT_EQ(s.field_prime, PrimeField::kMersenne61);
}

TEST(Scenario, SevenNodeIsEdgeListMode) {
  const auto s = load_scenario(oracle::fixture("seven_node.json"));
  EXPECT_EQ(s.nodes.size(), 7U);
  EXPECT_TRUE(s.explicit_edges());
}

TEST(Scenario, ValidationErrors) {
  EXPECT_EQ(code_of([] { parse_scenario(R"({"nodes":[{"nid":1},{"nid":1}]})"); }),
            Errc::validation_error);
  EXPECT_NE(message_of([] { parse_scenario(R"({"nodes":[{"nid":1},{"nid":1}]})"); })
                .find("duplicate"),
            std::string::npos);
  EXPECT_EQ(code_of([] { parse_scenario(R"({"nodes":[{"nid":1,"speed":-1}]})"); }),
            Errc::validation_error);
  EXPECT_EQ(code_of([] { parse_scenario(R"({"field_prime":12,"nodes":[{"nid":1}]})"); }),
            Errc::validation_error);
  EXPECT_EQ(code_of([] { parse_scenario(R"({"field_prime":3,"nodes":[{"nid":5}]})"); }),
            Errc::validation_error);
  EXPECT_EQ(code_of([] { parse_scenario(R"({"edges":[[1,2]],"nodes":[{"nid":1}]})"); }),
            Errc::validation_error);
  EXPECT_EQ(code_of([] {
              parse_scenario(R"({"nodes":[{"nid":1},{"nid":2}],
                 "link_events":[{"round":1,"kind":"link_up","a":1,"b":2}]})");
            }),
            Errc::validation_error);
}

TEST(Scenario, ParseErrorsCarryLocation) {
  const auto broken = message_of([] { parse_scenario("{\n  \"nodes\": [\n  }"); });
  EXPECT_NE(broken.find("line 3"), std::string::npos) << broken;
  const auto typed = message_of([] { parse_scenario(R"({"nodes":[{"nid":1,"position":[0]}]})"); });
  EXPECT_NE(typed.find("nodes[0].position"), std::string::npos) << typed;
  EXPECT_EQ(code_of([] { parse_scenario(R"({"rounds":-3,"nodes":[]})"); }), Errc::parse_error);
  EXPECT_EQ(code_of([] { load_scenario("/nonexistent/file.json"); }), Errc::parse_error);
}

TEST(Initialize, SevenNodeShares) {
  const auto s = initialize(load_scenario(oracle::fixture("seven_node.json")));
  ASSERT_EQ(s.share_ledger.size(), 2U);
  const auto& a = s.share_ledger.at(1);
  EXPECT_EQ(a.shares.size(), 3U);
  EXPECT_EQ(a.policy.k, 2U);
  const auto& b = s.share_ledger.at(6);
  EXPECT_EQ(b.shares.size(), 1U);
  EXPECT_EQ(b.policy.k, 1U);
  const PrimeField f = s.field();
  const auto live = a.live_shares();
  EXPECT_EQ(reconstruct(std::span(live).first(2), 2, f), a.secret);
}

TEST(Initialize, SingleNode) {
  const auto s = initialize(load_scenario(oracle::fixture("minimal.json")));
  ASSERT_EQ(s.partition.clusters.size(), 1U);
  EXPECT_EQ(s.share_ledger.at(1).shares.size(), 1U);
  EXPECT_EQ(s.partition.clusters[0].k, 1U);
}

TEST(Initialize, HundredNodeRandomScenarioIsValid) {
  const auto sc = mobile_scenario(5, 100, 0.0, 0);
  const auto s = initialize(sc);
  EXPECT_TRUE(verify_partition(s.topology, s.partition).empty());
  EXPECT_EQ(s.partition.node_index.size(), 100U);
}

TEST(Initialize, DisconnectedStartIsRejected) {
  EXPECT_EQ(code_of([] {
              initialize(parse_scenario(R"({"nodes":[{"nid":1},{"nid":2}],"edges":[]})"));
            }),
            Errc::disconnected_topology);
}

TEST(Step, StaticScenarioNeverChanges) {
  auto sc = mobile_scenario(3, 25, 0.0, 12);
  auto s = initialize(sc);
  const auto formed = s.partition;
  while (s.round < sc.rounds) {
    s = step(std::move(s));
    EXPECT_EQ(s.partition, formed);
  }
  EXPECT_EQ(s.reforms, 0U);
  EXPECT_EQ(s.updates, 0U);
  EXPECT_EQ(s.hellos, 25U * 12U);
}

TEST(Step, OneHeadWalksAwayIsALocalUpdate) {
  const auto r = run(load_scenario(oracle::fixture("walk_one_head.json")));
  EXPECT_EQ(r.rows.back().reforms, 0U);
  EXPECT_EQ(r.rows.back().updates, 1U);
  ASSERT_FALSE(r.decisions.empty());
  EXPECT_EQ(r.decisions[0].action, MaintenanceAction::local_update);
  EXPECT_EQ(r.decisions[0].heads_departed, 1U);
}

TEST(Step, TwoHeadsWalkAwayIsAReform) {
  const auto r = run(load_scenario(oracle::fixture("walk_two_heads.json")));
  EXPECT_EQ(r.rows.back().reforms, 1U);
  EXPECT_EQ(r.decisions[0].action, MaintenanceAction::reform);
  EXPECT_EQ(r.decisions[0].heads_departed, 2U);
  EXPECT_FALSE(r.halted);
}

TEST(Step, VisitorJoinIssuesAndRefreshesShares) {
  // Member 8 of cluster 1 loses its head and links to the whole council of
  // cluster 5.
  const auto sc = load_scenario(oracle::fixture("visitor_join.json"));
  auto s = initialize(sc);
  ASSERT_TRUE(s.partition.find(1)->members.contains(8));
  ASSERT_EQ(s.partition.find(5)->council.heads, (NodeSet{5, 6, 7}));
  while (s.round < sc.rounds) s = step(std::move(s));

  const Cluster& c = *s.partition.find(5);
  EXPECT_EQ(c.council.heads, (NodeSet{5, 6, 7, 8}));
  EXPECT_EQ(c.k, 3U);
  EXPECT_EQ(s.reforms, 0U);
  const auto& ledger = s.share_ledger.at(5);
  const auto live = ledger.live_shares();
  ASSERT_EQ(live.size(), 4U);
  EXPECT_EQ(ledger.epoch, 1U);
  const PrimeField f = s.field();
  for (std::size_t skip = 0; skip < live.size(); ++skip) {
    std::vector<Share> three;
    for (std::size_t i = 0; i < live.size(); ++i) {
      if (i != skip) three.push_back(live[i]);
    }
    EXPECT_EQ(reconstruct(three, 3, f), ledger.secret);
  }
  EXPECT_EQ(code_of([&] { reconstruct(std::span(live).first(2), 3, f); }),
            Errc::insufficient_shares);
}

TEST(Compromise, EmptySetChangesNothing) {
  const auto s = initialize(load_scenario(oracle::fixture("seven_node.json")));
  const auto t = compromise(s, {});
  EXPECT_TRUE(t.compromised.empty());
  EXPECT_TRUE(t.adversary.empty());
  EXPECT_EQ(code_of([&] { compromise(s, {42}); }), Errc::unknown_node);
}

TEST(Compromise, OneHeadOfThresholdTwoIsSafe) {
  auto s = initialize(load_scenario(oracle::fixture("seven_node_adversary_one.json")));
  s = step(std::move(s));
  const auto a = audit_secrecy(s);
  ASSERT_EQ(a.clusters.size(), 2U);
  EXPECT_EQ(a.clusters[0].compromised_head_count, 1U);
  EXPECT_FALSE(a.clusters[0].breached);
  EXPECT_EQ(a.clusters[0].consistent_secrets, std::optional<std::size_t>(13));
  EXPECT_TRUE(a.clusters[0].reconstruct_refused);
  EXPECT_FALSE(a.any_anomaly());
}

TEST(Compromise, TwoHeadsOfThresholdTwoBreach) {
  auto s = initialize(load_scenario(oracle::fixture("seven_node_adversary_two.json")));
  s = step(std::move(s));
  const auto a = audit_secrecy(s);
  EXPECT_TRUE(a.clusters[0].breached);
  EXPECT_EQ(a.clusters[0].consistent_secrets, std::optional<std::size_t>(1));
  EXPECT_FALSE(s.report.rows.back().secrecy_ok);
  EXPECT_FALSE(s.report.anomaly);
}

TEST(Compromise, NoCompromiseNoBreach) {
  const auto s = initialize(load_scenario(oracle::fixture("four_councils.json")));
  for (const auto& c : audit_secrecy(s).clusters) EXPECT_FALSE(c.breached);
}

TEST(Compromise, RefreshedSharesOfHonestNodesDoNotLeak) {
  auto sc = load_scenario(oracle::fixture("seven_node_adversary_one.json"));
  sc.refresh_interval_rounds = 1;
  sc.rounds = 4;
  auto s = initialize(sc);
  while (s.round < sc.rounds) s = step(std::move(s));
  for (const auto& h : s.adversary) EXPECT_EQ(h.holder, 3U);
  const auto a = audit_secrecy(s);
  EXPECT_EQ(a.clusters[0].compromised_head_count, 1U);
  EXPECT_FALSE(a.clusters[0].breached);
}

TEST(Run, StaticSevenNodeTenRounds) {
  const auto r = run(load_scenario(oracle::fixture("seven_node.json")));
  ASSERT_EQ(r.rows.size(), 10U);
  for (const auto& row : r.rows) {
    EXPECT_EQ(row.cluster_count, 2U);
    EXPECT_EQ(row.min_council, 1U);
    EXPECT_EQ(row.max_council, 3U);
  }
  EXPECT_EQ(exit_status(r), 0);
}

TEST(Run, ZeroRoundsGivesHeaderOnly) {
  const auto r = run(load_scenario(oracle::fixture("four_councils.json")));
  EXPECT_EQ(r.to_csv(), std::string(kMetricsHeader) + "\n");
}

TEST(Run, SeedChangesNeverMovePartitionOfStaticTopology) {
  auto sc = load_scenario(oracle::fixture("seven_node.json"));
  const auto a = initialize(sc);
  sc.seed = 999;
  const auto b = initialize(sc);
  EXPECT_EQ(a.partition, b.partition);
  EXPECT_NE(a.share_ledger.at(1).secret, b.share_ledger.at(1).secret);
  EXPECT_EQ(run(sc).to_csv(), run(load_scenario(oracle::fixture("seven_node.json"))).to_csv());
}

TEST(Run, DisconnectionHaltsWithPartialReport) {
  auto sc = load_scenario(oracle::fixture("seven_node.json"));
  sc.link_events = {{1, 4, 5, false}};
  const auto r = run(sc);
  EXPECT_TRUE(r.halted);
  EXPECT_LT(r.rows.size(), 10U);
  EXPECT_EQ(exit_status(r), 1);
}

// Every round either leaves a valid partition on the HELLO view or logs a
// reform; updates + reforms never exceed HELLO rounds; sub-threshold holdings
// are hidden.
TEST(Run, MobilityProperties) {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    auto sc = mobile_scenario(seed, 12, 0.08, 40);
    sc.field_prime = 13;
    sc.hello_interval_rounds = 1 + seed % 3;
    sc.refresh_interval_rounds = seed % 4;
    sc.adversary = AdversarySpec{seed % 3, {1, 2}};
    auto s = initialize(sc);
    while (s.round < sc.rounds && !s.report.halted) {
      const auto reforms = s.reforms;
      s = step(std::move(s));
      if (s.report.halted) break;
      EXPECT_TRUE(verify_partition(s.known, s.partition).empty() || s.reforms > reforms);
      EXPECT_LE(s.updates + s.reforms, s.hello_rounds);
      for (const auto& c : audit_secrecy(s).clusters) {
        if (!c.breached) {
          EXPECT_TRUE(c.reconstruct_refused);
          EXPECT_GE(c.consistent_secrets.value_or(0), 2U);
        }
      }
    }
    EXPECT_FALSE(s.report.anomaly);
    EXPECT_EQ(s.report.rows.size(), s.round);
  }
}

TEST(StateDump, AuditRoundTrip) {
  auto s = initialize(load_scenario(oracle::fixture("seven_node_adversary_two.json")));
  s = step(std::move(s));
  const auto text = dump_state(s);
  EXPECT_NE(text.find("\"(1, "), std::string::npos);
  const auto input = audit_input_from_dump(text);
  const auto from_dump = audit_holdings(input);
  const auto direct = audit_secrecy(s);
  ASSERT_EQ(from_dump.clusters.size(), direct.clusters.size());
  for (std::size_t i = 0; i < direct.clusters.size(); ++i) {
    EXPECT_EQ(from_dump.clusters[i].breached, direct.clusters[i].breached);
    EXPECT_EQ(from_dump.clusters[i].compromised_head_count,
              direct.clusters[i].compromised_head_count);
  }
  EXPECT_EQ(code_of([] { audit_input_from_dump("{"); }), Errc::parse_error);
}

TEST(Metrics, CsvColumns) {
  MetricsReport r;
  r.rows.push_back({3, 2, 2.0, 1, 3, 1, 0, 21, true});
  EXPECT_EQ(r.to_csv(),
            "round,cluster_count,mean_council,min_council,max_council,updates,reforms,hellos,"
            "secrecy_ok\n3,2,2.0000,1,3,1,0,21,1\n");
}

}  // namespace
