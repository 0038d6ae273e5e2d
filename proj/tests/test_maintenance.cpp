#include <gtest/gtest.h>

#include "council/errors.hpp"
#include "council/maintenance.hpp"
#include "council/shamir.hpp"
#include "test_support.hpp"

using namespace council;

namespace {

ClusterHealth health(std::size_t n0, std::size_t k, std::size_t departed) {
  ClusterHealth h;
  h.cluster_id = 1;
  h.n0 = n0;
  h.k = k;
  h.heads_departed = departed;
  return h;
}

Topology seven_node_with_visitor() {
  const auto base = oracle::fixture_topology("seven_node.json");
  std::vector<NodeId> ids(base.nodes().begin(), base.nodes().end());
  ids.push_back(8);
  auto edges = base.edges();
  edges.insert(edges.end(), {{1, 8}, {3, 8}, {5, 8}});
  return Topology::from_edges(ids, edges);
}

Partition seven_node_partition() { return reform(oracle::fixture_topology("seven_node.json")); }

TEST(Classify, StrictBoundary) {
  EXPECT_EQ(classify_change(health(3, 2, 1)).action, MaintenanceAction::local_update);
  EXPECT_EQ(classify_change(health(3, 2, 2)).action, MaintenanceAction::reform);
  EXPECT_EQ(classify_change(health(5, 3, 2)).action, MaintenanceAction::local_update);
  EXPECT_EQ(classify_change(health(5, 3, 3)).action, MaintenanceAction::reform);
  EXPECT_EQ(classify_change(health(3, 2, 0)).action, MaintenanceAction::none);
}

TEST(Classify, GatewayLossTrigger) {
  auto h = health(3, 2, 0);
  h.gateways0 = 2;
  h.gateways_lost = 1;
  EXPECT_EQ(classify_change(h).action, MaintenanceAction::local_update);
  EXPECT_EQ(classify_change(h, 0.4).action, MaintenanceAction::reform);
  h.gateways_lost = 2;
  EXPECT_DOUBLE_EQ(h.gateways_lost_fraction(), 1.0);
  EXPECT_EQ(classify_change(h).action, MaintenanceAction::reform);
}

TEST(Classify, JoinsRaiseTheReference) {
  auto h = health(3, 2, 2);
  h.heads_joined = 1;
  h.k = 3;
  EXPECT_EQ(h.reference_size(), 4U);
  EXPECT_EQ(classify_change(h).action, MaintenanceAction::reform);
  h.k = 2;
  EXPECT_EQ(classify_change(h).action, MaintenanceAction::local_update);
}

TEST(Classify, MonotoneInDepartures) {
  for (std::size_t n = 1; n <= 8; ++n) {
    const std::size_t k = choose_threshold(n).k;
    int strength = 0;
    for (std::size_t d = 0; d <= n; ++d) {
      const int now = static_cast<int>(classify_change(health(n, k, d)).action);
      EXPECT_GE(now, strength);
      strength = now;
    }
  }
}

TEST(Visitor, AdjacentToEveryHeadJoins) {
  const auto out = handle_visitor(seven_node_with_visitor(), seven_node_partition(), 8, 1);
  EXPECT_EQ(out.action, ShareAction::issue_new_share);
  const Cluster& c = *out.partition.find(1);
  EXPECT_EQ(c.council.heads, (NodeSet{1, 3, 5, 8}));
  EXPECT_EQ(c.k, 3U);
  EXPECT_EQ(out.partition.cluster_of(8), ClusterId{1});
}

TEST(Visitor, PartialAdjacencyMakesAMember) {
  auto t = seven_node_with_visitor().without_link(3, 8).without_link(5, 8);
  const auto out = handle_visitor(t, seven_node_partition(), 8, 1);
  EXPECT_EQ(out.action, ShareAction::member_only);
  EXPECT_TRUE(out.partition.find(1)->members.contains(8));
  EXPECT_EQ(out.partition.find(1)->k, 2U);
}

TEST(Visitor, GatewayStaysOutOfCouncil) {
  const std::vector<NodeId> ids{1, 2, 3, 4, 5};
  const std::vector<Edge> edges{{1, 2}, {1, 3}, {2, 3}, {3, 4}, {4, 5}};
  const auto t = Topology::from_edges(ids, edges);
  Partition p;
  p.clusters.push_back({{{1, 2}, 1}, {}, {3}, 2});
  p.clusters.push_back({{{5}, 5}, {4}, {}, 1});
  p.node_index = {{1, 1}, {2, 1}, {3, 1}, {4, 5}, {5, 5}};
  ASSERT_TRUE(verify_partition(t, p).empty());
  const auto out = handle_visitor(t, p, 3, 1);
  EXPECT_EQ(out.action, ShareAction::member_only);
}

TEST(Visitor, Errors) {
  try {
    handle_visitor(seven_node_with_visitor(), seven_node_partition(), 8, 99);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::unknown_cluster);
  }
  try {
    handle_visitor(seven_node_with_visitor(), seven_node_partition(), 8, 6);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::not_adjacent);
  }
}

// Share issuance for the joining head, then a refresh at the new threshold:
// every k-subset of the enlarged set still opens the original secret.
TEST(Visitor, EnlargedShareSetKeepsTheSecret) {
  const PrimeField f(101);
  const Polynomial poly{42, 17};
  const std::vector<FieldElement> xs{1, 3, 5};
  auto shares = split_with_polynomial(poly, xs, f);
  const Share joined = issue_share(std::span(shares).first(2), 8, 2, f);
  EXPECT_EQ(joined.y, oracle::poly_eval(poly, 8, 101));
  shares.push_back(joined);
  const auto refreshed = refresh_shares(shares, choose_threshold(4), f, 3);
  for (std::size_t skip = 0; skip < refreshed.size(); ++skip) {
    std::vector<Share> three;
    for (std::size_t i = 0; i < refreshed.size(); ++i) {
      if (i != skip) three.push_back(refreshed[i]);
    }
    EXPECT_EQ(reconstruct(three, 3, f), 42U);
  }
  EXPECT_EQ(consistent_secrets(std::span(refreshed).first(2), 3, f).size(), 101U);
}

TEST(Departure, HeadMemberGateway) {
  const auto p = seven_node_partition();
  ClusterHealth h = health_at_formation(*p.find(1));
  EXPECT_EQ(h.gateways0, 1U);

  const auto head = handle_departure(p, 3);
  EXPECT_EQ(head.host, 1U);
  EXPECT_TRUE(head.share_revoked);
  EXPECT_EQ(head.partition.find(1)->n(), 2U);
  record_departure(h, head);
  EXPECT_EQ(h.heads_departed, 1U);
  EXPECT_EQ(h.n0, 3U);

  const auto member = handle_departure(p, 2);
  EXPECT_FALSE(member.share_revoked);
  record_departure(h, member);
  EXPECT_EQ(h.heads_departed, 1U);

  record_departure(h, handle_departure(p, 4));
  EXPECT_DOUBLE_EQ(h.gateways_lost_fraction(), 1.0);

  try {
    handle_departure(p, 42);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::unknown_node);
  }
}

TEST(Departure, DetachedNodesAfterLinkLoss) {
  const auto p = seven_node_partition();
  const auto t = oracle::fixture_topology("seven_node.json");
  EXPECT_TRUE(detached_nodes(t, p).empty());
  const auto cut = t.without_link(3, 5);
  EXPECT_EQ(surviving_council(cut, {1, 3, 5}), (NodeSet{1, 3}));
  // Gateway 4 reached the cluster only through 5.
  EXPECT_EQ(detached_nodes(cut, p), (NodeSet{4, 5}));
  // 2 hangs off head 1 only.
  EXPECT_EQ(detached_nodes(t.without_link(1, 2), p), (NodeSet{2}));
}

TEST(DiffLinks, OneEventPerChangedLink) {
  const auto t = oracle::fixture_topology("seven_node.json");
  const auto u = t.without_link(3, 5).with_link(2, 7);
  const auto ev = diff_links(t, u, 4);
  ASSERT_EQ(ev.size(), 2U);
  EXPECT_EQ(ev[0], (MobilityEvent{4, 2, MobilityEvent::Kind::link_up, 7, {}}));
  EXPECT_EQ(ev[1], (MobilityEvent{4, 3, MobilityEvent::Kind::link_down, 5, {}}));
  EXPECT_TRUE(diff_links(t, t, 1).empty());
}

TEST(Reform, DisconnectedThrows) {
  const auto t = oracle::fixture_topology("seven_node.json").without_link(4, 5);
  try {
    reform(t);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::disconnected_topology);
  }
}

}  // namespace
