#include <gtest/gtest.h>

#include "locality/lower_bound.hpp"
#include "locality/oracles.hpp"
#include "support.hpp"

using namespace locality;

namespace {

DeltaSequence powers_of_two(std::uint32_t k) {
  DeltaSequence d;
  for (std::uint32_t i = 0; i <= k + 1; ++i) d.push_back(std::uint64_t{1} << i);
  return d;
}

}  // namespace

TEST(DeltaSequence, Formula) {
  EXPECT_EQ(delta_sequence(4, 2), (DeltaSequence{1, 4, 32, 512}));
  for (std::uint64_t d = 1; d < 6; ++d) EXPECT_EQ(delta_sequence(d, 3)[0], 1u);
  auto s = delta_sequence(4, 3);
  for (std::size_t i = 0; i + 1 < s.size(); ++i) EXPECT_EQ(s[i + 1] / s[i], (std::uint64_t{1} << i) * 4);
  EXPECT_THROW(delta_sequence(1u << 20, 5), std::overflow_error);
  EXPECT_THROW(validate_deltas({1, 2, 2}, 1), std::invalid_argument);
}

TEST(ClusterTree, BaseCase) {
  auto ct = build_cluster_tree(1, {1, 2, 4}, BigInt(8));
  ASSERT_EQ(ct.clusters.size(), 4u);
  ASSERT_EQ(ct.arcs.size(), 3u);
  EXPECT_EQ(ct.arcs[0].parent, 0u);
  EXPECT_EQ(ct.arcs[0].child, 1u);
  EXPECT_EQ(ct.arcs[0].link, 0u);
  EXPECT_EQ(ct.arcs[1].parent, 0u);
  EXPECT_EQ(ct.arcs[1].child, 2u);
  EXPECT_EQ(ct.arcs[1].link, 1u);
  EXPECT_EQ(ct.arcs[2].parent, 1u);
  EXPECT_EQ(ct.arcs[2].child, 3u);
  EXPECT_EQ(ct.arcs[2].link, 0u);
  EXPECT_EQ(ct.clusters[1].size, 4);
  EXPECT_EQ(ct.clusters[2].size, 4);
  EXPECT_EQ(ct.clusters[3].size, 2);
  EXPECT_EQ(ct.clusters[0].depth, 2u);
}

TEST(ClusterTree, DepthsAndCountsOfLaterTrees) {
  auto ct2 = build_cluster_tree(2, powers_of_two(2));
  EXPECT_EQ(ct2.clusters.size(), 10u);
  EXPECT_EQ(ct2.clusters[0].depth, 3u);
  EXPECT_EQ(ct2.clusters[1].depth, 2u);
  EXPECT_EQ(ct2.clusters[2].depth, 1u);
  EXPECT_EQ(ct2.clusters[3].depth, 1u);
  const std::size_t expected[] = {4, 10, 32, 130, 652};
  for (std::uint32_t k = 1; k <= 5; ++k) {
    auto ct = build_cluster_tree(k, delta_sequence(4, k));
    EXPECT_EQ(ct.clusters.size(), expected[k - 1]);
    EXPECT_EQ(ct.clusters[0].depth, k + 1);
    for (const auto& a : ct.arcs) {
      auto [dc, dd] = ct.label(a);
      EXPECT_EQ(ct.clusters[a.parent].size * BigInt(dc), ct.clusters[a.child].size * BigInt(dd));
      EXPECT_EQ(ct.clusters[a.child].level, ct.clusters[a.parent].level + 1);
    }
  }
}

TEST(ClusterTree, SizeValidation) {
  EXPECT_THROW(build_cluster_tree(1, {1, 2, 4}, BigInt(2)), NonIntegralSizes);
  EXPECT_THROW(build_cluster_tree(1, {1, 2, 4}, BigInt(3)), NonIntegralSizes);
  EXPECT_NO_THROW(build_cluster_tree(1, {1, 2, 4}, BigInt(4)));
  EXPECT_EQ(auto_n0(2, powers_of_two(2)), 32);
  EXPECT_EQ(auto_n0(1, delta_sequence(4, 1)), 32);
}

TEST(NaiveInstance, DegreesAndBipartiteness) {
  for (std::uint32_t k = 1; k <= 3; ++k) {
    auto ct = build_cluster_tree(k, powers_of_two(k));
    for (std::uint64_t seed : {1u, 2u}) {
      Graph g = instantiate_naive(ct, seed);
      EXPECT_EQ(BigInt(static_cast<unsigned long>(g.node_count())), ct.total_size());
      EXPECT_FALSE(cluster_degree_violation(g, ct.links()).has_value());
      auto side = bipartition(g);
      ASSERT_TRUE(side.has_value());
      for (auto [u, v] : g.edges()) {
        EXPECT_NE(ct.clusters[g.labels()[u]].level % 2, ct.clusters[g.labels()[v]].level % 2);
      }
      EXPECT_EQ(girth(g), 4u);
    }
  }
}

TEST(NaiveInstance, CirculantFallbackKeepsDegrees) {
  // |C_0| = 12 does not split into blocks of delta_2 = 8, so the circulant pattern is used.
  auto ct = build_cluster_tree(1, {1, 2, 8}, BigInt(12));
  auto g = instantiate_naive(ct, 3);
  EXPECT_FALSE(cluster_degree_violation(g, ct.links()).has_value());
  auto other = build_cluster_tree(1, {2, 4, 6}, BigInt(12));
  EXPECT_FALSE(cluster_degree_violation(instantiate_naive(other, 1), other.links()).has_value());
}

TEST(NaiveInstance, NodeCountBound) {
  for (std::uint32_t k = 1; k <= 2; ++k) {
    auto ct = build_cluster_tree(k, delta_sequence(4, k));
    EXPECT_TRUE(node_count_within_bound(ct.total_size(), ct.n0, 4));
  }
  for (std::uint32_t k = 1; k <= 5; ++k) {
    auto ct = build_cluster_tree(k, delta_sequence(8, k));
    EXPECT_TRUE(node_count_within_bound(ct.total_size(), ct.n0, 8));
  }
}

TEST(Dq, UniqueNeighborExample) {
  EXPECT_EQ(dq_unique_neighbor({1, 2}, 2, DqSide::point, 3), (FieldVector{2, 1}));
  EXPECT_THROW(dq_unique_neighbor({1, 2}, 2, DqSide::point, 4), std::invalid_argument);
}

TEST(Dq, RoundTripAndAdjacency) {
  const std::uint64_t q = 5;
  for (std::size_t r : {2u, 3u, 5u, 6u}) {
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < r; ++i) total *= q;
    for (std::uint64_t x = 0; x < total; x += 7) {
      FieldVector p = dq_vector(x, r, q);
      for (std::uint32_t l1 = 0; l1 < q; ++l1) {
        auto l = dq_unique_neighbor(p, l1, DqSide::point, q);
        EXPECT_TRUE(dq_adjacent(p, l, q));
        EXPECT_EQ(dq_unique_neighbor(l, p[0], DqSide::line, q), p);
      }
    }
  }
}

TEST(Dq, GraphShapeAndGirth) {
  Graph d22 = dq_graph(2, 2);
  EXPECT_EQ(d22.node_count(), 8u);
  EXPECT_EQ(d22.edge_count(), 8u);
  Graph d33 = dq_graph(3, 3);
  EXPECT_EQ(d33.node_count(), 54u);
  EXPECT_EQ(d33.edge_count(), 81u);
  for (node_id v = 0; v < d33.node_count(); ++v) EXPECT_EQ(d33.degree(v), 3u);
  for (auto [u, v] : d33.edges()) EXPECT_TRUE(u < 27 && v >= 27);
  EXPECT_GE(*girth(d33), 8u);
  EXPECT_EQ(girth(d33), testing_support::brute_girth(d33));
  EXPECT_THROW(dq_graph(3, 4), std::invalid_argument);
  EXPECT_THROW(dq_graph(8, 13, SizeBudget{1000}), SizeGuard);
}

TEST(GirthBoost, SmallInstance) {
  auto ct = build_cluster_tree(2, powers_of_two(2));
  Graph naive = instantiate_naive(ct, 1);
  BoostInfo info;
  Graph g = girth_boost(ct, naive, &info);
  EXPECT_EQ(info.r, 3u);
  EXPECT_EQ(info.m, 64u);
  EXPECT_EQ(info.q, 67u);
  EXPECT_LE(g.node_count(), 2 * info.m * info.q * info.q);
  EXPECT_FALSE(cluster_degree_violation(g, ct.links()).has_value());
  EXPECT_FALSE(girth_up_to(g, 4, 1).has_value());
  EXPECT_THROW(girth_boost(ct, naive, nullptr, SizeBudget{1000}), SizeGuard);
}

TEST(GirthBoost, RequiresProperColoring) {
  Graph tri = complete_graph(3);
  EXPECT_THROW(girth_boost(tri, {0, 1, 0}, 2), std::invalid_argument);
  // Plain bipartite input: C_4 boosted with k = 2 keeps degree 2 and loses its 4-cycles.
  Graph c4 = cycle_graph(4);
  Graph b = girth_boost(c4, *bipartition(c4), 2);
  for (node_id v = 0; v < b.node_count(); ++v) EXPECT_EQ(b.degree(v), 2u);
  EXPECT_GE(*girth(b), 5u);
}

TEST(Hk, Structure) {
  Graph h = build_hk(path_graph(2));
  EXPECT_EQ(h.node_count(), 4u);
  EXPECT_EQ(girth(h), 4u);
  EXPECT_EQ(h.max_degree(), 2u);
  Graph g = gnp_graph(12, 0.3, 2);
  Graph hk = build_hk(g);
  for (node_id v = 0; v < g.node_count(); ++v) {
    EXPECT_EQ(hk.degree(v), g.degree(v) + 1);
    EXPECT_EQ(hk.degree(v + 12), g.degree(v) + 1);
  }
  // The counterpart matching is a matching of size n.
  std::vector<edge_id> matching;
  for (node_id v = 0; v < 12; ++v) matching.push_back(*hk.edge_index(v, v + 12));
  EXPECT_TRUE(is_matching(hk, matching));
  EXPECT_GE(exact_max_matching(hk).value, 12);
}

TEST(ClusterViews, DepthZeroAndExamplePattern) {
  auto ct = build_cluster_tree(1, delta_sequence(4, 1));
  EXPECT_EQ(unroll_cluster_view(ct, 0, std::nullopt, 0).height(), 0u);
  auto links = ct.links();
  // C_0: delta_0 toward C_1 and delta_1 toward C_2; C_1: delta_1 toward C_0, delta_0 toward C_3.
  ASSERT_EQ(links[0].size(), 2u);
  EXPECT_EQ(links[0][0], (std::pair<std::uint32_t, std::uint64_t>{1, 1}));
  EXPECT_EQ(links[0][1], (std::pair<std::uint32_t, std::uint64_t>{2, 4}));
  EXPECT_EQ(links[1][0], (std::pair<std::uint32_t, std::uint64_t>{0, 4}));
  EXPECT_EQ(links[1][1], (std::pair<std::uint32_t, std::uint64_t>{3, 1}));
  EXPECT_EQ(unroll_cluster_view(ct, 0, std::nullopt, 1).degree(), 5u);
  EXPECT_EQ(unroll_cluster_view(ct, 1, std::nullopt, 1).degree(), 5u);
  // Entered from C_0, a C_1 node has one fewer branch back.
  EXPECT_EQ(unroll_cluster_view(ct, 1, 0u, 1).degree(), 4u);
}

TEST(ClusterViews, AdjacentClustersIndistinguishable) {
  for (std::uint32_t k = 1; k <= 4; ++k) {
    for (const auto& d : {delta_sequence(4, k), powers_of_two(k)}) {
      auto ct = build_cluster_tree(k, d);
      ClusterViewBuilder b(ct.links());
      EXPECT_TRUE(views_equal(b.view(0, std::nullopt, k), b.view(1, std::nullopt, k), k));
      // One level deeper the views differ.
      EXPECT_FALSE(views_equal(b.view(0, std::nullopt, k + 1), b.view(1, std::nullopt, k + 1), k + 1));
    }
  }
}

TEST(ClusterViews, NodeViewsMatchOnNaiveInstance) {
  auto ct = build_cluster_tree(1, powers_of_two(1));
  Graph g = instantiate_naive(ct, 5);
  ClusterViewBuilder b(ct.links(), true);
  for (node_id v = 0; v < g.node_count(); ++v) {
    auto c = static_cast<std::uint32_t>(g.labels()[v]);
    EXPECT_EQ(khop_view(g, v, 1, true), b.view(c, std::nullopt, 1));
  }
}
