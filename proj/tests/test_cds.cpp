#include <gtest/gtest.h>

#include "locality/cds.hpp"
#include "locality/generators.hpp"
#include "locality/oracles.hpp"
#include "support.hpp"

using namespace locality;

TEST(SparseSubgraph, TreesKeepEverything) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    Graph t = connected_random_graph(20, 0.0, s);
    EXPECT_EQ(sparse_spanning_subgraph(t, 3).size(), t.edge_count());
  }
}

TEST(SparseSubgraph, TriangleDropsHeaviestEdge) {
  Graph tri = complete_graph(3);
  auto kept = sparse_spanning_subgraph(tri, 2);
  ASSERT_EQ(kept.size(), 2u);
  // Heaviest edge by (min, max) id order is (1, 2).
  for (edge_id e : kept) EXPECT_NE(tri.edge(e), (Edge{1, 2}));
  EXPECT_EQ(sparse_spanning_subgraph(tri, 1).size(), 3u);
}

TEST(SparseSubgraph, LongCycleUntouched) {
  EXPECT_EQ(sparse_spanning_subgraph(cycle_graph(5), 2).size(), 5u);
  EXPECT_EQ(sparse_spanning_subgraph(cycle_graph(5), 3).size(), 4u);
}

TEST(SparseSubgraph, ConnectedWithLargeGirth) {
  for (std::uint64_t s = 0; s < 40; ++s) {
    Graph g = connected_random_graph(30, 0.15, s);
    for (std::uint32_t k = 1; k <= 3; ++k) {
      Graph h = edge_subgraph(g, sparse_spanning_subgraph(g, k));
      EXPECT_TRUE(is_connected(h));
      auto gi = girth(h);
      if (gi) {
        EXPECT_GE(*gi, 2 * k + 1);
      }
      if (auto bound = sparse_edge_bound(g.node_count(), k)) {
        EXPECT_LE(static_cast<double>(h.edge_count()), *bound);
      }
    }
  }
}

TEST(SparseSubgraph, IndependentOfNodeOrderWithinIdsAndThreads) {
  Graph g = connected_random_graph(40, 0.2, 8);
  EXPECT_EQ(sparse_spanning_subgraph(g, 2, 1), sparse_spanning_subgraph(g, 2, 4));
  EXPECT_THROW(sparse_spanning_subgraph(Graph::from_edges(3, {{0, 1}}), 2), Disconnected);
}

TEST(ConnectDominatingSet, StarAndPath) {
  EXPECT_EQ(connect_dominating_set(star_graph(6), {0}), std::vector<node_id>{0});
  auto d = connect_dominating_set(path_graph(6), {1, 4});
  EXPECT_EQ(d, (std::vector<node_id>{1, 2, 3, 4}));
  EXPECT_THROW(connect_dominating_set(path_graph(6), {1}), NotDominating);
}

TEST(ConnectDominatingSet, PropertyOnRandomGraphs) {
  for (std::uint64_t s = 0; s < 60; ++s) {
    Graph g = connected_random_graph(25, 0.08, s);
    // Greedy dominating set: repeatedly take the node covering most undominated nodes.
    std::vector<char> dom(g.node_count(), 0);
    std::vector<node_id> set;
    for (;;) {
      node_id best = 0;
      std::size_t gain = 0;
      for (node_id v = 0; v < g.node_count(); ++v) {
        std::size_t c = !dom[v];
        for (node_id w : g.neighbors(v)) c += !dom[w];
        if (c > gain) {
          gain = c;
          best = v;
        }
      }
      if (gain == 0) break;
      set.push_back(best);
      dom[best] = 1;
      for (node_id w : g.neighbors(best)) dom[w] = 1;
    }
    auto out = connect_dominating_set(g, set);
    EXPECT_TRUE(is_dominating_set(g, out));
    EXPECT_TRUE(induces_connected(g, out));
    EXPECT_LE(out.size(), 3 * set.size() - 2);
  }
}

TEST(McdsPipeline, ValidOutputs) {
  std::vector<Graph> graphs{complete_graph(6), cycle_graph(12), star_graph(7)};
  for (std::uint64_t s = 0; s < 10; ++s) graphs.push_back(connected_random_graph(20, 0.1, s));
  for (const auto& g : graphs) {
    auto r = mcds_pipeline(g, 2, 10, 0.3, 2, 4, 3);
    EXPECT_TRUE(is_dominating_set(g, r.connected_set));
    EXPECT_TRUE(induces_connected(g, r.connected_set));
    EXPECT_TRUE(std::includes(r.connected_set.begin(), r.connected_set.end(), r.dominating_set.begin(),
                              r.dominating_set.end()));
  }
  auto c12 = mcds_pipeline(cycle_graph(12), 2, 10, 0.3, 2, 4, 1);
  EXPECT_GE(c12.connected_set.size(), 10u);
  EXPECT_EQ(exact_mcds(cycle_graph(12)).value, 10);
  EXPECT_THROW(mcds_pipeline(Graph::from_edges(2, {}), 2, 4, 0.3, 2, 4, 1), Disconnected);
}
