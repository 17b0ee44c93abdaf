#include <gtest/gtest.h>

#include "locality/engine.hpp"
#include "locality/generators.hpp"
#include "locality/view_tree.hpp"

using namespace locality;

namespace {

// Sends to a node that is not a neighbor.
struct Misbehaving {
  using State = node_id;
  using Message = int;
  using Output = int;
  State init(const NodeContext& ctx) const { return ctx.id; }
  std::pair<State, Outbox<Message>> step(State s, std::uint32_t, const Inbox<Message>&) const {
    return {s, {{s, 1}}};
  }
  Output finalize(const State&) const { return 0; }
};

// Output = per-node random draw, to observe seeding.
struct Draw {
  using State = std::uint64_t;
  using Message = int;
  using Output = std::uint64_t;
  State init(const NodeContext& ctx) const { return ctx.seed; }
  std::pair<State, Outbox<Message>> step(State s, std::uint32_t, const Inbox<Message>&) const { return {s, {}}; }
  Output finalize(const State& s) const { return s; }
};

}  // namespace

TEST(Engine, FloodMaxLearnsMaxWithinK) {
  Graph g = gnp_graph(30, 0.08, 3);
  for (std::uint32_t k = 0; k <= 4; ++k) {
    auto t = run_protocol(g, FloodMax{}, k, 0);
    EXPECT_EQ(t.rounds, k);
    for (node_id v = 0; v < g.node_count(); ++v) {
      auto dist = bfs_distances(g, v, k);
      node_id best = v;
      for (node_id w = 0; w < g.node_count(); ++w)
        if (dist[w] != unreachable) best = std::max(best, w);
      EXPECT_EQ(t.outputs[v], best);
    }
  }
}

TEST(Engine, ZeroRoundsSendsNothing) {
  auto t = run_protocol(path_graph(5), FloodMax{}, 0, 0);
  EXPECT_EQ(t.rounds, 0u);
  EXPECT_TRUE(t.messages_per_round.empty());
  for (node_id v = 0; v < 5; ++v) EXPECT_EQ(t.outputs[v], v);
}

TEST(Engine, GatherReproducesKhopView) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    Graph g = connected_random_graph(25, 0.02, s);
    for (std::uint32_t k = 0; k <= 3; ++k) {
      auto t = run_protocol(g, GatherView{}, k, s);
      for (node_id v = 0; v < g.node_count(); ++v) {
        try {
          EXPECT_EQ(t.outputs[v], khop_view(g, v, k));
        } catch (const NonTreeView&) {
        }
      }
    }
  }
}

TEST(Engine, MessageToNonNeighborFaults) {
  EXPECT_THROW(run_protocol(path_graph(3), Misbehaving{}, 1, 0), ProtocolFault);
}

TEST(Engine, SeedsDependOnSeedAndNodeOnly) {
  auto a = run_protocol(path_graph(5), Draw{}, 0, 42);
  auto b = run_protocol(path_graph(9), Draw{}, 0, 42);
  for (node_id v = 0; v < 5; ++v) {
    EXPECT_EQ(a.outputs[v], b.outputs[v]);
    EXPECT_EQ(a.outputs[v], derive_seed(42, v));
  }
  EXPECT_NE(run_protocol(path_graph(5), Draw{}, 0, 43).outputs, a.outputs);
}

TEST(Engine, DeterministicAcrossThreadCounts) {
  Graph g = gnp_graph(60, 0.1, 9);
  BallGather<std::uint64_t> proto{[](node_id v) { return std::uint64_t{v} * 7; }};
  auto ref = run_protocol(g, proto, 3, 5, {1});
  for (unsigned th : {2u, 4u, 0u}) EXPECT_EQ(run_protocol(g, proto, 3, 5, {th}), ref);
}

TEST(Engine, BallGatherFindsExactBall) {
  Graph g = gnp_graph(40, 0.07, 11);
  BallGather<int> proto{[](node_id) { return 0; }};
  auto t = run_protocol(g, proto, 3, 0);
  for (node_id v = 0; v < g.node_count(); ++v) {
    auto dist = bfs_distances(g, v, 3);
    std::size_t count = 0;
    for (node_id w = 0; w < g.node_count(); ++w) count += dist[w] != unreachable;
    ASSERT_EQ(t.outputs[v].size(), count);
    for (const auto& e : t.outputs[v]) EXPECT_EQ(e.dist, dist[e.id]);
  }
}

TEST(Engine, OutputIgnoresChangesOutsideBall) {
  // Two graphs agreeing on the 2-ball of node 0 but differing further out.
  Graph a = path_graph(8);
  auto edges = a.edges();
  edges.emplace_back(5, 7);
  Graph b = Graph::from_edges(8, {edges.begin(), edges.end()});
  for (std::uint32_t k = 1; k <= 2; ++k) {
    EXPECT_EQ(run_protocol(a, GatherView{}, k, 1).outputs[0], run_protocol(b, GatherView{}, k, 1).outputs[0]);
    EXPECT_EQ(run_protocol(a, FloodMax{}, k, 1).outputs[0], run_protocol(b, FloodMax{}, k, 1).outputs[0]);
  }
}
