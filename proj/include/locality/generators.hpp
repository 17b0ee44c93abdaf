#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

#include "locality/graph.hpp"

namespace locality {

/// splitmix64 finalizer; the fixed mixing function for deriving independent streams.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed of stream `index` under master seed `seed`. Depends on (seed, index) only.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) + index);
}

inline Graph path_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t v = 1; v < n; ++v) edges.emplace_back(v - 1, v);
  return Graph::from_edges(n, std::move(edges));
}

inline Graph cycle_graph(std::size_t n) {
  if (n < 3) throw std::invalid_argument("cycle needs at least 3 nodes");
  std::vector<Edge> edges;
  for (std::size_t v = 1; v < n; ++v) edges.emplace_back(v - 1, v);
  edges.emplace_back(0, n - 1);
  return Graph::from_edges(n, std::move(edges));
}

/// Center 0 with `leaves` leaves 1..leaves.
inline Graph star_graph(std::size_t leaves) {
  std::vector<Edge> edges;
  for (std::size_t v = 1; v <= leaves; ++v) edges.emplace_back(0, v);
  return Graph::from_edges(leaves + 1, std::move(edges));
}

inline Graph complete_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  return Graph::from_edges(n, std::move(edges));
}

/// Sides 0..a-1 and a..a+b-1.
inline Graph complete_bipartite_graph(std::size_t a, std::size_t b) {
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < a; ++u)
    for (std::size_t v = 0; v < b; ++v) edges.emplace_back(u, a + v);
  return Graph::from_edges(a + b, std::move(edges));
}

/// K_{m, sqrt(m)}; m must be a perfect square.
inline Graph kmm_graph(std::size_t m) {
  auto s = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(m))));
  if (s * s != m) throw std::invalid_argument("Kmm requires a perfect square m");
  return complete_bipartite_graph(m, s);
}

inline Graph gnp_graph(std::size_t n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(derive_seed(seed, 0));
  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (coin(rng)) edges.emplace_back(u, v);
  return Graph::from_edges(n, std::move(edges));
}

/// Random spanning tree (random attachment) plus independent extra edges with probability p.
inline Graph connected_random_graph(std::size_t n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(derive_seed(seed, 1));
  std::vector<node_id> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<Edge> edges;
  for (std::size_t i = 1; i < n; ++i) {
    std::uniform_int_distribution<std::size_t> pick(0, i - 1);
    edges.emplace_back(order[i], order[pick(rng)]);
  }
  std::bernoulli_distribution coin(p);
  std::vector<char> present(n * n, 0);
  for (auto [u, v] : edges) present[u * n + v] = present[v * n + u] = 1;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (!present[u * n + v] && coin(rng)) edges.emplace_back(u, v);
  return Graph::from_edges(n, std::move(edges));
}

/// Uniformly random renaming of node ids ("labeling chosen uniformly at random").
inline Graph random_relabel(const Graph& g, std::uint64_t seed) {
  std::vector<node_id> perm(g.node_count());
  std::iota(perm.begin(), perm.end(), 0);
  std::mt19937_64 rng(derive_seed(seed, 2));
  std::shuffle(perm.begin(), perm.end(), rng);
  return relabel_nodes(g, perm);
}

}  // namespace locality
