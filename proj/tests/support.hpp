#pragma once

// Independent reference implementations for tests: plain subset enumeration and
// textbook definitions, sharing no code with the solvers under test.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "locality/generators.hpp"
#include "locality/graph.hpp"
#include "locality/lp.hpp"

namespace testing_support {

using locality::Graph;
using locality::node_id;

inline std::vector<std::vector<bool>> adjacency(const Graph& g) {
  std::vector<std::vector<bool>> a(g.node_count(), std::vector<bool>(g.node_count(), false));
  for (auto [u, v] : g.edges()) a[u][v] = a[v][u] = true;
  return a;
}

inline std::vector<node_id> members(std::uint32_t mask) {
  std::vector<node_id> out;
  for (node_id v = 0; v < 32; ++v)
    if (mask >> v & 1u) out.push_back(v);
  return out;
}

inline bool covers(const Graph& g, std::uint32_t s) {
  for (auto [u, v] : g.edges())
    if (!(s >> u & 1u) && !(s >> v & 1u)) return false;
  return true;
}

inline bool dominates(const Graph& g, std::uint32_t s) {
  auto a = adjacency(g);
  for (node_id v = 0; v < g.node_count(); ++v) {
    bool ok = s >> v & 1u;
    for (node_id w = 0; w < g.node_count() && !ok; ++w) ok = (s >> w & 1u) && a[v][w];
    if (!ok) return false;
  }
  return true;
}

inline bool connected_subset(const Graph& g, std::uint32_t s) {
  if (s == 0) return false;
  auto a = adjacency(g);
  std::uint32_t seen = s & (~s + 1);
  for (bool grew = true; grew;) {
    grew = false;
    for (node_id u = 0; u < g.node_count(); ++u) {
      if (!(seen >> u & 1u)) continue;
      for (node_id w = 0; w < g.node_count(); ++w) {
        if ((s >> w & 1u) && !(seen >> w & 1u) && a[u][w]) {
          seen |= 1u << w;
          grew = true;
        }
      }
    }
  }
  return seen == s;
}

template <class Pred>
std::size_t min_subset(const Graph& g, Pred ok) {
  const std::uint32_t n = static_cast<std::uint32_t>(g.node_count());
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for (std::uint32_t s = 0; s < (1u << n); ++s) {
    auto c = static_cast<std::size_t>(__builtin_popcount(s));
    if (c < best && ok(s)) best = c;
  }
  return best;
}

inline std::size_t brute_mvc(const Graph& g) {
  return min_subset(g, [&](std::uint32_t s) { return covers(g, s); });
}

inline std::size_t brute_mds(const Graph& g) {
  return min_subset(g, [&](std::uint32_t s) { return dominates(g, s); });
}

/// Minimum connected dominating set; a single node when n <= 2.
inline std::size_t brute_mcds(const Graph& g) {
  if (g.node_count() == 0) return 0;
  return min_subset(g, [&](std::uint32_t s) { return dominates(g, s) && connected_subset(g, s); });
}

/// Maximum matching: the lowest unmatched node is either left single or matched to
/// each free neighbor in turn.
inline std::size_t brute_matching_from(const std::vector<std::vector<bool>>& a, std::uint32_t used) {
  const auto n = static_cast<node_id>(a.size());
  node_id u = 0;
  while (u < n && (used >> u & 1u)) ++u;
  if (u == n) return 0;
  std::size_t best = brute_matching_from(a, used | 1u << u);
  for (node_id w = u + 1; w < n; ++w) {
    if (a[u][w] && !(used >> w & 1u)) best = std::max(best, 1 + brute_matching_from(a, used | 1u << u | 1u << w));
  }
  return best;
}

inline std::size_t brute_matching(const Graph& g) { return brute_matching_from(adjacency(g), 0); }

/// Minimum edge dominating set: edges that touch every edge (m <= 20).
inline std::size_t brute_edge_dominating_set(const Graph& g) {
  const auto m = g.edge_count();
  std::size_t best = m;
  for (std::uint32_t s = 0; s < (1u << m); ++s) {
    auto c = static_cast<std::size_t>(__builtin_popcount(s));
    if (c >= best) continue;
    std::uint32_t touched = 0;
    for (std::uint32_t e = 0; e < m; ++e) {
      if (s >> e & 1u) touched |= (1u << g.edge(e).first) | (1u << g.edge(e).second);
    }
    bool ok = true;
    for (auto [u, v] : g.edges()) ok = ok && ((touched >> u & 1u) || (touched >> v & 1u));
    if (ok) best = c;
  }
  return best;
}

/// Girth by removing each edge and measuring the shortest detour between its endpoints.
inline std::optional<std::size_t> brute_girth(const Graph& g) {
  std::optional<std::size_t> best;
  auto a = adjacency(g);
  for (auto [u, v] : g.edges()) {
    std::vector<int> dist(g.node_count(), -1);
    std::deque<node_id> q{u};
    dist[u] = 0;
    while (!q.empty()) {
      node_id x = q.front();
      q.pop_front();
      for (node_id w = 0; w < g.node_count(); ++w) {
        if (!a[x][w] || dist[w] >= 0) continue;
        if ((x == u && w == v) || (x == v && w == u)) continue;
        dist[w] = dist[x] + 1;
        q.push_back(w);
      }
    }
    if (dist[v] > 0) {
      auto len = static_cast<std::size_t>(dist[v]) + 1;
      if (!best || len < *best) best = len;
    }
  }
  return best;
}

/// Fixed corpus of small graphs: named shapes plus G(n,p) samples with n <= 12.
inline std::vector<Graph> small_corpus(std::size_t count = 220) {
  using namespace locality;
  std::vector<Graph> out{path_graph(1), path_graph(2), path_graph(5), cycle_graph(3), cycle_graph(6),
                         star_graph(5), complete_graph(5), complete_bipartite_graph(3, 4), Graph::from_edges(4, {})};
  for (std::uint64_t s = 0; out.size() < count; ++s) {
    std::size_t n = 3 + s % 10;
    double p = 0.15 + 0.1 * static_cast<double>(s % 6);
    out.push_back(gnp_graph(n, p, 1000 + s));
  }
  return out;
}

/// Random covering LP: each row gets 1..max_row random columns, uncovered columns are
/// attached to a random row; coefficients in {1, 2, 3, 1/2}, b and c in 1..4.
inline locality::CanonicalLP random_covering_lp(std::size_t np, std::size_t nd, std::size_t max_row,
                                                std::uint64_t seed, bool zero_one = false) {
  using namespace locality;
  std::mt19937_64 rng(seed);
  auto pick = [&](std::size_t n) { return static_cast<std::uint32_t>(std::uniform_int_distribution<std::size_t>(0, n - 1)(rng)); };
  const Rational coeffs[] = {Rational(1), Rational(2), Rational(3), Rational(1, 2)};
  CanonicalLP lp;
  for (std::size_t i = 0; i < np; ++i) lp.c.push_back(Rational(1 + static_cast<long>(pick(4))));
  for (std::size_t j = 0; j < nd; ++j) lp.b.push_back(zero_one ? Rational(1) : Rational(1 + static_cast<long>(pick(4))));
  std::vector<std::vector<char>> used(nd, std::vector<char>(np, 0));
  std::vector<char> col_used(np, 0);
  auto add = [&](std::uint32_t row, std::uint32_t col) {
    if (used[row][col]) return;
    used[row][col] = col_used[col] = 1;
    lp.entries.push_back({row, col, zero_one ? Rational(1) : coeffs[pick(4)]});
  };
  for (std::uint32_t j = 0; j < nd; ++j) {
    std::size_t len = 1 + pick(max_row);
    for (std::size_t t = 0; t < len; ++t) add(j, pick(np));
  }
  for (std::uint32_t i = 0; i < np; ++i)
    if (!col_used[i]) add(pick(nd), i);
  lp.normalize();
  return lp;
}

}  // namespace testing_support
