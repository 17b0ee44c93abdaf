#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "locality/engine.hpp"
#include "locality/error.hpp"
#include "locality/graph.hpp"
#include "locality/lp_local.hpp"

namespace locality {

/// Edges of g kept by the short-cycle filter: edge e = (u, v) is dropped iff u and v
/// are joined by a path of at most 2k-1 edges that all have smaller ids than e, i.e.
/// e is the heaviest edge of a cycle of length <= 2k. All tests run on the original
/// graph, so the result does not depend on evaluation order. Edge ids order edges by
/// their (min id, max id) pair.
inline std::vector<edge_id> sparse_spanning_subgraph(const Graph& g, std::uint32_t k, unsigned threads = 1) {
  if (k == 0) throw std::invalid_argument("sparse_spanning_subgraph: k must be positive");
  if (!is_connected(g)) throw Disconnected("sparse_spanning_subgraph requires a connected graph");
  const std::size_t m = g.edge_count();
  std::vector<char> keep(m, 1);
  const std::uint32_t limit = 2 * k - 1;
  unsigned workers = detail::worker_count(threads, m);

  auto test = [&](unsigned worker) {
    std::vector<std::uint32_t> dist(g.node_count(), unreachable);
    std::vector<node_id> queue;
    for (edge_id e = worker; e < m; e += workers) {
      auto [u, v] = g.edge(e);
      queue.assign(1, u);
      dist[u] = 0;
      bool found = false;
      for (std::size_t h = 0; h < queue.size() && !found; ++h) {
        node_id x = queue[h];
        if (dist[x] == limit) continue;
        auto nb = g.neighbors(x);
        auto ids = g.incident_edges(x);
        for (std::size_t i = 0; i < nb.size(); ++i) {
          if (ids[i] >= e || dist[nb[i]] != unreachable) continue;
          dist[nb[i]] = dist[x] + 1;
          if (nb[i] == v) {
            found = true;
            break;
          }
          queue.push_back(nb[i]);
        }
      }
      for (node_id x : queue) dist[x] = unreachable;
      dist[v] = unreachable;
      if (found) keep[e] = 0;
    }
  };
  if (workers <= 1) {
    test(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(test, t);
  }
  std::vector<edge_id> kept;
  for (edge_id e = 0; e < m; ++e)
    if (keep[e]) kept.push_back(e);
  return kept;
}

/// n + n^(1 + 2/(k-1)) for k >= 2: a concrete edge bound for graphs of girth >= 2k+1.
inline std::optional<double> sparse_edge_bound(std::size_t n, std::uint32_t k) {
  if (k < 2) return std::nullopt;
  double nn = static_cast<double>(n);
  return nn + std::pow(nn, 1.0 + 2.0 / (k - 1));
}

namespace detail {

/// Interior nodes of the lexicographically smallest shortest path from a to b.
inline std::vector<node_id> shortest_path_interior(const Graph& g, node_id a, node_id b) {
  auto dist = bfs_distances(g, b);
  if (dist[a] == unreachable) throw Disconnected("no path between dominating set members");
  std::vector<node_id> inner;
  node_id cur = a;
  while (dist[cur] > 1) {
    for (node_id w : g.neighbors(cur)) {
      if (dist[w] + 1 == dist[cur]) {
        cur = w;
        break;
      }
    }
    inner.push_back(cur);
  }
  return inner;
}

inline std::vector<node_id> normalized_set(std::vector<node_id> s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

}  // namespace detail

/// Extends a dominating set D of a connected graph to a connected dominating set by
/// adding the interior of a shortest path for every edge of a BFS spanning tree of
/// G_D (members at distance <= 3), rooted at the smallest member. |D'| <= 3|D| - 2.
inline std::vector<node_id> connect_dominating_set(const Graph& g, std::vector<node_id> dom) {
  dom = detail::normalized_set(std::move(dom));
  if (!is_dominating_set(g, dom)) throw NotDominating("input set does not dominate the graph");
  if (!is_connected(g)) throw Disconnected("connect_dominating_set requires a connected graph");
  if (dom.size() <= 1) return dom;
  Graph gd = distance_power_graph(g, dom, 3);
  std::vector<node_id> parent(gd.node_count(), unreachable);
  std::vector<node_id> queue{0};
  parent[0] = 0;
  std::vector<node_id> out = dom;
  for (std::size_t h = 0; h < queue.size(); ++h) {
    node_id x = queue[h];
    for (node_id w : gd.neighbors(x)) {
      if (parent[w] != unreachable) continue;
      parent[w] = x;
      queue.push_back(w);
      auto inner = detail::shortest_path_interior(g, dom[x], dom[w]);
      out.insert(out.end(), inner.begin(), inner.end());
    }
  }
  if (queue.size() != gd.node_count()) throw Disconnected("distance-3 graph of the dominating set is disconnected");
  return detail::normalized_set(std::move(out));
}

struct McdsResult {
  std::vector<node_id> dominating_set;  // D from the dominating set pipeline
  std::vector<node_id> connected_set;   // D'
  std::size_t gd_edges = 0;             // edges of G_D
  std::size_t kept_edges = 0;           // edges of G_D left by the short-cycle filter
  MdsResult mds;
};

/// Dominating set pipeline, then the short-cycle filter with parameter k on G_D, then
/// shortest-path connectors for every kept G_D edge.
inline McdsResult mcds_pipeline(const Graph& g, std::uint32_t k, std::size_t ell, double p, std::uint32_t R,
                                double lambda, std::uint64_t seed, EngineOptions opts = {}) {
  if (!is_connected(g)) throw Disconnected("mcds_pipeline requires a connected graph");
  McdsResult res;
  res.mds = mds_pipeline(g, ell, p, R, lambda, seed, opts);
  res.dominating_set = res.mds.dominating_set;
  if (res.dominating_set.size() <= 1) {
    res.connected_set = res.dominating_set;
    return res;
  }
  Graph gd = distance_power_graph(g, res.dominating_set, 3);
  res.gd_edges = gd.edge_count();
  auto kept = sparse_spanning_subgraph(gd, k, opts.threads);
  res.kept_edges = kept.size();
  std::vector<node_id> out = res.dominating_set;
  for (edge_id e : kept) {
    auto [a, b] = gd.edge(e);
    auto inner = detail::shortest_path_interior(g, res.dominating_set[a], res.dominating_set[b]);
    out.insert(out.end(), inner.begin(), inner.end());
  }
  res.connected_set = detail::normalized_set(std::move(out));
  return res;
}

}  // namespace locality
