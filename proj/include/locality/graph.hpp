#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <deque>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace locality {

using node_id = std::uint32_t;
using edge_id = std::uint32_t;
using Edge = std::pair<node_id, node_id>;

inline constexpr std::uint32_t unreachable = std::numeric_limits<std::uint32_t>::max();

/// Immutable simple undirected graph in CSR form.
///
/// Edges are stored once with u < v and sorted lexicographically; an edge's id is
/// its rank in that order, so comparing ids compares the (min-id, max-id) pairs.
class Graph {
 public:
  Graph() = default;

  static Graph from_edges(std::size_t n, std::vector<Edge> edges,
                          std::optional<std::vector<std::int64_t>> labels = std::nullopt) {
    Graph g;
    g.n_ = n;
    for (auto& [u, v] : edges) {
      if (u >= n || v >= n) throw std::invalid_argument("edge endpoint out of range");
      if (u == v) throw std::invalid_argument("self-loop at node " + std::to_string(u));
      if (u > v) std::swap(u, v);
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
      throw std::invalid_argument("duplicate edge");
    }
    g.edges_ = std::move(edges);

    std::vector<std::uint32_t> degree(n, 0);
    for (auto [u, v] : g.edges_) {
      ++degree[u];
      ++degree[v];
    }
    g.offsets_.assign(n + 1, 0);
    for (std::size_t v = 0; v < n; ++v) g.offsets_[v + 1] = g.offsets_[v] + degree[v];
    g.adj_.resize(g.offsets_[n]);
    g.adj_edge_.resize(g.offsets_[n]);
    std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
    // Sorted edge order makes each neighbor list come out ascending: for node w the
    // entries with w as the larger endpoint arrive first (sorted by u), then those with
    // w as the smaller endpoint (sorted by v, all greater than w).
    for (edge_id e = 0; e < g.edges_.size(); ++e) {
      auto [u, v] = g.edges_[e];
      g.adj_[fill[v]] = u;
      g.adj_edge_[fill[v]++] = e;
    }
    for (edge_id e = 0; e < g.edges_.size(); ++e) {
      auto [u, v] = g.edges_[e];
      g.adj_[fill[u]] = v;
      g.adj_edge_[fill[u]++] = e;
    }
    if (labels) {
      if (labels->size() != n) throw std::invalid_argument("label vector size mismatch");
      g.labels_ = std::move(*labels);
    }
    return g;
  }

  std::size_t node_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }

  std::span<const node_id> neighbors(node_id v) const {
    return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
  }
  /// Edge ids aligned with neighbors(v).
  std::span<const edge_id> incident_edges(node_id v) const {
    return {adj_edge_.data() + offsets_[v], adj_edge_.data() + offsets_[v + 1]};
  }
  std::size_t degree(node_id v) const { return offsets_[v + 1] - offsets_[v]; }
  std::size_t max_degree() const {
    std::size_t d = 0;
    for (node_id v = 0; v < n_; ++v) d = std::max(d, degree(v));
    return d;
  }

  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(edge_id e) const { return edges_[e]; }

  std::optional<edge_id> edge_index(node_id u, node_id v) const {
    auto nb = neighbors(u);
    auto it = std::lower_bound(nb.begin(), nb.end(), v);
    if (it == nb.end() || *it != v) return std::nullopt;
    return adj_edge_[offsets_[u] + static_cast<std::size_t>(it - nb.begin())];
  }
  bool has_edge(node_id u, node_id v) const { return edge_index(u, v).has_value(); }

  bool has_labels() const { return !labels_.empty() || n_ == 0; }
  const std::vector<std::int64_t>& labels() const { return labels_; }
  std::optional<std::int64_t> label(node_id v) const {
    if (labels_.empty()) return std::nullopt;
    return labels_[v];
  }

  Graph with_labels(std::vector<std::int64_t> labels) const {
    if (labels.size() != n_) throw std::invalid_argument("label vector size mismatch");
    Graph g = *this;
    g.labels_ = std::move(labels);
    return g;
  }
  Graph without_labels() const {
    Graph g = *this;
    g.labels_.clear();
    return g;
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_ && a.labels_ == b.labels_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<std::size_t> offsets_{0};
  std::vector<node_id> adj_;
  std::vector<edge_id> adj_edge_;
  std::vector<Edge> edges_;
  std::vector<std::int64_t> labels_;
};

// ---------------------------------------------------------------------------
// Traversal

inline std::vector<std::uint32_t> bfs_distances(const Graph& g, node_id source,
                                                std::uint32_t max_depth = unreachable) {
  std::vector<std::uint32_t> dist(g.node_count(), unreachable);
  std::deque<node_id> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    node_id u = queue.front();
    queue.pop_front();
    if (dist[u] >= max_depth) continue;
    for (node_id w : g.neighbors(u)) {
      if (dist[w] == unreachable) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

/// Component index per node, numbered in order of smallest member.
inline std::vector<std::uint32_t> connected_components(const Graph& g) {
  std::vector<std::uint32_t> comp(g.node_count(), unreachable);
  std::uint32_t next = 0;
  std::vector<node_id> stack;
  for (node_id s = 0; s < g.node_count(); ++s) {
    if (comp[s] != unreachable) continue;
    comp[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      node_id u = stack.back();
      stack.pop_back();
      for (node_id w : g.neighbors(u)) {
        if (comp[w] == unreachable) {
          comp[w] = next;
          stack.push_back(w);
        }
      }
    }
    ++next;
  }
  return comp;
}

inline bool is_connected(const Graph& g) {
  if (g.node_count() == 0) return true;
  auto comp = connected_components(g);
  return std::all_of(comp.begin(), comp.end(), [](std::uint32_t c) { return c == 0; });
}

/// Subgraph induced by `nodes` (sorted, deduplicated); node i of the result is nodes[i].
inline Graph induced_subgraph(const Graph& g, std::vector<node_id> nodes) {
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  std::vector<std::uint32_t> index(g.node_count(), unreachable);
  for (std::uint32_t i = 0; i < nodes.size(); ++i) index[nodes[i]] = i;
  std::vector<Edge> edges;
  for (auto [u, v] : g.edges()) {
    if (index[u] != unreachable && index[v] != unreachable) edges.emplace_back(index[u], index[v]);
  }
  std::optional<std::vector<std::int64_t>> labels;
  if (!g.labels().empty()) {
    labels.emplace();
    for (node_id v : nodes) labels->push_back(g.labels()[v]);
  }
  return Graph::from_edges(nodes.size(), std::move(edges), std::move(labels));
}

inline bool induces_connected(const Graph& g, const std::vector<node_id>& nodes) {
  if (nodes.empty()) return false;
  return is_connected(induced_subgraph(g, nodes));
}

inline bool is_vertex_cover(const Graph& g, const std::vector<node_id>& cover) {
  std::vector<char> in(g.node_count(), 0);
  for (node_id v : cover) in.at(v) = 1;
  return std::all_of(g.edges().begin(), g.edges().end(),
                     [&](const Edge& e) { return in[e.first] || in[e.second]; });
}

inline bool is_dominating_set(const Graph& g, const std::vector<node_id>& set) {
  std::vector<char> dominated(g.node_count(), 0);
  for (node_id v : set) {
    dominated.at(v) = 1;
    for (node_id w : g.neighbors(v)) dominated[w] = 1;
  }
  return std::all_of(dominated.begin(), dominated.end(), [](char c) { return c != 0; });
}

inline bool is_independent_set(const Graph& g, const std::vector<node_id>& set) {
  std::vector<char> in(g.node_count(), 0);
  for (node_id v : set) in.at(v) = 1;
  return std::none_of(g.edges().begin(), g.edges().end(),
                      [&](const Edge& e) { return in[e.first] && in[e.second]; });
}

inline bool is_matching(const Graph& g, const std::vector<edge_id>& matching) {
  std::vector<char> used(g.node_count(), 0);
  for (edge_id e : matching) {
    auto [u, v] = g.edge(e);
    if (used[u] || used[v]) return false;
    used[u] = used[v] = 1;
  }
  return true;
}

/// Two-coloring per connected component (smallest node of a component gets side 0).
inline std::optional<std::vector<std::uint8_t>> bipartition(const Graph& g) {
  std::vector<std::uint8_t> side(g.node_count(), 2);
  std::vector<node_id> stack;
  for (node_id s = 0; s < g.node_count(); ++s) {
    if (side[s] != 2) continue;
    side[s] = 0;
    stack.push_back(s);
    while (!stack.empty()) {
      node_id u = stack.back();
      stack.pop_back();
      for (node_id w : g.neighbors(u)) {
        if (side[w] == 2) {
          side[w] = static_cast<std::uint8_t>(1 - side[u]);
          stack.push_back(w);
        } else if (side[w] == side[u]) {
          return std::nullopt;
        }
      }
    }
  }
  return side;
}

// ---------------------------------------------------------------------------
// Girth

namespace detail {

inline unsigned worker_count(unsigned requested, std::size_t work) {
  unsigned t = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(t, std::max<std::size_t>(work, 1)));
}

}  // namespace detail

/// Length of the shortest cycle if it is at most `limit`, otherwise nullopt.
///
/// One BFS per root; a non-tree edge (u, w) closes a walk of length
/// dist(u) + dist(w) + 1, and the minimum over all roots is exactly the girth. A
/// root's search stops once no shorter cycle can be found from the current layer.
inline std::optional<std::size_t> girth_up_to(const Graph& g, std::size_t limit,
                                              unsigned threads = 0) {
  const std::size_t n = g.node_count();
  if (limit < 3 || n < 3) return std::nullopt;
  std::atomic<std::size_t> best{limit + 1};
  unsigned workers = detail::worker_count(threads, n);

  auto search = [&](unsigned worker) {
    std::vector<std::uint32_t> dist(n, unreachable);
    std::vector<node_id> parent(n, 0);
    std::vector<node_id> touched;
    std::vector<node_id> queue;
    for (node_id root = worker; root < n; root += workers) {
      queue.clear();
      queue.push_back(root);
      dist[root] = 0;
      touched.push_back(root);
      for (std::size_t head = 0; head < queue.size(); ++head) {
        node_id u = queue[head];
        std::size_t current = best.load(std::memory_order_relaxed);
        if (2 * static_cast<std::size_t>(dist[u]) + 1 >= current) break;
        for (node_id w : g.neighbors(u)) {
          if (dist[w] == unreachable) {
            dist[w] = dist[u] + 1;
            parent[w] = u;
            touched.push_back(w);
            queue.push_back(w);
          } else if (w != parent[u] || u == root) {
            if (u == root) continue;  // root has no parent; its neighbors are all tree edges
            std::size_t len = static_cast<std::size_t>(dist[u]) + dist[w] + 1;
            std::size_t seen = best.load(std::memory_order_relaxed);
            while (len < seen && !best.compare_exchange_weak(seen, len)) {
            }
          }
        }
      }
      for (node_id v : touched) dist[v] = unreachable;
      touched.clear();
    }
  };

  if (workers == 1) {
    search(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(search, t);
  }
  std::size_t result = best.load();
  if (result > limit) return std::nullopt;
  return result;
}

/// Exact girth; nullopt stands for infinity (forests).
inline std::optional<std::size_t> girth(const Graph& g, unsigned threads = 0) {
  return girth_up_to(g, g.node_count(), threads);
}

// ---------------------------------------------------------------------------
// Transforms

/// One node per edge of g (in edge-id order); two nodes adjacent iff their edges share an endpoint.
inline Graph line_graph(const Graph& g) {
  std::vector<Edge> edges;
  for (node_id v = 0; v < g.node_count(); ++v) {
    auto inc = g.incident_edges(v);
    for (std::size_t a = 0; a < inc.size(); ++a) {
      for (std::size_t b = a + 1; b < inc.size(); ++b) edges.emplace_back(inc[a], inc[b]);
    }
  }
  return Graph::from_edges(g.edge_count(), std::move(edges));
}

/// Replaces every edge (u, v), u < v, by the path u - u_e - v_e - v where
/// u_e = n + 2e and v_e = n + 2e + 1.
inline Graph subdivide_for_cds(const Graph& g) {
  const std::size_t n = g.node_count();
  std::vector<Edge> edges;
  edges.reserve(3 * g.edge_count());
  for (edge_id e = 0; e < g.edge_count(); ++e) {
    auto [u, v] = g.edge(e);
    auto ue = static_cast<node_id>(n + 2 * e);
    auto ve = static_cast<node_id>(n + 2 * e + 1);
    edges.emplace_back(u, ue);
    edges.emplace_back(ue, ve);
    edges.emplace_back(v, ve);
  }
  return Graph::from_edges(n + 2 * g.edge_count(), std::move(edges));
}

/// Graph on `subset` (sorted, deduplicated) joining members at distance 1..d in g.
/// Node i of the result carries the original id subset[i] as its label.
inline Graph distance_power_graph(const Graph& g, std::vector<node_id> subset, std::uint32_t d) {
  if (subset.empty()) throw std::invalid_argument("distance_power_graph: empty subset");
  if (d == 0) throw std::invalid_argument("distance_power_graph: d must be positive");
  std::sort(subset.begin(), subset.end());
  subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
  std::vector<std::uint32_t> index(g.node_count(), unreachable);
  for (std::uint32_t i = 0; i < subset.size(); ++i) index.at(subset[i]) = i;

  std::vector<Edge> edges;
  std::vector<std::uint32_t> dist(g.node_count(), unreachable);
  std::vector<node_id> queue;
  for (std::uint32_t i = 0; i < subset.size(); ++i) {
    queue.assign(1, subset[i]);
    dist[subset[i]] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      node_id u = queue[head];
      if (dist[u] == d) continue;
      for (node_id w : g.neighbors(u)) {
        if (dist[w] != unreachable) continue;
        dist[w] = dist[u] + 1;
        queue.push_back(w);
        if (index[w] != unreachable && index[w] > i) edges.emplace_back(i, index[w]);
      }
    }
    for (node_id v : queue) dist[v] = unreachable;
  }
  std::vector<std::int64_t> labels(subset.begin(), subset.end());
  return Graph::from_edges(subset.size(), std::move(edges), std::move(labels));
}

/// Subgraph on the same nodes keeping only the listed edges.
inline Graph edge_subgraph(const Graph& g, const std::vector<edge_id>& keep) {
  std::vector<Edge> edges;
  edges.reserve(keep.size());
  for (edge_id e : keep) edges.push_back(g.edge(e));
  std::optional<std::vector<std::int64_t>> labels;
  if (!g.labels().empty()) labels = g.labels();
  return Graph::from_edges(g.node_count(), std::move(edges), std::move(labels));
}

/// Renames node v to perm[v].
inline Graph relabel_nodes(const Graph& g, const std::vector<node_id>& perm) {
  if (perm.size() != g.node_count()) throw std::invalid_argument("permutation size mismatch");
  std::vector<Edge> edges;
  edges.reserve(g.edge_count());
  for (auto [u, v] : g.edges()) edges.emplace_back(perm[u], perm[v]);
  std::optional<std::vector<std::int64_t>> labels;
  if (!g.labels().empty()) {
    labels.emplace(g.node_count());
    for (node_id v = 0; v < g.node_count(); ++v) (*labels)[perm[v]] = g.labels()[v];
  }
  return Graph::from_edges(g.node_count(), std::move(edges), std::move(labels));
}

}  // namespace locality
