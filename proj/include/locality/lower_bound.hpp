#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "locality/error.hpp"
#include "locality/generators.hpp"
#include "locality/graph.hpp"
#include "locality/rational.hpp"
#include "locality/view_tree.hpp"

namespace locality {

// ---------------------------------------------------------------------------
// Degree sequences

using DeltaSequence = std::vector<std::uint64_t>;

/// delta_i = 2^(i(i-1)/2) * delta^i for i = 0..k+1.
inline DeltaSequence delta_sequence(std::uint64_t delta, std::uint32_t k) {
  if (delta < 1) throw std::invalid_argument("delta_sequence: delta must be positive");
  DeltaSequence out;
  BigInt limit = BigInt(std::numeric_limits<std::uint64_t>::max());
  for (std::uint32_t i = 0; i <= k + 1; ++i) {
    BigInt v = ipow(2, static_cast<unsigned long>(i) * (i == 0 ? 0 : i - 1) / 2) * ipow(BigInt(delta), i);
    if (v > limit) throw std::overflow_error("delta_sequence: value exceeds 64 bits");
    out.push_back(v.get_ui());
  }
  return out;
}

inline void validate_deltas(const DeltaSequence& d, std::uint32_t k) {
  if (d.size() < static_cast<std::size_t>(k) + 2) {
    throw std::invalid_argument("delta sequence needs k+2 entries (delta_0..delta_{k+1})");
  }
  if (d[0] < 1) throw std::invalid_argument("delta sequence entries must be positive");
  for (std::size_t i = 1; i < d.size(); ++i) {
    if (d[i] <= d[i - 1]) throw std::invalid_argument("delta sequence must be strictly increasing");
  }
}

// ---------------------------------------------------------------------------
// Cluster tree

struct Cluster {
  std::uint32_t id = 0;
  std::uint32_t level = 0;
  std::uint32_t depth = 0;
  BigInt size;
  std::optional<std::uint32_t> parent;
};

/// Parent -> child arc with label (delta_link, delta_{link+1}): every parent node has
/// delta_link neighbors in the child cluster, every child node delta_{link+1} in the parent.
struct ClusterArc {
  std::uint32_t parent;
  std::uint32_t child;
  std::uint32_t link;
};

/// Per cluster: (adjacent cluster, number of neighbors a node has there).
using ClusterLinks = std::vector<std::vector<std::pair<std::uint32_t, std::uint64_t>>>;

struct ClusterTree {
  std::uint32_t k = 0;
  DeltaSequence deltas;
  BigInt n0;
  std::vector<Cluster> clusters;
  std::vector<ClusterArc> arcs;

  std::pair<std::uint64_t, std::uint64_t> label(const ClusterArc& a) const {
    return {deltas[a.link], deltas[a.link + 1]};
  }

  ClusterLinks links() const {
    ClusterLinks out(clusters.size());
    for (const auto& a : arcs) {
      auto [dc, dd] = label(a);
      out[a.parent].emplace_back(a.child, dc);
      out[a.child].emplace_back(a.parent, dd);
    }
    return out;
  }

  BigInt total_size() const {
    BigInt s = 0;
    for (const auto& c : clusters) s += c.size;
    return s;
  }

  /// Sizes of the two level-parity classes (even, odd).
  std::pair<BigInt, BigInt> partition_sizes() const {
    BigInt even = 0, odd = 0;
    for (const auto& c : clusters) (c.level % 2 == 0 ? even : odd) += c.size;
    return {even, odd};
  }
};

namespace detail {

/// Cluster structure with sizes relative to |C_0| = 1.
struct TreeShape {
  std::vector<Cluster> clusters;
  std::vector<ClusterArc> arcs;
  std::vector<Rational> ratio;
};

inline TreeShape cluster_tree_shape(std::uint32_t k, const DeltaSequence& deltas) {
  TreeShape s;
  std::vector<std::uint32_t> degree;
  auto add = [&](std::optional<std::uint32_t> parent, std::uint32_t link) {
    Cluster c;
    c.id = static_cast<std::uint32_t>(s.clusters.size());
    c.parent = parent;
    degree.push_back(0);
    if (parent) {
      c.level = s.clusters[*parent].level + 1;
      s.arcs.push_back({*parent, c.id, link});
      ++degree[*parent];
      ++degree[c.id];
      s.ratio.push_back(s.ratio[*parent] * Rational(BigInt(deltas[link]), BigInt(deltas[link + 1])));
    } else {
      s.ratio.push_back(Rational(1));
    }
    s.clusters.push_back(c);
  };
  add(std::nullopt, 0);  // C0
  add(0u, 0);            // C1
  add(0u, 1);            // C2
  add(1u, 0);            // C3
  for (std::uint32_t j = 2; j <= k; ++j) {
    const std::size_t existing = s.clusters.size();
    std::vector<std::uint32_t> parent_link(existing, 0);
    for (const auto& a : s.arcs) parent_link[a.child] = a.link;
    std::vector<std::uint32_t> deg(degree.begin(), degree.begin() + static_cast<long>(existing));
    for (std::uint32_t c = 0; c < existing; ++c) {
      if (deg[c] >= 2) {
        add(c, j);
      } else {
        for (std::uint32_t m = 0; m <= j; ++m) {
          if (m != parent_link[c] + 1) add(c, m);
        }
      }
    }
  }
  // depth = height of the subtree below each cluster
  for (std::size_t i = s.clusters.size(); i-- > 0;) {
    const auto& c = s.clusters[i];
    if (c.parent) {
      auto& p = s.clusters[*c.parent];
      p.depth = std::max(p.depth, c.depth + 1);
    }
  }
  return s;
}

inline BigInt lcm(const BigInt& a, const BigInt& b) {
  BigInt out;
  mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

}  // namespace detail

/// Smallest n0 for which every cluster size is an integer and every arc splits into
/// complete bipartite blocks (parent size divisible by delta_{l+1}, child by delta_l).
/// For sequences of powers of two this is the smallest feasible power of two.
inline BigInt auto_n0(std::uint32_t k, const DeltaSequence& deltas) {
  validate_deltas(deltas, k);
  auto shape = detail::cluster_tree_shape(k, deltas);
  BigInt n0 = 1;
  for (const auto& r : shape.ratio) n0 = detail::lcm(n0, r.get_den());
  for (const auto& a : shape.arcs) {
    Rational p = shape.ratio[a.parent] / Rational(BigInt(deltas[a.link + 1]));
    Rational c = shape.ratio[a.child] / Rational(BigInt(deltas[a.link]));
    p.canonicalize();
    c.canonicalize();
    n0 = detail::lcm(n0, p.get_den());
    n0 = detail::lcm(n0, c.get_den());
  }
  return n0;
}

/// Cluster tree CT_k with |C_0| = n0 (chosen by auto_n0 when absent). Clusters are
/// numbered in creation order: C_0..C_3 as in CT_1, then per expansion step the new
/// leaves of each existing cluster in cluster order.
inline ClusterTree build_cluster_tree(std::uint32_t k, const DeltaSequence& deltas,
                                      std::optional<BigInt> n0 = std::nullopt) {
  if (k < 1) throw std::invalid_argument("build_cluster_tree: k must be at least 1");
  validate_deltas(deltas, k);
  ClusterTree ct;
  ct.k = k;
  ct.deltas = DeltaSequence(deltas.begin(), deltas.begin() + k + 2);
  ct.n0 = n0 ? *n0 : auto_n0(k, ct.deltas);
  if (ct.n0 <= 0) throw NonIntegralSizes("n0 must be positive");
  auto shape = detail::cluster_tree_shape(k, ct.deltas);
  ct.clusters = std::move(shape.clusters);
  ct.arcs = std::move(shape.arcs);
  for (std::size_t i = 0; i < ct.clusters.size(); ++i) {
    Rational size = shape.ratio[i] * Rational(ct.n0);
    size.canonicalize();
    if (!is_integer(size) || size <= 0) {
      throw NonIntegralSizes("cluster " + std::to_string(i) + " would have size " + to_string(size));
    }
    ct.clusters[i].size = size.get_num();
  }
  for (const auto& a : ct.arcs) {
    auto [dc, dd] = ct.label(a);
    if (ct.clusters[a.child].size < BigInt(dc) || ct.clusters[a.parent].size < BigInt(dd)) {
      throw NonIntegralSizes("clusters " + std::to_string(a.parent) + " and " + std::to_string(a.child) +
                             " are too small for their link");
    }
  }
  return ct;
}

/// Exact check of n <= n0 * delta / (delta - 2), for delta > 2.
inline bool node_count_within_bound(const BigInt& n, const BigInt& n0, std::uint64_t delta) {
  if (delta <= 2) return false;
  return Rational(n) <= Rational(n0 * BigInt(delta), BigInt(delta - 2));
}

/// 2^(4k^3 + 4k) * delta^(4k^2).
inline BigInt boosted_node_bound(std::uint32_t k, std::uint64_t delta) {
  unsigned long kk = k;
  return ipow(2, 4 * kk * kk * kk + 4 * kk) * ipow(BigInt(delta), 4 * kk * kk);
}

// ---------------------------------------------------------------------------
// Naive instantiation

struct SizeBudget {
  std::size_t max_nodes = 4'000'000;
};

/// Nodes of each cluster get consecutive ids in cluster order; labels are cluster ids.
/// Each arc is realized by complete bipartite blocks K_{delta_{l+1}, delta_l} over a
/// seeded shuffle of both clusters, or by a circulant pattern when the sizes do not
/// split into blocks.
inline Graph instantiate_naive(const ClusterTree& ct, std::uint64_t seed, SizeBudget budget = {}) {
  BigInt total = ct.total_size();
  if (total > BigInt(static_cast<unsigned long>(budget.max_nodes))) {
    throw SizeGuard("naive instance would have " + total.get_str() + " nodes");
  }
  std::vector<node_id> first(ct.clusters.size() + 1, 0);
  for (std::size_t i = 0; i < ct.clusters.size(); ++i) {
    first[i + 1] = first[i] + static_cast<node_id>(ct.clusters[i].size.get_ui());
  }
  std::vector<std::int64_t> labels(first.back());
  for (std::size_t i = 0; i < ct.clusters.size(); ++i)
    for (node_id v = first[i]; v < first[i + 1]; ++v) labels[v] = static_cast<std::int64_t>(i);

  std::mt19937_64 rng(derive_seed(seed, 3));
  std::vector<Edge> edges;
  for (const auto& a : ct.arcs) {
    auto [dc, dd] = ct.label(a);
    std::size_t pc = first[a.parent + 1] - first[a.parent];
    std::size_t cc = first[a.child + 1] - first[a.child];
    std::vector<node_id> pm(pc), cm(cc);
    std::iota(pm.begin(), pm.end(), first[a.parent]);
    std::iota(cm.begin(), cm.end(), first[a.child]);
    if (pc % dd == 0 && cc % dc == 0) {
      std::shuffle(pm.begin(), pm.end(), rng);
      std::shuffle(cm.begin(), cm.end(), rng);
      std::size_t groups = pc / dd;
      for (std::size_t g = 0; g < groups; ++g)
        for (std::size_t x = 0; x < dd; ++x)
          for (std::size_t y = 0; y < dc; ++y) edges.emplace_back(pm[g * dd + x], cm[g * dc + y]);
    } else {
      // Parent i takes the dc consecutive children starting at i*dc (mod |child|);
      // the pairs (i, t) enumerate 0..pc*dc-1, so every child is hit dd times.
      for (std::size_t i = 0; i < pc; ++i)
        for (std::size_t t = 0; t < dc; ++t) edges.emplace_back(pm[i], cm[(i * dc + t) % cc]);
    }
  }
  return Graph::from_edges(first.back(), std::move(edges), std::move(labels));
}

/// First violation of the cluster degree pattern, if any: every node labeled C must have
/// exactly links[C] neighbors in each adjacent cluster and none elsewhere.
inline std::optional<std::string> cluster_degree_violation(const Graph& g, const ClusterLinks& links) {
  if (g.labels().empty()) return "graph carries no cluster labels";
  std::map<std::int64_t, std::uint64_t> count;
  for (node_id v = 0; v < g.node_count(); ++v) {
    count.clear();
    for (node_id w : g.neighbors(v)) ++count[g.labels()[w]];
    auto c = static_cast<std::size_t>(g.labels()[v]);
    if (c >= links.size()) return "node " + std::to_string(v) + " has unknown cluster";
    std::map<std::int64_t, std::uint64_t> want;
    for (auto [d, m] : links[c]) want[d] += m;
    if (count != want) {
      return "node " + std::to_string(v) + " in cluster " + std::to_string(c) + " has the wrong cluster degrees";
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// D(r, q)

using FieldVector = std::vector<std::uint32_t>;

inline bool is_prime(std::uint64_t q) {
  if (q < 2) return false;
  for (std::uint64_t d = 2; d * d <= q; ++d)
    if (q % d == 0) return false;
  return true;
}

inline std::uint64_t next_prime(std::uint64_t m) {
  std::uint64_t q = std::max<std::uint64_t>(m, 2);
  while (!is_prime(q)) ++q;
  return q;
}

namespace detail {

/// Incidence equation j >= 1 reads l_j - p_j = l[a] * p[b]; returns (a, b).
/// Coordinates are ordered (x_1, x_11, x_12, x_21, x_22, x'_22, x_23, x_32, x_33, ...),
/// i.e. for i >= 2 the block (x_ii, x'_ii, x_i,i+1, x_i+1,i) starts at index 4(i-1).
inline std::pair<std::size_t, std::size_t> incidence_terms(std::size_t j) {
  switch (j) {
    case 1: return {0, 0};
    case 2: return {1, 0};
    case 3: return {0, 1};
    default: break;
  }
  std::size_t i = j / 4 + 1;
  std::size_t base = 4 * (i - 1);
  std::size_t prev = 4 * (i - 2);
  switch (j - base) {
    case 0: return {0, prev + 2};  // l_ii - p_ii = l_1 p_{i-1,i}
    case 1: return {prev + 3, 0};  // l'_ii - p'_ii = l_{i,i-1} p_1
    case 2: return {base, 0};      // l_{i,i+1} - p_{i,i+1} = l_ii p_1
    default: return {0, base + 1}; // l_{i+1,i} - p_{i+1,i} = l_1 p'_ii
  }
}

inline void check_dq(std::size_t r, std::uint64_t q) {
  if (r < 2) throw std::invalid_argument("D(r,q): r must be at least 2");
  if (!is_prime(q)) throw std::invalid_argument("D(r,q): q must be prime");
}

}  // namespace detail

enum class DqSide { point, line };

/// The unique neighbor of v (on the other side) whose first coordinate is `first`.
inline FieldVector dq_unique_neighbor(const FieldVector& v, std::uint32_t first, DqSide side, std::uint64_t q) {
  detail::check_dq(v.size(), q);
  if (first >= q) throw std::invalid_argument("coordinate outside the field");
  FieldVector out(v.size());
  out[0] = first;
  for (std::size_t j = 1; j < v.size(); ++j) {
    auto [a, b] = detail::incidence_terms(j);
    if (side == DqSide::point) {
      // v = (p), solve for [l]: l_j = p_j + l_a p_b
      out[j] = static_cast<std::uint32_t>((v[j] + static_cast<std::uint64_t>(out[a]) * v[b]) % q);
    } else {
      // v = [l], solve for (p): p_j = l_j - l_a p_b
      std::uint64_t prod = static_cast<std::uint64_t>(v[a]) * out[b] % q;
      out[j] = static_cast<std::uint32_t>((v[j] + q - prod) % q);
    }
  }
  return out;
}

inline bool dq_adjacent(const FieldVector& p, const FieldVector& l, std::uint64_t q) {
  for (std::size_t j = 1; j < p.size(); ++j) {
    auto [a, b] = detail::incidence_terms(j);
    std::uint64_t lhs = (l[j] + q - p[j]) % q;
    if (lhs != static_cast<std::uint64_t>(l[a]) * p[b] % q) return false;
  }
  return true;
}

/// Index of a vector with the first coordinate most significant.
inline std::uint64_t dq_index(const FieldVector& v, std::uint64_t q) {
  std::uint64_t x = 0;
  for (auto c : v) x = x * q + c;
  return x;
}

inline FieldVector dq_vector(std::uint64_t index, std::size_t r, std::uint64_t q) {
  FieldVector v(r);
  for (std::size_t i = r; i-- > 0;) {
    v[i] = static_cast<std::uint32_t>(index % q);
    index /= q;
  }
  return v;
}

/// D(r, q): points are nodes 0..q^r-1, lines q^r..2q^r-1, numbered by dq_index.
inline Graph dq_graph(std::size_t r, std::uint64_t q, SizeBudget budget = {}) {
  detail::check_dq(r, q);
  BigInt count = 2 * ipow(BigInt(q), r);
  if (count > BigInt(static_cast<unsigned long>(budget.max_nodes))) {
    throw SizeGuard("D(" + std::to_string(r) + "," + std::to_string(q) + ") would have " + count.get_str() + " nodes");
  }
  std::uint64_t half = count.get_ui() / 2;
  std::vector<Edge> edges;
  edges.reserve(half * q);
  for (std::uint64_t x = 0; x < half; ++x) {
    FieldVector p = dq_vector(x, r, q);
    for (std::uint32_t l1 = 0; l1 < q; ++l1) {
      auto l = dq_unique_neighbor(p, l1, DqSide::point, q);
      edges.emplace_back(static_cast<node_id>(x), static_cast<node_id>(half + dq_index(l, q)));
    }
  }
  return Graph::from_edges(2 * half, std::move(edges));
}

struct BoostInfo {
  std::uint64_t q = 0;
  std::size_t r = 0;
  std::size_t m = 0;  // larger partition size of the naive graph
};

/// High-girth instance from a naive instance with cluster labels and a 2-coloring
/// `side` (0 = point side). Nodes are labeled injectively within each side by their
/// rank; a naive node u becomes the q^(r-1) vectors whose first coordinate is c(u),
/// and a D(r,q) edge survives iff the naive nodes behind the first coordinates are
/// adjacent. Output node u * q^(r-1) + rest carries u's label.
inline Graph girth_boost(const Graph& naive, const std::vector<std::uint8_t>& side, std::uint32_t k,
                         BoostInfo* info = nullptr, SizeBudget budget = {}) {
  if (k < 2) throw std::invalid_argument("girth_boost: k must be at least 2");
  if (side.size() != naive.node_count()) throw std::invalid_argument("girth_boost: side vector size mismatch");
  for (auto [u, v] : naive.edges()) {
    if (side[u] == side[v]) throw std::invalid_argument("girth_boost: coloring is not proper");
  }
  std::vector<std::uint32_t> rank(naive.node_count());
  std::vector<std::vector<node_id>> by_label(2);
  for (node_id v = 0; v < naive.node_count(); ++v) {
    rank[v] = static_cast<std::uint32_t>(by_label[side[v]].size());
    by_label[side[v]].push_back(v);
  }
  std::size_t m = std::max(by_label[0].size(), by_label[1].size());
  std::uint64_t q = next_prime(m);
  std::size_t r = std::max<std::size_t>(3, 2 * k - 3);
  BigInt block = ipow(BigInt(q), r - 1);
  BigInt total = block * BigInt(static_cast<unsigned long>(naive.node_count()));
  if (total > BigInt(static_cast<unsigned long>(budget.max_nodes))) {
    throw SizeGuard("boosted instance would have " + total.get_str() + " nodes");
  }
  if (info) *info = {q, r, m};
  const std::uint64_t per = block.get_ui();

  std::vector<Edge> edges;
  std::size_t edge_total = 0;
  for (node_id u = 0; u < naive.node_count(); ++u)
    if (side[u] == 0) edge_total += naive.degree(u);
  edges.reserve(edge_total * per);
  FieldVector p(r);
  for (node_id u : by_label[0]) {
    for (std::uint64_t rest = 0; rest < per; ++rest) {
      FieldVector tail = dq_vector(rest, r - 1, q);
      p[0] = rank[u];
      std::copy(tail.begin(), tail.end(), p.begin() + 1);
      for (node_id v : naive.neighbors(u)) {
        auto l = dq_unique_neighbor(p, rank[v], DqSide::point, q);
        std::uint64_t lrest = dq_index(l, q) - static_cast<std::uint64_t>(l[0]) * per;
        edges.emplace_back(static_cast<node_id>(u * per + rest), static_cast<node_id>(v * per + lrest));
      }
    }
  }
  std::optional<std::vector<std::int64_t>> labels;
  if (!naive.labels().empty()) {
    labels.emplace(naive.node_count() * per);
    for (node_id u = 0; u < naive.node_count(); ++u)
      std::fill_n(labels->begin() + static_cast<long>(u * per), per, naive.labels()[u]);
  }
  Graph boosted = Graph::from_edges(naive.node_count() * per, std::move(edges), std::move(labels));
  // Naive nodes without edges leave isolated vectors behind; drop them.
  std::vector<node_id> keep;
  for (node_id v = 0; v < boosted.node_count(); ++v)
    if (boosted.degree(v) > 0) keep.push_back(v);
  if (keep.size() == boosted.node_count()) return boosted;
  return induced_subgraph(boosted, keep);
}

/// Boosts an instance of `ct`, using level parity (even = point side).
inline Graph girth_boost(const ClusterTree& ct, const Graph& naive, BoostInfo* info = nullptr,
                         SizeBudget budget = {}) {
  std::vector<std::uint8_t> side(naive.node_count());
  for (node_id v = 0; v < naive.node_count(); ++v) {
    side[v] = static_cast<std::uint8_t>(ct.clusters.at(static_cast<std::size_t>(naive.labels().at(v))).level % 2);
  }
  return girth_boost(naive, side, ct.k, info, budget);
}

/// Two copies of g (second copy = nodes n..2n-1) joined by the matching v <-> v+n.
/// Labels of the second copy are shifted past the largest label of the first.
inline Graph build_hk(const Graph& g) {
  const auto n = static_cast<node_id>(g.node_count());
  std::vector<Edge> edges;
  for (auto [u, v] : g.edges()) {
    edges.emplace_back(u, v);
    edges.emplace_back(u + n, v + n);
  }
  for (node_id v = 0; v < n; ++v) edges.emplace_back(v, v + n);
  std::optional<std::vector<std::int64_t>> labels;
  if (!g.labels().empty()) {
    std::int64_t shift = *std::max_element(g.labels().begin(), g.labels().end()) + 1;
    labels = g.labels();
    for (node_id v = 0; v < n; ++v) labels->push_back(g.labels()[v] + shift);
  }
  return Graph::from_edges(2 * static_cast<std::size_t>(n), std::move(edges), std::move(labels));
}

/// Cluster links of H_k: clusters i and i + N are the two copies, joined one-to-one.
inline ClusterLinks counterpart_links(const ClusterLinks& links) {
  const auto n = static_cast<std::uint32_t>(links.size());
  ClusterLinks out(2 * static_cast<std::size_t>(n));
  for (std::uint32_t c = 0; c < n; ++c) {
    for (auto [d, m] : links[c]) {
      out[c].emplace_back(d, m);
      out[c + n].emplace_back(d + n, m);
    }
    out[c].emplace_back(c + n, 1);
    out[c + n].emplace_back(c, 1);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Cluster-level views

/// View of a node in cluster `start` reached from cluster `entry` (none for the root),
/// unrolled to `depth`: toward every adjacent cluster D the node has links[start][D]
/// identical subtrees, one fewer toward the cluster it was entered from. With
/// `labeled`, every tree node carries its cluster id.
class ClusterViewBuilder {
 public:
  explicit ClusterViewBuilder(ClusterLinks links, bool labeled = false)
      : links_(std::move(links)), labeled_(labeled) {}

  ViewTree view(std::uint32_t start, std::optional<std::uint32_t> entry, std::uint32_t depth) {
    auto key = std::make_tuple(start, entry ? static_cast<std::int64_t>(*entry) : -1, depth);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::optional<std::int64_t> label;
    if (labeled_) label = start;
    ViewTree out;
    if (depth == 0) {
      out = ViewTree::leaf(label);
    } else {
      std::vector<ViewTree::Child> kids;
      for (auto [d, m] : links_.at(start)) {
        std::uint64_t count = (entry && *entry == d) ? m - 1 : m;
        if (count == 0) continue;
        kids.emplace_back(count, view(d, start, depth - 1));
      }
      out = ViewTree::make(label, std::move(kids));
    }
    memo_.emplace(key, out);
    return out;
  }

 private:
  ClusterLinks links_;
  bool labeled_;
  std::map<std::tuple<std::uint32_t, std::int64_t, std::uint32_t>, ViewTree> memo_;
};

inline ViewTree unroll_cluster_view(const ClusterTree& ct, std::uint32_t start, std::optional<std::uint32_t> entry,
                                    std::uint32_t depth, bool labeled = false) {
  ClusterViewBuilder b(ct.links(), labeled);
  return b.view(start, entry, depth);
}

}  // namespace locality
