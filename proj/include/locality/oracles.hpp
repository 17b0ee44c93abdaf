#pragma once

#include <algorithm>
#include <bit>
#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/max_cardinality_matching.hpp>
#include <cstdint>
#include <string>
#include <vector>

#include "locality/error.hpp"
#include "locality/graph.hpp"
#include "locality/rational.hpp"

namespace locality {

struct ExactSolution {
  std::string problem;
  Rational value;
  std::vector<node_id> nodes;  // witness for node-set problems
  std::vector<edge_id> edges;  // witness for matching
  bool valid = true;           // MIS check result
};

struct OracleBudget {
  std::size_t max_nodes = 32;           // NP-hard problems; hard cap 64 (bitmask search)
  std::size_t max_matching_nodes = 200;
};

namespace detail {

using Mask = std::uint64_t;

inline Mask bit(node_id v) { return Mask{1} << v; }

inline std::vector<node_id> mask_nodes(Mask m) {
  std::vector<node_id> out;
  while (m) {
    out.push_back(static_cast<node_id>(std::countr_zero(m)));
    m &= m - 1;
  }
  return out;
}

inline void check_budget(const Graph& g, std::size_t limit, const char* what) {
  if (g.node_count() > limit || g.node_count() > 64) {
    throw BudgetExceeded(std::string(what) + ": " + std::to_string(g.node_count()) +
                         " nodes exceeds budget " + std::to_string(std::min<std::size_t>(limit, 64)));
  }
}

inline std::vector<Mask> neighbor_masks(const Graph& g) {
  std::vector<Mask> nb(g.node_count(), 0);
  for (auto [u, v] : g.edges()) {
    nb[u] |= bit(v);
    nb[v] |= bit(u);
  }
  return nb;
}

// Minimum vertex cover of the subgraph induced by `active`.
struct VcSearch {
  const std::vector<Mask>& nb;
  std::size_t best;
  Mask best_set;

  // Size of a greedy maximal matching; every cover needs one node per matched edge.
  std::size_t matching_bound(Mask active) const {
    std::size_t size = 0;
    Mask free = active;
    while (free) {
      node_id u = static_cast<node_id>(std::countr_zero(free));
      free &= ~bit(u);
      Mask cand = nb[u] & free;
      if (cand) {
        free &= ~bit(static_cast<node_id>(std::countr_zero(cand)));
        ++size;
      }
    }
    return size;
  }

  void run(Mask active, Mask chosen, std::size_t count) {
    // Forced moves: a node of degree 1 can be replaced by its neighbor.
    for (bool changed = true; changed;) {
      changed = false;
      for (Mask m = active; m;) {
        node_id u = static_cast<node_id>(std::countr_zero(m));
        m &= m - 1;
        if (!(active & bit(u))) continue;
        Mask nu = nb[u] & active;
        if (nu == 0) {
          active &= ~bit(u);
        } else if (std::popcount(nu) == 1) {
          node_id w = static_cast<node_id>(std::countr_zero(nu));
          chosen |= bit(w);
          ++count;
          active &= ~(bit(w) | bit(u));
          changed = true;
        }
      }
    }
    if (count >= best) return;
    node_id pick = 0;
    int deg = -1;
    for (Mask m = active; m; m &= m - 1) {
      node_id u = static_cast<node_id>(std::countr_zero(m));
      int d = std::popcount(nb[u] & active);
      if (d > deg) {
        deg = d;
        pick = u;
      }
    }
    if (deg <= 0) {
      best = count;
      best_set = chosen;
      return;
    }
    if (count + matching_bound(active) >= best) return;
    run(active & ~bit(pick), chosen | bit(pick), count + 1);
    Mask nv = nb[pick] & active;
    run(active & ~(nv | bit(pick)), chosen | nv, count + static_cast<std::size_t>(std::popcount(nv)));
  }
};

// Minimum dominating set, optionally required to induce a connected subgraph.
struct DsSearch {
  const std::vector<Mask>& nb;
  std::size_t n;
  Mask all;
  bool connected;
  std::size_t global_lower = 0;
  std::size_t best;
  Mask best_set;

  Mask closed(node_id v) const { return nb[v] | bit(v); }

  // Nodes of `set` reachable from its lowest node inside the subgraph it induces.
  Mask first_component(Mask set) const {
    if (!set) return 0;
    Mask comp = bit(static_cast<node_id>(std::countr_zero(set)));
    for (Mask frontier = comp; frontier;) {
      Mask next = 0;
      for (Mask m = frontier; m; m &= m - 1) next |= nb[std::countr_zero(m)] & set;
      frontier = next & ~comp;
      comp |= next;
    }
    return comp;
  }

  std::size_t cover_bound(Mask undominated, Mask allowed) const {
    if (!undominated) return 0;
    int most = 0;
    for (Mask m = allowed; m; m &= m - 1) {
      most = std::max(most, std::popcount(closed(static_cast<node_id>(std::countr_zero(m))) & undominated));
    }
    if (most == 0) return n + 1;
    auto u = static_cast<std::size_t>(std::popcount(undominated));
    return (u + static_cast<std::size_t>(most) - 1) / static_cast<std::size_t>(most);
  }

  void run(Mask set, Mask allowed) {
    auto count = static_cast<std::size_t>(std::popcount(set));
    Mask dominated = 0;
    for (Mask m = set; m; m &= m - 1) dominated |= closed(static_cast<node_id>(std::countr_zero(m)));
    Mask undominated = all & ~dominated;
    std::size_t lower = std::max(count + cover_bound(undominated, allowed), global_lower);
    if (lower >= best) return;

    Mask candidates = 0;
    if (undominated) {
      int fewest = 65;
      for (Mask m = undominated; m; m &= m - 1) {
        node_id u = static_cast<node_id>(std::countr_zero(m));
        Mask c = closed(u) & allowed;
        if (std::popcount(c) < fewest) {
          fewest = std::popcount(c);
          candidates = c;
        }
      }
      if (fewest == 0) return;
    } else if (connected) {
      Mask comp = first_component(set);
      if (comp == set) {
        best = count;
        best_set = set;
        return;
      }
      if (count + 1 >= best) return;
      for (Mask m = comp; m; m &= m - 1) candidates |= nb[std::countr_zero(m)];
      candidates &= allowed & ~set;
    } else {
      best = count;
      best_set = set;
      return;
    }
    for (Mask m = candidates; m; m &= m - 1) {
      node_id w = static_cast<node_id>(std::countr_zero(m));
      run(set | bit(w), allowed & ~bit(w));
      allowed &= ~bit(w);
    }
  }
};

}  // namespace detail

inline ExactSolution exact_mvc(const Graph& g, OracleBudget budget = {}) {
  detail::check_budget(g, budget.max_nodes, "MVC");
  auto nb = detail::neighbor_masks(g);
  // Initial incumbent: both endpoints of a greedy maximal matching.
  detail::Mask greedy = 0;
  for (auto [u, v] : g.edges()) {
    if (!(greedy & (detail::bit(u) | detail::bit(v)))) greedy |= detail::bit(u) | detail::bit(v);
  }
  detail::VcSearch search{nb, static_cast<std::size_t>(std::popcount(greedy)) + 1, greedy};
  detail::Mask all = g.node_count() == 64 ? ~detail::Mask{0} : (detail::bit(static_cast<node_id>(g.node_count())) - 1);
  search.run(all, 0, 0);
  auto nodes = detail::mask_nodes(search.best_set);
  return {"MVC", Rational(static_cast<long>(nodes.size())), nodes, {}, true};
}

inline ExactSolution exact_mds(const Graph& g, OracleBudget budget = {}) {
  detail::check_budget(g, budget.max_nodes, "MDS");
  const std::size_t n = g.node_count();
  if (n == 0) return {"MDS", Rational(0), {}, {}, true};
  auto nb = detail::neighbor_masks(g);
  detail::Mask all = n == 64 ? ~detail::Mask{0} : (detail::bit(static_cast<node_id>(n)) - 1);
  detail::DsSearch search{nb, n, all, false, 0, n + 1, all};
  search.run(0, all);
  auto nodes = detail::mask_nodes(search.best_set);
  return {"MDS", Rational(static_cast<long>(nodes.size())), nodes, {}, true};
}

/// Minimum connected dominating set of a connected graph (a single node for n <= 2).
inline ExactSolution exact_mcds(const Graph& g, OracleBudget budget = {}) {
  detail::check_budget(g, budget.max_nodes, "MCDS");
  const std::size_t n = g.node_count();
  if (n == 0) return {"MCDS", Rational(0), {}, {}, true};
  if (!is_connected(g)) throw Disconnected("MCDS requires a connected graph");
  auto nb = detail::neighbor_masks(g);
  detail::Mask all = n == 64 ? ~detail::Mask{0} : (detail::bit(static_cast<node_id>(n)) - 1);
  // A connected set of s nodes dominates at most s*(Delta-1) + 2 nodes.
  std::size_t delta = g.max_degree();
  std::size_t lower = 1;
  if (delta >= 2 && n > 2) lower = std::max<std::size_t>(1, (n - 2 + delta - 2) / (delta - 1));
  // Incumbent: internal nodes of a BFS tree.
  detail::Mask incumbent = 0;
  if (n <= 2) {
    incumbent = 1;
  } else {
    std::vector<node_id> parent(n, unreachable);
    std::vector<node_id> queue{0};
    parent[0] = 0;
    for (std::size_t h = 0; h < queue.size(); ++h) {
      for (node_id w : g.neighbors(queue[h])) {
        if (parent[w] == unreachable) {
          parent[w] = queue[h];
          queue.push_back(w);
          incumbent |= detail::bit(queue[h]);
        }
      }
    }
  }
  detail::DsSearch search{nb, n, all, true, lower,
                          static_cast<std::size_t>(std::popcount(incumbent)), incumbent};
  search.run(0, all);
  auto nodes = detail::mask_nodes(search.best_set);
  return {"MCDS", Rational(static_cast<long>(nodes.size())), nodes, {}, true};
}

/// Maximum cardinality matching (Edmonds' blossom algorithm).
inline ExactSolution exact_max_matching(const Graph& g, OracleBudget budget = {}) {
  if (g.node_count() > budget.max_matching_nodes) {
    throw BudgetExceeded("MaxM: " + std::to_string(g.node_count()) + " nodes exceeds budget " +
                         std::to_string(budget.max_matching_nodes));
  }
  using BG = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;
  BG bg(g.node_count());
  for (auto [u, v] : g.edges()) boost::add_edge(u, v, bg);
  std::vector<boost::graph_traits<BG>::vertex_descriptor> mate(g.node_count());
  boost::edmonds_maximum_cardinality_matching(bg, &mate[0]);
  ExactSolution sol{"MaxM", Rational(0), {}, {}, true};
  for (node_id v = 0; v < g.node_count(); ++v) {
    auto m = mate[v];
    if (m != boost::graph_traits<BG>::null_vertex() && v < m) {
      sol.edges.push_back(*g.edge_index(v, static_cast<node_id>(m)));
    }
  }
  std::sort(sol.edges.begin(), sol.edges.end());
  sol.value = Rational(static_cast<long>(sol.edges.size()));
  return sol;
}

/// Checks that `set` is a maximal independent set; value is 1 when it is, 0 otherwise.
inline ExactSolution check_mis(const Graph& g, std::vector<node_id> set) {
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
  bool ok = is_independent_set(g, set) && is_dominating_set(g, set);
  return {"MIS", Rational(ok ? 1 : 0), set, {}, ok};
}

/// Dispatches by problem name: MVC, MDS, MCDS, MaxM.
inline ExactSolution exact_solve(const std::string& problem, const Graph& g, OracleBudget budget = {}) {
  if (problem == "MVC") return exact_mvc(g, budget);
  if (problem == "MDS") return exact_mds(g, budget);
  if (problem == "MCDS") return exact_mcds(g, budget);
  if (problem == "MaxM") return exact_max_matching(g, budget);
  throw ConfigError("unknown problem '" + problem + "' (MVC, MDS, MCDS, MaxM; MIS needs a set)");
}

}  // namespace locality
