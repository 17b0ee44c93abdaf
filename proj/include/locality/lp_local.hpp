#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "locality/engine.hpp"
#include "locality/error.hpp"
#include "locality/generators.hpp"
#include "locality/graph.hpp"
#include "locality/lp.hpp"
#include "locality/rational.hpp"

namespace locality {

// ---------------------------------------------------------------------------
// LP network

/// Bipartite graph with primal nodes 0..n_p-1 and dual nodes n_p..n_p+n_d-1, plus the
/// graph on dual nodes joining rows at network distance <= 4 (rows that share a
/// variable, or whose variables share a row). Node j of `row_graph` is row j.
struct LpNetwork {
  Graph network;
  Graph row_graph;
  std::size_t n_primal = 0;
  std::size_t n_dual = 0;

  node_id primal_node(std::size_t i) const { return static_cast<node_id>(i); }
  node_id dual_node(std::size_t j) const { return static_cast<node_id>(n_primal + j); }
};

inline LpNetwork build_lp_network(const CanonicalLP& lp) {
  LpNetwork net;
  net.n_primal = lp.n_primal();
  net.n_dual = lp.n_dual();
  std::vector<Edge> edges;
  for (const auto& e : lp.entries) edges.emplace_back(net.primal_node(e.col), net.dual_node(e.row));
  net.network = Graph::from_edges(net.n_primal + net.n_dual, std::move(edges));
  if (net.n_dual > 0) {
    std::vector<node_id> rows;
    for (std::size_t j = 0; j < net.n_dual; ++j) rows.push_back(net.dual_node(j));
    net.row_graph = distance_power_graph(net.network, rows, 4).without_labels();
  }
  return net;
}

inline std::size_t max_column_degree(const CanonicalLP& lp) {
  std::vector<std::size_t> d(lp.n_primal(), 0);
  for (const auto& e : lp.entries) ++d[e.col];
  return d.empty() ? 0 : *std::max_element(d.begin(), d.end());
}

inline std::size_t max_row_degree(const CanonicalLP& lp) {
  std::vector<std::size_t> d(lp.n_dual(), 0);
  for (const auto& e : lp.entries) ++d[e.row];
  return d.empty() ? 0 : *std::max_element(d.begin(), d.end());
}

// ---------------------------------------------------------------------------
// Randomized decomposition

struct Decomposition {
  std::vector<char> selected;
  std::vector<node_id> leader;        // unreachable for unselected nodes
  std::vector<std::uint32_t> radius;  // drawn radius per node
  double p = 0;
  std::uint32_t R = 0;
  std::uint32_t rounds = 0;

  std::vector<node_id> members() const {
    std::vector<node_id> out;
    for (node_id v = 0; v < selected.size(); ++v)
      if (selected[v]) out.push_back(v);
    return out;
  }
  /// Selected nodes grouped by leader, ordered by leader id.
  std::map<node_id, std::vector<node_id>> clusters() const {
    std::map<node_id, std::vector<node_id>> out;
    for (node_id v = 0; v < selected.size(); ++v)
      if (selected[v]) out[leader[v]].push_back(v);
    return out;
  }
};

/// Radius of a node: starts at 0 and grows by one while a p-coin succeeds, up to R,
/// so Pr[radius >= j] = p^j for j <= R.
inline std::uint32_t draw_radius(std::uint64_t node_seed, double p, std::uint32_t R) {
  std::mt19937_64 rng(node_seed);
  std::bernoulli_distribution coin(p);
  std::uint32_t r = 0;
  while (r < R && coin(rng)) ++r;
  return r;
}

namespace detail {

inline void check_ls_params(double p, std::uint32_t R) {
  if (!(p > 0 && p < 1)) throw std::invalid_argument("decomposition: p must lie in (0, 1)");
  if (R < 1) throw std::invalid_argument("decomposition: R must be at least 1");
}

}  // namespace detail

/// Runs `instances` independent decompositions in one R-round ball exchange.
/// Instance t uses master seed derive_seed(seed, t); node v of that instance draws its
/// radius from derive_seed(derive_seed(seed, t), v). Each node's leader is the
/// highest-id node w with d(v, w) <= r_w, and v is selected iff d(v, w) < r_w.
inline std::vector<Decomposition> ls_decompose_many(const Graph& g, double p, std::uint32_t R,
                                                    std::uint64_t seed, std::size_t instances,
                                                    EngineOptions opts = {}) {
  detail::check_ls_params(p, R);
  const std::size_t n = g.node_count();
  std::vector<std::vector<std::uint32_t>> radii(n, std::vector<std::uint32_t>(instances));
  for (std::size_t t = 0; t < instances; ++t) {
    std::uint64_t s = derive_seed(seed, t);
    for (node_id v = 0; v < n; ++v) radii[v][t] = draw_radius(derive_seed(s, v), p, R);
  }
  BallGather<std::vector<std::uint32_t>> proto{[&](node_id v) { return radii[v]; }};
  auto transcript = run_protocol(g, proto, R, seed, opts);

  std::vector<Decomposition> out(instances);
  for (std::size_t t = 0; t < instances; ++t) {
    auto& d = out[t];
    d.p = p;
    d.R = R;
    d.rounds = R;
    d.selected.assign(n, 0);
    d.leader.assign(n, unreachable);
    d.radius.resize(n);
    for (node_id v = 0; v < n; ++v) d.radius[v] = radii[v][t];
  }
  for (node_id v = 0; v < n; ++v) {
    const auto& ball = transcript.outputs[v];
    for (std::size_t t = 0; t < instances; ++t) {
      const typename BallGather<std::vector<std::uint32_t>>::Entry* lead = nullptr;
      for (const auto& e : ball) {
        if (e.dist <= e.payload[t] && (lead == nullptr || e.id > lead->id)) lead = &e;
      }
      if (lead->dist < lead->payload[t]) {
        out[t].selected[v] = 1;
        out[t].leader[v] = lead->id;
      }
    }
  }
  return out;
}

/// Same as instance 0 of ls_decompose_many with the same seed.
inline Decomposition ls_decompose(const Graph& g, double p, std::uint32_t R, std::uint64_t seed,
                                  EngineOptions opts = {}) {
  return std::move(ls_decompose_many(g, p, R, seed, 1, opts).front());
}

/// Property 1 (members within distance R of their leader) and property 2 (adjacent
/// members share a leader), checked by BFS.
inline bool decomposition_valid(const Graph& g, const Decomposition& d, std::string* why = nullptr) {
  auto fail = [&](std::string msg) {
    if (why) *why = std::move(msg);
    return false;
  };
  for (auto& [lead, members] : d.clusters()) {
    auto dist = bfs_distances(g, lead, d.R);
    for (node_id v : members) {
      if (dist[v] == unreachable || dist[v] > d.R) {
        return fail("node " + std::to_string(v) + " farther than R from leader " + std::to_string(lead));
      }
    }
  }
  for (auto [u, v] : g.edges()) {
    if (d.selected[u] && d.selected[v] && d.leader[u] != d.leader[v]) {
      return fail("adjacent members " + std::to_string(u) + ", " + std::to_string(v) +
                  " have different leaders");
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Local LP solving

struct LpParameters {
  double p = 0.5;
  std::uint32_t R = 1;
  std::size_t ell = 1;
  double q = 0;  // success probability p(1 - n_d p^R); informative only
};

/// p = n_d^(-alpha/R), q = p(1 - n_d p^R), ell = ceil(2(1+beta)/(eps^2 q) ln n_d).
inline LpParameters lp_parameters(std::size_t n_dual, double alpha, double beta, double eps,
                                  std::uint32_t R) {
  if (n_dual < 2) throw std::invalid_argument("lp_parameters: need at least 2 rows");
  if (!(alpha > 1) || !(beta > 0) || !(eps > 0 && eps < 1) || R < 1) {
    throw std::invalid_argument("lp_parameters: need alpha > 1, beta > 0, 0 < eps < 1, R >= 1");
  }
  double nd = static_cast<double>(n_dual);
  LpParameters out;
  out.R = R;
  out.p = std::pow(nd, -alpha / R);
  out.q = out.p * (1 - nd * std::pow(out.p, static_cast<double>(R)));
  out.ell = static_cast<std::size_t>(std::ceil(2 * (1 + beta) / (eps * eps * out.q) * std::log(nd)));
  return out;
}

struct LpLocalResult {
  std::vector<Rational> x;
  std::vector<Rational> y;
  Rational primal_value;
  Rational dual_value;
  std::vector<std::size_t> coverage;  // per row: instances in which the row was selected
  std::size_t guarded_rows = 0;       // rows never selected that needed the division guard
  std::size_t clusters_solved = 0;
  std::size_t distinct_subproblems = 0;
  std::uint32_t decomposition_rounds = 0;
  std::vector<std::string> violations;

  /// c^T x / b^T y; nullopt when the dual value is 0.
  std::optional<Rational> ratio() const {
    if (dual_value == 0) return std::nullopt;
    return primal_value / dual_value;
  }
};

namespace detail {

struct SubSolution {
  std::vector<std::pair<std::uint32_t, Rational>> x;  // (global column, value)
  std::vector<Rational> y;                              // aligned with the row set
};

inline SubSolution solve_rows(const CanonicalLP& lp,
                              const std::vector<std::vector<std::pair<std::uint32_t, Rational>>>& rows,
                              const std::vector<node_id>& set) {
  std::vector<std::uint32_t> cols;
  for (node_id j : set)
    for (const auto& [col, _] : rows[j]) cols.push_back(col);
  std::sort(cols.begin(), cols.end());
  cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
  CanonicalLP sub;
  for (std::uint32_t col : cols) sub.c.push_back(lp.c[col]);
  for (std::uint32_t r = 0; r < set.size(); ++r) {
    sub.b.push_back(lp.b[set[r]]);
    for (const auto& [col, a] : rows[set[r]]) {
      auto local = static_cast<std::uint32_t>(std::lower_bound(cols.begin(), cols.end(), col) - cols.begin());
      sub.entries.push_back({r, local, a});
    }
  }
  sub.normalize();
  ExactLpSolution sol;
  try {
    sol = exact_lp(sub, LpBudget{1u << 20, 1u << 20});
  } catch (const Infeasible& e) {
    throw InfeasibleSubLP(std::string("local sub-LP failed: ") + e.what());
  }
  SubSolution out;
  for (std::size_t i = 0; i < cols.size(); ++i)
    if (sol.x[i] != 0) out.x.emplace_back(cols[i], sol.x[i]);
  out.y = std::move(sol.y);
  return out;
}

}  // namespace detail

/// Sums exact solutions of the cluster sub-LPs of `ell` decompositions of the row graph,
/// then rescales: y by 1/ell, and each x_i by the smallest coverage ratio (Ax)_j / b_j
/// among its rows. Rows never covered by any cluster are first satisfied on their
/// cheapest variable so both outputs are always feasible.
inline LpLocalResult solve_lp_local(const CanonicalLP& lp, std::size_t ell, double p, std::uint32_t R,
                                    std::uint64_t seed, EngineOptions opts = {}) {
  lp.validate();
  if (ell == 0) throw std::invalid_argument("solve_lp_local: ell must be positive");
  const std::size_t np = lp.n_primal(), nd = lp.n_dual();
  auto net = build_lp_network(lp);
  auto rows = lp.rows();
  auto decompositions = ls_decompose_many(net.row_graph, p, R, seed, ell, opts);

  LpLocalResult res;
  res.x.assign(np, 0);
  res.y.assign(nd, 0);
  res.coverage.assign(nd, 0);
  res.decomposition_rounds = R;
  std::map<std::vector<node_id>, detail::SubSolution> cache;
  std::vector<std::size_t> owner(np);

  for (std::size_t t = 0; t < ell; ++t) {
    const auto& d = decompositions[t];
    std::string why;
    if (!decomposition_valid(net.row_graph, d, &why)) {
      res.violations.push_back("instance " + std::to_string(t) + ": " + why);
    }
    std::fill(owner.begin(), owner.end(), static_cast<std::size_t>(-1));
    for (const auto& [lead, members] : d.clusters()) {
      for (node_id j : members) {
        ++res.coverage[j];
        for (const auto& [col, _] : rows[j]) {
          if (owner[col] != static_cast<std::size_t>(-1) && owner[col] != lead) {
            res.violations.push_back("instance " + std::to_string(t) + ": clusters share variable " +
                                     std::to_string(col));
          }
          owner[col] = lead;
        }
      }
      auto it = cache.find(members);
      if (it == cache.end()) it = cache.emplace(members, detail::solve_rows(lp, rows, members)).first;
      ++res.clusters_solved;
      for (const auto& [col, v] : it->second.x) res.x[col] += v;
      for (std::size_t r = 0; r < members.size(); ++r) res.y[members[r]] += it->second.y[r];
    }
  }
  res.distinct_subproblems = cache.size();

  auto ax = row_activity(lp, res.x);
  std::vector<Rational> lift(np, 0);
  for (std::size_t j = 0; j < nd; ++j) {
    if (ax[j] != 0 || lp.b[j] == 0) continue;
    ++res.guarded_rows;
    std::optional<std::pair<std::uint32_t, Rational>> pick;
    for (const auto& [col, a] : rows[j]) {
      if (!pick || lp.c[col] / a < lp.c[pick->first] / pick->second) pick.emplace(col, a);
    }
    lift[pick->first] += lp.b[j] / pick->second;
  }
  for (std::size_t i = 0; i < np; ++i) res.x[i] += lift[i];
  if (res.guarded_rows > 0) ax = row_activity(lp, res.x);

  auto cols = lp.cols();
  for (std::size_t i = 0; i < np; ++i) {
    std::optional<Rational> scale;
    for (const auto& [row, _] : cols[i]) {
      if (lp.b[row] == 0) continue;
      Rational r = ax[row] / lp.b[row];
      if (!scale || r < *scale) scale = r;
    }
    res.x[i] = scale ? res.x[i] / *scale : Rational(0);
  }
  for (auto& v : res.y) v /= Rational(static_cast<long>(ell));

  res.primal_value = dot(lp.c, res.x);
  res.dual_value = dot(lp.b, res.y);
  if (!primal_feasible(lp, res.x)) res.violations.push_back("primal output infeasible");
  if (!dual_feasible(lp, res.y)) res.violations.push_back("dual output infeasible");
  if (res.dual_value > res.primal_value) res.violations.push_back("weak duality violated");
  return res;
}

// ---------------------------------------------------------------------------
// Randomized rounding

struct RoundingResult {
  std::vector<Rational> values;  // integral
  Rational objective;
  std::size_t repaired = 0;  // covering: rows repaired; packing: variables reverted
  bool repair_only = false;  // covering with ln(Delta_p) < 1
};

/// Integer covering rounding: x_i >= 1/(lambda ln Delta_p) rounds up, smaller values
/// become 1 with probability x_i lambda ln Delta_p; every row left short then adds its
/// deficit to its cheapest variable (lowest index on ties). With ln Delta_p < 1 only
/// the repair step runs, starting from 0. The scaled threshold uses double precision.
inline RoundingResult round_covering(const CanonicalLP& lp, const std::vector<Rational>& x, double lambda,
                                     std::uint64_t seed) {
  if (!lp.is_zero_one()) throw InvalidCoefficients("round_covering: A must be 0/1");
  if (x.size() != lp.n_primal()) throw std::invalid_argument("round_covering: x has wrong length");
  const std::size_t np = lp.n_primal();
  double log_delta = std::log(static_cast<double>(std::max<std::size_t>(1, max_column_degree(lp))));
  RoundingResult res;
  res.values.assign(np, 0);
  res.repair_only = log_delta < 1;
  if (!res.repair_only) {
    double scale = lambda * log_delta;
    for (std::size_t i = 0; i < np; ++i) {
      double scaled = to_double(x[i]) * scale;
      if (scaled >= 1) {
        res.values[i] = ceil(x[i]);
      } else {
        std::mt19937_64 rng(derive_seed(seed, i));
        std::bernoulli_distribution coin(std::max(0.0, scaled));
        res.values[i] = coin(rng) ? 1 : 0;
      }
    }
  }
  auto rows = lp.rows();
  auto ax = row_activity(lp, res.values);
  std::vector<Rational> add(np, 0);
  for (std::size_t j = 0; j < lp.n_dual(); ++j) {
    Rational need = ceil(lp.b[j]);
    if (ax[j] >= need) continue;
    ++res.repaired;
    std::uint32_t best = rows[j].front().first;
    for (const auto& [col, _] : rows[j])
      if (lp.c[col] < lp.c[best]) best = col;
    add[best] += need - ax[j];
  }
  for (std::size_t i = 0; i < np; ++i) res.values[i] += add[i];
  res.objective = dot(lp.c, res.values);
  return res;
}

/// Integer packing rounding: y_j >= 1 rounds down, smaller values become 1 with
/// probability 1/(2e Delta_d); every variable of a violated column constraint then
/// reverts to floor(y_j). Capacities are rounded down first.
inline RoundingResult round_packing(const CanonicalLP& lp, const std::vector<Rational>& y, std::uint64_t seed) {
  if (!lp.is_zero_one()) throw InvalidCoefficients("round_packing: A must be 0/1");
  if (y.size() != lp.n_dual()) throw std::invalid_argument("round_packing: y has wrong length");
  const std::size_t nd = lp.n_dual();
  double prob = 1.0 / (2 * std::exp(1.0) * static_cast<double>(std::max<std::size_t>(1, max_row_degree(lp))));
  RoundingResult res;
  res.values.assign(nd, 0);
  for (std::size_t j = 0; j < nd; ++j) {
    if (y[j] >= 1) {
      res.values[j] = floor(y[j]);
    } else {
      std::mt19937_64 rng(derive_seed(seed, j));
      std::bernoulli_distribution coin(prob);
      res.values[j] = coin(rng) ? 1 : 0;
    }
  }
  auto load = column_load(lp, res.values);
  auto cols = lp.cols();
  std::vector<char> revert(nd, 0);
  for (std::size_t i = 0; i < lp.n_primal(); ++i) {
    if (load[i] <= floor(lp.c[i])) continue;
    for (const auto& [row, _] : cols[i]) revert[row] = 1;
  }
  for (std::size_t j = 0; j < nd; ++j) {
    if (!revert[j]) continue;
    Rational f = floor(y[j]);
    if (res.values[j] != f) ++res.repaired;
    res.values[j] = f;
  }
  res.objective = dot(lp.b, res.values);
  return res;
}

// ---------------------------------------------------------------------------
// Dominating set pipeline

struct MdsResult {
  std::vector<node_id> dominating_set;
  LpLocalResult lp;
  RoundingResult rounding;
};

inline MdsResult mds_pipeline(const Graph& g, std::size_t ell, double p, std::uint32_t R, double lambda,
                              std::uint64_t seed, EngineOptions opts = {}) {
  MdsResult out;
  if (g.node_count() == 0) return out;
  auto lp = dominating_set_lp(g);
  out.lp = solve_lp_local(lp, ell, p, R, derive_seed(seed, 0), opts);
  out.rounding = round_covering(lp, out.lp.x, lambda, derive_seed(seed, 1));
  for (node_id v = 0; v < g.node_count(); ++v)
    if (out.rounding.values[v] >= 1) out.dominating_set.push_back(v);
  return out;
}

}  // namespace locality
