#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <nlohmann/json.hpp>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "locality/error.hpp"
#include "locality/graph.hpp"
#include "locality/rational.hpp"

namespace locality {

enum class LpKind { covering, packing };

struct LpEntry {
  std::uint32_t row;
  std::uint32_t col;
  Rational value;
};

/// Primal/dual pair with nonnegative data:
///   (P) min c^T x  s.t. A x >= b, x >= 0      (covering)
///   (D) max b^T y  s.t. A^T y <= c, y >= 0    (packing)
/// `kind` records which side the instance is posed as; both sides are always available.
/// A has n_dual() rows and n_primal() columns.
struct CanonicalLP {
  LpKind kind = LpKind::covering;
  std::vector<Rational> c;
  std::vector<Rational> b;
  std::vector<LpEntry> entries;  // sorted by (row, col), no duplicates, no zeros

  std::size_t n_primal() const { return c.size(); }
  std::size_t n_dual() const { return b.size(); }

  /// Sorts entries, drops explicit zeros and rejects duplicates.
  void normalize() {
    std::erase_if(entries, [](const LpEntry& e) { return e.value == 0; });
    std::sort(entries.begin(), entries.end(), [](const LpEntry& a, const LpEntry& b) {
      return std::tie(a.row, a.col) < std::tie(b.row, b.col);
    });
    for (std::size_t i = 1; i < entries.size(); ++i) {
      if (entries[i].row == entries[i - 1].row && entries[i].col == entries[i - 1].col) {
        throw FormatError("lp: duplicate entry at (" + std::to_string(entries[i].row) + ", " +
                          std::to_string(entries[i].col) + ")");
      }
    }
  }

  /// Throws FormatError unless all data is nonnegative, in range, and every row and
  /// column has a nonzero entry.
  void validate() const {
    for (const auto& v : c)
      if (v < 0) throw FormatError("lp: negative objective coefficient");
    for (const auto& v : b)
      if (v < 0) throw FormatError("lp: negative bound");
    std::vector<char> row_seen(n_dual(), 0), col_seen(n_primal(), 0);
    for (const auto& e : entries) {
      if (e.row >= n_dual() || e.col >= n_primal()) throw FormatError("lp: entry out of range");
      if (e.value < 0) throw FormatError("lp: negative matrix entry");
      if (e.value == 0) continue;
      row_seen[e.row] = col_seen[e.col] = 1;
    }
    for (std::size_t j = 0; j < n_dual(); ++j)
      if (!row_seen[j]) throw FormatError("lp: row " + std::to_string(j) + " is all zero");
    for (std::size_t i = 0; i < n_primal(); ++i)
      if (!col_seen[i]) throw FormatError("lp: column " + std::to_string(i) + " is all zero");
  }

  /// rows()[j] = (col, a_ji) pairs of row j.
  std::vector<std::vector<std::pair<std::uint32_t, Rational>>> rows() const {
    std::vector<std::vector<std::pair<std::uint32_t, Rational>>> out(n_dual());
    for (const auto& e : entries) out[e.row].emplace_back(e.col, e.value);
    return out;
  }
  /// cols()[i] = (row, a_ji) pairs of column i.
  std::vector<std::vector<std::pair<std::uint32_t, Rational>>> cols() const {
    std::vector<std::vector<std::pair<std::uint32_t, Rational>>> out(n_primal());
    for (const auto& e : entries) out[e.col].emplace_back(e.row, e.value);
    return out;
  }

  bool is_zero_one() const {
    return std::all_of(entries.begin(), entries.end(), [](const LpEntry& e) { return e.value == 1; });
  }
};

inline std::vector<Rational> row_activity(const CanonicalLP& lp, const std::vector<Rational>& x) {
  std::vector<Rational> ax(lp.n_dual(), 0);
  for (const auto& e : lp.entries) ax[e.row] += e.value * x.at(e.col);
  return ax;
}

inline std::vector<Rational> column_load(const CanonicalLP& lp, const std::vector<Rational>& y) {
  std::vector<Rational> aty(lp.n_primal(), 0);
  for (const auto& e : lp.entries) aty[e.col] += e.value * y.at(e.row);
  return aty;
}

inline Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b.at(i);
  return s;
}

inline bool primal_feasible(const CanonicalLP& lp, const std::vector<Rational>& x) {
  if (x.size() != lp.n_primal()) return false;
  for (const auto& v : x)
    if (v < 0) return false;
  auto ax = row_activity(lp, x);
  for (std::size_t j = 0; j < lp.n_dual(); ++j)
    if (ax[j] < lp.b[j]) return false;
  return true;
}

inline bool dual_feasible(const CanonicalLP& lp, const std::vector<Rational>& y) {
  if (y.size() != lp.n_dual()) return false;
  for (const auto& v : y)
    if (v < 0) return false;
  auto aty = column_load(lp, y);
  for (std::size_t i = 0; i < lp.n_primal(); ++i)
    if (aty[i] > lp.c[i]) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Graph relaxations

/// Fractional vertex cover: one variable per node, one row x_u + x_v >= 1 per edge
/// (row index = edge id). Its packing side is fractional matching.
inline CanonicalLP vertex_cover_lp(const Graph& g) {
  CanonicalLP lp;
  lp.c.assign(g.node_count(), 1);
  lp.b.assign(g.edge_count(), 1);
  for (edge_id e = 0; e < g.edge_count(); ++e) {
    auto [u, v] = g.edge(e);
    lp.entries.push_back({e, u, 1});
    lp.entries.push_back({e, v, 1});
  }
  lp.normalize();
  return lp;
}

/// Fractional dominating set: one variable per node, one row per closed neighborhood.
inline CanonicalLP dominating_set_lp(const Graph& g) {
  CanonicalLP lp;
  lp.c.assign(g.node_count(), 1);
  lp.b.assign(g.node_count(), 1);
  for (node_id v = 0; v < g.node_count(); ++v) {
    lp.entries.push_back({v, v, 1});
    for (node_id w : g.neighbors(v)) lp.entries.push_back({v, w, 1});
  }
  lp.normalize();
  return lp;
}

// ---------------------------------------------------------------------------
// Structured-document format: {"kind", "c", "b", "A": [[row, col, value], ...]}
// with values as "num/den" strings (plain integers accepted).

namespace detail {

inline Rational json_rational(const nlohmann::json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(std::to_string(v.get<long long>()));
  throw FormatError("lp: values must be \"num/den\" strings or integers");
}

}  // namespace detail

inline CanonicalLP lp_from_json(const nlohmann::json& j) {
  try {
    for (auto it = j.begin(); it != j.end(); ++it) {
      const auto& k = it.key();
      if (k != "kind" && k != "c" && k != "b" && k != "A") throw FormatError("lp: unknown key '" + k + "'");
    }
    CanonicalLP lp;
    auto kind = j.value("kind", std::string("covering"));
    if (kind == "covering") {
      lp.kind = LpKind::covering;
    } else if (kind == "packing") {
      lp.kind = LpKind::packing;
    } else {
      throw FormatError("lp: kind must be covering or packing");
    }
    for (const auto& v : j.at("c")) lp.c.push_back(detail::json_rational(v));
    for (const auto& v : j.at("b")) lp.b.push_back(detail::json_rational(v));
    for (const auto& e : j.at("A")) {
      if (!e.is_array() || e.size() != 3) throw FormatError("lp: A entries must be [row, col, value]");
      lp.entries.push_back({e[0].get<std::uint32_t>(), e[1].get<std::uint32_t>(), detail::json_rational(e[2])});
    }
    lp.normalize();
    lp.validate();
    return lp;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("lp: ") + e.what());
  }
}

inline nlohmann::json lp_to_json(const CanonicalLP& lp) {
  nlohmann::json j;
  j["kind"] = lp.kind == LpKind::covering ? "covering" : "packing";
  j["c"] = nlohmann::json::array();
  for (const auto& v : lp.c) j["c"].push_back(to_string(v));
  j["b"] = nlohmann::json::array();
  for (const auto& v : lp.b) j["b"].push_back(to_string(v));
  j["A"] = nlohmann::json::array();
  for (const auto& e : lp.entries) j["A"].push_back({e.row, e.col, to_string(e.value)});
  return j;
}

inline CanonicalLP load_lp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open lp file " + path);
  try {
    return lp_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("lp: ") + e.what());
  }
}

inline nlohmann::json rationals_to_json(const std::vector<Rational>& v) {
  auto j = nlohmann::json::array();
  for (const auto& q : v) j.push_back(to_string(q));
  return j;
}

// ---------------------------------------------------------------------------
// Exact solver

struct ExactLpSolution {
  std::vector<Rational> x;  // optimal for (P)
  std::vector<Rational> y;  // optimal for (D)
  Rational primal_value;
  Rational dual_value;
  std::size_t pivots = 0;
};

struct LpBudget {
  std::size_t max_rows = 200;
  std::size_t max_cols = 200;
};

/// Dense rational simplex on (D) in the form A^T y + s = c starting from the slack
/// basis (feasible since c >= 0), with Bland's rule. The optimal primal x is read off
/// the reduced costs of the slacks.
inline ExactLpSolution exact_lp(const CanonicalLP& lp, LpBudget budget = {}) {
  const std::size_t np = lp.n_primal(), nd = lp.n_dual();
  if (np > budget.max_cols || nd > budget.max_rows) {
    throw BudgetExceeded("exact_lp: " + std::to_string(nd) + "x" + std::to_string(np) + " exceeds budget");
  }
  for (const auto& v : lp.c)
    if (v < 0) throw FormatError("exact_lp: negative objective coefficient");

  // Tableau rows = primal variables (constraints of D); columns = y_0..y_{nd-1}, s_0..s_{np-1}.
  const std::size_t width = nd + np;
  std::vector<std::vector<Rational>> t(np, std::vector<Rational>(width, 0));
  std::vector<Rational> rhs(lp.c.begin(), lp.c.end());
  for (const auto& e : lp.entries) t[e.col][e.row] = e.value;
  for (std::size_t i = 0; i < np; ++i) t[i][nd + i] = 1;
  std::vector<Rational> reduced(width, 0);
  for (std::size_t j = 0; j < nd; ++j) reduced[j] = -lp.b[j];
  Rational objective = 0;
  std::vector<std::size_t> basis(np);
  for (std::size_t i = 0; i < np; ++i) basis[i] = nd + i;

  ExactLpSolution sol;
  for (;;) {
    std::size_t enter = width;
    for (std::size_t j = 0; j < width; ++j) {
      if (reduced[j] < 0) {
        enter = j;
        break;
      }
    }
    if (enter == width) break;
    std::size_t leave = np;
    Rational best_ratio;
    for (std::size_t i = 0; i < np; ++i) {
      if (t[i][enter] <= 0) continue;
      Rational ratio = rhs[i] / t[i][enter];
      if (leave == np || ratio < best_ratio || (ratio == best_ratio && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave == np) {
      if (lp.kind == LpKind::packing) throw Unbounded("packing LP is unbounded");
      throw Infeasible("covering LP is infeasible (its packing dual is unbounded)");
    }
    Rational pivot = t[leave][enter];
    for (auto& v : t[leave]) v /= pivot;
    rhs[leave] /= pivot;
    for (std::size_t i = 0; i < np; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      Rational f = t[i][enter];
      for (std::size_t j = 0; j < width; ++j)
        if (t[leave][j] != 0) t[i][j] -= f * t[leave][j];
      rhs[i] -= f * rhs[leave];
    }
    if (reduced[enter] != 0) {
      Rational f = reduced[enter];
      for (std::size_t j = 0; j < width; ++j)
        if (t[leave][j] != 0) reduced[j] -= f * t[leave][j];
      objective -= f * rhs[leave];
    }
    basis[leave] = enter;
    ++sol.pivots;
  }

  sol.y.assign(nd, 0);
  for (std::size_t i = 0; i < np; ++i)
    if (basis[i] < nd) sol.y[basis[i]] = rhs[i];
  sol.x.assign(np, 0);
  for (std::size_t i = 0; i < np; ++i) sol.x[i] = reduced[nd + i];
  sol.dual_value = dot(lp.b, sol.y);
  sol.primal_value = dot(lp.c, sol.x);
  if (sol.dual_value != objective || !dual_feasible(lp, sol.y) || !primal_feasible(lp, sol.x)) {
    throw Error("exact_lp: internal consistency failure");
  }
  return sol;
}

}  // namespace locality
