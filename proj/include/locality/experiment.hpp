#pragma once

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <nlohmann/json.hpp>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "locality/cds.hpp"
#include "locality/error.hpp"
#include "locality/generators.hpp"
#include "locality/graph_io.hpp"
#include "locality/lp.hpp"
#include "locality/lp_local.hpp"
#include "locality/mvc.hpp"
#include "locality/oracles.hpp"

namespace locality {

struct InstanceSpec {
  std::string id;
  std::string family;  // star, path, cycle, complete, complete_bipartite, kmm, gnp, connected, file
  std::size_t n = 0;
  std::size_t a = 0, b = 0;  // complete_bipartite sides
  std::size_t m = 0;         // kmm
  double p = 0.1;
  std::uint64_t seed = 0;
  std::string path;
};

struct AlgorithmSpec {
  std::string name;  // mvc, lp, mds, mcds
  std::uint32_t k = 1;
  double alpha = 2, beta = 1, eps = 0.5;
  std::uint32_t R = 4;
  std::optional<std::size_t> ell;
  std::optional<double> p;
  double lambda = 4;
};

struct ExperimentConfig {
  std::vector<InstanceSpec> instances;
  std::vector<AlgorithmSpec> algorithms;
  std::vector<std::uint64_t> seeds;
  bool oracle = true;
  std::string csv_path;
  bool record_wall_time = false;
  unsigned threads = 1;
};

namespace detail {

inline void reject_unknown(const nlohmann::json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be an object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, _] : j.items()) {
    if (!ok.count(key)) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

template <class T>
T config_value(const nlohmann::json& j, const char* key, T fallback, const std::string& where) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError(std::string("bad value for '") + key + "' in " + where);
  }
}

}  // namespace detail

inline ExperimentConfig parse_experiment_config(const nlohmann::json& j) {
  detail::reject_unknown(j, {"instances", "algorithms", "seeds", "oracle", "output", "record_wall_time", "threads"},
                         "config");
  ExperimentConfig cfg;
  if (!j.contains("instances") || !j.at("instances").is_array()) throw ConfigError("config needs an 'instances' array");
  if (!j.contains("algorithms") || !j.at("algorithms").is_array()) {
    throw ConfigError("config needs an 'algorithms' array");
  }
  static const std::set<std::string> families{"star", "path", "cycle", "complete", "complete_bipartite",
                                              "kmm", "gnp", "connected", "file"};
  std::size_t idx = 0;
  for (const auto& ij : j.at("instances")) {
    std::string where = "instance " + std::to_string(idx);
    detail::reject_unknown(ij, {"id", "family", "n", "a", "b", "m", "p", "seed", "path"}, where);
    InstanceSpec s;
    s.family = detail::config_value<std::string>(ij, "family", "", where);
    if (!families.count(s.family)) throw ConfigError("unknown family '" + s.family + "' in " + where);
    s.n = detail::config_value<std::size_t>(ij, "n", 0, where);
    s.a = detail::config_value<std::size_t>(ij, "a", 0, where);
    s.b = detail::config_value<std::size_t>(ij, "b", 0, where);
    s.m = detail::config_value<std::size_t>(ij, "m", 0, where);
    s.p = detail::config_value<double>(ij, "p", 0.1, where);
    s.seed = detail::config_value<std::uint64_t>(ij, "seed", 0, where);
    s.path = detail::config_value<std::string>(ij, "path", "", where);
    s.id = detail::config_value<std::string>(ij, "id", s.family + "-" + std::to_string(idx), where);
    cfg.instances.push_back(s);
    ++idx;
  }
  static const std::set<std::string> names{"mvc", "lp", "mds", "mcds"};
  idx = 0;
  for (const auto& aj : j.at("algorithms")) {
    std::string where = "algorithm " + std::to_string(idx++);
    detail::reject_unknown(aj, {"name", "k", "alpha", "beta", "eps", "R", "ell", "p", "lambda"}, where);
    AlgorithmSpec a;
    a.name = detail::config_value<std::string>(aj, "name", "", where);
    if (!names.count(a.name)) throw ConfigError("unknown algorithm '" + a.name + "' in " + where);
    a.k = detail::config_value<std::uint32_t>(aj, "k", 1, where);
    a.alpha = detail::config_value<double>(aj, "alpha", 2, where);
    a.beta = detail::config_value<double>(aj, "beta", 1, where);
    a.eps = detail::config_value<double>(aj, "eps", 0.5, where);
    a.R = detail::config_value<std::uint32_t>(aj, "R", 4, where);
    a.lambda = detail::config_value<double>(aj, "lambda", 4, where);
    if (aj.contains("ell")) a.ell = detail::config_value<std::size_t>(aj, "ell", 1, where);
    if (aj.contains("p")) a.p = detail::config_value<double>(aj, "p", 0.5, where);
    cfg.algorithms.push_back(a);
  }
  if (j.contains("seeds")) {
    if (!j.at("seeds").is_array()) throw ConfigError("'seeds' must be an array");
    for (const auto& s : j.at("seeds")) {
      if (!s.is_number_unsigned() && (!s.is_number_integer() || s.get<std::int64_t>() < 0)) throw ConfigError("seeds must be nonnegative integers");
      cfg.seeds.push_back(s.get<std::uint64_t>());
    }
  }
  cfg.oracle = detail::config_value<bool>(j, "oracle", true, "config");
  cfg.record_wall_time = detail::config_value<bool>(j, "record_wall_time", false, "config");
  cfg.threads = detail::config_value<unsigned>(j, "threads", 1, "config");
  if (j.contains("output")) {
    detail::reject_unknown(j.at("output"), {"csv"}, "output");
    cfg.csv_path = detail::config_value<std::string>(j.at("output"), "csv", "", "output");
  }
  return cfg;
}

inline Graph make_instance(const InstanceSpec& s) {
  if (s.family == "star") {
    if (s.n < 1) throw ConfigError("star needs n >= 1");
    return star_graph(s.n - 1);
  }
  if (s.family == "path") return path_graph(s.n);
  if (s.family == "cycle") return cycle_graph(s.n);
  if (s.family == "complete") return complete_graph(s.n);
  if (s.family == "complete_bipartite") return complete_bipartite_graph(s.a, s.b);
  if (s.family == "kmm") return kmm_graph(s.m);
  if (s.family == "gnp") return gnp_graph(s.n, s.p, s.seed);
  if (s.family == "connected") return connected_random_graph(s.n, s.p, s.seed);
  if (s.family == "file") return load_graph(s.path);
  throw ConfigError("unknown family '" + s.family + "'");
}

struct ReportRow {
  std::string instance_id, family;
  std::size_t n = 0, max_degree = 0;
  std::string algorithm;
  std::uint32_t k = 0;
  std::uint64_t seed = 0;
  std::optional<Rational> value, oracle_value, ratio;
  std::string bound;                  // decimal rendering of the theoretical bound, if any
  std::optional<bool> bound_satisfied;
  std::string error;
  std::optional<double> wall_time_ms;
};

struct ExperimentReport {
  std::vector<ReportRow> rows;
  std::vector<std::string> hard_violations;
  bool aborted = false;
};

inline const char* csv_header() {
  return "instance_id,family,n,max_degree,algorithm,k,seed,value,oracle_value,ratio_exact,ratio_decimal,bound,"
         "bound_satisfied,error,wall_time_ms";
}

namespace detail {

inline std::string decimal(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace detail

inline void write_csv(std::ostream& out, const ExperimentReport& report) {
  out << csv_header() << "\n";
  for (const auto& r : report.rows) {
    out << detail::csv_field(r.instance_id) << ',' << r.family << ',' << r.n << ',' << r.max_degree << ','
        << r.algorithm << ',' << r.k << ',' << r.seed << ',' << (r.value ? to_string(*r.value) : "") << ','
        << (r.oracle_value ? to_string(*r.oracle_value) : "") << ',' << (r.ratio ? to_string(*r.ratio) : "") << ','
        << (r.ratio ? detail::decimal(to_double(*r.ratio)) : "") << ',' << r.bound << ','
        << (r.bound_satisfied ? (*r.bound_satisfied ? "true" : "false") : "") << ',' << detail::csv_field(r.error)
        << ',' << (r.wall_time_ms ? detail::decimal(*r.wall_time_ms) : "") << "\n";
  }
}

namespace detail {

struct LpChoice {
  std::size_t ell;
  double p;
  std::uint32_t R;
  double q;
};

inline LpChoice lp_choice(const AlgorithmSpec& a, std::size_t n_dual) {
  LpChoice c{1, 0.5, a.R, 0};
  if (n_dual >= 2) {
    auto params = lp_parameters(n_dual, a.alpha, a.beta, a.eps, a.R);
    c = {params.ell, params.p, params.R, params.q};
  }
  if (a.ell) c.ell = *a.ell;
  if (a.p) c.p = *a.p;
  return c;
}

inline std::optional<Rational> oracle_value(const std::string& algo, const Graph& g) {
  try {
    if (algo == "mvc") return exact_mvc(g).value;
    if (algo == "mds") return exact_mds(g).value;
    if (algo == "mcds") return exact_mcds(g).value;
    if (algo == "lp") return exact_lp(dominating_set_lp(g)).primal_value;
  } catch (const BudgetExceeded&) {
  }
  return std::nullopt;
}

/// Fills value/bound fields; pushes hard-invariant failures onto `hard`.
inline void run_algorithm(const AlgorithmSpec& a, const Graph& g, std::uint64_t seed, unsigned threads,
                          ReportRow& row, std::vector<std::string>& hard) {
  EngineOptions opts{threads};
  auto tag = [&](const std::string& what) {
    hard.push_back(row.instance_id + "/" + a.name + "/seed " + std::to_string(seed) + ": " + what);
  };
  if (a.name == "mvc") {
    auto res = mvc_fmm(g, a.k, opts);
    row.value = Rational(static_cast<long>(res.cover.size()));
    if (!is_vertex_cover(g, res.cover)) tag("output is not a vertex cover");
    for (node_id v = 0; v < g.node_count(); ++v) {
      Rational load = 0;
      for (edge_id e : g.incident_edges(v)) load += res.edge_duals[e];
      if (load > 1) tag("duals exceed 1 at node " + std::to_string(v));
    }
    for (const auto& msg : res.violations) tag(msg);
    double delta = static_cast<double>(g.max_degree());
    row.bound = decimal(3 + std::pow(delta, 1.0 / a.k));
    return;
  }
  if (a.name == "lp") {
    auto lp = dominating_set_lp(g);
    auto c = lp_choice(a, lp.n_dual());
    auto res = solve_lp_local(lp, c.ell, c.p, c.R, seed, opts);
    row.value = res.primal_value;
    if (!primal_feasible(lp, res.x)) tag("primal output infeasible");
    if (!dual_feasible(lp, res.y)) tag("dual output infeasible");
    for (const auto& msg : res.violations) tag(msg);
    if (c.q > 0) row.bound = decimal(1 / (c.q * (1 - a.eps)));
    return;
  }
  if (a.name == "mds") {
    auto c = lp_choice(a, g.node_count());
    auto res = mds_pipeline(g, c.ell, c.p, c.R, a.lambda, seed, opts);
    row.value = Rational(static_cast<long>(res.dominating_set.size()));
    if (!is_dominating_set(g, res.dominating_set)) tag("output is not a dominating set");
    for (const auto& msg : res.lp.violations) tag(msg);
    return;
  }
  if (a.name == "mcds") {
    auto c = lp_choice(a, g.node_count());
    auto res = mcds_pipeline(g, a.k, c.ell, c.p, c.R, a.lambda, seed, opts);
    row.value = Rational(static_cast<long>(res.connected_set.size()));
    if (!is_dominating_set(g, res.connected_set) || !induces_connected(g, res.connected_set)) {
      tag("output is not a connected dominating set");
    }
    for (const auto& msg : res.mds.lp.violations) tag(msg);
    return;
  }
  throw ConfigError("unknown algorithm '" + a.name + "'");
}

}  // namespace detail

/// Runs instances x algorithms x seeds in config order. Module errors land in the error
/// column; the first hard-invariant violation stops the run (report.aborted).
inline ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  ExperimentReport report;
  for (const auto& inst : cfg.instances) {
    std::optional<Graph> g;
    std::string gen_error;
    try {
      g = make_instance(inst);
    } catch (const std::exception& e) {
      gen_error = e.what();
    }
    std::map<std::string, std::optional<Rational>> oracle_cache;
    for (const auto& algo : cfg.algorithms) {
      for (std::uint64_t seed : cfg.seeds) {
        ReportRow row;
        row.instance_id = inst.id;
        row.family = inst.family;
        row.algorithm = algo.name;
        row.k = algo.name == "mvc" || algo.name == "mcds" ? algo.k : 0;
        row.seed = seed;
        if (!g) {
          row.error = gen_error;
          report.rows.push_back(row);
          continue;
        }
        row.n = g->node_count();
        row.max_degree = g->max_degree();
        auto start = std::chrono::steady_clock::now();
        try {
          std::size_t before = report.hard_violations.size();
          detail::run_algorithm(algo, *g, seed, cfg.threads, row, report.hard_violations);
          if (cfg.oracle) {
            if (!oracle_cache.count(algo.name)) oracle_cache[algo.name] = detail::oracle_value(algo.name, *g);
            row.oracle_value = oracle_cache[algo.name];
          }
          if (row.value && row.oracle_value && *row.oracle_value > 0) {
            row.ratio = *row.value / *row.oracle_value;
            if (*row.ratio < 1) {
              report.hard_violations.push_back(row.instance_id + "/" + algo.name + ": ratio below 1");
            }
          }
          if (algo.name == "mvc" && row.ratio) {
            row.bound_satisfied = within_mvc_bound(*row.ratio, row.max_degree, algo.k);
          } else if (algo.name == "lp" && row.ratio && !row.bound.empty()) {
            row.bound_satisfied = to_double(*row.ratio) <= std::stod(row.bound);
          }
          if (report.hard_violations.size() > before) report.aborted = true;
        } catch (const std::exception& e) {
          row.error = e.what();
        }
        if (cfg.record_wall_time) {
          row.wall_time_ms =
              std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        }
        report.rows.push_back(row);
        if (report.aborted) return report;
      }
    }
  }
  return report;
}

inline nlohmann::json experiment_summary(const ExperimentReport& report) {
  nlohmann::json out;
  out["rows"] = report.rows.size();
  std::size_t errors = 0;
  std::map<std::string, std::vector<double>> ratios;
  std::map<std::string, std::size_t> bound_failures;
  for (const auto& r : report.rows) {
    if (!r.error.empty()) ++errors;
    if (r.ratio) ratios[r.algorithm].push_back(to_double(*r.ratio));
    if (r.bound_satisfied && !*r.bound_satisfied) ++bound_failures[r.algorithm];
  }
  out["errors"] = errors;
  out["hard_violations"] = report.hard_violations;
  out["aborted"] = report.aborted;
  nlohmann::json per = nlohmann::json::object();
  for (const auto& [name, rs] : ratios) {
    double sum = 0, mx = 0;
    for (double r : rs) {
      sum += r;
      mx = std::max(mx, r);
    }
    per[name] = {{"rows_with_ratio", rs.size()},
                 {"mean_ratio", sum / static_cast<double>(rs.size())},
                 {"max_ratio", mx},
                 {"bound_failures", bound_failures[name]}};
  }
  out["algorithms"] = per;
  return out;
}

}  // namespace locality
