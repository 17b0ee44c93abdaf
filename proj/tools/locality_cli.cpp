#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "locality/locality.hpp"

using namespace locality;
using nlohmann::json;

namespace {

DeltaSequence parse_deltas(const std::string& text) {
  DeltaSequence out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      out.push_back(std::stoull(part));
    } catch (const std::exception&) {
      throw ConfigError("bad delta entry '" + part + "'");
    }
  }
  return out;
}

struct TreeArgs {
  std::uint32_t k = 1;
  std::uint64_t delta = 0;
  std::string deltas;
  std::string n0;

  void attach(CLI::App* app) {
    app->add_option("--k", k, "Number of rounds / tree index (>= 1)")->required();
    app->add_option("--delta", delta, "Base of the sequence delta_i = 2^(i(i-1)/2) delta^i");
    app->add_option("--deltas", deltas, "Explicit comma-separated sequence delta_0,...,delta_{k+1}");
    app->add_option("--n0", n0, "Size of C_0 (default: smallest feasible)");
  }
  ClusterTree build() const {
    DeltaSequence d;
    if (!deltas.empty()) {
      d = parse_deltas(deltas);
    } else if (delta > 0) {
      d = delta_sequence(delta, k);
    } else {
      d = delta_sequence(4, k);
    }
    std::optional<BigInt> n;
    if (!n0.empty()) n = BigInt(n0);
    return build_cluster_tree(k, d, n);
  }
};

json tree_json(const ClusterTree& ct) {
  json j;
  j["k"] = ct.k;
  j["deltas"] = ct.deltas;
  j["n0"] = ct.n0.get_str();
  j["total_nodes"] = ct.total_size().get_str();
  for (const auto& c : ct.clusters) {
    j["clusters"].push_back({{"id", c.id}, {"level", c.level}, {"depth", c.depth}, {"size", c.size.get_str()}});
  }
  for (const auto& a : ct.arcs) {
    auto [dc, dd] = ct.label(a);
    j["arcs"].push_back({{"parent", a.parent}, {"child", a.child}, {"label", {dc, dd}}});
  }
  return j;
}

void emit_graph(const Graph& g, const std::string& out, const std::string& labels) {
  if (out.empty() || out == "-") {
    write_graph_text(std::cout, g);
  } else if (out.size() > 5 && out.substr(out.size() - 5) == ".json") {
    std::ofstream(out) << graph_to_json(g).dump() << "\n";
  } else {
    std::ofstream f(out);
    if (!f) throw std::runtime_error("cannot write " + out);
    write_graph_text(f, g);
  }
  if (!labels.empty() && !g.labels().empty()) {
    std::ofstream f(labels);
    if (!f) throw std::runtime_error("cannot write " + labels);
    write_labels_text(f, g);
  }
}

json rationals(const std::vector<Rational>& v) { return rationals_to_json(v); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"LOCAL-model algorithms, lower-bound constructions and exact oracles"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate graphs and cluster trees");
  gen->require_subcommand(1);
  std::string out_path, labels_path, in_graph, in_labels;
  std::uint64_t seed = 1;

  TreeArgs ct_args;
  auto* gen_ct = gen->add_subcommand("ct", "Cluster tree CT_k as JSON");
  ct_args.attach(gen_ct);

  TreeArgs gk_args;
  bool boost = false;
  auto* gen_gk = gen->add_subcommand("gk", "Instance of G_k (naive, or girth-boosted with --boost)");
  gk_args.attach(gen_gk);
  gen_gk->add_flag("--boost", boost, "Apply the finite-field girth boost (k >= 2)");
  gen_gk->add_option("--seed", seed, "Seed for the block shuffle");
  gen_gk->add_option("--out", out_path, "Graph output file (default stdout; .json selects JSON)");
  gen_gk->add_option("--labels-out", labels_path, "Cluster-label output file");

  auto* gen_hk = gen->add_subcommand("hk", "Two copies of a graph joined by a perfect matching");
  gen_hk->add_option("--graph", in_graph, "Input graph")->required();
  gen_hk->add_option("--labels", in_labels, "Input label file");
  gen_hk->add_option("--out", out_path, "Graph output file");
  gen_hk->add_option("--labels-out", labels_path, "Label output file");

  std::size_t dq_r = 3;
  std::uint64_t dq_q = 3;
  auto* gen_dq = gen->add_subcommand("dq", "Finite-field incidence graph D(r,q)");
  gen_dq->add_option("--r", dq_r, "Vector length (>= 2)")->required();
  gen_dq->add_option("--q", dq_q, "Prime field order")->required();
  gen_dq->add_option("--out", out_path, "Graph output file");

  InstanceSpec fam;
  auto* gen_fam = gen->add_subcommand("family", "Standard graph families");
  gen_fam->add_option("--family", fam.family,
                      "star|path|cycle|complete|complete_bipartite|kmm|gnp|connected")->required();
  gen_fam->add_option("--n", fam.n, "Node count");
  gen_fam->add_option("--a", fam.a, "First side (complete_bipartite)");
  gen_fam->add_option("--b", fam.b, "Second side (complete_bipartite)");
  gen_fam->add_option("--m", fam.m, "m for K_{m,sqrt m}");
  gen_fam->add_option("--p", fam.p, "Edge probability (gnp, connected)");
  gen_fam->add_option("--seed", fam.seed, "Generator seed");
  gen_fam->add_option("--out", out_path, "Graph output file");

  // run
  auto* run = app.add_subcommand("run", "Run a distributed algorithm");
  run->require_subcommand(1);
  std::string graph_path, lp_path;
  std::uint32_t k = 1, R = 4;
  std::size_t ell = 0;
  double p = 0, lambda = 4, alpha = 2, beta = 1, eps = 0.5;
  unsigned threads = 1;
  auto add_lp_flags = [&](CLI::App* a) {
    a->add_option("--ell", ell, "Number of decompositions (default from alpha/beta/eps)");
    a->add_option("--p", p, "Decomposition probability (default n_d^(-alpha/R))");
    a->add_option("--R", R, "Decomposition radius");
    a->add_option("--alpha", alpha, "alpha > 1");
    a->add_option("--beta", beta, "beta > 0");
    a->add_option("--eps", eps, "0 < eps < 1");
    a->add_option("--seed", seed, "Seed");
    a->add_option("--threads", threads, "Worker threads");
  };
  auto* run_mvc = run->add_subcommand("mvc", "Vertex cover and fractional matching");
  run_mvc->add_option("--graph", graph_path, "Graph file")->required();
  run_mvc->add_option("--k", k, "Iterations (>= 1)")->required();
  run_mvc->add_option("--seed", seed, "Seed (the algorithm is deterministic)");
  run_mvc->add_option("--threads", threads, "Worker threads");

  auto* run_lp = run->add_subcommand("lp", "Local covering/packing LP approximation");
  run_lp->add_option("--lp", lp_path, "LP JSON file")->required();
  add_lp_flags(run_lp);

  auto* run_mds = run->add_subcommand("mds", "Dominating set via LP and rounding");
  run_mds->add_option("--graph", graph_path, "Graph file")->required();
  run_mds->add_option("--lambda", lambda, "Rounding factor (>= 2+sqrt 3)");
  add_lp_flags(run_mds);

  auto* run_mcds = run->add_subcommand("mcds", "Connected dominating set");
  run_mcds->add_option("--graph", graph_path, "Graph file")->required();
  run_mcds->add_option("--k", k, "Short-cycle filter parameter")->required();
  run_mcds->add_option("--lambda", lambda, "Rounding factor");
  add_lp_flags(run_mcds);

  // verify
  auto* verify = app.add_subcommand("verify", "Verification checks");
  verify->require_subcommand(1);
  TreeArgs view_args;
  auto* verify_views = verify->add_subcommand("views", "k-equality of cluster-level views of C_0 and C_1");
  view_args.attach(verify_views);
  std::uint32_t girth_limit = 0;
  auto* verify_girth = verify->add_subcommand("girth", "Exact girth of a graph");
  verify_girth->add_option("--graph", graph_path, "Graph file")->required();
  verify_girth->add_option("--limit", girth_limit, "Only look for cycles up to this length");
  verify_girth->add_option("--threads", threads, "Worker threads");

  // oracle
  std::string problem;
  auto* oracle = app.add_subcommand("oracle", "Exact small-instance solvers");
  oracle->require_subcommand(0, 1);
  oracle->add_option("--problem", problem, "MVC|MDS|MCDS|MaxM|MIS");
  oracle->add_option("--graph", graph_path, "Graph file");
  std::string mis_set;
  oracle->add_option("--set", mis_set, "Comma-separated node set (MIS check)");
  auto* oracle_lp = oracle->add_subcommand("lp", "Exact rational LP optimum");
  oracle_lp->add_option("--lp", lp_path, "LP JSON file")->required();

  // experiment
  std::string config_path, csv_override;
  auto* experiment = app.add_subcommand("experiment", "Run a configured experiment and write a CSV report");
  experiment->add_option("--config", config_path, "Experiment JSON config")->required();
  experiment->add_option("--csv", csv_override, "CSV output (overrides the config; '-' for stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen_ct) {
      std::cout << tree_json(ct_args.build()).dump(2) << "\n";
    } else if (*gen_gk) {
      auto ct = gk_args.build();
      Graph g = instantiate_naive(ct, seed);
      if (boost) g = girth_boost(ct, g);
      emit_graph(g, out_path, labels_path);
    } else if (*gen_hk) {
      emit_graph(build_hk(load_graph(in_graph, in_labels)), out_path, labels_path);
    } else if (*gen_dq) {
      emit_graph(dq_graph(dq_r, dq_q), out_path, "");
    } else if (*gen_fam) {
      emit_graph(make_instance(fam), out_path, "");
    } else if (*run_mvc) {
      Graph g = load_graph(graph_path);
      auto res = mvc_fmm(g, k, EngineOptions{threads});
      json j;
      j["cover"] = res.cover;
      j["cover_size"] = res.cover.size();
      j["dual_sum"] = to_string(res.dual_sum);
      j["edge_duals"] = rationals(res.edge_duals);
      if (auto r = res.ratio()) j["ratio_cover_over_duals"] = to_string(*r);
      j["bound"] = 3 + std::pow(static_cast<double>(g.max_degree()), 1.0 / k);
      j["engine_rounds"] = res.engine_rounds;
      j["assertions_fired"] = res.violations;
      j["dynamic_degrees"] = res.dynamic_degrees;
      std::cout << j.dump(2) << "\n";
      return res.violations.empty() ? 0 : 2;
    } else if (*run_lp) {
      auto lp = load_lp(lp_path);
      auto params = lp.n_dual() >= 2 ? lp_parameters(lp.n_dual(), alpha, beta, eps, R) : LpParameters{0.5, R, 1, 0};
      if (ell) params.ell = ell;
      if (p > 0) params.p = p;
      auto res = solve_lp_local(lp, params.ell, params.p, R, seed, EngineOptions{threads});
      json j;
      j["ell"] = params.ell;
      j["p"] = params.p;
      j["R"] = R;
      j["x"] = rationals(res.x);
      j["y"] = rationals(res.y);
      j["primal_value"] = to_string(res.primal_value);
      j["dual_value"] = to_string(res.dual_value);
      if (auto r = res.ratio()) j["ratio"] = to_string(*r);
      j["primal_feasible"] = primal_feasible(lp, res.x);
      j["dual_feasible"] = dual_feasible(lp, res.y);
      j["guarded_rows"] = res.guarded_rows;
      j["violations"] = res.violations;
      std::cout << j.dump(2) << "\n";
      return res.violations.empty() ? 0 : 2;
    } else if (*run_mds || *run_mcds) {
      Graph g = load_graph(graph_path);
      auto params = g.node_count() >= 2 ? lp_parameters(g.node_count(), alpha, beta, eps, R) : LpParameters{0.5, R, 1, 0};
      if (ell) params.ell = ell;
      if (p > 0) params.p = p;
      json j;
      j["ell"] = params.ell;
      j["p"] = params.p;
      j["R"] = R;
      if (*run_mds) {
        auto res = mds_pipeline(g, params.ell, params.p, R, lambda, seed, EngineOptions{threads});
        j["dominating_set"] = res.dominating_set;
        j["size"] = res.dominating_set.size();
        j["valid"] = is_dominating_set(g, res.dominating_set);
        j["lp_value"] = to_string(res.lp.primal_value);
        j["repaired_rows"] = res.rounding.repaired;
      } else {
        auto res = mcds_pipeline(g, k, params.ell, params.p, R, lambda, seed, EngineOptions{threads});
        j["dominating_set"] = res.dominating_set;
        j["connected_dominating_set"] = res.connected_set;
        j["sizes"] = {res.dominating_set.size(), res.connected_set.size()};
        j["dominates"] = is_dominating_set(g, res.connected_set);
        j["connected"] = induces_connected(g, res.connected_set);
        j["gd_edges"] = res.gd_edges;
        j["kept_edges"] = res.kept_edges;
      }
      std::cout << j.dump(2) << "\n";
    } else if (*verify_views) {
      auto ct = view_args.build();
      ClusterViewBuilder b(ct.links());
      ClusterViewBuilder h(counterpart_links(ct.links()));
      auto n = static_cast<std::uint32_t>(ct.clusters.size());
      auto v0 = b.view(0, std::nullopt, ct.k);
      bool c01 = views_equal(v0, b.view(1, std::nullopt, ct.k), ct.k);
      auto h0 = h.view(0, std::nullopt, ct.k);
      bool hk = views_equal(h0, h.view(1, std::nullopt, ct.k), ct.k) &&
                views_equal(h0, h.view(n, std::nullopt, ct.k), ct.k) &&
                views_equal(h0, h.view(n + 1, std::nullopt, ct.k), ct.k);
      json j{{"k", ct.k}, {"clusters", n}, {"c0_c1_equal", c01}, {"hk_equal", hk}};
      std::cout << j.dump(2) << "\n";
      return c01 && hk ? 0 : 2;
    } else if (*verify_girth) {
      Graph g = load_graph(graph_path);
      auto gi = girth_limit ? girth_up_to(g, girth_limit, threads) : girth(g, threads);
      json j{{"n", g.node_count()}, {"m", g.edge_count()}};
      if (gi) {
        j["girth"] = *gi;
      } else {
        j["girth"] = girth_limit ? "> " + std::to_string(girth_limit) : "infinity";
      }
      std::cout << j.dump(2) << "\n";
    } else if (*oracle_lp) {
      auto sol = exact_lp(load_lp(lp_path));
      json j{{"primal_value", to_string(sol.primal_value)},
             {"dual_value", to_string(sol.dual_value)},
             {"x", rationals(sol.x)},
             {"y", rationals(sol.y)}};
      std::cout << j.dump(2) << "\n";
    } else if (*oracle) {
      if (problem.empty() || graph_path.empty()) throw ConfigError("oracle needs --problem and --graph");
      Graph g = load_graph(graph_path);
      ExactSolution sol;
      if (problem == "MIS") {
        std::vector<node_id> set;
        for (auto v : parse_deltas(mis_set)) set.push_back(static_cast<node_id>(v));
        sol = check_mis(g, set);
      } else {
        sol = exact_solve(problem, g);
      }
      json j{{"problem", sol.problem}, {"value", to_string(sol.value)}, {"valid", sol.valid}};
      if (!sol.nodes.empty()) j["nodes"] = sol.nodes;
      if (!sol.edges.empty()) j["edges"] = sol.edges;
      std::cout << j.dump(2) << "\n";
    } else if (*experiment) {
      std::ifstream f(config_path);
      if (!f) throw ConfigError("cannot read " + config_path);
      json cj;
      try {
        cj = json::parse(f);
      } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
      }
      auto cfg = parse_experiment_config(cj);
      if (!csv_override.empty()) cfg.csv_path = csv_override;
      auto report = run_experiment(cfg);
      if (cfg.csv_path.empty() || cfg.csv_path == "-") {
        write_csv(std::cout, report);
      } else {
        std::ofstream out(cfg.csv_path);
        if (!out) throw std::runtime_error("cannot write " + cfg.csv_path);
        write_csv(out, report);
      }
      auto& sink = cfg.csv_path.empty() || cfg.csv_path == "-" ? std::cerr : std::cout;
      sink << experiment_summary(report).dump(2) << "\n";
      return report.hard_violations.empty() ? 0 : 2;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
