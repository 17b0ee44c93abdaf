#pragma once

#include <fstream>
#include <istream>
#include <nlohmann/json.hpp>
#include <ostream>
#include <sstream>
#include <string>

#include "locality/error.hpp"
#include "locality/graph.hpp"

namespace locality {

// Text format: "n m" header, then m lines "u v" with u < v. Labels live in a separate
// file with one "v label" line per node.

inline Graph read_graph_text(std::istream& in) {
  std::size_t n = 0, m = 0;
  if (!(in >> n >> m)) throw FormatError("graph: missing 'n m' header");
  std::vector<Edge> edges;
  edges.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    long long u = 0, v = 0;
    if (!(in >> u >> v)) throw FormatError("graph: expected " + std::to_string(m) + " edges");
    if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= n || static_cast<std::size_t>(v) >= n) {
      throw FormatError("graph: endpoint out of range on edge " + std::to_string(i));
    }
    edges.emplace_back(static_cast<node_id>(u), static_cast<node_id>(v));
  }
  std::string extra;
  if (in >> extra) throw FormatError("graph: trailing data '" + extra + "'");
  try {
    return Graph::from_edges(n, std::move(edges));
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("graph: ") + e.what());
  }
}

inline std::vector<std::int64_t> read_labels_text(std::istream& in, std::size_t n) {
  std::vector<std::int64_t> labels(n, 0);
  std::vector<char> seen(n, 0);
  long long v = 0;
  std::int64_t label = 0;
  while (in >> v >> label) {
    if (v < 0 || static_cast<std::size_t>(v) >= n) throw FormatError("labels: node out of range");
    if (seen[v]) throw FormatError("labels: node " + std::to_string(v) + " listed twice");
    seen[v] = 1;
    labels[v] = label;
  }
  if (!in.eof()) throw FormatError("labels: malformed line");
  for (std::size_t i = 0; i < n; ++i) {
    if (!seen[i]) throw FormatError("labels: node " + std::to_string(i) + " missing");
  }
  return labels;
}

inline void write_graph_text(std::ostream& out, const Graph& g) {
  out << g.node_count() << ' ' << g.edge_count() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

inline void write_labels_text(std::ostream& out, const Graph& g) {
  for (node_id v = 0; v < g.labels().size(); ++v) out << v << ' ' << g.labels()[v] << '\n';
}

inline nlohmann::json graph_to_json(const Graph& g) {
  nlohmann::json j;
  j["n"] = g.node_count();
  j["edges"] = nlohmann::json::array();
  for (auto [u, v] : g.edges()) j["edges"].push_back({u, v});
  if (!g.labels().empty()) j["labels"] = g.labels();
  return j;
}

inline Graph graph_from_json(const nlohmann::json& j) {
  try {
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (it.key() != "n" && it.key() != "edges" && it.key() != "labels") {
        throw FormatError("graph json: unknown key '" + it.key() + "'");
      }
    }
    auto n = j.at("n").get<std::size_t>();
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw FormatError("graph json: edge must be [u, v]");
      edges.emplace_back(e[0].get<node_id>(), e[1].get<node_id>());
    }
    std::optional<std::vector<std::int64_t>> labels;
    if (j.contains("labels")) labels = j["labels"].get<std::vector<std::int64_t>>();
    return Graph::from_edges(n, std::move(edges), std::move(labels));
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("graph json: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("graph json: ") + e.what());
  }
}

/// Loads a graph file; ".json" selects the structured variant, anything else the text format.
inline Graph load_graph(const std::string& path, const std::string& labels_path = "") {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open graph file " + path);
  Graph g;
  if (path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0) {
    g = graph_from_json(nlohmann::json::parse(in, nullptr, true, false));
  } else {
    g = read_graph_text(in);
  }
  if (!labels_path.empty()) {
    std::ifstream lin(labels_path);
    if (!lin) throw FormatError("cannot open label file " + labels_path);
    g = g.with_labels(read_labels_text(lin, g.node_count()));
  }
  return g;
}

inline std::string graph_to_text(const Graph& g) {
  std::ostringstream out;
  write_graph_text(out, g);
  return out.str();
}

}  // namespace locality
