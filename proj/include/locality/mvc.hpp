#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "locality/engine.hpp"
#include "locality/graph.hpp"
#include "locality/rational.hpp"

namespace locality {

struct MvcFmmResult {
  std::vector<node_id> cover;
  std::vector<Rational> edge_duals;  // normalized y, indexed by edge id
  Rational dual_sum;                 // sum of normalized y
  Rational max_raw_load;             // max_i Y_i before normalization
  // dynamic_degrees[it][v] = number of uncovered edges at v when iteration `it` starts.
  std::vector<std::vector<std::uint64_t>> dynamic_degrees;
  std::vector<std::string> violations;  // degree-decay and load assertions that fired
  std::uint32_t engine_rounds = 0;

  /// |cover| / sum y; nullopt when there are no edges (both sides are zero).
  std::optional<Rational> ratio() const {
    if (dual_sum == 0) return std::nullopt;
    return Rational(static_cast<long>(cover.size())) / dual_sum;
  }
};

/// Whether r <= 3 + Delta^(1/k), evaluated exactly.
inline bool within_mvc_bound(const Rational& r, std::uint64_t max_degree, std::uint32_t k) {
  return at_most_offset_plus_root(r, 3, Rational(BigInt(std::to_string(max_degree))), k);
}

/// Per-node program for the k-iteration vertex cover / fractional matching algorithm.
/// Each iteration uses three communication rounds (dynamic degrees, first-wave joins,
/// second-wave joins); one last round exchanges loads for normalization.
class MvcFmmProtocol {
 public:
  struct Peer {
    node_id id;
    bool covered_at_start = false;  // edge covered when the current iteration began
    bool covered = false;
    Rational y;  // this endpoint's copy of the edge dual
  };
  struct State {
    node_id self;
    bool in_cover = false;
    std::uint64_t dyn_degree = 0;
    Rational load;  // Y_i
    std::vector<Peer> peers;
    std::vector<std::uint64_t> degree_history;
    std::vector<std::string> violations;
  };
  struct Message {
    std::uint64_t value = 0;  // dynamic degree in phase 0
    bool joined = false;
    Rational amount;          // 1/degree (phase 1), scale factor (phase 2), load (final)
    friend bool operator==(const Message&, const Message&) = default;
  };
  struct Output {
    bool in_cover;
    std::vector<std::pair<node_id, Rational>> duals;  // (neighbor, normalized y)
    Rational raw_load;
    std::vector<std::uint64_t> degree_history;
    std::vector<std::string> violations;
    friend bool operator==(const Output&, const Output&) = default;
  };

  MvcFmmProtocol(std::uint32_t k, std::uint64_t max_degree) : k_(k), max_degree_(max_degree) {
    if (k == 0) throw std::invalid_argument("mvc_fmm: k must be positive");
  }

  std::uint32_t rounds() const { return 3 * k_ + 1; }

  State init(const NodeContext& ctx) const {
    State s;
    s.self = ctx.id;
    for (node_id w : ctx.neighbors) s.peers.push_back(Peer{w, false, false, 0});
    return s;
  }

  std::pair<State, Outbox<Message>> step(State s, std::uint32_t t, const Inbox<Message>& inbox) const {
    Outbox<Message> out;
    if (t == 3 * k_ + 1) {
      // Normalize by the larger of the two endpoint loads.
      for (const auto& [from, msg] : inbox) {
        Peer& p = peer(s, from);
        Rational denom = std::max(s.load, msg.amount);
        if (denom > 0) p.y /= denom;
      }
      return {std::move(s), std::move(out)};
    }
    const std::uint32_t it = t / 3, phase = t % 3;
    const std::uint32_t ell = k_ - 1 - std::min(it, k_ - 1);

    if (phase == 0) {
      apply_second_wave(s, inbox);
      if (it == k_) {
        s.load = load_of(s);
        if (!within_mvc_bound(s.load, max_degree_, k_)) {
          s.violations.push_back("node " + std::to_string(s.self) + ": load " + to_string(s.load) +
                                 " exceeds 3 + Delta^(1/k)");
        }
        for (const auto& p : s.peers) out.emplace_back(p.id, Message{0, false, s.load});
        return {std::move(s), std::move(out)};
      }
      s.dyn_degree = 0;
      for (auto& p : s.peers) {
        p.covered_at_start = p.covered;
        if (!p.covered) ++s.dyn_degree;
      }
      s.degree_history.push_back(s.dyn_degree);
      // Degree decay: dyn_degree <= Delta^((ell+1)/k).
      if (ipow(BigInt(std::to_string(s.dyn_degree)), k_) >
          ipow(BigInt(std::to_string(max_degree_)), ell + 1)) {
        s.violations.push_back("node " + std::to_string(s.self) + ": dynamic degree " +
                               std::to_string(s.dyn_degree) + " too large at iteration " +
                               std::to_string(it));
      }
      for (const auto& p : s.peers) out.emplace_back(p.id, Message{s.dyn_degree, false, 0});
    } else if (phase == 1) {
      std::uint64_t max_nbr = 0;
      for (const auto& [_, msg] : inbox) max_nbr = std::max(max_nbr, msg.value);
      bool join = false;
      if (!s.in_cover && s.dyn_degree > 0) {
        BigInt lhs = ipow(BigInt(std::to_string(s.dyn_degree)), ell + 1);
        BigInt rhs = ipow(BigInt(std::to_string(max_nbr)), ell);
        join = lhs >= rhs;
      }
      Rational share = 0;
      if (join) {
        s.in_cover = true;
        share = Rational(1, 1) / Rational(BigInt(std::to_string(s.dyn_degree)));
        for (auto& p : s.peers) {
          if (!p.covered_at_start) p.y += share;
          p.covered = true;
        }
      }
      for (const auto& p : s.peers) out.emplace_back(p.id, Message{0, join, share});
    } else {
      for (const auto& [from, msg] : inbox) {
        if (!msg.joined) continue;
        Peer& p = peer(s, from);
        if (!p.covered_at_start) p.y += msg.amount;
        p.covered = true;
      }
      s.load = load_of(s);
      bool join = false;
      Rational factor = 1;
      if (!s.in_cover && s.load >= 1) {
        join = true;
        s.in_cover = true;
        factor = 1 + Rational(1) / s.load;
        for (auto& p : s.peers) {
          p.y *= factor;
          p.covered = true;
        }
      }
      for (const auto& p : s.peers) out.emplace_back(p.id, Message{0, join, factor});
    }
    return {std::move(s), std::move(out)};
  }

  Output finalize(const State& s) const {
    Output o{s.in_cover, {}, s.load, s.degree_history, s.violations};
    for (const auto& p : s.peers) o.duals.emplace_back(p.id, p.y);
    return o;
  }

  std::size_t message_bytes(const Message& m) const {
    return sizeof(std::uint64_t) + 1 + mpz_sizeinbase(m.amount.get_num_mpz_t(), 256) +
           mpz_sizeinbase(m.amount.get_den_mpz_t(), 256);
  }

 private:
  static Peer& peer(State& s, node_id id) {
    auto it = std::lower_bound(s.peers.begin(), s.peers.end(), id,
                               [](const Peer& p, node_id v) { return p.id < v; });
    return *it;
  }
  static Rational load_of(const State& s) {
    Rational y = 0;
    for (const auto& p : s.peers) y += p.y;
    return y;
  }
  static void apply_second_wave(State& s, const Inbox<Message>& inbox) {
    for (const auto& [from, msg] : inbox) {
      if (!msg.joined) continue;
      Peer& p = peer(s, from);
      p.y *= msg.amount;
      p.covered = true;
    }
  }

  std::uint32_t k_;
  std::uint64_t max_degree_;
};

/// Runs the vertex cover / fractional matching algorithm with k iterations.
inline MvcFmmResult mvc_fmm(const Graph& g, std::uint32_t k, EngineOptions opts = {}) {
  MvcFmmProtocol proto(k, g.max_degree());
  auto transcript = run_protocol(g, proto, proto.rounds(), 0, opts);
  MvcFmmResult res;
  res.engine_rounds = transcript.rounds;
  res.edge_duals.assign(g.edge_count(), 0);
  res.dual_sum = 0;
  res.max_raw_load = 0;
  res.dynamic_degrees.assign(k, std::vector<std::uint64_t>(g.node_count(), 0));
  for (node_id v = 0; v < g.node_count(); ++v) {
    const auto& o = transcript.outputs[v];
    if (o.in_cover) res.cover.push_back(v);
    res.max_raw_load = std::max(res.max_raw_load, o.raw_load);
    for (std::size_t it = 0; it < o.degree_history.size(); ++it) res.dynamic_degrees[it][v] = o.degree_history[it];
    res.violations.insert(res.violations.end(), o.violations.begin(), o.violations.end());
    for (const auto& [w, y] : o.duals) {
      edge_id e = *g.edge_index(v, w);
      if (v < w) {
        res.edge_duals[e] = y;
      } else if (res.edge_duals[e] != y) {
        res.violations.push_back("endpoint copies of edge " + std::to_string(e) + " disagree");
      }
    }
  }
  for (const auto& y : res.edge_duals) res.dual_sum += y;
  return res;
}

}  // namespace locality
