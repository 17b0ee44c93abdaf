#pragma once

#include <algorithm>
#include <concepts>
#include <functional>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "locality/error.hpp"
#include "locality/generators.hpp"
#include "locality/graph.hpp"
#include "locality/view_tree.hpp"

namespace locality {

struct NodeContext {
  node_id id;
  std::span<const node_id> neighbors;
  std::optional<std::int64_t> label;
  std::uint64_t seed;
};

template <class M>
using Inbox = std::vector<std::pair<node_id, M>>;  // (sender, message), sorted by sender
template <class M>
using Outbox = std::vector<std::pair<node_id, M>>;  // (destination, message)

/// A per-node state machine. step() is called once before the first round with an
/// empty inbox and then once per round with the messages sent to the node in the
/// previous call; whatever the last call sends is dropped.
template <class P>
concept RoundProtocol = requires(const P& p, const NodeContext& ctx, typename P::State s,
                                 std::uint32_t round, const Inbox<typename P::Message>& inbox) {
  { p.init(ctx) } -> std::same_as<typename P::State>;
  {
    p.step(std::move(s), round, inbox)
  } -> std::same_as<std::pair<typename P::State, Outbox<typename P::Message>>>;
  { p.finalize(s) } -> std::same_as<typename P::Output>;
};

template <class Output>
struct RunTranscript {
  std::vector<Output> outputs;
  std::vector<std::uint64_t> messages_per_round;
  std::vector<std::uint64_t> bytes_per_round;
  std::uint32_t rounds = 0;

  friend bool operator==(const RunTranscript&, const RunTranscript&) = default;
};

struct EngineOptions {
  unsigned threads = 1;  // 0 = hardware concurrency
};

namespace detail {

template <class F>
void parallel_for(std::size_t n, unsigned threads, F&& fn) {
  unsigned workers = worker_count(threads, n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::jthread> pool;
  for (unsigned t = 0; t < workers; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < n; i += workers) fn(i);
    });
  }
}

template <class P, class M>
std::size_t message_size(const P& proto, const M& msg) {
  if constexpr (requires { proto.message_bytes(msg); }) {
    return proto.message_bytes(msg);
  } else {
    return sizeof(M);
  }
}

}  // namespace detail

/// Runs `proto` for k synchronous rounds on every node of g. Node v's randomness is
/// seeded with derive_seed(seed, v), so results depend only on (g, proto, k, seed).
template <RoundProtocol P>
RunTranscript<typename P::Output> run_protocol(const Graph& g, const P& proto, std::uint32_t k,
                                               std::uint64_t seed, EngineOptions opts = {}) {
  using State = typename P::State;
  using Message = typename P::Message;
  const std::size_t n = g.node_count();

  std::vector<std::optional<State>> states(n);
  detail::parallel_for(n, opts.threads, [&](std::size_t v) {
    auto id = static_cast<node_id>(v);
    states[v].emplace(proto.init(NodeContext{id, g.neighbors(id), g.label(id), derive_seed(seed, v)}));
  });

  RunTranscript<typename P::Output> transcript;
  transcript.rounds = k;
  if (k > 0) {
    std::vector<Inbox<Message>> inboxes(n);
    std::vector<Outbox<Message>> outboxes(n);
    for (std::uint32_t t = 0; t <= k; ++t) {
      detail::parallel_for(n, opts.threads, [&](std::size_t v) {
        auto [next, out] = proto.step(std::move(*states[v]), t, inboxes[v]);
        states[v].emplace(std::move(next));
        outboxes[v] = std::move(out);
      });
      if (t == k) break;
      for (auto& inbox : inboxes) inbox.clear();
      std::uint64_t count = 0, bytes = 0;
      for (node_id v = 0; v < n; ++v) {
        for (auto& [dest, msg] : outboxes[v]) {
          if (dest >= n || !g.has_edge(v, dest)) {
            throw ProtocolFault("node " + std::to_string(v) + " sent to non-neighbor " +
                                std::to_string(dest));
          }
          ++count;
          bytes += detail::message_size(proto, msg);
          inboxes[dest].emplace_back(v, std::move(msg));
        }
      }
      transcript.messages_per_round.push_back(count);
      transcript.bytes_per_round.push_back(bytes);
    }
  }

  transcript.outputs.resize(n);
  detail::parallel_for(n, opts.threads,
                       [&](std::size_t v) { transcript.outputs[v] = proto.finalize(*states[v]); });
  return transcript;
}

// ---------------------------------------------------------------------------
// Reference protocols

/// Every node learns the largest id within distance k.
struct FloodMax {
  struct State {
    node_id best;
    std::vector<node_id> neighbors;
  };
  using Message = node_id;
  using Output = node_id;

  State init(const NodeContext& ctx) const {
    return {ctx.id, {ctx.neighbors.begin(), ctx.neighbors.end()}};
  }
  std::pair<State, Outbox<Message>> step(State s, std::uint32_t, const Inbox<Message>& inbox) const {
    for (const auto& [_, m] : inbox) s.best = std::max(s.best, m);
    Outbox<Message> out;
    for (node_id w : s.neighbors) out.emplace_back(w, s.best);
    return {std::move(s), std::move(out)};
  }
  Output finalize(const State& s) const { return s.best; }
};

/// Every node reconstructs its k-hop view: the message from v to u in round t is v's
/// depth-(t-1) view with the branch toward u removed.
struct GatherView {
  struct State {
    std::optional<std::int64_t> label;
    std::vector<node_id> neighbors;
    Inbox<ViewTree> last;
    bool any_round = false;
  };
  using Message = ViewTree;
  using Output = ViewTree;

  State init(const NodeContext& ctx) const {
    return {ctx.label, {ctx.neighbors.begin(), ctx.neighbors.end()}, {}, false};
  }
  std::pair<State, Outbox<Message>> step(State s, std::uint32_t round, const Inbox<Message>& inbox) const {
    Outbox<Message> out;
    if (round == 0) {
      for (node_id w : s.neighbors) out.emplace_back(w, ViewTree::leaf(s.label));
      return {std::move(s), std::move(out)};
    }
    s.last = inbox;
    s.any_round = true;
    for (node_id u : s.neighbors) {
      std::vector<ViewTree::Child> kids;
      for (const auto& [w, view] : inbox) {
        if (w != u) kids.emplace_back(1, view);
      }
      out.emplace_back(u, ViewTree::make(s.label, std::move(kids)));
    }
    return {std::move(s), std::move(out)};
  }
  Output finalize(const State& s) const {
    if (!s.any_round) return ViewTree::leaf(s.label);
    std::vector<ViewTree::Child> kids;
    for (const auto& [_, view] : s.last) kids.emplace_back(1, view);
    return ViewTree::make(s.label, std::move(kids));
  }
  std::size_t message_bytes(const Message& m) const { return 16 + 16 * m.children().size(); }
};

/// Every node learns (id, distance, payload) for all nodes within distance k, where a
/// node's payload is payload_of(id).
template <class Payload>
struct BallGather {
  struct Entry {
    node_id id;
    std::uint32_t dist;
    Payload payload;
    friend bool operator==(const Entry&, const Entry&) = default;
  };
  struct State {
    std::vector<node_id> neighbors;
    std::vector<Entry> known;  // sorted by id
    std::vector<Entry> fresh;  // learned in the previous call, forwarded next
  };
  using Message = std::vector<Entry>;
  using Output = std::vector<Entry>;

  std::function<Payload(node_id)> payload_of;

  State init(const NodeContext& ctx) const {
    Entry self{ctx.id, 0, payload_of(ctx.id)};
    return {{ctx.neighbors.begin(), ctx.neighbors.end()}, {self}, {self}};
  }
  std::pair<State, Outbox<Message>> step(State s, std::uint32_t round, const Inbox<Message>& inbox) const {
    std::vector<Entry> learned;
    for (const auto& [_, msg] : inbox) {
      for (const auto& e : msg) {
        auto it = std::lower_bound(s.known.begin(), s.known.end(), e.id,
                                   [](const Entry& a, node_id id) { return a.id < id; });
        if (it != s.known.end() && it->id == e.id) continue;
        Entry copy = e;
        copy.dist += 1;
        s.known.insert(it, copy);
        learned.push_back(std::move(copy));
      }
    }
    if (round > 0) s.fresh = std::move(learned);
    Outbox<Message> out;
    if (!s.fresh.empty()) {
      for (node_id w : s.neighbors) out.emplace_back(w, s.fresh);
    }
    return {std::move(s), std::move(out)};
  }
  Output finalize(const State& s) const { return s.known; }
  std::size_t message_bytes(const Message& m) const { return m.size() * sizeof(Entry); }
};

}  // namespace locality
