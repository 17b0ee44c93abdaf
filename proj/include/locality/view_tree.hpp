#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "locality/error.hpp"
#include "locality/graph.hpp"

namespace locality {

/// Rooted unordered tree with optional node labels and child multiplicities.
///
/// Trees are hash-consed: structurally identical trees (same label, same multiset of
/// child subtrees) share one node and one id, so isomorphism is id equality. Children
/// are kept sorted by id with equal subtrees merged into a single (count, subtree) pair.
class ViewTree {
 public:
  struct Node;
  using Child = std::pair<std::uint64_t, ViewTree>;

  struct Node {
    std::optional<std::int64_t> label;
    std::vector<Child> children;
    std::uint64_t id = 0;
    std::uint32_t height = 0;
  };

  ViewTree() : node_(make_node(std::nullopt, {})) {}

  static ViewTree leaf(std::optional<std::int64_t> label = std::nullopt) {
    return ViewTree(make_node(label, {}));
  }

  static ViewTree make(std::optional<std::int64_t> label, std::vector<Child> children) {
    return ViewTree(make_node(label, std::move(children)));
  }

  std::uint64_t id() const { return node_->id; }
  std::uint32_t height() const { return node_->height; }
  const std::optional<std::int64_t>& label() const { return node_->label; }
  const std::vector<Child>& children() const { return node_->children; }

  /// Number of children of the root counted with multiplicity.
  std::uint64_t degree() const {
    std::uint64_t d = 0;
    for (const auto& [count, _] : node_->children) d += count;
    return d;
  }

  ViewTree truncate(std::uint32_t depth) const {
    if (depth >= height()) return *this;
    auto& reg = registry();
    {
      std::lock_guard lock(reg.mutex);
      auto it = reg.truncated.find({id(), depth});
      if (it != reg.truncated.end()) return ViewTree(it->second);
    }
    ViewTree out;
    if (depth == 0) {
      out = leaf(label());
    } else {
      std::vector<Child> kids;
      kids.reserve(children().size());
      for (const auto& [count, child] : children()) kids.emplace_back(count, child.truncate(depth - 1));
      out = make(label(), std::move(kids));
    }
    std::lock_guard lock(reg.mutex);
    reg.truncated.emplace(std::make_pair(id(), depth), out.node_);
    return out;
  }

  ViewTree strip_labels() const {
    auto& reg = registry();
    {
      std::lock_guard lock(reg.mutex);
      auto it = reg.stripped.find(id());
      if (it != reg.stripped.end()) return ViewTree(it->second);
    }
    std::vector<Child> kids;
    kids.reserve(children().size());
    for (const auto& [count, child] : children()) kids.emplace_back(count, child.strip_labels());
    ViewTree out = make(std::nullopt, std::move(kids));
    std::lock_guard lock(reg.mutex);
    reg.stripped.emplace(id(), out.node_);
    return out;
  }

  /// Canonical text form: "(" [label] children ")" with each child written as
  /// "count*" prefix when count > 1, children sorted by their own encodings.
  std::string encode() const {
    std::unordered_map<std::uint64_t, std::string> memo;
    return encode_with(memo);
  }

  friend bool operator==(const ViewTree& a, const ViewTree& b) { return a.node_ == b.node_; }

 private:
  explicit ViewTree(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  struct Registry {
    std::mutex mutex;
    std::unordered_map<std::string, std::shared_ptr<const Node>> nodes;
    std::map<std::pair<std::uint64_t, std::uint32_t>, std::shared_ptr<const Node>> truncated;
    std::unordered_map<std::uint64_t, std::shared_ptr<const Node>> stripped;
    std::uint64_t next_id = 1;
  };

  static Registry& registry() {
    static Registry reg;
    return reg;
  }

  static std::shared_ptr<const Node> make_node(std::optional<std::int64_t> label,
                                               std::vector<Child> children) {
    std::erase_if(children, [](const Child& c) { return c.first == 0; });
    std::sort(children.begin(), children.end(),
              [](const Child& a, const Child& b) { return a.second.id() < b.second.id(); });
    std::vector<Child> merged;
    for (auto& c : children) {
      if (!merged.empty() && merged.back().second.id() == c.second.id()) {
        merged.back().first += c.first;
      } else {
        merged.push_back(std::move(c));
      }
    }
    std::string sig = label ? "L" + std::to_string(*label) : "_";
    std::uint32_t height = 0;
    for (const auto& [count, child] : merged) {
      sig += ',' + std::to_string(child.id()) + '*' + std::to_string(count);
      height = std::max(height, child.height() + 1);
    }
    auto& reg = registry();
    std::lock_guard lock(reg.mutex);
    auto it = reg.nodes.find(sig);
    if (it != reg.nodes.end()) return it->second;
    auto node = std::make_shared<Node>();
    node->label = label;
    node->children = std::move(merged);
    node->id = reg.next_id++;
    node->height = height;
    reg.nodes.emplace(std::move(sig), node);
    return node;
  }

  std::string encode_with(std::unordered_map<std::uint64_t, std::string>& memo) const {
    if (auto it = memo.find(id()); it != memo.end()) return it->second;
    std::vector<std::string> parts;
    for (const auto& [count, child] : children()) {
      std::string c = child.encode_with(memo);
      parts.push_back(count > 1 ? std::to_string(count) + "*" + c : c);
    }
    std::sort(parts.begin(), parts.end());
    std::string out = "(";
    if (label()) out += std::to_string(*label());
    for (const auto& p : parts) out += p;
    out += ')';
    memo.emplace(id(), out);
    return out;
  }

  std::shared_ptr<const Node> node_;
};

/// True iff the depth-r truncations are isomorphic. Labels are ignored unless requested.
inline bool views_equal(const ViewTree& a, const ViewTree& b, std::uint32_t r,
                        bool label_sensitive = false) {
  if (r == 0) return true;
  if (label_sensitive) return a.truncate(r) == b.truncate(r);
  return a.strip_labels().truncate(r) == b.strip_labels().truncate(r);
}

/// Unrolled depth-k view of v. Throws NonTreeView when the k-neighborhood (ignoring
/// edges between two nodes at distance exactly k) contains a cycle.
inline ViewTree khop_view(const Graph& g, node_id v, std::uint32_t k, bool use_labels = false) {
  if (v >= g.node_count()) throw std::out_of_range("khop_view: node out of range");
  std::unordered_map<node_id, std::uint32_t> dist{{v, 0}};
  std::vector<node_id> order{v};
  std::size_t inner_edges = 0;
  for (std::size_t head = 0; head < order.size(); ++head) {
    node_id u = order[head];
    std::uint32_t du = dist[u];
    for (node_id w : g.neighbors(u)) {
      auto it = dist.find(w);
      if (it == dist.end()) {
        if (du == k) continue;
        dist.emplace(w, du + 1);
        order.push_back(w);
        it = dist.find(w);
      }
      if (u < w && !(du == k && it->second == k)) ++inner_edges;
    }
  }
  if (inner_edges + 1 != order.size()) {
    throw NonTreeView("cycle within distance " + std::to_string(k) + " of node " +
                      std::to_string(v));
  }
  auto lbl = [&](node_id u) { return use_labels ? g.label(u) : std::nullopt; };
  std::function<ViewTree(node_id, node_id, std::uint32_t)> build =
      [&](node_id u, node_id parent, std::uint32_t remaining) -> ViewTree {
    if (remaining == 0) return ViewTree::leaf(lbl(u));
    std::vector<ViewTree::Child> kids;
    for (node_id w : g.neighbors(u)) {
      if (w == parent && u != v) continue;
      kids.emplace_back(1, build(w, u, remaining - 1));
    }
    return ViewTree::make(lbl(u), std::move(kids));
  };
  return build(v, v, k);
}

}  // namespace locality
