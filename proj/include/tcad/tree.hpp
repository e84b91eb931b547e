#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "tcad/gcd.hpp"
#include "tcad/polynomial.hpp"
#include "tcad/var_order.hpp"

namespace tcad {

enum class ConstraintKind { Any, Equation, Inequation };

struct Constraint {
  ConstraintKind kind = ConstraintKind::Any;
  Polynomial poly;  // normalized; zero for Any

  static Constraint any() { return {}; }
  static Constraint eq(const Polynomial& p) { return {ConstraintKind::Equation, normalize(p)}; }
  static Constraint neq(const Polynomial& p) { return {ConstraintKind::Inequation, normalize(p)}; }

  bool is_any() const { return kind == ConstraintKind::Any; }
  bool is_eq() const { return kind == ConstraintKind::Equation; }
  bool is_neq() const { return kind == ConstraintKind::Inequation; }
  bool operator==(const Constraint&) const = default;
};

enum class Timestamp { Past, Present };

using NodeKey = std::size_t;
using PolyPair = std::pair<Polynomial, Polynomial>;

struct Node {
  NodeKey key = 0;
  int level = 0;
  Constraint constraint;
  Timestamp stamp = Timestamp::Present;
  std::optional<NodeKey> parent;
  std::vector<NodeKey> children;   // frozen once the node is PAST
  std::vector<NodeKey> replacing;  // PAST only
  std::map<Polynomial, int> signs;
  std::map<Polynomial, Polynomial> invert_lc;
  std::map<Polynomial, Polynomial> squarefree;
  std::map<PolyPair, Polynomial> gcd;
  bool todo = false;

  bool present() const { return stamp == Timestamp::Present; }
};

/// Root-to-leaf key sequence; path[i] sits at level i.
using Path = std::vector<NodeKey>;

/// The shared universe: an append-only node store with replacement history.
class CylindricalTree {
 public:
  explicit CylindricalTree(VarOrder order) : order_(std::move(order)) {
    Node root;
    root.key = 0;
    nodes_.push_back(std::move(root));
  }

  const VarOrder& order() const { return order_; }
  int nvars() const { return static_cast<int>(order_.size()); }
  NodeKey root() const { return 0; }
  std::size_t store_size() const { return nodes_.size(); }

  Node& node(NodeKey k) { return nodes_.at(k); }
  const Node& node(NodeKey k) const { return nodes_.at(k); }

  /// Appends a PRESENT child to a PRESENT node.
  NodeKey add_child(NodeKey parent, Constraint c) {
    if (!node(parent).present()) throw std::logic_error("adding a child to a historical node");
    NodeKey k = fresh(node(parent).level + 1, std::move(c));
    node(k).parent = parent;
    node(parent).children.push_back(k);
    return k;
  }

  /// The initial chain of "any" nodes down to level n.
  void init_any_chain() {
    NodeKey cur = root();
    while (node(cur).level < nvars()) {
      if (!node(cur).children.empty()) throw std::logic_error("tree already initialized");
      cur = add_child(cur, Constraint::any());
    }
  }

  std::vector<NodeKey> present_children(NodeKey k) const {
    std::vector<NodeKey> out;
    for (NodeKey c : node(k).children) {
      if (node(c).present()) out.push_back(c);
    }
    return out;
  }

  /// Replaces N by the given constraints; each replacement inherits N's tables
  /// and a deep copy of N's subtree. Returns the replacement keys in order.
  std::vector<NodeKey> split(NodeKey n, const std::vector<Constraint>& replacements) {
    if (n == root()) throw std::logic_error("splitting the root");
    if (!node(n).present()) throw std::logic_error("splitting a historical node");
    const NodeKey parent = *node(n).parent;
    std::vector<NodeKey> fresh_keys;
    fresh_keys.reserve(replacements.size());
    for (const auto& c : replacements) {
      NodeKey r = fresh(node(n).level, c);
      copy_tables(n, r);
      node(r).parent = parent;
      node(r).todo = node(n).todo;
      const std::vector<NodeKey> kids = node(n).children;
      for (NodeKey child : kids) {
        const NodeKey copy = deep_copy(child, r);  // may grow the store
        node(r).children.push_back(copy);
      }
      fresh_keys.push_back(r);
    }
    auto& siblings = node(parent).children;
    std::vector<NodeKey> updated;
    updated.reserve(siblings.size() + fresh_keys.size());
    for (NodeKey s : siblings) {
      if (s == n) {
        updated.insert(updated.end(), fresh_keys.begin(), fresh_keys.end());
      } else {
        updated.push_back(s);
      }
    }
    siblings = std::move(updated);
    stamp_past(n);
    node(n).replacing = fresh_keys;
    return fresh_keys;
  }

  /// Removes a PRESENT node (split into nothing); empty ancestors go too.
  void remove(NodeKey n) {
    while (true) {
      const NodeKey parent = *node(n).parent;
      split(n, {});
      if (parent == root() || !present_children(parent).empty()) return;
      n = parent;
    }
  }

  /// Current paths derived from gamma, truncated at depth. Levels beyond
  /// gamma's length are unrestricted, so {root} scopes the whole view.
  std::vector<Path> update(const Path& gamma, int depth) const {
    const std::size_t fixed = std::min(gamma.size(), static_cast<std::size_t>(depth) + 1);
    std::vector<std::set<NodeKey>> allowed(fixed);
    for (std::size_t i = 0; i < fixed; ++i) derived_nodes(gamma[i], allowed[i]);
    std::vector<Path> out;
    Path cur{root()};
    collect(cur, depth, &allowed, out);
    return out;
  }

  /// All PRESENT paths of the projection at depth k.
  std::vector<Path> paths(int depth) const {
    std::vector<Path> out;
    Path cur{root()};
    collect(cur, depth, nullptr, out);
    return out;
  }
  std::vector<Path> paths() const { return paths(nvars()); }

  /// First path derived from scope (in depth-first creation order) whose leaf satisfies pred.
  std::optional<Path> next_path(const Path& scope, int depth,
                                const std::function<bool(const Node&)>& pred) const {
    for (auto& p : update(scope, depth)) {
      if (pred(node(p.back()))) return p;
    }
    return std::nullopt;
  }

  /// Generic ToDo iteration over the whole tree at full depth.
  std::optional<Path> next_todo() const {
    for (auto& p : paths()) {
      if (node(p.back()).todo) return p;
    }
    return std::nullopt;
  }

  std::size_t present_leaf_count() const { return paths().size(); }

  std::vector<NodeKey> past_nodes() const {
    std::vector<NodeKey> out;
    for (const auto& n : nodes_) {
      if (!n.present()) out.push_back(n.key);
    }
    return out;
  }

 private:
  NodeKey fresh(int level, Constraint c) {
    Node n;
    n.key = nodes_.size();
    n.level = level;
    n.constraint = std::move(c);
    nodes_.push_back(std::move(n));
    return nodes_.back().key;
  }

  void copy_tables(NodeKey from, NodeKey to) {
    Node& dst = nodes_[to];
    const Node& src = nodes_[from];
    dst.signs = src.signs;
    dst.invert_lc = src.invert_lc;
    dst.squarefree = src.squarefree;
    dst.gcd = src.gcd;
  }

  NodeKey deep_copy(NodeKey src, NodeKey new_parent) {
    NodeKey k = fresh(node(src).level, node(src).constraint);
    copy_tables(src, k);
    node(k).parent = new_parent;
    node(k).todo = node(src).todo;
    node(src).replacing.push_back(k);
    const std::vector<NodeKey> kids = node(src).children;
    for (NodeKey c : kids) {
      const NodeKey copy = deep_copy(c, k);
      node(k).children.push_back(copy);
    }
    return k;
  }

  void stamp_past(NodeKey k) {
    node(k).stamp = Timestamp::Past;
    for (NodeKey c : node(k).children) stamp_past(c);
  }

  void derived_nodes(NodeKey k, std::set<NodeKey>& out) const {
    const Node& n = node(k);
    if (n.present()) {
      out.insert(k);
      return;
    }
    for (NodeKey r : n.replacing) derived_nodes(r, out);
  }

  void collect(Path& cur, int depth, const std::vector<std::set<NodeKey>>* allowed,
               std::vector<Path>& out) const {
    const NodeKey k = cur.back();
    if (static_cast<int>(cur.size()) - 1 == depth) {
      out.push_back(cur);
      return;
    }
    const std::size_t next_level = cur.size();
    for (NodeKey c : node(k).children) {
      if (!node(c).present()) continue;
      if (allowed && next_level < allowed->size() && !(*allowed)[next_level].count(c)) continue;
      cur.push_back(c);
      collect(cur, depth, allowed, out);
      cur.pop_back();
    }
  }

  VarOrder order_;
  std::vector<Node> nodes_;
};

/// Live view of the universe truncated at a level.
struct TreeView {
  CylindricalTree* tree;
  int depth;

  std::vector<Path> paths() const { return tree->paths(depth); }
};

inline TreeView project(CylindricalTree& t, int k) { return {&t, k}; }

inline Path project(const Path& gamma, int k) {
  return Path(gamma.begin(), gamma.begin() + k + 1);
}

}  // namespace tcad
