#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "tcad/division.hpp"
#include "tcad/gcd.hpp"
#include "tcad/subresultant.hpp"
#include "tcad/tree.hpp"

namespace tcad {

/// Raised when an algorithmic invariant is violated.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class Role { Plain, Equation, Inequation };

struct InputItem {
  Polynomial poly;
  Role role = Role::Plain;
};

struct InputSystem {
  VarOrder order;
  std::vector<InputItem> items;
};

/// (cp, gg, cf) per the co-factor case table; all results canonical.
struct CoFactors {
  Polynomial cp;
  Polynomial gg;
  Polynomial cf;
};

inline CoFactors cofactor(const Polynomial& p, const Polynomial& g, const Polynomial& f) {
  if (g.is_constant()) return {p, Polynomial(1), f};
  if (g.mdeg() == f.mdeg()) {
    if (g.mdeg() == p.mdeg()) return {Polynomial(1), f, Polynomial(1)};
    return {canonical(pquo(p, f)), f, Polynomial(1)};
  }
  if (g.mdeg() == p.mdeg()) return {Polynomial(1), p, canonical(pquo(f, p))};
  return {canonical(pquo(p, g)), g, canonical(pquo(f, g))};
}

/// The incremental decomposition engine operating on one universe.
///
/// "depth" always names the level of the tree view an operation works in;
/// paths handed in may be longer and are truncated.
class Engine {
 public:
  explicit Engine(CylindricalTree& tree) : t_(tree) {}

  CylindricalTree& tree() { return t_; }

  /// Makes p sign invariant above every leaf; with a role, keeps only the
  /// part of the tree where p satisfies it.
  void intersect(const Polynomial& p, Role role = Role::Plain) {
    if (p.is_constant()) return;
    const Polynomial kp = key_of(p);
    const int n = t_.nvars();
    const Path scope{t_.root()};
    while (auto gamma = t_.next_path(scope, n, lacks_sign(kp))) {
      intersect_path(kp, *gamma, n, role);
    }
    if (role != Role::Plain) prune(kp, role);
  }

  void intersect_path(const Polynomial& p, const Path& gamma, int depth, Role role = Role::Plain) {
    if (p.is_constant()) return;
    const Polynomial kp = key_of(p);
    const int k = kp.level();
    if (k > depth) throw InternalError("polynomial level exceeds the tree depth");
    if (k == depth) {
      intersect_main(kp, gamma, depth, role);
      return;
    }
    intersect_main(kp, project(gamma, k), k, role);
    for (const auto& c : t_.update(gamma, depth)) {
      const Node& anc = t_.node(c[static_cast<std::size_t>(k)]);
      auto it = anc.signs.find(kp);
      if (it == anc.signs.end()) throw InternalError("missing sign on a projected ancestor");
      t_.node(c.back()).signs[kp] = it->second;
    }
  }

  void intersect_main(const Polynomial& p, const Path& gamma_in, int n, Role role) {
    const Path gamma = project(gamma_in, n);
    if (all_signed(gamma, n, p)) return;
    const bool raw = role != Role::Plain && t_.node(gamma.back()).constraint.is_eq();
    if (!raw) {
      if (n == 1) {
        Node& r = t_.node(t_.root());
        if (!r.squarefree.count(p)) r.squarefree[p] = squarefree_part_univariate(p);
      } else {
        squarefree(p, project(gamma, n - 1), n - 1);
      }
    }
    while (auto c = t_.next_path(gamma, n, lacks_sign(p))) {
      const NodeKey v = c->back();
      const Node& parent = t_.node((*c)[static_cast<std::size_t>(n - 1)]);
      const Constraint vc = t_.node(v).constraint;
      Polynomial sp;
      if (role != Role::Plain && vc.is_eq()) {
        sp = p;
      } else {
        auto it = parent.squarefree.find(p);
        if (it == parent.squarefree.end()) throw InternalError("missing squarefree part");
        sp = it->second;
      }
      if (sp.is_zero()) {
        assign(v, p, 0, role);
      } else if (sp.is_constant()) {
        assign(v, p, 1, role);
      } else if (vc.is_any()) {
        branch(v, p, role, constraint_on(*c, sp, true), constraint_on(*c, sp, false));
      } else {
        const Polynomial& f = vc.poly;
        regular_gcd(sp, f, project(*c, n - 1), n - 1, role == Role::Equation && vc.is_eq());
        for (const auto& d : t_.update(*c, n)) {
          const NodeKey leaf = d.back();
          if (t_.node(leaf).signs.count(p)) continue;
          const Node& l = t_.node(d[static_cast<std::size_t>(n - 1)]);
          auto it = l.gcd.find({sp, f});
          if (it == l.gcd.end()) throw InternalError("missing regular gcd");
          const CoFactors cof = cofactor(sp, it->second, f);
          if (vc.is_eq()) {
            if (cof.gg.is_constant()) {
              assign(leaf, p, 1, role);
            } else if (cof.cf.is_constant()) {
              assign(leaf, p, 0, role);
            } else {
              branch(leaf, p, role, constraint_on(d, cof.gg, true),
                     constraint_on(d, cof.cf, true));
            }
          } else if (cof.cp.is_constant()) {
            assign(leaf, p, 1, role);
          } else {
            branch(leaf, p, role, constraint_on(d, cof.cp, true),
                   constraint_on(d, f * cof.cp, false));
          }
        }
      }
    }
  }

  /// Writes Squarefree[p] on every leaf of the depth-m view derived from gamma (level(p) = m+1).
  void squarefree(const Polynomial& p, const Path& gamma_in, int m) {
    const Path gamma = project(gamma_in, m);
    const int n = m + 1;
    regularize_initial(p, p, gamma, m);
    auto todo = [&](const Node& leaf) { return !leaf.squarefree.count(p); };
    while (auto c = t_.next_path(gamma, m, todo)) {
      const Polynomial f = t_.node(c->back()).invert_lc.at(p);
      if (f.level() < n || f.mdeg() == 1) {
        t_.node(c->back()).squarefree[p] = canonical(f);
        continue;
      }
      const Polynomial df = f.der();
      regular_gcd(f, df, *c, m, false);
      for (const auto& d : t_.update(*c, m)) {
        Node& leaf = t_.node(d.back());
        if (leaf.squarefree.count(p)) continue;
        const Polynomial& g = leaf.gcd.at({f, df});
        leaf.squarefree[p] = reduce_on(d, g.is_constant() ? f : pquo(f, g));
      }
    }
  }

  /// Writes Gcd[p, f] on every leaf of the depth-m view derived from gamma.
  void regular_gcd(const Polynomial& p, const Polynomial& f, const Path& gamma_in, int m,
                   bool propagate) {
    const Path gamma = project(gamma_in, m);
    const PolyPair key{p, f};
    if (key_of(p) == key_of(f)) {
      for (const auto& c : t_.update(gamma, m)) t_.node(c.back()).gcd.emplace(key, f);
      return;
    }
    const SubresultantChain& s = chain(p, f);
    const unsigned d = p.mdeg() >= f.mdeg() ? f.mdeg() : p.mdeg() + 1;
    regular_gcd_i(key, s, d, 0, gamma, m, propagate);
  }

  /// Writes InvertLc[p] on every leaf of the depth-m view derived from gamma.
  void regularize_initial(const Polynomial& p, const Polynomial& pbar, const Path& gamma, int m) {
    const int n = m + 1;
    const Polynomial h = pbar.lc(n - 1);
    intersect_path(h, gamma, m);
    auto todo = [&](const Node& leaf) { return !leaf.invert_lc.count(p); };
    while (auto c = t_.next_path(gamma, m, todo)) {
      Node& leaf = t_.node(c->back());
      if (sign_of(leaf, h) == 1) {
        leaf.invert_lc[p] = pbar.level() < n ? Polynomial(1) : pbar;
      } else if (pbar.level() < n) {
        leaf.invert_lc[p] = Polynomial();
      } else {
        regularize_initial(p, pbar.tail(), *c, m);
      }
    }
  }

  /// 0 or 1 for q above a leaf whose signs table covers q.
  int sign_of(const Node& leaf, const Polynomial& q) const {
    if (q.is_constant()) return q.is_zero() ? 0 : 1;
    auto it = leaf.signs.find(key_of(q));
    if (it == leaf.signs.end()) throw InternalError("sign requested before it was computed");
    return it->second;
  }

 private:
  static std::function<bool(const Node&)> lacks_sign(const Polynomial& kp) {
    return [kp](const Node& leaf) { return !leaf.signs.count(kp); };
  }

  bool all_signed(const Path& gamma, int n, const Polynomial& p) const {
    for (const auto& c : t_.update(gamma, n)) {
      if (!t_.node(c.back()).signs.count(p)) return false;
    }
    return true;
  }

  static bool keeps(int sign, Role role) {
    if (role == Role::Equation) return sign == 0;
    if (role == Role::Inequation) return sign == 1;
    return true;
  }

  void assign(NodeKey v, const Polynomial& p, int sign, Role role) {
    if (!keeps(sign, role)) {
      t_.remove(v);
      return;
    }
    t_.node(v).signs[p] = sign;
  }

  /// Splits v into a zero child and a nonzero child, dropping the one the role excludes.
  void branch(NodeKey v, const Polynomial& p, Role role, Constraint zero, Constraint nonzero) {
    std::vector<Constraint> parts;
    std::vector<int> signs;
    if (keeps(0, role)) {
      parts.push_back(std::move(zero));
      signs.push_back(0);
    }
    if (keeps(1, role)) {
      parts.push_back(std::move(nonzero));
      signs.push_back(1);
    }
    auto keys = t_.split(v, parts);
    for (std::size_t i = 0; i < keys.size(); ++i) t_.node(keys[i]).signs[p] = signs[i];
  }

  /// Constraint on q at the leaf of path, reduced by the path's equations.
  Constraint constraint_on(const Path& path, const Polynomial& q, bool equation) const {
    const Path base(path.begin(), path.end() - 1);
    const Polynomial r = reduce_on(base, q);
    return equation ? Constraint::eq(r) : Constraint::neq(r);
  }

  /// Canonical q pseudo-reduced by the equations of path; q unchanged when the
  /// reduction would alter its main degree.
  Polynomial reduce_on(const Path& path, const Polynomial& q) const {
    std::vector<Polynomial> eqs;
    for (std::size_t i = 1; i < path.size(); ++i) {
      const Constraint& c = t_.node(path[i]).constraint;
      if (c.is_eq()) eqs.push_back(c.poly);
    }
    Polynomial r = eqs.empty() ? q : prem_chain(q, eqs);
    if (r.level() != q.level() || r.mdeg() != q.mdeg()) r = q;
    return canonical(r);
  }

  void regular_gcd_i(const PolyPair& key, const SubresultantChain& s, unsigned d, unsigned i,
                     const Path& gamma, int m, bool propagate) {
    if (i == d) {
      for (const auto& c : t_.update(gamma, m)) {
        t_.node(c.back()).gcd.emplace(key, reduce_on(c, s.S(d)));
      }
      return;
    }
    const Polynomial& si = s.s(i);
    Role role = Role::Plain;
    if (propagate && i == 0 && !si.is_constant() && single_chain(gamma, si.level(), m)) {
      role = Role::Equation;
    }
    intersect_path(si, gamma, m, role);
    if (role != Role::Plain) prune_view(gamma, m, key_of(si), role);
    auto todo = [&](const Node& leaf) { return !leaf.gcd.count(key); };
    while (auto c = t_.next_path(gamma, m, todo)) {
      Node& leaf = t_.node(c->back());
      if (sign_of(leaf, si) == 1) {
        leaf.gcd.emplace(key, i == 0 ? Polynomial(1) : reduce_on(*c, s.S(i)));
      } else {
        regular_gcd_i(key, s, d, i + 1, *c, m, propagate);
      }
    }
  }

  /// True when gamma[j] has exactly one PRESENT child for every j in [from, m].
  bool single_chain(const Path& gamma, int from, int m) const {
    for (int j = from; j <= m; ++j) {
      if (t_.present_children(gamma[static_cast<std::size_t>(j)]).size() != 1) return false;
    }
    return true;
  }

  void prune(const Polynomial& kp, Role role) {
    for (const auto& c : t_.paths()) {
      const NodeKey leaf = c.back();
      if (!t_.node(leaf).present()) continue;
      auto it = t_.node(leaf).signs.find(kp);
      if (it != t_.node(leaf).signs.end() && !keeps(it->second, role)) t_.remove(leaf);
    }
  }

  void prune_view(const Path& gamma, int m, const Polynomial& kp, Role role) {
    for (const auto& c : t_.update(gamma, m)) {
      const NodeKey leaf = c.back();
      if (!t_.node(leaf).present()) continue;
      auto it = t_.node(leaf).signs.find(kp);
      if (it != t_.node(leaf).signs.end() && !keeps(it->second, role)) t_.remove(leaf);
    }
  }

  const SubresultantChain& chain(const Polynomial& p, const Polynomial& f) {
    auto it = chains_.find({p, f});
    if (it == chains_.end()) {
      it = chains_.emplace(PolyPair{p, f}, subresultant_chain(p, f, p.var())).first;
    }
    return it->second;
  }

  CylindricalTree& t_;
  std::map<PolyPair, SubresultantChain> chains_;
};

/// Complete F-invariant decomposition of the whole space (roles ignored).
inline CylindricalTree cylindrical_decompose(const InputSystem& system) {
  CylindricalTree tree(system.order);
  tree.init_any_chain();
  Engine engine(tree);
  for (const auto& item : system.items) engine.intersect(item.poly);
  return tree;
}

/// Partial tree whose paths partition the zero set of the system.
/// Equations are processed before inequations; plain items count as equations.
inline CylindricalTree solve_system(const InputSystem& system) {
  CylindricalTree tree(system.order);
  tree.init_any_chain();
  Engine engine(tree);
  std::vector<InputItem> ordered;
  for (const auto& it : system.items) {
    if (it.role != Role::Inequation) ordered.push_back({it.poly, Role::Equation});
  }
  for (const auto& it : system.items) {
    if (it.role == Role::Inequation) ordered.push_back(it);
  }
  for (const auto& it : ordered) {
    if (it.poly.is_constant()) {
      const bool zero = it.poly.is_zero();
      const bool consistent = it.role == Role::Equation ? zero : !zero;
      if (!consistent) {
        for (NodeKey c : tree.present_children(tree.root())) tree.split(c, {});
      }
      continue;
    }
    engine.intersect(it.poly, it.role);
  }
  return tree;
}

}  // namespace tcad
