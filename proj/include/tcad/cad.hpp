#pragma once

#include <json.hpp>

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tcad/ccd.hpp"
#include "tcad/gcd.hpp"
#include "tcad/real.hpp"
#include "tcad/tree.hpp"

namespace tcad {

enum class CellKind { Any, Lt, Eq, Between, Gt };

/// The root-th real root (1-based) of poly over the lower coordinates.
struct SectionBound {
  Polynomial poly;
  int root = 1;
};

/// Per-level description. Eq and Gt use lower; Lt uses upper; Between uses both.
struct CellCondition {
  int level = 0;
  CellKind kind = CellKind::Any;
  std::optional<SectionBound> lower;
  std::optional<SectionBound> upper;
};

struct CadCell {
  std::vector<int> index;
  std::vector<CellCondition> conditions;
  RealAlgebraicPoint sample;
  NodeKey node = 0;                 // complex-tree node refined by this cell
  std::vector<SectionBound> stack;  // sections above this cell, increasing
  std::vector<CadCell> children;
  std::vector<int> signs;           // leaves only, aligned with Cad::polys

  int level() const { return static_cast<int>(index.size()); }
};

struct Cad {
  VarOrder order;
  std::vector<Polynomial> polys;
  bool partial = false;
  CadCell root;

  std::vector<const CadCell*> cells() const {
    std::vector<const CadCell*> out;
    collect(root, out);
    return out;
  }

 private:
  void collect(const CadCell& c, std::vector<const CadCell*>& out) const {
    if (c.level() == static_cast<int>(order.size())) {
      out.push_back(&c);
      return;
    }
    for (const auto& k : c.children) collect(k, out);
  }
};

namespace detail {

class Lifter {
 public:
  Lifter(const CylindricalTree& t, std::vector<Polynomial> polys, bool partial)
      : t_(t), polys_(std::move(polys)), partial_(partial) {}

  Cad run() {
    Cad cad{t_.order(), polys_, partial_, {}};
    cad.root.node = t_.root();
    lift(cad.root);
    return cad;
  }

 private:
  void lift(CadCell& cell) {
    if (cell.level() == t_.nvars()) {
      assign_signs(cell);
      return;
    }
    const auto kids = t_.present_children(cell.node);
    if (kids.empty()) return;
    if (kids.size() == 1 && t_.node(kids[0]).constraint.is_any()) {
      CadCell c = child_of(cell, 1, kids[0], {cell.level() + 1, CellKind::Any, {}, {}},
                           Coordinate::exact(Rational(0)));
      cell.children.push_back(std::move(c));
      lift(cell.children.back());
      return;
    }
    std::vector<Polynomial> sources;
    std::vector<NodeKey> owners;
    std::optional<NodeKey> complement;
    for (NodeKey k : kids) {
      const Constraint& c = t_.node(k).constraint;
      if (c.is_eq()) {
        sources.push_back(c.poly);
        owners.push_back(k);
      } else if (c.is_neq()) {
        if (complement) throw InternalError("two inequation siblings");
        complement = k;
      } else {
        throw InternalError("any-node with siblings");
      }
    }
    RealAlgebraicPoint& base = cell.sample;
    std::vector<TaggedRoot> roots = ev_.isolate_jointly(sources, base);
    if (partial_ && complement) {
      // Roots of the inequation polynomial that no section covers still bound sectors.
      const Polynomial& w = t_.node(*complement).constraint.poly;
      auto extra = ev_.isolate(w, base);
      for (std::size_t i = 0; i < extra.size(); ++i) {
        RealAlgebraicPoint p = base.with(extra[i]);
        bool covered = false;
        for (const auto& s : sources) covered = covered || ev_.sign_at(s, p) == 0;
        for (std::size_t j = 0; j < base.size(); ++j) base.coords[j] = p.coords[j];
        if (!covered) roots.push_back({sources.size(), static_cast<int>(i + 1), p.coords.back()});
      }
      std::vector<Polynomial> all = sources;
      all.push_back(w);
      roots = ev_.merge(std::move(roots), all, base);
    }
    auto bound_of = [&](const TaggedRoot& r) {
      const Polynomial& p = r.source < sources.size()
                                ? sources[r.source]
                                : t_.node(*complement).constraint.poly;
      return SectionBound{p, r.index};
    };
    for (const auto& r : roots) cell.stack.push_back(bound_of(r));

    const int level = cell.level() + 1;
    const std::size_t s = roots.size();
    for (std::size_t pos = 1; pos <= 2 * s + 1; ++pos) {
      if (pos % 2 == 0) {
        TaggedRoot& r = roots[pos / 2 - 1];
        if (r.source >= sources.size()) continue;
        CellCondition cond{level, CellKind::Eq, bound_of(r), {}};
        cell.children.push_back(
            child_of(cell, static_cast<int>(pos), owners[r.source], cond, r.root));
      } else {
        if (!complement) continue;
        CellCondition cond{level, CellKind::Any, {}, {}};
        Rational x(0);
        if (s == 0) {
        } else if (pos == 1) {
          cond.kind = CellKind::Lt;
          cond.upper = bound_of(roots[0]);
          x = Rational(floor(roots[0].root.lower()) - 1);
        } else if (pos == 2 * s + 1) {
          cond.kind = CellKind::Gt;
          cond.lower = bound_of(roots[s - 1]);
          x = Rational(ceil(roots[s - 1].root.upper()) + 1);
        } else {
          TaggedRoot& a = roots[pos / 2 - 1];
          TaggedRoot& b = roots[pos / 2];
          cond.kind = CellKind::Between;
          cond.lower = bound_of(a);
          cond.upper = bound_of(b);
          x = ev_.between(a.root, b.root, base);
        }
        cell.children.push_back(
            child_of(cell, static_cast<int>(pos), *complement, cond, Coordinate::exact(x)));
      }
    }
    // Section samples may have been refined after their cells were created.
    for (auto& c : cell.children) {
      for (std::size_t j = 0; j < base.size(); ++j) c.sample.coords[j] = base.coords[j];
      lift(c);
    }
  }

  static CadCell child_of(const CadCell& parent, int pos, NodeKey node, CellCondition cond,
                          Coordinate x) {
    CadCell c;
    c.index = parent.index;
    c.index.push_back(pos);
    c.conditions = parent.conditions;
    c.conditions.push_back(std::move(cond));
    c.sample = parent.sample.with(std::move(x));
    c.node = node;
    return c;
  }

  void assign_signs(CadCell& cell) {
    const Node& leaf = t_.node(cell.node);
    for (const auto& f : polys_) {
      const int s = ev_.sign_at(f, cell.sample);
      if (!f.is_constant()) {
        auto it = leaf.signs.find(key_of(f));
        if (it != leaf.signs.end() && (it->second == 0) != (s == 0)) {
          throw InternalError("real sign contradicts the complex tree");
        }
      }
      cell.signs.push_back(s);
    }
  }

  const CylindricalTree& t_;
  std::vector<Polynomial> polys_;
  bool partial_;
  RealEvaluator ev_;
};

}  // namespace detail

/// F-invariant CAD refining the complex tree. With partial set, only cells
/// lying in the tree's zero sets are produced.
inline Cad make_semi_algebraic(const CylindricalTree& tree, std::vector<Polynomial> polys,
                               bool partial = false) {
  return detail::Lifter(tree, std::move(polys), partial).run();
}

inline Cad make_semi_algebraic(const CylindricalTree& tree, const InputSystem& system,
                               bool partial = false) {
  std::vector<Polynomial> polys;
  for (const auto& it : system.items) polys.push_back(it.poly);
  return make_semi_algebraic(tree, std::move(polys), partial);
}

/// Compares coordinates of a fixed rational point against section functions.
/// Root isolations are cached per polynomial and refined in place.
class PointLocator {
 public:
  explicit PointLocator(std::vector<Rational> u) : u_(std::move(u)) {}

  const std::vector<Rational>& point() const { return u_; }

  /// Position of u_k against the root-th real root of p(u_1..u_{k-1}, x_k),
  /// k = level(p): -1, 0, +1, or nullopt when there are fewer roots.
  std::optional<int> compare(const SectionBound& b) {
    const int v = b.poly.var();
    const Rational& x = u_.at(static_cast<std::size_t>(v));
    Entry& e = entry(b.poly);
    if (b.root < 1 || static_cast<std::size_t>(b.root) > e.roots.size()) return std::nullopt;
    Coordinate& r = e.roots[static_cast<std::size_t>(b.root - 1)];
    while (true) {
      if (!r.algebraic) return x < r.value ? -1 : (x > r.value ? 1 : 0);
      if (x <= r.lo) return -1;
      if (x >= r.hi) return 1;
      if (e.univariate.substitute(v, x).is_zero()) return 0;
      ev_.bisect_root(r, e.base);
    }
  }

 private:
  struct Entry {
    Polynomial univariate;
    RealAlgebraicPoint base;
    std::vector<Coordinate> roots;
  };

  Entry& entry(const Polynomial& p) {
    auto it = cache_.find(p);
    if (it != cache_.end()) return it->second;
    const int v = p.var();
    Entry e;
    Polynomial q = p;
    for (int j = v; j-- > 0;) q = q.substitute(j, u_.at(static_cast<std::size_t>(j)));
    if (q.is_zero()) throw InternalError("section polynomial vanishes on the base");
    e.base.coords.assign(static_cast<std::size_t>(v), Coordinate::exact(Rational(0)));
    if (!q.is_constant() && q.var() == v) {
      e.univariate = squarefree_part_univariate(q);
      e.roots = ev_.isolate(e.univariate, e.base);
    }
    return cache_.emplace(p, std::move(e)).first->second;
  }

  std::vector<Rational> u_;
  std::map<Polynomial, Entry> cache_;
  RealEvaluator ev_;
};

/// Whether the located point satisfies one level condition.
inline bool satisfies(const CellCondition& c, PointLocator& at) {
  switch (c.kind) {
    case CellKind::Any:
      return true;
    case CellKind::Eq:
      return at.compare(*c.lower) == 0;
    case CellKind::Lt:
      return at.compare(*c.upper) == -1;
    case CellKind::Gt:
      return at.compare(*c.lower) == 1;
    case CellKind::Between:
      return at.compare(*c.lower) == 1 && at.compare(*c.upper) == -1;
  }
  return false;
}

/// Whether u satisfies every level condition of cell.
inline bool cell_contains(const CadCell& cell, PointLocator& at) {
  return std::all_of(cell.conditions.begin(), cell.conditions.end(),
                     [&](const CellCondition& c) { return satisfies(c, at); });
}

inline bool cell_contains(const CadCell& cell, const std::vector<Rational>& u) {
  PointLocator at(u);
  return cell_contains(cell, at);
}

/// Number of leaf cells whose description u satisfies, by condition checks only.
inline std::size_t count_containing(const Cad& cad, PointLocator& at) {
  std::size_t hits = 0;
  std::vector<const CadCell*> todo{&cad.root};
  while (!todo.empty()) {
    const CadCell* c = todo.back();
    todo.pop_back();
    if (c->level() > 0 && !satisfies(c->conditions.back(), at)) continue;
    if (c->level() == static_cast<int>(cad.order.size())) {
      ++hits;
      continue;
    }
    for (const auto& k : c->children) todo.push_back(&k);
  }
  return hits;
}

/// Leaf cell containing u by descending the stacks, or nullptr when u lies
/// outside a partial CAD. Throws InternalError if a stack is not delineable at u.
inline const CadCell* classify_point(const Cad& cad, PointLocator& at) {
  const CadCell* cur = &cad.root;
  for (std::size_t k = 0; k < cad.order.size(); ++k) {
    if (cur->children.empty()) return nullptr;
    int below = 0;
    bool on = false;
    bool passed = false;
    for (const auto& b : cur->stack) {
      auto r = at.compare(b);
      if (!r) throw InternalError("section undefined at the point");
      if (*r > 0) {
        if (passed) throw InternalError("section order differs from the sample");
        ++below;
      } else {
        if (*r == 0) {
          if (passed) throw InternalError("point on two sections");
          on = true;
        }
        passed = true;
      }
    }
    const int pos = 2 * below + (on ? 2 : 1);
    const CadCell* next = nullptr;
    for (const auto& c : cur->children) {
      if (c.index.back() == pos) next = &c;
    }
    if (!next) return nullptr;
    cur = next;
  }
  return cur;
}

inline const CadCell* classify_point(const Cad& cad, const std::vector<Rational>& u) {
  PointLocator at(u);
  return classify_point(cad, at);
}

// ---- rendering ----

namespace detail {

inline std::string bound_text(const SectionBound& b, const VarOrder& order) {
  const int v = b.poly.var();
  if (b.poly.mdeg() == 1 && b.poly.init().is_constant()) {
    const Polynomial value = b.poly.tail().scaled(Rational(-1 / b.poly.init().constant_value()));
    return value.to_string(order);
  }
  return "root_" + std::to_string(b.root) + "(" + b.poly.to_string(order) + ", " +
         order.name(v) + ")";
}

inline std::string condition_text(const CellCondition& c, const VarOrder& order) {
  const std::string x = order.name(c.level - 1);
  switch (c.kind) {
    case CellKind::Any:
      return "any " + x;
    case CellKind::Eq:
      return x + " = " + bound_text(*c.lower, order);
    case CellKind::Lt:
      return x + " < " + bound_text(*c.upper, order);
    case CellKind::Gt:
      return x + " > " + bound_text(*c.lower, order);
    case CellKind::Between:
      return bound_text(*c.lower, order) + " < " + x + " < " + bound_text(*c.upper, order);
  }
  return {};
}

inline const char* kind_name(CellKind k) {
  switch (k) {
    case CellKind::Any:
      return "any";
    case CellKind::Lt:
      return "lt";
    case CellKind::Eq:
      return "eq";
    case CellKind::Between:
      return "between";
    case CellKind::Gt:
      return "gt";
  }
  return "any";
}

inline void render_cell(const Cad& cad, const CadCell& c, int indent, std::ostringstream& os) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  os << pad << condition_text(c.conditions.back(), cad.order);
  if (c.level() == static_cast<int>(cad.order.size())) {
    os << " :";
    for (std::size_t i = 0; i < cad.polys.size(); ++i) {
      const int s = c.signs[i];
      os << (i ? ", " : " ") << cad.polys[i].to_string(cad.order)
         << (s < 0 ? " < 0" : (s > 0 ? " > 0" : " = 0"));
    }
    os << '\n';
    return;
  }
  os << " {\n";
  for (const auto& k : c.children) render_cell(cad, k, indent + 1, os);
  os << pad << "}\n";
}

inline nlohmann::json bound_json(const SectionBound& b, const VarOrder& order) {
  return {{"poly", b.poly.to_string(order)}, {"root", b.root}};
}

inline nlohmann::json coordinate_json(const Coordinate& c, const VarOrder& order) {
  if (!c.algebraic) return {{"rational", to_string(c.value)}};
  return {{"poly", c.defining.to_string(order)}, {"lo", to_string(c.lo)}, {"hi", to_string(c.hi)}};
}

}  // namespace detail

inline std::string render_cad_text(const Cad& cad) {
  std::ostringstream os;
  os << "{\n";
  for (const auto& c : cad.root.children) detail::render_cell(cad, c, 1, os);
  os << "}\n";
  return os.str();
}

inline nlohmann::json cad_to_json(const Cad& cad) {
  nlohmann::json j;
  j["vars"] = cad.order.names();
  j["partial"] = cad.partial;
  nlohmann::json cells = nlohmann::json::array();
  for (const CadCell* c : cad.cells()) {
    nlohmann::json e;
    e["index"] = c->index;
    nlohmann::json conds = nlohmann::json::array();
    for (const auto& k : c->conditions) {
      nlohmann::json bounds = nlohmann::json::array();
      if (k.lower) bounds.push_back(detail::bound_json(*k.lower, cad.order));
      if (k.upper) bounds.push_back(detail::bound_json(*k.upper, cad.order));
      conds.push_back({{"level", k.level}, {"kind", detail::kind_name(k.kind)}, {"bounds", bounds}});
    }
    e["conditions"] = conds;
    nlohmann::json signs = nlohmann::json::object();
    for (std::size_t i = 0; i < cad.polys.size(); ++i) {
      signs[cad.polys[i].to_string(cad.order)] = c->signs[i];
    }
    e["signs"] = signs;
    nlohmann::json sample = nlohmann::json::array();
    for (const auto& x : c->sample.coords) sample.push_back(detail::coordinate_json(x, cad.order));
    e["sample"] = sample;
    cells.push_back(e);
  }
  j["cells"] = cells;
  return j;
}

}  // namespace tcad
