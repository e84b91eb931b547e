#pragma once

#include <algorithm>
#include <functional>
#include <string>
#include <vector>

#include "tcad/cad.hpp"
#include "tcad/ccd.hpp"
#include "tcad/numeric.hpp"
#include "tcad/random.hpp"
#include "tcad/system_file.hpp"

namespace tcad {

using numeric::Complex;

struct CheckResult {
  std::string name;
  std::size_t trials = 0;
  std::size_t failures = 0;
  std::size_t skipped = 0;  // samples that could not be drawn
  std::string first_failure;

  bool passed() const { return failures == 0; }
  void fail(std::string why) {
    ++failures;
    if (first_failure.empty()) first_failure = std::move(why);
  }
};

namespace checks {

inline Polynomial init_of(const Polynomial& q) { return q.is_constant() ? q : q.init(); }

/// Present nodes below the root together with their paths, in preorder.
inline std::vector<Path> present_prefixes(const CylindricalTree& t) {
  std::vector<Path> out;
  std::vector<Path> todo{Path{t.root()}};
  while (!todo.empty()) {
    Path p = std::move(todo.back());
    todo.pop_back();
    const auto kids = t.present_children(p.back());
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) {
      Path q = p;
      q.push_back(*it);
      todo.push_back(q);
    }
    out.push_back(std::move(p));
  }
  return out;
}

/// Number of PRESENT full-depth paths whose constraints the point satisfies.
inline std::size_t paths_containing(const CylindricalTree& t, const std::vector<Complex>& pt) {
  std::size_t hits = 0;
  std::function<void(NodeKey, int)> walk = [&](NodeKey k, int level) {
    if (level == t.nvars()) {
      ++hits;
      return;
    }
    for (NodeKey c : t.present_children(k)) {
      const Constraint& con = t.node(c).constraint;
      if (con.is_eq() && !numeric::vanishes(con.poly, pt)) continue;
      if (con.is_neq() && numeric::vanishes(con.poly, pt)) continue;
      walk(c, level + 1);
    }
  };
  walk(t.root(), 0);
  return hits;
}

inline std::vector<Complex> random_point(Rng& rng, int n) {
  std::vector<Complex> pt;
  for (int i = 0; i < n; ++i) pt.push_back(numeric::random_complex(rng));
  return pt;
}

}  // namespace checks

/// Complete trees partition C^n: generic points and points sampled on paths
/// satisfy exactly one path.
inline CheckResult check_ccd_partition(const CylindricalTree& t, Rng& rng, std::size_t samples) {
  CheckResult r{"ccd.partition"};
  const auto paths = t.paths();
  for (std::size_t i = 0; i < samples; ++i) {
    std::vector<Complex> pt;
    if (i % 2 == 0 || paths.empty()) {
      pt = checks::random_point(rng, t.nvars());
    } else {
      const Path& p = paths[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<long>(paths.size()) - 1))];
      auto s = numeric::sample_path(t, p, t.nvars(), rng);
      if (!s) {
        ++r.skipped;
        continue;
      }
      pt = std::move(*s);
    }
    ++r.trials;
    const std::size_t hits = checks::paths_containing(t, pt);
    if (hits != 1) r.fail("point lies on " + std::to_string(hits) + " paths");
  }
  return r;
}

/// Zero/nonzero of every input polynomial is constant on each path.
inline CheckResult check_f_invariance(const CylindricalTree& t, const std::vector<Polynomial>& polys,
                                      Rng& rng, std::size_t samples) {
  CheckResult r{"ccd.f-invariance"};
  const auto paths = t.paths();
  if (paths.empty()) return r;
  for (std::size_t i = 0; i < samples; ++i) {
    const Path& p = paths[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<long>(paths.size()) - 1))];
    auto pt = numeric::sample_path(t, p, t.nvars(), rng);
    if (!pt) {
      ++r.skipped;
      continue;
    }
    ++r.trials;
    const Node& leaf = t.node(p.back());
    for (const auto& f : polys) {
      if (f.is_constant()) continue;
      auto it = leaf.signs.find(key_of(f));
      if (it == leaf.signs.end()) {
        r.fail("leaf lacks a sign for " + f.to_string(t.order()));
        continue;
      }
      if (numeric::vanishes(f, *pt) != (it->second == 0)) {
        r.fail("sign of " + f.to_string(t.order()) + " differs from the recorded one");
      }
    }
  }
  return r;
}

namespace checks {

/// Coefficients of a univariate or constant polynomial, lowest first.
inline std::vector<Rational> dense(const Polynomial& p) {
  if (p.is_zero()) return {};
  if (p.is_constant()) return {p.constant_value()};
  std::vector<Rational> out;
  for (const auto& c : p.coefficients()) out.push_back(c.constant_value());
  return out;
}

/// Remainder of a by b over Q (b nonzero).
inline std::vector<Rational> remainder(std::vector<Rational> a, const std::vector<Rational>& b) {
  while (a.size() >= b.size()) {
    const Rational q = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= q * b[i];
    a.pop_back();
    while (!a.empty() && a.back() == 0) a.pop_back();
  }
  return a;
}

/// Plain Euclid over Q; -1 for gcd(0, 0).
inline int euclid_degree(std::vector<Rational> a, std::vector<Rational> b) {
  while (!b.empty()) {
    auto r = remainder(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return static_cast<int>(a.size()) - 1;
}

/// Accumulates one trial whose parts may be undecided by the numeric oracle.
struct Trial {
  CheckResult& r;
  bool undecided = false;
  std::size_t failures_before;

  explicit Trial(CheckResult& res) : r(res), failures_before(res.failures) {}
  void expect_zero_degree(const std::optional<int>& d, const std::string& why) {
    if (!d) {
      undecided = true;
    } else if (*d != 0) {
      r.fail(why);
    }
  }
  ~Trial() {
    if (undecided && r.failures == failures_before) {
      ++r.skipped;
    } else {
      ++r.trials;
    }
  }
};

}  // namespace checks

/// Stored regular gcds agree with the gcd of the specializations at points of
/// their paths. Entries at the root are univariate over Q and checked exactly.
namespace checks {

struct GcdEntry {
  Path path;
  Polynomial p, f, g;
};

/// p with x_1..x_|u| replaced by u.
inline Polynomial substitute_all(Polynomial p, const std::vector<Rational>& u) {
  for (std::size_t j = u.size(); j-- > 0;) p = p.substitute(static_cast<int>(j), u[j]);
  return p;
}

/// A random rational point of path[1..depth]; nullopt when some equation
/// there has no rational root to offer.
inline std::optional<std::vector<Rational>> rational_point_on(const CylindricalTree& t, const Path& path,
                                                              int depth, Rng& rng) {
  std::vector<Rational> u;
  for (int k = 1; k <= depth; ++k) {
    const Constraint& c = t.node(path.at(static_cast<std::size_t>(k))).constraint;
    const Polynomial q = c.is_any() ? Polynomial() : substitute_all(c.poly, u);
    if (c.is_eq()) {
      if (q.is_zero()) {
        u.push_back(random_rational(rng, 24, 6));
      } else if (!q.is_constant() && q.var() == k - 1 && q.mdeg() == 1) {
        u.push_back(-q.coeff(k - 1, 0).constant_value() / q.coeff(k - 1, 1).constant_value());
      } else {
        return std::nullopt;
      }
      continue;
    }
    bool placed = false;
    for (int tries = 0; tries < 20 && !placed; ++tries) {
      u.push_back(random_rational(rng, 24, 6));
      placed = !c.is_neq() || !q.substitute(k - 1, u.back()).is_zero();
      if (!placed) u.pop_back();
    }
    if (!placed) return std::nullopt;
  }
  return u;
}

inline std::vector<GcdEntry> gcd_entries(const CylindricalTree& t) {
  std::vector<GcdEntry> out;
  for (const auto& path : present_prefixes(t)) {
    for (const auto& [key, g] : t.node(path.back()).gcd) out.push_back({path, key.first, key.second, g});
  }
  return out;
}

}  // namespace checks

/// Checks each entry at `each` sampled points of its path.
inline CheckResult check_gcd_entries(const CylindricalTree& t, const std::vector<checks::GcdEntry>& entries,
                                     Rng& rng, std::size_t each) {
  CheckResult r{"ccd.gcd"};
  for (const auto& e : entries) {
    const int m = static_cast<int>(e.path.size()) - 1;
    const int have = e.g.level() == m + 1 ? static_cast<int>(e.g.mdeg()) : 0;
    auto mismatch = [&](const std::string& want) {
      r.fail("gcd degree " + std::to_string(have) + " but specialization has " + want +
             " for gcd(" + e.p.to_string(t.order()) + ", " + e.f.to_string(t.order()) + ") = " +
             e.g.to_string(t.order()) + " at node " + std::to_string(e.path.back()));
    };
    // Exact over Q at rational points of the path.
    auto exact = [&](const std::vector<Rational>& u) {
      const auto fd = checks::dense(checks::substitute_all(e.f, u));
      if (fd.size() != (e.f.level() == m + 1 ? e.f.mdeg() : 0) + 1) {
        ++r.skipped;
        return;
      }
      ++r.trials;
      const auto pd = checks::dense(checks::substitute_all(e.p, u));
      const auto gd = checks::dense(checks::substitute_all(e.g, u));
      const int want = checks::euclid_degree(pd, fd);
      if (want != have) {
        mismatch(std::to_string(want));
      } else if (static_cast<int>(gd.size()) != have + 1) {
        r.fail("initial of the gcd vanishes on its path; g=" + e.g.to_string(t.order()) + " node " +
               std::to_string(e.path.back()));
      } else if (!checks::remainder(pd, gd).empty() || !checks::remainder(fd, gd).empty()) {
        r.fail("stored gcd does not divide its inputs");
      }
    };
    if (m == 0) {
      exact({});
      continue;
    }
    for (std::size_t i = 0; i < each; ++i) {
      if (auto u = checks::rational_point_on(t, e.path, m, rng)) {
        exact(*u);
        continue;
      }
      auto pt = numeric::sample_path(t, e.path, m, rng);
      if (!pt) {
        ++r.skipped;
        continue;
      }
      auto fs = numeric::specialize(e.f, *pt);
      if (numeric::classify_zero(fs.back()) != numeric::Zero::No) {
        ++r.skipped;
        continue;
      }
      checks::Trial trial(r);
      auto ps = e.p.level() == m + 1 ? numeric::specialize(e.p, *pt)
                                     : std::vector<numeric::Scaled>{numeric::evaluate(e.p, *pt)};
      const auto want = numeric::gcd_degree(fs, ps);
      if (!want) {
        trial.undecided = true;
        continue;
      }
      if (*want != have) {
        mismatch(std::to_string(*want));
        continue;
      }
      if (have == 0) continue;
      auto gs = numeric::specialize(e.g, *pt);
      if (const auto z = numeric::classify_zero(gs.back()); z != numeric::Zero::No) {
        if (z == numeric::Zero::Unsure) {
          trial.undecided = true;
        } else {
          r.fail("initial of the gcd vanishes on its path; g=" + e.g.to_string(t.order()) +
                 " f=" + e.f.to_string(t.order()) + " node " + std::to_string(e.path.back()));
        }
        continue;
      }
      for (const auto& [z, mult] : numeric::clustered_roots(numeric::values(gs))) {
        const auto mf = numeric::multiplicity(fs, z, mult);
        const auto mp = numeric::multiplicity(ps, z, mult);
        if (!mf || !mp) {
          trial.undecided = true;
        } else if (*mf < mult || *mp < mult) {
          r.fail("gcd root is not a common root");
          break;
        }
      }
    }
  }
  return r;
}

inline CheckResult check_gcd_tables(const CylindricalTree& t, Rng& rng, std::size_t samples,
                                    std::size_t per_entry = 100) {
  const auto entries = checks::gcd_entries(t);
  if (entries.empty()) return CheckResult{"ccd.gcd"};
  const std::size_t each = std::max<std::size_t>(1, std::min(per_entry, samples / entries.size()));
  return check_gcd_entries(t, entries, rng, each);
}

/// Sibling constraints separate above sampled points of their parent path:
/// nonvanishing initials, squarefree and pairwise coprime sections.
inline CheckResult check_separation(const CylindricalTree& t, Rng& rng, std::size_t samples) {
  CheckResult r{"ccd.separation"};
  std::vector<Path> parents;
  for (const auto& p : checks::present_prefixes(t)) {
    if (static_cast<int>(p.size()) - 1 < t.nvars()) parents.push_back(p);
  }
  if (parents.empty()) return r;
  for (std::size_t i = 0; i < samples; ++i) {
    const Path& p = parents[i % parents.size()];
    const int m = static_cast<int>(p.size()) - 1;
    auto pt = numeric::sample_path(t, p, m, rng);
    if (!pt) {
      ++r.skipped;
      continue;
    }
    checks::Trial trial(r);
    std::vector<std::vector<numeric::Scaled>> sections;
    for (NodeKey k : t.present_children(p.back())) {
      const Constraint& c = t.node(k).constraint;
      if (c.is_any()) continue;
      const auto init = numeric::classify_zero(numeric::evaluate(checks::init_of(c.poly), *pt));
      if (init == numeric::Zero::Unsure) {
        trial.undecided = true;
        continue;
      }
      if (init == numeric::Zero::Yes) {
        r.fail("initial of " + c.poly.to_string(t.order()) + " vanishes above its parent");
        continue;
      }
      if (!c.is_eq()) continue;
      auto s = numeric::specialize(c.poly, *pt);
      trial.expect_zero_degree(numeric::gcd_degree(s, numeric::specialize(c.poly.der(), *pt)),
                               "section " + c.poly.to_string(t.order()) + " is not squarefree");
      sections.push_back(std::move(s));
    }
    for (std::size_t a = 0; a < sections.size(); ++a) {
      for (std::size_t b = a + 1; b < sections.size(); ++b) {
        trial.expect_zero_degree(numeric::gcd_degree(sections[a], sections[b]), "sibling sections meet");
      }
    }
  }
  return r;
}

/// Every path is a simple system: each equation has a nonvanishing initial and is
/// squarefree above its lower part; each inequation has a nonvanishing initial.
inline CheckResult check_simple_systems(const CylindricalTree& t, Rng& rng, std::size_t samples) {
  CheckResult r{"ccd.simple-system"};
  const auto paths = t.paths();
  if (paths.empty()) return r;
  for (std::size_t i = 0; i < samples; ++i) {
    const Path& p = paths[i % paths.size()];
    auto pt = numeric::sample_path(t, p, t.nvars(), rng);
    if (!pt) {
      ++r.skipped;
      continue;
    }
    checks::Trial trial(r);
    for (int k = 1; k <= t.nvars(); ++k) {
      const Constraint& c = t.node(p[static_cast<std::size_t>(k)]).constraint;
      if (c.is_any()) continue;
      const std::vector<Complex> below(pt->begin(), pt->begin() + (k - 1));
      if (c.poly.level() != k) {
        r.fail("constraint at the wrong level");
        continue;
      }
      const auto init = numeric::classify_zero(numeric::evaluate(c.poly.init(), below));
      if (init == numeric::Zero::Unsure) trial.undecided = true;
      if (init == numeric::Zero::Yes) r.fail("vanishing initial at level " + std::to_string(k));
      if (c.is_eq()) {
        trial.expect_zero_degree(numeric::gcd_degree(numeric::specialize(c.poly, below),
                                                     numeric::specialize(c.poly.der(), below)),
                                 "equation not squarefree at level " + std::to_string(k));
      }
    }
  }
  return r;
}

/// Equational mode: points of the partial tree solve the system, and solutions
/// found on the complete tree lie on exactly one partial path.
inline CheckResult check_eqs_solutions(const InputSystem& sys, const CylindricalTree& partial,
                                       const CylindricalTree& complete, Rng& rng,
                                       std::size_t samples) {
  CheckResult r{"eqs.solutions"};
  auto solves = [&](const std::vector<Complex>& pt) {
    for (const auto& it : sys.items) {
      const bool zero = numeric::vanishes(it.poly, pt);
      if (it.role == Role::Inequation ? zero : !zero) return false;
    }
    return true;
  };
  const auto ppaths = partial.paths();
  std::vector<Path> solution_paths;
  for (const auto& p : complete.paths()) {
    const Node& leaf = complete.node(p.back());
    bool ok = true;
    for (const auto& it : sys.items) {
      int s = 1;
      if (it.poly.is_zero()) {
        s = 0;
      } else if (!it.poly.is_constant()) {
        auto f = leaf.signs.find(key_of(it.poly));
        if (f == leaf.signs.end()) throw InternalError("complete tree lacks a sign");
        s = f->second;
      }
      if (it.role == Role::Inequation ? s == 0 : s != 0) ok = false;
    }
    if (ok) solution_paths.push_back(p);
  }
  if (ppaths.empty() != solution_paths.empty()) {
    r.trials = 1;
    r.fail("partial tree and complete tree disagree on emptiness");
    return r;
  }
  for (std::size_t i = 0; i < samples; ++i) {
    const bool from_partial = i % 2 == 0;
    const auto& pool = from_partial ? ppaths : solution_paths;
    if (pool.empty()) break;
    const Path& p = pool[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<long>(pool.size()) - 1))];
    auto pt = numeric::sample_path(from_partial ? partial : complete, p, partial.nvars(), rng);
    if (!pt) {
      ++r.skipped;
      continue;
    }
    ++r.trials;
    if (!solves(*pt)) {
      r.fail(from_partial ? "partial-tree point is not a solution" : "sampled solution is not a solution");
      continue;
    }
    const std::size_t hits = checks::paths_containing(partial, *pt);
    if (hits != 1) r.fail("solution lies on " + std::to_string(hits) + " partial paths");
  }
  return r;
}

namespace checks {

inline std::vector<Rational> random_rational_point(Rng& rng, std::size_t n) {
  std::vector<Rational> u;
  for (std::size_t i = 0; i < n; ++i) u.push_back(random_rational(rng, 24, 6));
  return u;
}

}  // namespace checks

/// Random rational points lie in exactly one cell and carry its signs.
inline CheckResult check_cad_partition(const Cad& cad, Rng& rng, std::size_t samples) {
  CheckResult r{"cad.partition"};
  const std::size_t n = cad.order.size();
  for (std::size_t i = 0; i < samples; ++i) {
    auto u = checks::random_rational_point(rng, n);
    ++r.trials;
    PointLocator at(u);
    const std::size_t hits = count_containing(cad, at);
    const CadCell* cell = classify_point(cad, at);
    if (cad.partial) {
      if ((hits == 0) != (cell == nullptr) || hits > 1) r.fail("partial cells overlap or miss");
      if (!cell) continue;
    } else if (hits != 1 || !cell) {
      r.fail("point lies in " + std::to_string(hits) + " cells");
      continue;
    }
    if (!cell_contains(*cell, at)) r.fail("stack walk and cell description disagree");
    for (std::size_t f = 0; f < cad.polys.size(); ++f) {
      if (sign(cad.polys[f].evaluate(u)) != cell->signs[f]) {
        r.fail("sign of " + cad.polys[f].to_string(cad.order) + " differs from its cell");
      }
    }
  }
  return r;
}

namespace checks {

/// A random rational point in a cell whose every level is a sector; nullopt otherwise.
inline std::optional<std::vector<Rational>> point_in_sector_cell(const CadCell& cell, Rng& rng) {
  std::vector<Rational> u;
  RealEvaluator ev;
  for (const auto& c : cell.conditions) {
    auto root_of = [&](const SectionBound& b) -> std::optional<Coordinate> {
      Polynomial q = b.poly;
      for (int j = static_cast<int>(u.size()); j-- > 0;) q = q.substitute(j, u[static_cast<std::size_t>(j)]);
      if (q.is_constant() || q.var() != static_cast<int>(u.size())) return std::nullopt;
      RealAlgebraicPoint base;
      base.coords.assign(u.size(), Coordinate::exact(Rational(0)));
      auto roots = ev.isolate(squarefree_part_univariate(q), base);
      if (static_cast<std::size_t>(b.root) > roots.size()) return std::nullopt;
      return roots[static_cast<std::size_t>(b.root - 1)];
    };
    const Rational step = random_rational(rng, 8, 8);
    const Rational gap = abs(step) + make_rational(1, 16);
    RealAlgebraicPoint base;
    base.coords.assign(u.size(), Coordinate::exact(Rational(0)));
    switch (c.kind) {
      case CellKind::Eq:
        return std::nullopt;
      case CellKind::Any:
        u.push_back(random_rational(rng, 24, 6));
        break;
      case CellKind::Lt: {
        auto hi = root_of(*c.upper);
        if (!hi) return std::nullopt;
        u.push_back(hi->lower() - gap);
        break;
      }
      case CellKind::Gt: {
        auto lo = root_of(*c.lower);
        if (!lo) return std::nullopt;
        u.push_back(lo->upper() + gap);
        break;
      }
      case CellKind::Between: {
        auto lo = root_of(*c.lower);
        auto hi = root_of(*c.upper);
        if (!lo || !hi) return std::nullopt;
        Rational a;
        Rational b;
        for (int guard = 0;; ++guard) {
          if (guard > 400) return std::nullopt;
          a = lo->upper();
          b = hi->lower();
          if (a < b) break;
          if (lo->algebraic) ev.bisect_root(*lo, base);
          if (hi->algebraic) ev.bisect_root(*hi, base);
          if (!lo->algebraic && !hi->algebraic) return std::nullopt;
        }
        const long k = uniform_int(rng, 1, 15);
        u.push_back(a + (b - a) * make_rational(k, 16));
        break;
      }
    }
  }
  return u;
}

}  // namespace checks

/// Above rational points of full-dimensional base cells the stack's section
/// functions exist and keep the order found at the sample.
inline CheckResult check_delineability(const Cad& cad, Rng& rng, std::size_t per_cell = 50,
                                       std::size_t max_cells = 40) {
  CheckResult r{"cad.delineability"};
  std::vector<const CadCell*> bases;
  std::vector<const CadCell*> todo{&cad.root};
  while (!todo.empty()) {
    const CadCell* c = todo.back();
    todo.pop_back();
    if (c->level() > 0 && c->stack.size() > 0) bases.push_back(c);
    for (const auto& k : c->children) todo.push_back(&k);
  }
  std::size_t used = 0;
  for (const CadCell* base : bases) {
    if (used >= max_cells) break;
    bool any = false;
    for (std::size_t i = 0; i < per_cell; ++i) {
      auto u = checks::point_in_sector_cell(*base, rng);
      if (!u) break;
      any = true;
      ++r.trials;
      // Extend u by one coordinate placed at each section in turn: compare the
      // section order by locating the section values against each other.
      std::vector<Polynomial> polys;
      for (const auto& b : base->stack) {
        if (std::find(polys.begin(), polys.end(), b.poly) == polys.end()) polys.push_back(b.poly);
      }
      RealEvaluator ev;
      RealAlgebraicPoint pt;
      for (const auto& x : *u) pt.coords.push_back(Coordinate::exact(x));
      try {
        std::vector<Polynomial> sqf;
        bool degenerate = false;
        for (const auto& p : polys) {
          Polynomial q = ev.substitute_rationals(p, pt);
          if (q.is_constant() || q.var() != static_cast<int>(pt.size())) {
            degenerate = true;
            break;
          }
          sqf.push_back(squarefree_part_univariate(q));
        }
        if (degenerate) {
          r.fail("section polynomial degenerates inside a base cell");
          continue;
        }
        auto merged = ev.isolate_jointly(sqf, pt);
        if (merged.size() != base->stack.size()) {
          r.fail("section count changes inside a base cell");
          continue;
        }
        for (std::size_t k = 0; k < merged.size(); ++k) {
          const SectionBound& want = base->stack[k];
          if (polys[merged[k].source] != want.poly || merged[k].index != want.root) {
            r.fail("section order changes inside a base cell");
            break;
          }
        }
      } catch (const InternalError& e) {
        r.fail(std::string("sections meet inside a base cell: ") + e.what());
      }
    }
    if (any) ++used;
  }
  return r;
}

/// Intersecting the inputs in reverse order gives a CAD with the same sign classifier.
inline CheckResult check_commutation(const InputSystem& sys, const Cad& forward, Rng& rng,
                                     std::size_t samples) {
  CheckResult r{"cad.commutation"};
  InputSystem rev = sys;
  std::reverse(rev.items.begin(), rev.items.end());
  const Cad backward = make_semi_algebraic(cylindrical_decompose(rev), sys);
  for (std::size_t i = 0; i < samples; ++i) {
    auto u = checks::random_rational_point(rng, sys.order.size());
    ++r.trials;
    const CadCell* a = classify_point(forward, u);
    const CadCell* b = classify_point(backward, u);
    if (!a || !b) {
      r.fail("point not classified");
      continue;
    }
    if (a->signs != b->signs) r.fail("sign vectors differ between intersection orders");
  }
  return r;
}

struct CheckReport {
  std::vector<CheckResult> results;
  bool passed() const {
    return std::all_of(results.begin(), results.end(), [](const CheckResult& c) { return c.passed(); });
  }
};

/// The property suite for one input system. Complex-tree checks use a share
/// of the sample budget proportional to their cost.
inline CheckReport run_checks(const InputSystem& sys, std::size_t samples, std::uint64_t seed) {
  CheckReport rep;
  Rng rng(seed);
  const InputSystem plain = plain_part(sys);
  std::vector<Polynomial> polys;
  for (const auto& it : plain.items) polys.push_back(it.poly);
  const bool constrained = has_constraints(sys);
  const CylindricalTree tree = cylindrical_decompose(plain);
  const std::size_t light = std::max<std::size_t>(1, samples / 10);
  rep.results.push_back(check_ccd_partition(tree, rng, light));
  rep.results.push_back(check_f_invariance(tree, polys, rng, light));
  rep.results.push_back(check_gcd_tables(tree, rng, light));
  rep.results.push_back(check_separation(tree, rng, light));
  rep.results.push_back(check_simple_systems(tree, rng, light));
  const Cad cad = make_semi_algebraic(tree, polys);
  rep.results.push_back(check_cad_partition(cad, rng, samples));
  rep.results.push_back(check_delineability(cad, rng));
  if (polys.size() >= 2) rep.results.push_back(check_commutation(plain, cad, rng, samples / 2));
  if (constrained) {
    const CylindricalTree partial = solve_system(sys);
    rep.results.push_back(check_eqs_solutions(sys, partial, tree, rng, light));
    CheckResult sep = check_separation(partial, rng, light);
    sep.name = "eqs.separation";
    rep.results.push_back(sep);
  }
  return rep;
}

}  // namespace tcad
