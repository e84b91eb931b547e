#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tcad/ccd.hpp"
#include "tcad/division.hpp"
#include "tcad/gcd.hpp"
#include "tcad/polynomial.hpp"
#include "tcad/rational.hpp"
#include "tcad/subresultant.hpp"

namespace tcad {

/// Closed interval with rational endpoints.
struct Interval {
  Rational lo;
  Rational hi;

  static Interval point(const Rational& r) { return {r, r}; }
  bool contains_zero() const { return lo <= 0 && hi >= 0; }
  int sign() const { return lo > 0 ? 1 : (hi < 0 ? -1 : 0); }  // 0 when undecided
  Rational width() const { return hi - lo; }
  Rational magnitude() const { return std::max(abs(lo), abs(hi)); }

  friend Interval operator+(const Interval& a, const Interval& b) {
    return {a.lo + b.lo, a.hi + b.hi};
  }
  friend Interval operator-(const Interval& a, const Interval& b) {
    return {a.lo - b.hi, a.hi - b.lo};
  }
  friend Interval operator*(const Interval& a, const Interval& b) {
    Rational c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    return {*std::min_element(c, c + 4), *std::max_element(c, c + 4)};
  }
};

/// One coordinate of a real algebraic point: a rational, or the unique root
/// of defining(x_1..x_k) over the lower coordinates inside (lo, hi).
struct Coordinate {
  bool algebraic = false;
  Rational value;
  Polynomial defining;
  Rational lo;
  Rational hi;
  int sign_lo = 0;  // sign of defining at lo, over the lower coordinates

  static Coordinate exact(const Rational& r) {
    Coordinate c;
    c.value = r;
    return c;
  }
  Rational lower() const { return algebraic ? lo : value; }
  Rational upper() const { return algebraic ? hi : value; }
  Interval enclosure() const { return {lower(), upper()}; }
};

struct RealAlgebraicPoint {
  std::vector<Coordinate> coords;

  std::size_t size() const { return coords.size(); }
  RealAlgebraicPoint with(Coordinate c) const {
    RealAlgebraicPoint p = *this;
    p.coords.push_back(std::move(c));
    return p;
  }
  bool is_rational() const {
    return std::none_of(coords.begin(), coords.end(),
                        [](const Coordinate& c) { return c.algebraic; });
  }
};

/// Root of one of several polynomials, tagged with its source.
struct TaggedRoot {
  std::size_t source = 0;  // index into the polynomial list
  int index = 0;           // 1-based among the source's real roots
  Coordinate root;
};

/// Exact sign determination and root isolation over real algebraic points.
/// Points are refined in place; results never depend on the refinement state.
class RealEvaluator {
 public:
  static constexpr long kMaxBits = 1L << 14;

  /// Sign of q at a; a must cover q's variables.
  int sign_at(const Polynomial& q, RealAlgebraicPoint& a) {
    Polynomial r = substitute_rationals(q, a);
    if (r.is_constant()) return sign(r.constant_value());
    if (int s = enclose(r, a).sign(); s != 0) return s;
    if (prem_chain(r, defining_chain(a, r.level())).is_zero()) return 0;
    for (int round = 0; round < 4; ++round) {
      refine_below(a, r.level());
      r = substitute_rationals(q, a);
      if (r.is_constant()) return sign(r.constant_value());
      if (int s = enclose(r, a).sign(); s != 0) return s;
    }
    if (vanishes(r, a)) return 0;
    // Nonzero but tiny: double the refinement depth per round.
    for (int step = 1;; step = std::min(step * 2, 256)) {
      for (int i = 0; i < step; ++i) refine_below(a, r.level());
      r = substitute_rationals(q, a);
      if (r.is_constant()) return sign(r.constant_value());
      if (int s = enclose(r, a).sign(); s != 0) return s;
    }
  }

  /// Interval enclosure of q over the current coordinate boxes.
  Interval enclose(const Polynomial& q, const RealAlgebraicPoint& a) const {
    std::vector<Interval> box;
    box.reserve(a.size());
    for (const auto& c : a.coords) box.push_back(c.enclosure());
    return q.evaluate_as<Interval>(box, [](const Rational& r) { return Interval::point(r); });
  }

  /// Halves the isolating interval of coordinate j (0-based).
  void bisect(RealAlgebraicPoint& a, std::size_t j) {
    Coordinate& c = a.coords[j];
    if (!c.algebraic) return;
    if (c.hi - c.lo < power_of_two(-kMaxBits)) {
      throw InternalError("isolating interval refinement did not converge");
    }
    const Rational m = midpoint(c.lo, c.hi);
    const Polynomial dm = c.defining.substitute(static_cast<int>(j), m);
    const int s = sign_at(dm, a);
    Coordinate& c2 = a.coords[j];  // sign_at may not touch j, but keep the reference fresh
    if (s == 0) {
      c2 = Coordinate::exact(m);
    } else if (s == c2.sign_lo) {
      c2.lo = m;
    } else {
      c2.hi = m;
    }
  }

  /// Refines coordinate j until its interval is no wider than width.
  void refine(RealAlgebraicPoint& a, std::size_t j, const Rational& width) {
    while (a.coords[j].algebraic && a.coords[j].hi - a.coords[j].lo > width) bisect(a, j);
  }

  /// Real roots of q(base, x_k) in increasing order, k = level(q) = base.size() + 1.
  std::vector<Coordinate> isolate(const Polynomial& q, RealAlgebraicPoint& base) {
    const int v = static_cast<int>(base.size());
    if (q.var() != v) throw std::invalid_argument("polynomial level must be one above the base");
    Polynomial r = substitute_rationals(q, base);
    std::vector<Polynomial> c = r.to_univariate(v);
    while (!c.empty() && sign_at(c.back(), base) == 0) c.pop_back();
    if (c.size() <= 1) {
      if (c.empty()) throw InternalError("polynomial vanishes identically above the base");
      return {};
    }
    const std::size_t d = c.size() - 1;
    if (d == 1 && c[0].is_constant() && c[1].is_constant()) {
      return {Coordinate::exact(Rational(-c[0].constant_value() / c[1].constant_value()))};
    }
    const Rational bound = root_bound(c, base);
    std::vector<Coordinate> out;
    descartes(q, c, v, -bound, bound, base, out);
    return out;
  }

  /// Joint isolation; intervals of different sources are made pairwise disjoint.
  /// Throws InternalError if two sources share a root.
  std::vector<TaggedRoot> isolate_jointly(const std::vector<Polynomial>& polys,
                                          RealAlgebraicPoint& base) {
    std::vector<TaggedRoot> all;
    for (std::size_t s = 0; s < polys.size(); ++s) {
      auto roots = isolate(polys[s], base);
      for (std::size_t i = 0; i < roots.size(); ++i) {
        all.push_back({s, static_cast<int>(i + 1), std::move(roots[i])});
      }
    }
    return merge(std::move(all), polys, base);
  }

  /// Separates and sorts roots whose sources are listed in polys.
  std::vector<TaggedRoot> merge(std::vector<TaggedRoot> all, const std::vector<Polynomial>& polys,
                                RealAlgebraicPoint& base) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t x = 0; x < all.size(); ++x) {
        for (std::size_t y = x + 1; y < all.size(); ++y) {
          if (all[x].source == all[y].source) continue;
          if (!overlap(all[x].root, all[y].root)) continue;
          separate(all[x], all[y], polys, base);
          changed = true;
        }
      }
    }
    std::sort(all.begin(), all.end(), [](const TaggedRoot& a, const TaggedRoot& b) {
      if (a.root.lower() != b.root.lower()) return a.root.lower() < b.root.lower();
      return a.root.upper() < b.root.upper();
    });
    return all;
  }

  /// One bisection of a root above base; lower coordinates refined on the way are kept.
  void bisect_root(Coordinate& root, RealAlgebraicPoint& base) {
    if (!root.algebraic) return;
    RealAlgebraicPoint p = base.with(root);
    bisect(p, base.size());
    root = p.coords.back();
    for (std::size_t i = 0; i < base.size(); ++i) base.coords[i] = p.coords[i];
  }

  /// Rational strictly between two consecutive roots above base.
  Rational between(Coordinate& a, Coordinate& b, RealAlgebraicPoint& base) {
    while (!(a.upper() < b.lower() || (a.algebraic && b.algebraic && a.hi <= b.lo))) {
      if (a.algebraic) bisect_root(a, base);
      if (b.algebraic) bisect_root(b, base);
      if (!a.algebraic && !b.algebraic && a.value >= b.value) {
        throw InternalError("roots are not strictly increasing");
      }
    }
    return midpoint(a.upper(), b.lower());
  }

  /// Rational-only substitution of coordinates below q's level.
  Polynomial substitute_rationals(const Polynomial& q, const RealAlgebraicPoint& a) const {
    Polynomial r = q;
    for (std::size_t j = std::min<std::size_t>(a.size(), static_cast<std::size_t>(q.level()));
         j-- > 0;) {
      if (!a.coords[j].algebraic) r = r.substitute(static_cast<int>(j), a.coords[j].value);
    }
    return r;
  }

 private:
  std::vector<Polynomial> defining_chain(const RealAlgebraicPoint& a, int level) const {
    std::vector<Polynomial> chain;
    for (std::size_t j = 0; j < a.size() && static_cast<int>(j) < level; ++j) {
      if (a.coords[j].algebraic) chain.push_back(substitute_rationals(a.coords[j].defining, a));
    }
    return chain;
  }

  void refine_below(RealAlgebraicPoint& a, int level) {
    for (std::size_t j = 0; j < a.size() && static_cast<int>(j) < level; ++j) bisect(a, j);
  }

  /// Exact zero test: r(a) = 0 iff gcd(r, D)(a_<k, x_k) has the root inside
  /// the isolating interval of coordinate k, D its defining polynomial.
  bool vanishes(const Polynomial& r, RealAlgebraicPoint& a) {
    const int v = r.var();
    const std::size_t j = static_cast<std::size_t>(v);
    const Coordinate& c = a.coords.at(j);
    if (!c.algebraic) throw InternalError("zero test on a rational coordinate");
    const Polynomial D = substitute_rationals(c.defining, a);
    if (D.var() != v) throw InternalError("defining polynomial lost its main variable");
    const SubresultantChain& s = chain(r, D);
    const unsigned d = r.mdeg() >= D.mdeg() ? D.mdeg() : r.mdeg() + 1;
    Polynomial g = s.S(d);
    for (unsigned i = 0; i < d; ++i) {
      if (sign_at(s.s(i), a) != 0) {
        if (i == 0) return false;
        g = s.S(i);
        break;
      }
    }
    const Rational lo = a.coords[j].lo;
    const Rational hi = a.coords[j].hi;
    const int s_lo = sign_at(g.substitute(v, lo), a);
    const int s_hi = sign_at(g.substitute(v, hi), a);
    if (s_lo == 0 || s_hi == 0) throw InternalError("isolating interval endpoint is a root");
    return s_lo != s_hi;
  }

  const SubresultantChain& chain(const Polynomial& p, const Polynomial& f) {
    auto it = chains_.find({p, f});
    if (it == chains_.end()) {
      it = chains_.emplace(PolyPair{p, f}, subresultant_chain(p, f, p.var())).first;
    }
    return it->second;
  }

  /// Strict bound on |roots|: a power of two above 1 + max|c_i / c_d|.
  Rational root_bound(const std::vector<Polynomial>& c, RealAlgebraicPoint& base) {
    Interval lead = enclose(c.back(), base);
    while (lead.contains_zero()) {
      refine_below(base, static_cast<int>(base.size()));
      lead = enclose(c.back(), base);
    }
    const Rational lead_min = std::min(abs(lead.lo), abs(lead.hi));
    Rational top = 0;
    for (std::size_t i = 0; i + 1 < c.size(); ++i) {
      top = std::max(top, enclose(c[i], base).magnitude());
    }
    return power_of_two_above(Rational(1 + top / lead_min) + 1);
  }

  void descartes(const Polynomial& q, const std::vector<Polynomial>& c, int v, const Rational& a,
                 const Rational& b, RealAlgebraicPoint& base, std::vector<Coordinate>& out) {
    if (b - a < power_of_two(-kMaxBits)) {
      throw InternalError("root isolation did not converge (input not squarefree?)");
    }
    const int changes = sign_variations(c, v, a, b, base);
    if (changes == 0) return;
    if (changes == 1) {
      Coordinate r;
      r.algebraic = true;
      r.defining = q;
      r.lo = a;
      r.hi = b;
      r.sign_lo = sign_at(q.substitute(v, a), base);
      if (r.sign_lo == 0) throw InternalError("isolating interval endpoint is a root");
      out.push_back(std::move(r));
      return;
    }
    const Rational m = midpoint(a, b);
    if (sign_at(q.substitute(v, m), base) != 0) {
      descartes(q, c, v, a, m, base, out);
      descartes(q, c, v, m, b, base, out);
      return;
    }
    // m is a root: shrink a window around it until it holds no other root.
    Rational delta = (b - a) / 4;
    while (sign_at(q.substitute(v, m - delta), base) == 0 ||
           sign_at(q.substitute(v, m + delta), base) == 0 ||
           sign_variations(c, v, m - delta, m + delta, base) != 1) {
      delta /= 2;
    }
    descartes(q, c, v, a, Rational(m - delta), base, out);
    out.push_back(Coordinate::exact(m));
    descartes(q, c, v, Rational(m + delta), b, base, out);
  }

  /// Sign variations of (x+1)^d q((a x + b)/(x + 1)); bounds the roots in (a, b).
  int sign_variations(const std::vector<Polynomial>& c, int v, const Rational& a,
                      const Rational& b, RealAlgebraicPoint& base) {
    const std::size_t d = c.size() - 1;
    const Polynomial x = Polynomial::variable(v);
    const Polynomial num = x.scaled(a) + Polynomial(b);
    const Polynomial den = x + Polynomial(1);
    std::vector<Polynomial> num_pow{Polynomial(1)};
    std::vector<Polynomial> den_pow{Polynomial(1)};
    for (std::size_t i = 1; i <= d; ++i) {
      num_pow.push_back(num_pow.back() * num);
      den_pow.push_back(den_pow.back() * den);
    }
    Polynomial t;
    for (std::size_t i = 0; i <= d; ++i) {
      if (!c[i].is_zero()) t += c[i] * num_pow[i] * den_pow[d - i];
    }
    int changes = 0;
    int last = 0;
    for (const auto& coeff : t.to_univariate(v)) {
      const int s = sign_at(coeff, base);
      if (s == 0) continue;
      if (last != 0 && s != last) ++changes;
      last = s;
    }
    return changes;
  }

  static bool overlap(const Coordinate& x, const Coordinate& y) {
    if (!x.algebraic && !y.algebraic) return x.value == y.value;
    if (!x.algebraic) return y.lo < x.value && x.value < y.hi;
    if (!y.algebraic) return x.lo < y.value && y.value < x.hi;
    return x.lo < y.hi && y.lo < x.hi;
  }

  void separate(TaggedRoot& x, TaggedRoot& y, const std::vector<Polynomial>& polys,
                RealAlgebraicPoint& base) {
    auto shared = [&](const TaggedRoot& root, const Polynomial& other) {
      RealAlgebraicPoint p = base.with(root.root);
      return sign_at(other, p) == 0;
    };
    auto width = [](const Coordinate& c) { return c.algebraic ? c.hi - c.lo : Rational(0); };
    if (!x.root.algebraic && !y.root.algebraic) {
      throw InternalError("sibling sections share a root");
    }
    const Rational narrow = power_of_two(-32);
    if (width(x.root) < narrow && width(y.root) < narrow &&
        (shared(x, polys[y.source]) || shared(y, polys[x.source]))) {
      throw InternalError("sibling sections share a root");
    }
    bisect_root(x.root, base);
    bisect_root(y.root, base);
  }

  std::map<PolyPair, SubresultantChain> chains_;
};

/// Real roots of a univariate squarefree polynomial with rational coefficients.
inline std::vector<Coordinate> isolate_real_roots(const Polynomial& p) {
  if (p.is_constant()) throw std::invalid_argument("constant polynomial has no roots to isolate");
  for (const auto& c : p.coefficients()) {
    if (!c.is_constant()) throw std::invalid_argument("polynomial is not univariate");
  }
  if (!gcd(p, p.der()).is_constant()) throw std::invalid_argument("polynomial is not squarefree");
  RealAlgebraicPoint base;
  base.coords.assign(static_cast<std::size_t>(p.var()), Coordinate::exact(Rational(0)));
  RealEvaluator ev;
  return ev.isolate(p, base);
}

/// Refines an isolating interval of a univariate root until its width is at most width.
inline Coordinate refine(const Coordinate& root, const Rational& width) {
  if (!root.algebraic) return root;
  RealAlgebraicPoint p;
  p.coords.assign(static_cast<std::size_t>(root.defining.var()), Coordinate::exact(Rational(0)));
  p.coords.push_back(root);
  RealEvaluator ev;
  ev.refine(p, p.size() - 1, width);
  return p.coords.back();
}

}  // namespace tcad
