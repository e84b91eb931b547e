#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <algorithm>
#include <optional>
#include <vector>

#include "tcad/polynomial.hpp"
#include "tcad/random.hpp"
#include "tcad/tree.hpp"

// Floating-point oracle used by the property checks only. Nothing in the
// decomposition itself depends on it.
namespace tcad::numeric {

using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<100>,
                                           boost::multiprecision::et_off>;

inline Real to_real(const Rational& r) {
  Real x;
  mpfr_set_q(x.backend().data(), r.get_mpq_t(), MPFR_RNDN);
  return x;
}

struct Complex {
  Real re;
  Real im;

  Complex() = default;
  Complex(Real r, Real i = Real(0)) : re(std::move(r)), im(std::move(i)) {}  // NOLINT

  friend Complex operator+(const Complex& a, const Complex& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend Complex operator-(const Complex& a, const Complex& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend Complex operator*(const Complex& a, const Complex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Complex operator/(const Complex& a, const Complex& b) {
    const Real d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
  }
  Real abs() const { return boost::multiprecision::sqrt(re * re + im * im); }
};

/// Value of a polynomial together with the value of its absolute-value
/// majorant; the ratio is the relative size used by zero tests.
struct Scaled {
  Complex value;
  Real scale;

  friend Scaled operator+(const Scaled& a, const Scaled& b) {
    return {a.value + b.value, a.scale + b.scale};
  }
  friend Scaled operator*(const Scaled& a, const Scaled& b) {
    return {a.value * b.value, a.scale * b.scale};
  }
};

inline const Real& tolerance() {
  static const Real tol("1e-30");
  return tol;
}

/// Coordinates enter majorants as max(|z|, 1), so values near the origin are
/// judged against the coefficient size rather than against themselves.
inline Real majorant_point(const Complex& z) { return std::max(z.abs(), Real(1)); }

inline Scaled evaluate(const Polynomial& p, const std::vector<Complex>& point) {
  std::vector<Scaled> pt;
  pt.reserve(point.size());
  for (const auto& z : point) pt.push_back({z, majorant_point(z)});
  return p.evaluate_as<Scaled>(pt, [](const Rational& r) {
    Real x = to_real(r);
    return Scaled{Complex(x), boost::multiprecision::abs(x)};
  });
}

inline bool near_zero(const Scaled& s) {
  return s.value.abs() <= tolerance() * s.scale;
}

inline bool vanishes(const Polynomial& p, const std::vector<Complex>& point) {
  if (p.is_constant()) return p.is_zero();
  return near_zero(evaluate(p, point));
}

/// Coefficients of p in the variable after the given coordinates; a
/// polynomial free of that variable specializes to a constant.
inline std::vector<Scaled> specialize(const Polynomial& p, const std::vector<Complex>& point) {
  if (p.var() < static_cast<int>(point.size())) return {evaluate(p, point)};
  std::vector<Scaled> out;
  for (const auto& c : p.coefficients()) out.push_back(evaluate(c, point));
  return out;
}

inline Complex horner(const std::vector<Complex>& c, const Complex& z) {
  Complex acc = c.back();
  for (std::size_t i = c.size() - 1; i-- > 0;) acc = acc * z + c[i];
  return acc;
}

/// All complex roots with multiplicity (Aberth iteration). The leading coefficient must be nonzero.
inline std::vector<Complex> roots(std::vector<Complex> c) {
  while (c.size() > 1 && c.back().abs() == 0) c.pop_back();
  if (c.size() > 1 && c.front().abs() == 0) {  // exact zero roots
    std::size_t k = 0;
    while (c[k].abs() == 0) ++k;
    auto rest = roots(std::vector<Complex>(c.begin() + static_cast<std::ptrdiff_t>(k), c.end()));
    rest.insert(rest.end(), k, Complex(Real(0)));
    return rest;
  }
  const std::size_t n = c.size() - 1;
  if (n == 0) return {};
  const Complex lead = c.back();
  for (auto& x : c) x = x / lead;
  if (n == 1) return {Complex(Real(0)) - c[0]};
  // Fujiwara's bound; all roots lie in |z| <= bound.
  Real bound(0);
  for (std::size_t i = 0; i < n; ++i) {
    const Real a = c[i].abs();
    if (a > 0) bound = std::max(bound, boost::multiprecision::pow(a, Real(1) / static_cast<long>(n - i)));
  }
  bound = bound > 0 ? bound : Real(1);
  std::vector<Complex> dc;
  for (std::size_t i = 1; i <= n; ++i) dc.push_back(c[i] * Complex(Real(static_cast<long>(i))));
  std::vector<Complex> z;
  const Real pi = boost::multiprecision::acos(Real(-1));
  for (std::size_t k = 0; k < n; ++k) {
    const Real angle = 2 * pi * static_cast<long>(k) / static_cast<long>(n) + Real("0.4");
    z.emplace_back(bound * boost::multiprecision::cos(angle),
                   bound * boost::multiprecision::sin(angle));
  }
  const Real stop("1e-90");
  // Clustered roots stall far above the stop level; quit once progress ends.
  Real best("1e300");
  int since_best = 0;
  for (int iter = 0; iter < 4000 && since_best < 50; ++iter) {
    Real worst(0);
    for (std::size_t k = 0; k < n; ++k) {
      const Complex f = horner(c, z[k]);
      if (f.abs() == 0) continue;
      const Complex df = horner(dc, z[k]);
      const Complex w = f / df;
      Complex s;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != k) s = s + Complex(Real(1)) / (z[k] - z[j]);
      }
      const Complex delta = w / (Complex(Real(1)) - w * s);
      z[k] = z[k] - delta;
      worst = std::max(worst, delta.abs() / (1 + z[k].abs()));
    }
    if (worst < stop) break;
    if (worst < best / 2) {
      best = worst;
      since_best = 0;
    } else {
      ++since_best;
    }
  }
  return z;
}

inline std::vector<Complex> values(const std::vector<Scaled>& s) {
  std::vector<Complex> out;
  for (const auto& x : s) out.push_back(x.value);
  return out;
}

/// Distinct roots with multiplicities. Roots closer than a relative gap form
/// one cluster, represented by its centroid.
inline std::vector<std::pair<Complex, int>> clustered_roots(const std::vector<Complex>& c) {
  const Real gap("1e-15");
  std::vector<std::pair<Complex, int>> sums;
  for (const auto& r : roots(c)) {
    bool merged = false;
    for (auto& [sum, m] : sums) {
      const Complex center = sum / Complex(Real(m));
      if ((center - r).abs() <= gap * (1 + r.abs())) {
        sum = sum + r;
        ++m;
        merged = true;
        break;
      }
    }
    if (!merged) sums.push_back({r, 1});
  }
  for (auto& [sum, m] : sums) sum = sum / Complex(Real(m));
  return sums;
}

enum class Zero { Yes, No, Unsure };

/// Three-way zero test on the relative size; values between the two
/// thresholds cannot be told apart from near-coincidences at this precision.
inline Zero classify_zero(const Scaled& s) {
  static const Real zero("1e-40");
  static const Real nonzero("1e-25");
  const Real v = s.value.abs();
  if (v <= zero * s.scale) return Zero::Yes;
  if (v > nonzero * s.scale) return Zero::No;
  return Zero::Unsure;
}

/// Multiplicity of z as a root of the specialized polynomial c (0 if not a
/// root), counted up to cap; nullopt when undecided.
inline std::optional<int> multiplicity(std::vector<Scaled> c, const Complex& z, int cap) {
  int m = 0;
  const Scaled at{z, majorant_point(z)};
  while (!c.empty() && m < cap) {
    Scaled acc = c.back();
    for (std::size_t i = c.size() - 1; i-- > 0;) acc = acc * at + c[i];
    const Zero zt = classify_zero(acc);
    if (zt == Zero::Unsure) return std::nullopt;
    if (zt == Zero::No) return m;
    ++m;
    std::vector<Scaled> d;
    for (std::size_t i = 1; i < c.size(); ++i) {
      const Real k(static_cast<long>(i));
      d.push_back({c[i].value * Complex(k), c[i].scale * k});
    }
    c = std::move(d);
  }
  return m;
}

/// Degree of gcd(a, b) of two specialized polynomials; a must have a nonzero
/// leading coefficient. nullopt when undecided.
inline std::optional<int> gcd_degree(const std::vector<Scaled>& a, const std::vector<Scaled>& b) {
  int deg = 0;
  for (const auto& [r, m] : clustered_roots(values(a))) {
    auto k = multiplicity(b, r, m);
    if (!k) return std::nullopt;
    deg += *k;
  }
  return deg;
}

inline Complex random_complex(Rng& rng) {
  return {to_real(random_rational(rng, 16, 8)), to_real(random_rational(rng, 16, 8))};
}

/// A point of the zero set of the first depth levels of path, chosen level by
/// level: a random root for equations, a random value otherwise.
inline std::optional<std::vector<Complex>> sample_path(const CylindricalTree& t, const Path& path,
                                                       int depth, Rng& rng) {
  std::vector<Complex> pt;
  for (int k = 1; k <= depth; ++k) {
    const Constraint& c = t.node(path.at(static_cast<std::size_t>(k))).constraint;
    if (c.is_eq()) {
      if (c.poly.level() != k) return std::nullopt;
      auto coeffs = specialize(c.poly, pt);
      if (near_zero(coeffs.back())) return std::nullopt;
      // Heavy cancellation in the coefficients leaves too few digits for the roots.
      Real size(0);
      Real scale(0);
      for (const auto& x : coeffs) {
        size = std::max(size, x.value.abs());
        scale = std::max(scale, x.scale);
      }
      if (size < Real("1e-40") * scale) return std::nullopt;
      auto rs = roots(values(coeffs));
      const Complex z = rs[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<long>(rs.size()) - 1))];
      if (multiplicity(coeffs, z, 1) != 1) return std::nullopt;
      // Forward error bound of the root from the coefficient errors and p'(z).
      Real err(0);
      Real power(1);
      std::vector<Complex> dc;
      for (std::size_t i = 0; i < coeffs.size(); ++i) {
        err += coeffs[i].scale * power;
        power *= z.abs();
        if (i > 0) dc.push_back(coeffs[i].value * Complex(Real(static_cast<long>(i))));
      }
      if (Real("1e-95") * err > Real("1e-45") * horner(dc, z).abs() * (1 + z.abs())) return std::nullopt;
      pt.push_back(z);
      continue;
    }
    bool placed = false;
    for (int tries = 0; tries < 20 && !placed; ++tries) {
      pt.push_back(random_complex(rng));
      if (c.is_neq() && vanishes(c.poly, pt)) {
        pt.pop_back();
      } else {
        placed = true;
      }
    }
    if (!placed) return std::nullopt;
  }
  return pt;
}

/// Whether a point satisfies the constraints of path[1..depth].
inline bool satisfies(const CylindricalTree& t, const Path& path, int depth,
                      const std::vector<Complex>& pt) {
  for (int k = 1; k <= depth; ++k) {
    const Constraint& c = t.node(path.at(static_cast<std::size_t>(k))).constraint;
    if (c.is_eq() && !vanishes(c.poly, pt)) return false;
    if (c.is_neq() && vanishes(c.poly, pt)) return false;
  }
  return true;
}

}  // namespace tcad::numeric
