#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "tcad/division.hpp"
#include "tcad/polynomial.hpp"

namespace tcad {

/// gcd of numerators over lcm of denominators; positive. Zero for the zero polynomial.
inline Rational numeric_content(const Polynomial& p) {
  Integer g = 0;
  Integer l = 1;
  p.for_each_numeric([&](const Rational& c) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  });
  Rational r(g, l);
  r.canonicalize();
  return r;
}

/// Integer-primitive associate with positive lexicographically leading coefficient.
inline Polynomial normalize(const Polynomial& p) {
  if (p.is_zero()) throw std::domain_error("cannot normalize the zero polynomial");
  if (p.is_constant()) return Polynomial(1);
  Rational c = numeric_content(p);
  if (p.leading_numeric() < 0) c = -c;
  if (c == 1) return p;
  return p.scaled(Rational(1 / c));
}

Polynomial gcd(const Polynomial& a, const Polynomial& b);

namespace detail {

/// Arithmetic modulo 2^61 - 1.
struct Mod {
  static constexpr std::uint64_t kP = (std::uint64_t{1} << 61) - 1;
  std::uint64_t v = 0;

  friend Mod operator+(Mod a, Mod b) { return {(a.v + b.v) % kP}; }
  friend Mod operator-(Mod a, Mod b) { return {(a.v + kP - b.v) % kP}; }
  friend Mod operator*(Mod a, Mod b) {
    return {static_cast<std::uint64_t>(static_cast<unsigned __int128>(a.v) * b.v % kP)};
  }
  Mod inverse() const {
    Mod r{1}, b = *this;
    for (std::uint64_t e = kP - 2; e; e >>= 1) {
      if (e & 1) r = r * b;
      b = b * b;
    }
    return r;
  }
};

inline std::optional<Mod> reduce(const Rational& r) {
  const Mod den{mpz_fdiv_ui(r.get_den_mpz_t(), Mod::kP)};
  if (den.v == 0) return std::nullopt;
  return Mod{mpz_fdiv_ui(r.get_num_mpz_t(), Mod::kP)} * den.inverse();
}

/// Image of p in F_P[x_v] after substituting fixed residues for lower variables;
/// nullopt if a denominator or the leading coefficient vanishes.
inline std::optional<std::vector<Mod>> modular_image(const Polynomial& p) {
  std::vector<Mod> point;
  for (int j = 0; j < p.var(); ++j) {
    point.push_back({1000003ULL + 7919ULL * static_cast<std::uint64_t>(j * j + 3 * j + 1)});
  }
  bool ok = true;
  auto conv = [&](const Rational& r) {
    auto m = reduce(r);
    if (!m) ok = false;
    return m.value_or(Mod{});
  };
  std::vector<Mod> out;
  for (const auto& c : p.coefficients()) out.push_back(c.evaluate_as<Mod>(point, conv));
  if (!ok || out.back().v == 0) return std::nullopt;
  return out;
}

inline std::size_t modular_gcd_degree(std::vector<Mod> a, std::vector<Mod> b) {
  auto trim = [](std::vector<Mod>& x) {
    while (!x.empty() && x.back().v == 0) x.pop_back();
  };
  trim(a);
  trim(b);
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    const Mod inv = b.back().inverse();
    while (a.size() >= b.size()) {
      const Mod f = a.back() * inv;
      const std::size_t shift = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] = a[i + shift] - f * b[i];
      trim(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return a.size() - 1;
}

/// True only if a and b (same main variable) have no common factor involving it.
inline bool coprime_image(const Polynomial& a, const Polynomial& b) {
  auto ia = modular_image(a);
  auto ib = modular_image(b);
  if (!ia || !ib) return false;
  return modular_gcd_degree(std::move(*ia), std::move(*ib)) == 0;
}


inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1;
  for (; e; e >>= 1) {
    if (e & 1) r = mulmod(r, b, p);
    b = mulmod(b, b, p);
  }
  return r;
}

/// i-th prime above 2^61, generated once.
inline std::uint64_t crt_prime(std::size_t i) {
  static std::vector<std::uint64_t> primes;
  while (primes.size() <= i) {
    Integer z = primes.empty() ? Integer(Integer(1) << 61) : Integer(primes.back());
    mpz_nextprime(z.get_mpz_t(), z.get_mpz_t());
    primes.push_back(mpz_get_ui(z.get_mpz_t()));
  }
  return primes[i];
}

/// Monic gcd of dense coefficient vectors over F_p (low degree first).
inline std::vector<std::uint64_t> gcd_mod(std::vector<std::uint64_t> a, std::vector<std::uint64_t> b,
                                          std::uint64_t p) {
  auto trim = [](std::vector<std::uint64_t>& x) {
    while (!x.empty() && x.back() == 0) x.pop_back();
  };
  trim(a);
  trim(b);
  while (!b.empty()) {
    if (a.size() >= b.size()) {
      const std::uint64_t inv = powmod(b.back(), p - 2, p);
      while (a.size() >= b.size()) {
        const std::uint64_t f = mulmod(a.back(), inv, p);
        const std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) {
          a[i + shift] = (a[i + shift] + p - mulmod(f, b[i], p)) % p;
        }
        trim(a);
        if (a.empty()) break;
      }
    }
    std::swap(a, b);
  }
  const std::uint64_t inv = powmod(a.back(), p - 2, p);
  for (auto& c : a) c = mulmod(c, inv, p);
  return a;
}

/// Whether h divides a in Z[x]; h primitive, both dense low degree first.
inline bool divides_dense(const std::vector<Integer>& h, std::vector<Integer> a) {
  const std::size_t m = h.size() - 1;
  if (a.size() < h.size()) return false;
  Integer q;
  for (std::size_t k = a.size(); k-- > m;) {
    if (a[k] == 0) continue;
    if (!mpz_divisible_p(a[k].get_mpz_t(), h.back().get_mpz_t())) return false;
    mpz_divexact(q.get_mpz_t(), a[k].get_mpz_t(), h.back().get_mpz_t());
    for (std::size_t j = 0; j <= m; ++j) a[k - m + j] -= q * h[j];
  }
  for (std::size_t j = 0; j < m; ++j) {
    if (a[j] != 0) return false;
  }
  return true;
}

/// gcd of two univariate polynomials in the same variable by Chinese remaindering
/// of modular images; the candidate is accepted only after trial division.
inline Polynomial univariate_gcd(const Polynomial& a, const Polynomial& b) {
  const int v = a.var();
  const Polynomial A = normalize(a);
  const Polynomial B = normalize(b);
  auto ints = [](const Polynomial& p) {
    std::vector<Integer> out;
    for (const auto& c : p.coefficients()) out.push_back(c.constant_value().get_num());
    return out;
  };
  const std::vector<Integer> ca = ints(A);
  const std::vector<Integer> cb = ints(B);
  Integer l;
  mpz_gcd(l.get_mpz_t(), ca.back().get_mpz_t(), cb.back().get_mpz_t());
  std::vector<Integer> acc;
  Integer modulus = 1;
  std::size_t best = std::min(ca.size(), cb.size());
  Polynomial last;
  for (std::size_t i = 0;; ++i) {
    const std::uint64_t p = crt_prime(i);
    if (mpz_fdiv_ui(ca.back().get_mpz_t(), p) == 0 || mpz_fdiv_ui(cb.back().get_mpz_t(), p) == 0) {
      continue;
    }
    auto image = [p](const std::vector<Integer>& c) {
      std::vector<std::uint64_t> out;
      for (const auto& z : c) out.push_back(mpz_fdiv_ui(z.get_mpz_t(), p));
      return out;
    };
    std::vector<std::uint64_t> g = gcd_mod(image(ca), image(cb), p);
    if (g.size() == 1) return Polynomial(1);
    if (g.size() > best) continue;  // unlucky prime
    const std::uint64_t lp = mpz_fdiv_ui(l.get_mpz_t(), p);
    for (auto& c : g) c = mulmod(c, lp, p);
    if (g.size() < best || acc.empty()) {
      best = g.size();
      acc.assign(g.size(), Integer(0));
      for (std::size_t k = 0; k < g.size(); ++k) acc[k] = g[k];
      modulus = p;
      last = Polynomial();
    } else {
      const std::uint64_t inv = powmod(mpz_fdiv_ui(modulus.get_mpz_t(), p), p - 2, p);
      for (std::size_t k = 0; k < g.size(); ++k) {
        const std::uint64_t h = mpz_fdiv_ui(acc[k].get_mpz_t(), p);
        const std::uint64_t t = mulmod((g[k] + p - h) % p, inv, p);
        acc[k] += modulus * Integer(static_cast<unsigned long>(t));
      }
      modulus *= Integer(static_cast<unsigned long>(p));
    }
    std::vector<Polynomial> coeffs;
    const Integer half = modulus / 2;
    for (const auto& c : acc) coeffs.emplace_back(Rational(c > half ? Integer(c - modulus) : c));
    Polynomial h = Polynomial::from_coefficients(v, coeffs);
    if (h == last && h.var() == v) {
      h = normalize(h);
      const std::vector<Integer> ch = ints(h);
      if (divides_dense(ch, ca) && divides_dense(ch, cb)) return h;
    }
    last = Polynomial::from_coefficients(v, coeffs);
  }
}

}  // namespace detail

/// gcd of the coefficients of p w.r.t. its main variable, normalized.
inline Polynomial content(const Polynomial& p) {
  if (p.is_constant()) return p.is_zero() ? Polynomial() : Polynomial(1);
  Polynomial g;
  for (const auto& c : p.coefficients()) {
    g = gcd(g, c);
    if (g.is_one()) break;
  }
  return g;
}

/// p divided by its content w.r.t. the main variable, normalized.
inline Polynomial primitive_part(const Polynomial& p) {
  if (p.is_constant()) return p.is_zero() ? Polynomial() : Polynomial(1);
  Polynomial c = content(p);
  return normalize(c.is_one() ? p : exact_divide(p, c));
}

/// Normalized gcd over Q[x]; gcd(0, 0) = 0.
inline Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return b.is_zero() ? Polynomial() : normalize(b);
  if (b.is_zero()) return normalize(a);
  if (a.is_constant() || b.is_constant()) return Polynomial(1);
  if (a.var() == b.var() && a.is_univariate() && b.is_univariate()) {
    return detail::univariate_gcd(a, b);
  }
  if (a.var() != b.var()) {
    const bool a_high = a.var() > b.var();
    return gcd(content(a_high ? a : b), a_high ? b : a);
  }
  const int v = a.var();
  Polynomial ca = content(a);
  Polynomial cb = content(b);
  Polynomial c = gcd(ca, cb);
  Polynomial pa = normalize(ca.is_one() ? a : exact_divide(a, ca));
  Polynomial pb = normalize(cb.is_one() ? b : exact_divide(b, cb));
  if (detail::coprime_image(pa, pb)) return c;
  if (pa.mdeg() < pb.mdeg()) std::swap(pa, pb);
  while (true) {
    Polynomial r = prem(pa, pb);
    if (r.is_zero()) break;
    if (r.var() != v) return c;
    pa = std::move(pb);
    pb = primitive_part(r);
  }
  return normalize(c * pb);
}

/// Constants map to 0 or 1; otherwise the normalized primitive part.
inline Polynomial canonical(const Polynomial& p) {
  if (p.is_constant()) return p.is_zero() ? Polynomial() : Polynomial(1);
  return primitive_part(p);
}

/// Numeric normalization that keeps constants as 0/1 (safe table key).
inline Polynomial key_of(const Polynomial& p) {
  if (p.is_constant()) return p.is_zero() ? Polynomial() : Polynomial(1);
  return normalize(p);
}

/// p / gcd(p, p'), primitive with positive leading coefficient.
inline Polynomial squarefree_part_univariate(const Polynomial& p) {
  if (p.is_constant()) throw std::domain_error("squarefree part of a constant polynomial");
  for (const auto& c : p.coefficients()) {
    if (!c.is_constant()) throw std::domain_error("polynomial is not univariate");
  }
  Polynomial g = gcd(p, p.der());
  return normalize(g.is_one() ? p : exact_divide(p, g));
}

/// General squarefree part w.r.t. the main variable (multivariate gcd based).
inline Polynomial squarefree_part(const Polynomial& p) {
  if (p.is_constant()) return canonical(p);
  Polynomial g = gcd(p, p.der());
  return primitive_part(g.var() == p.var() ? exact_divide(p, g) : p);
}

}  // namespace tcad
