#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "tcad/polynomial.hpp"

namespace tcad {

struct PseudoDivision {
  Polynomial quotient;
  Polynomial remainder;
  unsigned exponent = 0;  // lc(d)^exponent * p = quotient * d + remainder
};

namespace detail {

/// Same contract as pseudo_divide for p, d with rational coefficients in x_v.
inline PseudoDivision pseudo_divide_dense(const Polynomial& p, const Polynomial& d, int v) {
  auto dense = [](const Polynomial& x) {
    std::vector<Rational> out;
    for (const auto& c : x.coefficients()) out.push_back(c.constant_value());
    return out;
  };
  auto back = [v](const std::vector<Rational>& c) {
    std::vector<Polynomial> out;
    out.reserve(c.size());
    for (const auto& x : c) out.emplace_back(x);
    return Polynomial::from_coefficients(v, std::move(out));
  };
  const std::vector<Rational> den = dense(d);
  std::vector<Rational> rem = dense(p);
  const std::size_t m = den.size() - 1;
  const std::size_t dp = rem.size() - 1;
  const Rational& lcd = den.back();
  std::vector<Rational> quo(dp - m + 1);
  Rational rk;
  for (std::size_t k = dp + 1; k-- > m;) {
    rk = rem[k];
    for (auto& q : quo) q *= lcd;
    quo[k - m] += rk;
    for (std::size_t j = 0; j < k; ++j) rem[j] *= lcd;
    if (rk != 0) {
      for (std::size_t j = 0; j < m; ++j) rem[k - m + j] -= rk * den[j];
    }
    rem.resize(k);
  }
  return {back(quo), back(rem), static_cast<unsigned>(dp - m + 1)};
}

}  // namespace detail

/// Classic pseudo-division of p by d w.r.t. x_v with exponent deg(p)-deg(d)+1.
inline PseudoDivision pseudo_divide(const Polynomial& p, const Polynomial& d, int v) {
  if (d.is_zero()) throw std::domain_error("pseudo-division by zero");
  if (d.var() == v && p.var() == v && d.is_univariate() && p.is_univariate() &&
      p.mdeg() >= d.mdeg()) {
    return detail::pseudo_divide_dense(p, d, v);
  }
  std::vector<Polynomial> den = d.to_univariate(v);
  if (den.size() < 2) throw std::domain_error("divisor has degree 0 in the division variable");
  if (p.is_zero()) return {};
  std::vector<Polynomial> rem = p.to_univariate(v);
  const std::size_t m = den.size() - 1;
  const std::size_t dp = rem.size() - 1;
  if (dp < m) return {Polynomial(), p, 0};
  const Polynomial& lcd = den.back();
  std::vector<Polynomial> quo(dp - m + 1);
  for (std::size_t k = dp + 1; k-- > m;) {
    Polynomial rk = rem[k];
    for (auto& q : quo) {
      if (!q.is_zero()) q = q * lcd;
    }
    quo[k - m] = quo[k - m] + rk;
    for (std::size_t j = 0; j < k; ++j) {
      if (!rem[j].is_zero()) rem[j] = rem[j] * lcd;
    }
    if (!rk.is_zero()) {
      for (std::size_t j = 0; j < m; ++j) rem[k - m + j] = rem[k - m + j] - rk * den[j];
    }
    rem.resize(k);
  }
  return {Polynomial::from_univariate(v, quo), Polynomial::from_univariate(v, rem),
          static_cast<unsigned>(dp - m + 1)};
}

/// Pseudo-division w.r.t. the main variable of d.
inline PseudoDivision pseudo_divide(const Polynomial& p, const Polynomial& d) {
  return pseudo_divide(p, d, d.var());
}

inline Polynomial prem(const Polynomial& p, const Polynomial& d) {
  return pseudo_divide(p, d).remainder;
}
inline Polynomial pquo(const Polynomial& p, const Polynomial& d) {
  return pseudo_divide(p, d).quotient;
}

/// Iterated pseudo-remainder of p by a triangular set, largest main variable first.
inline Polynomial prem_chain(const Polynomial& p, std::vector<Polynomial> chain) {
  chain.erase(std::remove_if(chain.begin(), chain.end(),
                             [](const Polynomial& t) { return t.is_constant(); }),
              chain.end());
  std::sort(chain.begin(), chain.end(),
            [](const Polynomial& a, const Polynomial& b) { return a.var() > b.var(); });
  Polynomial r = p;
  for (const auto& t : chain) {
    if (r.is_zero()) break;
    if (r.degree(t.var()) >= t.mdeg()) r = prem(r, t);
  }
  return r;
}

/// Exact quotient a / b in Q[x]; throws std::domain_error when b does not divide a.
inline Polynomial exact_divide(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw std::domain_error("division by zero polynomial");
  if (a.is_zero()) return {};
  if (b.is_constant()) return a.scaled(Rational(1 / b.constant_value()));
  const int va = a.var();
  const int vb = b.var();
  if (vb > va) throw std::domain_error("inexact polynomial division");
  if (vb < va) {
    std::vector<Polynomial> c;
    c.reserve(a.coefficients().size());
    for (const auto& x : a.coefficients()) c.push_back(exact_divide(x, b));
    return Polynomial::from_coefficients(va, std::move(c));
  }
  std::vector<Polynomial> rem = a.coefficients();
  const auto& den = b.coefficients();
  const std::size_t m = den.size() - 1;
  if (rem.size() - 1 < m) throw std::domain_error("inexact polynomial division");
  std::vector<Polynomial> quo(rem.size() - m);
  for (std::size_t k = rem.size(); k-- > m;) {
    if (rem[k].is_zero()) continue;
    Polynomial q = exact_divide(rem[k], den.back());
    quo[k - m] = q;
    for (std::size_t j = 0; j <= m; ++j) rem[k - m + j] = rem[k - m + j] - q * den[j];
  }
  for (std::size_t j = 0; j < m; ++j) {
    if (!rem[j].is_zero()) throw std::domain_error("inexact polynomial division");
  }
  return Polynomial::from_coefficients(va, std::move(quo));
}

}  // namespace tcad
