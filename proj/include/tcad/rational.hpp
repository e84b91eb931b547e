#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tcad {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline int sign(const Rational& r) { return sgn(r); }
inline int sign(const Integer& z) { return sgn(z); }

inline std::string to_string(const Rational& r) { return r.get_str(); }
inline std::string to_string(const Integer& z) { return z.get_str(); }

/// Parses "a" or "a/b" with optional leading '-'.
inline Rational parse_rational(std::string_view text) {
  Rational r;
  if (r.set_str(std::string(text), 10) != 0 || r.get_den() == 0) {
    throw std::invalid_argument("malformed rational: " + std::string(text));
  }
  r.canonicalize();
  return r;
}

inline Integer floor(const Rational& r) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

inline Integer ceil(const Rational& r) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

inline Rational abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

inline Rational midpoint(const Rational& a, const Rational& b) {
  Rational m = (a + b) / 2;
  m.canonicalize();
  return m;
}

/// 2^e for any integer e.
inline Rational power_of_two(long e) {
  Rational r(1);
  if (e >= 0) {
    mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
  } else {
    mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
  }
  return r;
}

/// Smallest power of two that is >= r (r > 0).
inline Rational power_of_two_above(const Rational& r) {
  long e = 0;
  Rational p(1);
  while (p < r) {
    p *= 2;
    ++e;
  }
  while (e > -64 && p / 2 >= r) {
    p /= 2;
    --e;
  }
  return p;
}

inline Rational pow(const Rational& base, unsigned e) {
  Rational r(1);
  mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), e);
  r.canonicalize();
  return r;
}

}  // namespace tcad
