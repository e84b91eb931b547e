#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "tcad/polynomial.hpp"
#include "tcad/rational.hpp"

namespace tcad {

using Rng = std::mt19937_64;

/// Uniform integer in [lo, hi]; stable across standard libraries.
inline long uniform_int(Rng& rng, long lo, long hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<long>(rng() % span);
}

/// Random rational num/den with |num| <= num_bound, 1 <= den <= den_bound.
inline Rational random_rational(Rng& rng, long num_bound, long den_bound) {
  return make_rational(uniform_int(rng, -num_bound, num_bound), uniform_int(rng, 1, den_bound));
}

struct RandomPolySpec {
  int nvars = 2;
  unsigned max_total_degree = 3;
  unsigned min_terms = 2;
  unsigned max_terms = 4;
  long coeff_bound = 5;
};

/// Sparse random polynomial with integer coefficients that involves x_nvars.
inline Polynomial random_polynomial(Rng& rng, const RandomPolySpec& spec) {
  const int top = spec.nvars - 1;
  while (true) {
    const auto nterms = static_cast<unsigned>(
        uniform_int(rng, static_cast<long>(spec.min_terms), static_cast<long>(spec.max_terms)));
    Polynomial p;
    for (unsigned t = 0; t < nterms; ++t) {
      long c = 0;
      while (c == 0) c = uniform_int(rng, -spec.coeff_bound, spec.coeff_bound);
      Polynomial m(c);
      auto budget = static_cast<long>(spec.max_total_degree);
      // The first term always carries the top variable.
      for (int v = top; v >= 0 && budget > 0; --v) {
        long lo = (t == 0 && v == top) ? 1 : 0;
        long e = uniform_int(rng, lo, budget);
        budget -= e;
        if (e > 0) m *= Polynomial::variable(v).pow(static_cast<unsigned>(e));
      }
      p += m;
    }
    if (p.var() == top) return p;
  }
}

/// Dense univariate-in-x_v polynomial of exact degree deg with coefficients
/// random in the lower variables (total degree of each coefficient <= coeff_degree).
inline Polynomial random_dense(Rng& rng, int v, unsigned deg, unsigned coeff_degree,
                               long coeff_bound) {
  std::vector<Polynomial> c(deg + 1);
  for (unsigned i = 0; i <= deg; ++i) {
    do {
      if (v == 0 || coeff_degree == 0) {
        c[i] = Polynomial(uniform_int(rng, -coeff_bound, coeff_bound));
      } else {
        RandomPolySpec s{v, coeff_degree, 1, 3, coeff_bound};
        c[i] = random_polynomial(rng, s) + Polynomial(uniform_int(rng, -coeff_bound, coeff_bound));
      }
    } while (i == deg && c[i].is_zero());
  }
  return Polynomial::from_coefficients(v, std::move(c));
}

}  // namespace tcad
