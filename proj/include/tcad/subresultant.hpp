#pragma once

#include <stdexcept>
#include <vector>

#include "tcad/division.hpp"
#include "tcad/polynomial.hpp"

namespace tcad {

/// S_0..S_{lambda+1} of two polynomials w.r.t. their common main variable.
///
/// S_{lambda+1} is the input of larger degree (p on ties) and S_lambda the
/// other one, both unscaled. For i < lambda, S_i is the determinantal
/// subresultant up to sign and s_i its coefficient of x^i.
struct SubresultantChain {
  int var = -1;
  unsigned lambda = 0;
  std::vector<Polynomial> items;
  std::vector<Polynomial> principals;

  const Polynomial& S(unsigned i) const { return items.at(i); }
  const Polynomial& s(unsigned i) const { return principals.at(i); }
};

inline SubresultantChain subresultant_chain(const Polynomial& p, const Polynomial& f, int v) {
  if (p.var() != v || f.var() != v) {
    throw std::invalid_argument("subresultant variable must be the main variable of both inputs");
  }
  const bool p_high = p.mdeg() >= f.mdeg();
  const Polynomial& big = p_high ? p : f;
  const Polynomial& small = p_high ? f : p;
  const unsigned lambda = small.mdeg();

  SubresultantChain out;
  out.var = v;
  out.lambda = lambda;
  out.items.assign(lambda + 2, Polynomial());
  out.principals.assign(lambda + 2, Polynomial());
  out.items[lambda + 1] = big;
  out.items[lambda] = small;

  Polynomial s = small.init().pow(big.mdeg() - lambda);
  Polynomial a = small;
  Polynomial b = prem(big, -small);
  while (!b.is_zero()) {
    const unsigned d = a.degree(v);
    const unsigned e = b.degree(v);
    out.items[d - 1] = b;
    const unsigned delta = d - e;
    Polynomial c = b;
    if (delta > 1) {
      Polynomial lb = b.coeff(v, e);
      c = exact_divide(lb.pow(delta - 1) * b, s.pow(delta - 1));
      out.items[e] = c;
    }
    if (e == 0) break;
    b = exact_divide(prem(a, -b), s.pow(delta) * a.coeff(v, d));
    a = c;
    s = a.coeff(v, e);
  }

  for (unsigned i = 0; i < lambda; ++i) out.principals[i] = out.items[i].coeff(v, i);
  out.principals[lambda] = small.init();
  out.principals[lambda + 1] = big.init();
  return out;
}

}  // namespace tcad
