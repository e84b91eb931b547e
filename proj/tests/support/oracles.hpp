#pragma once

// Brute-force reference computations. Kept deliberately naive and separate
// from the library algorithms they check.

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "tcad/polynomial.hpp"

namespace tcad::oracle {

using Matrix = std::vector<std::vector<Polynomial>>;

inline Polynomial determinant(const Matrix& m) {
  const std::size_t n = m.size();
  std::unordered_map<std::uint32_t, Polynomial> memo;
  auto rec = [&](auto&& self, std::size_t row, std::uint32_t used) -> Polynomial {
    if (row == n) return Polynomial(1);
    if (auto it = memo.find(used); it != memo.end()) return it->second;
    Polynomial acc;
    int position = 0;
    for (std::size_t c = 0; c < n; ++c) {
      if (used & (1U << c)) continue;
      if (!m[row][c].is_zero()) {
        Polynomial term = m[row][c] * self(self, row + 1, used | (1U << c));
        acc = (position % 2 == 0) ? acc + term : acc - term;
      }
      ++position;
    }
    memo.emplace(used, acc);
    return acc;
  };
  return rec(rec, 0, 0);
}

/// Determinantal subresultant S_j(P, Q) w.r.t. x_v, deg P >= deg Q > j >= 0.
inline Polynomial sylvester_subresultant(const Polynomial& P, const Polynomial& Q, int v,
                                         unsigned j) {
  const unsigned p = P.degree(v);
  const unsigned q = Q.degree(v);
  const auto pc = P.to_univariate(v);
  const auto qc = Q.to_univariate(v);
  const unsigned cols = p + q - j;     // exponents cols-1 .. 0
  const unsigned rows = p + q - 2 * j;
  Matrix rows_full;
  auto push_shifted = [&](const std::vector<Polynomial>& c, unsigned shift) {
    std::vector<Polynomial> r(cols);
    for (unsigned e = 0; e < c.size(); ++e) r[cols - 1 - (e + shift)] = c[e];
    rows_full.push_back(std::move(r));
  };
  for (unsigned k = q - j; k-- > 0;) push_shifted(pc, k);
  for (unsigned k = p - j; k-- > 0;) push_shifted(qc, k);
  Polynomial out;
  const Polynomial x = Polynomial::variable(v);
  for (unsigned i = 0; i <= j; ++i) {
    Matrix m(rows, std::vector<Polynomial>(rows));
    for (unsigned r = 0; r < rows; ++r) {
      for (unsigned c = 0; c + 1 < rows; ++c) m[r][c] = rows_full[r][c];
      m[r][rows - 1] = rows_full[r][cols - 1 - i];
    }
    out += determinant(m) * x.pow(i);
  }
  return out;
}

/// Sylvester resultant via the full determinant.
inline Polynomial resultant(const Polynomial& P, const Polynomial& Q, int v) {
  return P.degree(v) >= Q.degree(v) ? sylvester_subresultant(P, Q, v, 0)
                                    : sylvester_subresultant(Q, P, v, 0);
}

}  // namespace tcad::oracle
