#include <gtest/gtest.h>

#include "support/oracles.hpp"
#include "tcad/division.hpp"
#include "tcad/gcd.hpp"
#include "tcad/parser.hpp"
#include "tcad/random.hpp"
#include "tcad/subresultant.hpp"

using namespace tcad;

namespace {

const VarOrder kXYZ({"x", "y", "z"});

Polynomial P(const char* s) { return parse_polynomial(s, kXYZ); }

bool associates(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  return normalize(a) == normalize(b);
}

}  // namespace

TEST(Polynomial, Accessors) {
  Polynomial p = P("y^2 + x");
  EXPECT_EQ(p.mvar(), P("y"));
  EXPECT_EQ(p.level(), 2);
  EXPECT_EQ(p.init(), P("1"));
  EXPECT_EQ(p.mdeg(), 2U);
  EXPECT_EQ(p.tail(), P("x"));
  EXPECT_EQ(P("y^2 + y").der(), P("2*y + 1"));
  EXPECT_EQ(P("x*y^2 + y").lc(1), P("x"));
  EXPECT_EQ(P("x*y^2 + y").degree(1), 2U);
  EXPECT_EQ(P("x*y^2 + y").coeff(1, 1), P("1"));
  EXPECT_EQ(P("x^2*y + x").coeff(0, 2), P("y"));
}

TEST(Polynomial, ConstantHasNoMainVariable) {
  try {
    (void)P("7").mvar();
    FAIL();
  } catch (const std::domain_error& e) {
    EXPECT_STREQ(e.what(), "constant polynomial has no main variable");
  }
  EXPECT_THROW((void)P("0").init(), std::domain_error);
  EXPECT_THROW((void)P("3").mdeg(), std::domain_error);
  EXPECT_EQ(P("3").level(), 0);
}

TEST(Polynomial, ArithmeticAndPrinting) {
  EXPECT_EQ(P("(x + y)^2"), P("x^2 + 2*x*y + y^2"));
  EXPECT_EQ(P("(x - y)*(x + y)"), P("x^2 - y^2"));
  EXPECT_TRUE((P("x*y") - P("y*x")).is_zero());
  EXPECT_EQ(P("x/2 + 1/2"), P("x + 1").scaled(make_rational(1, 2)));
  EXPECT_EQ(P("y^2*x - 3*x + 2").to_string(kXYZ), "x*y^2 - 3*x + 2");
  EXPECT_EQ(P("-y^3 + z").to_string(kXYZ), "z - y^3");
  EXPECT_EQ(P("x/3").to_string(kXYZ), "1/3*x");
  EXPECT_EQ(P("0").to_string(kXYZ), "0");
}

TEST(Polynomial, Evaluation) {
  EXPECT_EQ(P("y^2 + x").evaluate({Rational(-4), Rational(1)}), Rational(-3));
  EXPECT_EQ(P("x*y + z").substitute(0, Rational(2)), P("2*y + z"));
  EXPECT_EQ(P("y^2 + x").substitute(1, Rational(3)), P("x + 9"));
}

TEST(Parser, RejectsBadInput) {
  EXPECT_THROW(P("2x"), ParseError);
  EXPECT_THROW(P("x y"), ParseError);
  EXPECT_THROW(P("w + 1"), ParseError);
  EXPECT_THROW(P("x^"), ParseError);
  EXPECT_THROW(P("(x + 1"), ParseError);
  EXPECT_THROW(P("x / 0"), ParseError);
  try {
    parse_polynomial("x + q", kXYZ, 4, 1);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4);
    EXPECT_EQ(e.column(), 5);
  }
}

TEST(PseudoDivision, Examples) {
  auto r = pseudo_divide(P("y^2 + x"), P("y"), 1);
  EXPECT_EQ(r.quotient, P("y"));
  EXPECT_EQ(r.remainder, P("x"));
  r = pseudo_divide(P("y^2"), P("y"), 1);
  EXPECT_EQ(r.quotient, P("y"));
  EXPECT_TRUE(r.remainder.is_zero());
  r = pseudo_divide(P("x*y + 1"), P("2*y"), 1);
  EXPECT_EQ(r.exponent, 1U);
  EXPECT_EQ(r.remainder, P("2"));
  EXPECT_EQ(P("2*(x*y + 1)"), r.quotient * P("2*y") + r.remainder);
  EXPECT_THROW(pseudo_divide(P("y"), P("0"), 1), std::domain_error);
}

TEST(PseudoDivision, IdentityOnRandomInputs) {
  Rng rng(11);
  for (int t = 0; t < 200; ++t) {
    int v = static_cast<int>(uniform_int(rng, 0, 2));
    Polynomial p = random_polynomial(rng, {3, 5, 1, 6, 9});
    Polynomial d = random_polynomial(rng, {v + 1, 3, 1, 4, 9});
    auto r = pseudo_divide(p, d, v);
    unsigned e = p.degree(v) >= d.degree(v) ? p.degree(v) - d.degree(v) + 1 : 0;
    EXPECT_EQ(r.exponent, e);
    EXPECT_EQ(d.lc(v).pow(e) * p, r.quotient * d + r.remainder);
    EXPECT_LT(r.remainder.degree(v), d.degree(v));
  }
}

TEST(PremChain, Examples) {
  // y^2 + y = (y + 1) * y, so the remainder by y is zero.
  EXPECT_TRUE(prem_chain(P("y^2 + y"), {P("y")}).is_zero());
  EXPECT_TRUE(prem_chain(P("y^2 + x"), {P("x"), P("y")}).is_zero());
  EXPECT_EQ(prem_chain(P("1"), {P("y^2 + x")}), P("1"));
  EXPECT_EQ(prem_chain(P("y^2 + x + 1"), {P("x"), P("y")}), P("1"));
  EXPECT_TRUE(prem_chain(P("y^2 + x"), {P("x + 1"), P("y^2 - 1")}).is_zero());
}

TEST(ExactDivide, RoundTrip) {
  Rng rng(3);
  for (int t = 0; t < 100; ++t) {
    Polynomial a = random_polynomial(rng, {3, 3, 1, 4, 9});
    Polynomial b = random_polynomial(rng, {2, 3, 1, 4, 9});
    EXPECT_EQ(exact_divide(a * b, b), a);
  }
  EXPECT_THROW(exact_divide(P("x^2 + 1"), P("x + 1")), std::domain_error);
}

TEST(Normalize, Examples) {
  EXPECT_EQ(normalize(P("x/2 + 1/2")), P("x + 1"));
  EXPECT_EQ(normalize(P("-3*y^2")), P("y^2"));
  EXPECT_EQ(normalize(P("6*x^2*y - 4*x*y")), P("3*x^2*y - 2*x*y"));
  EXPECT_THROW(normalize(P("0")), std::domain_error);
}

TEST(Normalize, IdempotentAndScaleInvariant) {
  Rng rng(5);
  for (int t = 0; t < 100; ++t) {
    Polynomial p = random_polynomial(rng, {3, 4, 1, 5, 9});
    Rational c = random_rational(rng, 20, 20);
    if (c == 0) continue;
    EXPECT_EQ(normalize(normalize(p)), normalize(p));
    EXPECT_EQ(normalize(p.scaled(c)), normalize(p));
    EXPECT_GT(normalize(p).leading_numeric(), 0);
  }
}

TEST(Gcd, Multivariate) {
  EXPECT_EQ(gcd(P("x^2 - y^2"), P("x^2 + 2*x*y + y^2")), P("y + x"));
  EXPECT_EQ(gcd(P("x*y"), P("x*z")), P("x"));
  EXPECT_EQ(gcd(P("y^2 + x"), P("y^2 + y")), P("1"));
  Rng rng(9);
  for (int t = 0; t < 60; ++t) {
    Polynomial g = random_polynomial(rng, {3, 2, 1, 3, 5});
    Polynomial a = random_polynomial(rng, {3, 2, 1, 3, 5});
    Polynomial b = random_polynomial(rng, {2, 2, 1, 3, 5});
    Polynomial h = gcd(a * g, b * g);
    EXPECT_TRUE(exact_divide(h, normalize(g)).var() >= -1);  // throws if g does not divide h
    EXPECT_NO_THROW(exact_divide(a * g, h));
    EXPECT_NO_THROW(exact_divide(b * g, h));
  }
}

TEST(Squarefree, Examples) {
  const VarOrder x_only({"x"});
  auto Q = [&](const char* s) { return parse_polynomial(s, x_only); };
  EXPECT_EQ(squarefree_part_univariate(Q("x^2")), Q("x"));
  EXPECT_EQ(squarefree_part_univariate(Q("x^2 - 1")), Q("x^2 - 1"));
  EXPECT_EQ(squarefree_part_univariate(Q("4*x^3 + 4*x^2")), Q("x^2 + x"));
  EXPECT_THROW(squarefree_part_univariate(Q("5")), std::domain_error);
  Rng rng(21);
  for (int t = 0; t < 50; ++t) {
    Polynomial p = random_dense(rng, 0, 3, 0, 4);
    Polynomial q = random_dense(rng, 0, 2, 0, 4);
    Polynomial s = squarefree_part_univariate(p * p * q);
    EXPECT_TRUE(gcd(s, s.der()).is_one());
  }
}

TEST(Subresultant, PaperPair) {
  auto chain = subresultant_chain(P("y^2 + x"), P("y^2 + y"), 1);
  EXPECT_EQ(chain.lambda, 2U);
  EXPECT_EQ(chain.S(3), P("y^2 + x"));
  EXPECT_EQ(chain.S(2), P("y^2 + y"));
  EXPECT_TRUE(associates(chain.S(1), P("x - y")));
  EXPECT_TRUE(associates(chain.s(1), P("1")));
  EXPECT_TRUE(associates(chain.S(0), P("x^2 + x")));
  EXPECT_EQ(chain.s(0), chain.S(0));
  EXPECT_EQ(chain.s(2), P("1"));
}

TEST(Subresultant, ConventionByDegree) {
  auto chain = subresultant_chain(P("y + x"), P("y^3 + 1"), 1);
  EXPECT_EQ(chain.lambda, 1U);
  EXPECT_EQ(chain.S(1), P("y + x"));
  EXPECT_EQ(chain.S(2), P("y^3 + 1"));
  EXPECT_TRUE(associates(chain.S(0), P("1 - x^3")));
  EXPECT_THROW(subresultant_chain(P("x"), P("y"), 1), std::invalid_argument);
}

TEST(Subresultant, EqualInputsAreDegenerate) {
  auto chain = subresultant_chain(P("y^2 + x"), P("y^2 + x"), 1);
  EXPECT_TRUE(chain.S(0).is_zero());
  EXPECT_TRUE(chain.S(1).is_zero());
  EXPECT_EQ(chain.S(2), P("y^2 + x"));
}

// Every S_i below lambda matches the Sylvester-minor determinant up to sign.
TEST(Subresultant, MatchesSylvesterMinors) {
  Rng rng(2024);
  for (int t = 0; t < 60; ++t) {
    int v = static_cast<int>(uniform_int(rng, 0, 2));
    auto dp = static_cast<unsigned>(uniform_int(rng, 1, 4));
    auto df = static_cast<unsigned>(uniform_int(rng, 1, 4));
    Polynomial p = random_dense(rng, v, dp, 1, 4);
    Polynomial f = random_dense(rng, v, df, 1, 4);
    if (t % 4 == 0) {  // force a common factor
      Polynomial g = random_dense(rng, v, 1, 1, 3);
      p = p * g;
      f = f * g;
    }
    if (p.var() != v || f.var() != v) continue;
    auto chain = subresultant_chain(p, f, v);
    const Polynomial& big = chain.S(chain.lambda + 1);
    const Polynomial& small = chain.S(chain.lambda);
    for (unsigned j = 0; j < chain.lambda; ++j) {
      Polynomial ref = oracle::sylvester_subresultant(big, small, v, j);
      EXPECT_TRUE(chain.S(j) == ref || chain.S(j) == -ref) << "t=" << t << " j=" << j;
      EXPECT_EQ(chain.s(j), chain.S(j).coeff(v, j));
    }
  }
}

// Specializing the variables below x_n commutes with the chain: s_0(u) = 0
// iff p(u), f(u) share a root, detected by an exact univariate gcd.
TEST(Subresultant, SpecializationProperty) {
  Rng rng(77);
  int shared = 0;
  for (int t = 0; t < 80; ++t) {
    Polynomial p = random_dense(rng, 1, static_cast<unsigned>(uniform_int(rng, 1, 4)), 1, 9);
    Polynomial f = random_dense(rng, 1, static_cast<unsigned>(uniform_int(rng, 1, 4)), 1, 9);
    if (p.var() != 1 || f.var() != 1) continue;
    auto chain = subresultant_chain(p, f, 1);
    for (int k = 0; k < 5; ++k) {
      Rational u(uniform_int(rng, -4, 4));
      if (k == 0) {
        // Pick a root of s_0 when it has an integer one.
        for (long c = -6; c <= 6; ++c) {
          if (chain.s(0).substitute(0, Rational(c)).is_zero()) u = Rational(c);
        }
      }
      Polynomial pu = p.substitute(0, u);
      Polynomial fu = f.substitute(0, u);
      if (pu.var() != 1 || fu.var() != 1 || pu.mdeg() != p.mdeg() || fu.mdeg() != f.mdeg()) {
        continue;
      }
      bool s0_zero = chain.s(0).substitute(0, u).is_zero();
      bool common = !gcd(pu, fu).is_constant();
      EXPECT_EQ(s0_zero, common);
      shared += common ? 1 : 0;
      auto special = subresultant_chain(pu, fu, 1);
      for (unsigned j = 0; j < chain.lambda; ++j) {
        Polynomial a = chain.S(j).substitute(0, u);
        Polynomial b = special.S(j);
        EXPECT_TRUE(a == b || a == -b);
      }
    }
  }
  EXPECT_GT(shared, 0);
}
