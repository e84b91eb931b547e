#include <gtest/gtest.h>

#include "tcad/checks.hpp"
#include "tcad/system_file.hpp"

using namespace tcad;

namespace {

std::string run_all(const InputSystem& sys, std::size_t samples, std::uint64_t seed) {
  std::string out;
  for (const auto& r : run_checks(sys, samples, seed).results) {
    out += r.name + " " + std::to_string(r.trials) + " " + std::to_string(r.failures) + " " +
           r.first_failure + "\n";
  }
  return out;
}

}  // namespace

TEST(Numeric, RootsOfQuadratic) {
  using numeric::Complex;
  using numeric::Real;
  auto rs = numeric::roots({Complex(Real(-2)), Complex(Real(0)), Complex(Real(1))});
  ASSERT_EQ(rs.size(), 2u);
  for (const auto& z : rs) {
    EXPECT_LT(boost::multiprecision::abs(z.re * z.re - 2), Real("1e-30"));
    EXPECT_LT(boost::multiprecision::abs(z.im), Real("1e-30"));
  }
}

TEST(Numeric, GcdDegreeCountsSharedRoots) {
  VarOrder o({"x"});
  auto spec = [&](const char* s) { return numeric::specialize(parse_polynomial(s, o), {}); };
  EXPECT_EQ(numeric::gcd_degree(spec("(x-1)^2*(x+2)"), spec("(x-1)^3*(x-5)")), 2);
  EXPECT_EQ(numeric::gcd_degree(spec("x^2+1"), spec("x^2-1")), 0);
  EXPECT_EQ(numeric::gcd_degree(spec("x^3-x"), spec("0")), 3);
}

TEST(SystemFile, PlainExample) {
  auto sys = parse_system("vars: x, y\ny^2 + x\ny^2 + y\n");
  ASSERT_EQ(sys.items.size(), 2u);
  EXPECT_EQ(sys.order.name(1), "y");
  EXPECT_EQ(sys.items[0].role, Role::Plain);
}

TEST(SystemFile, ConstraintsAndComments) {
  auto sys = parse_system("# header comment\nvars: x, y\n\ny^2 + x = 0  # first\ny^2 + y <> 0\n");
  ASSERT_EQ(sys.items.size(), 2u);
  EXPECT_EQ(sys.items[0].role, Role::Equation);
  EXPECT_EQ(sys.items[1].role, Role::Inequation);
}

TEST(SystemFile, DegenerateEquationAccepted) {
  auto sys = parse_system("vars: x\n0 = 0\n");
  ASSERT_EQ(sys.items.size(), 1u);
  EXPECT_TRUE(sys.items[0].poly.is_zero());
  EXPECT_EQ(solve_system(sys).paths().size(), 1u);
}

TEST(SystemFile, RoundTrip) {
  const char* texts[] = {
      "vars: x, y\ny^2 + x\ny^2 + y\n",
      "vars: a, b, c\n1/2*c^2 - a*b = 0\n(b - 3)^2 <> 0\n7 <> 0\n",
      "vars: x\n-3*x^3 + x/4 - 2/3\n",
  };
  for (const char* t : texts) {
    auto a = parse_system(t);
    auto b = parse_system(print_system(a));
    ASSERT_EQ(a.order.names(), b.order.names());
    ASSERT_EQ(a.items.size(), b.items.size());
    for (std::size_t i = 0; i < a.items.size(); ++i) {
      EXPECT_EQ(a.items[i].poly, b.items[i].poly);
      EXPECT_EQ(a.items[i].role, b.items[i].role);
    }
    EXPECT_EQ(print_system(a), print_system(b));
  }
}

TEST(SystemFile, ErrorsCarryPositions) {
  auto expect_error = [](const char* text, int line, int column) {
    try {
      parse_system(text);
      ADD_FAILURE() << "accepted: " << text;
    } catch (const ParseError& e) {
      EXPECT_EQ(e.line(), line) << text << ": " << e.what();
      EXPECT_EQ(e.column(), column) << text << ": " << e.what();
    }
  };
  expect_error("y^2\n", 1, 1);
  expect_error("vars: x, y\ny^2 + z\n", 2, 7);
  expect_error("vars: x, x\nx\n", 1, 10);
  expect_error("vars: x, y\ny^2 + x\ny = 0\n", 3, 1);
  expect_error("vars: x, y\ny^2 + x = 1\n", 2, 11);
  expect_error("vars: x\n", 2, 1);
  expect_error("vars: x\n\n  3\n", 3, 3);
}

TEST(Checks, ExampleSystemPasses) {
  auto sys = parse_system("vars: x, y\ny^2 + x\ny^2 + y\n");
  auto rep = run_checks(sys, 200, 42);
  for (const auto& r : rep.results) {
    EXPECT_TRUE(r.passed()) << r.name << ": " << r.first_failure;
    EXPECT_GT(r.trials, 0u) << r.name;
  }
}

TEST(Checks, EquationalSystemPasses) {
  auto sys = parse_system("vars: x, y\ny^2 + x = 0\ny^2 + y = 0\n");
  auto rep = run_checks(sys, 200, 7);
  for (const auto& r : rep.results) EXPECT_TRUE(r.passed()) << r.name << ": " << r.first_failure;
}

TEST(Checks, ReproducibleUnderFixedSeed) {
  auto sys = parse_system("vars: x, y, z\nz^2 + y*x - 1\nx*z - y^2\n");
  EXPECT_EQ(run_all(sys, 100, 5), run_all(sys, 100, 5));
}

TEST(Checks, DetectsCorruptedGcd) {
  auto sys = parse_system("vars: x, y\ny^2 + x\ny^2 + y\n");
  CylindricalTree t = cylindrical_decompose(sys);
  bool corrupted = false;
  for (NodeKey k = 0; k < t.store_size() && !corrupted; ++k) {
    Node& n = t.node(k);
    if (!n.present() || n.gcd.empty()) continue;
    n.gcd.begin()->second = parse_polynomial("y^3 + 5", sys.order);
    corrupted = true;
  }
  ASSERT_TRUE(corrupted);
  Rng rng(3);
  EXPECT_FALSE(check_gcd_tables(t, rng, 200).passed());
}

TEST(Checks, DetectsBrokenPartition) {
  auto sys = parse_system("vars: x, y\ny^2 + x\n");
  CylindricalTree t = cylindrical_decompose(sys);
  // Drop the generic leaf: almost no point is covered any more.
  for (const auto& p : t.paths()) {
    if (t.node(p[1]).constraint.is_neq() && t.node(p[2]).constraint.is_neq()) t.split(p.back(), {});
  }
  Rng rng(9);
  EXPECT_FALSE(check_ccd_partition(t, rng, 200).passed());
}
