#include <gtest/gtest.h>

#include "tcad/ccd.hpp"
#include "tcad/parser.hpp"
#include "tcad/serialize.hpp"

using namespace tcad;

namespace {

const VarOrder kXY({"x", "y"});
Polynomial P(const char* s) { return parse_polynomial(s, kXY); }

bool associates(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  return normalize(a) == normalize(b);
}

CylindricalTree fresh_tree(const VarOrder& order = kXY) {
  CylindricalTree t(order);
  t.init_any_chain();
  return t;
}

InputSystem plain(std::initializer_list<const char*> polys) {
  InputSystem s{kXY, {}};
  for (const char* p : polys) s.items.push_back({P(p), Role::Plain});
  return s;
}

InputSystem equations(std::initializer_list<const char*> polys) {
  InputSystem s{kXY, {}};
  for (const char* p : polys) s.items.push_back({P(p), Role::Equation});
  return s;
}

std::string shape(const CylindricalTree& t) { return render_tree_text(t, false); }

/// Level-1 node whose constraint is exactly c.
NodeKey level1(const CylindricalTree& t, const Constraint& c) {
  for (NodeKey k : t.present_children(t.root())) {
    if (t.node(k).constraint == c) return k;
  }
  ADD_FAILURE() << "no such level-1 node";
  return t.root();
}

const char* kExample3 =
    "{\n"
    "  x = 0 {\n"
    "    y = 0\n"
    "    y <> 0\n"
    "  }\n"
    "  x <> 0 {\n"
    "    y^2 + x = 0\n"
    "    y^2 + x <> 0\n"
    "  }\n"
    "}\n";

}  // namespace

TEST(CoFactor, CaseTable) {
  auto r = cofactor(P("y^2 + x"), Polynomial(1), P("y + x"));
  EXPECT_EQ(r.cp, P("y^2 + x"));
  EXPECT_TRUE(r.gg.is_one());
  EXPECT_EQ(r.cf, P("y + x"));

  r = cofactor(P("y^2 + y"), P("y"), P("y"));
  EXPECT_EQ(r.gg, P("y"));
  EXPECT_TRUE(r.cf.is_one());
  EXPECT_EQ(r.cp, P("y + 1"));

  r = cofactor(P("y^2 + x"), P("y^2 + x"), P("(y^2 + x)*(y + 1)"));
  EXPECT_EQ(r.gg, P("y^2 + x"));
  EXPECT_TRUE(r.cp.is_one());
  EXPECT_EQ(r.cf, P("y + 1"));

  r = cofactor(P("(y - 1)*(y - 2)"), P("y - 1"), P("(y - 1)*(y - 3)"));
  EXPECT_EQ(r.cp, P("y - 2"));
  EXPECT_EQ(r.cf, P("y - 3"));
}

TEST(CylindricalDecompose, SingleVariable) {
  const VarOrder x_only({"x"});
  InputSystem s{x_only, {{parse_polynomial("x", x_only), Role::Plain}}};
  auto t = cylindrical_decompose(s);
  EXPECT_EQ(shape(t), "{\n  x = 0\n  x <> 0\n}\n");
}

TEST(CylindricalDecompose, Example3Tree) {
  auto t = cylindrical_decompose(plain({"y^2 + x"}));
  EXPECT_EQ(shape(t), kExample3);
  for (const auto& p : t.paths()) {
    const Node& leaf = t.node(p.back());
    EXPECT_EQ(leaf.signs.at(P("y^2 + x")), leaf.constraint.is_eq() ? 0 : 1);
  }
}

TEST(Intersect, StepwiseMatchesExample3) {
  auto t = fresh_tree();
  Engine e(t);
  e.intersect(P("x"));
  EXPECT_EQ(shape(t), "{\n  x = 0 {\n    any y\n  }\n  x <> 0 {\n    any y\n  }\n}\n");
  for (const auto& p : t.paths()) EXPECT_TRUE(t.node(p.back()).signs.count(P("x")));
  e.intersect(P("y^2 + x"));
  EXPECT_EQ(shape(t), kExample3);
}

TEST(Intersect, IdempotentOnRepeat) {
  auto t = cylindrical_decompose(plain({"y^2 + x"}));
  const auto before = t.store_size();
  Engine e(t);
  e.intersect(P("y^2 + x"));
  e.intersect(P("-2*y^2 - 2*x"));
  EXPECT_EQ(t.store_size(), before);
}

TEST(IntersectPath, Example3Refinement) {
  auto t = cylindrical_decompose(plain({"y^2 + x"}));
  Engine e(t);
  const NodeKey x0 = level1(t, Constraint::eq(P("x")));
  Path gamma;
  for (const auto& p : t.paths()) {
    if (p[1] == x0 && t.node(p[2]).constraint.is_neq()) gamma = p;
  }
  ASSERT_FALSE(gamma.empty());
  e.intersect_path(P("7"), gamma, 2);
  EXPECT_EQ(shape(t), kExample3);
  e.intersect_path(P("y^2 + y"), gamma, 2);
  EXPECT_EQ(render_tree_text(t),
            "{\n"
            "  x = 0 {\n"
            "    y = 0 : y^2 + x = 0\n"
            "    y + 1 = 0 : y^2 + x <> 0, y^2 + y = 0\n"
            "    y^2 + y <> 0 : y^2 + x <> 0, y^2 + y <> 0\n"
            "  }\n"
            "  x <> 0 {\n"
            "    y^2 + x = 0 : y^2 + x = 0\n"
            "    y^2 + x <> 0 : y^2 + x <> 0\n"
            "  }\n"
            "}\n");
}

TEST(IntersectPath, LowerLevelPolynomialSplitsAncestor) {
  auto t = cylindrical_decompose(plain({"y^2 + x"}));
  Engine e(t);
  const NodeKey xn = level1(t, Constraint::neq(P("x")));
  Path gamma;
  for (const auto& p : t.paths()) {
    if (p[1] == xn && t.node(p[2]).constraint.is_eq()) gamma = p;
  }
  e.intersect_path(P("x + 1"), gamma, 2);
  auto kids = t.present_children(t.root());
  ASSERT_EQ(kids.size(), 3U);
  EXPECT_EQ(t.node(kids[1]).constraint, Constraint::eq(P("x + 1")));
  EXPECT_EQ(t.node(kids[2]).constraint, Constraint::neq(P("x^2 + x")));
  for (NodeKey k : {kids[1], kids[2]}) {
    auto leaves = t.present_children(k);
    ASSERT_EQ(leaves.size(), 2U);
    EXPECT_EQ(t.node(leaves[0]).signs.at(P("x + 1")), k == kids[1] ? 0 : 1);
    EXPECT_FALSE(t.node(leaves[1]).signs.count(P("x + 1")));
  }
}

TEST(IntersectMain, EqLeafWithCofactorOne) {
  auto t = cylindrical_decompose(plain({"y^2 + x"}));
  Engine e(t);
  const NodeKey x0 = level1(t, Constraint::eq(P("x")));
  for (const auto& p : t.paths()) {
    if (p[1] == x0 && t.node(p[2]).constraint.is_eq()) {
      e.intersect_path(P("y^2 + y"), p, 2);
      EXPECT_EQ(t.node(p[2]).signs.at(P("y^2 + y")), 0);
      EXPECT_TRUE(t.node(p[2]).present());
    }
  }
}

TEST(CylindricalDecompose, TwoPolynomialsLevelOne) {
  auto t = cylindrical_decompose(plain({"y^2 + x", "y^2 + y"}));
  std::vector<Constraint> level_one;
  for (NodeKey k : t.present_children(t.root())) level_one.push_back(t.node(k).constraint);
  ASSERT_EQ(level_one.size(), 3U);
  EXPECT_EQ(level_one[0], Constraint::eq(P("x")));
  EXPECT_EQ(level_one[1], Constraint::eq(P("x + 1")));
  EXPECT_EQ(level_one[2], Constraint::neq(P("x^2 + x")));
  // Sections above x = 0 come from gcd y; above x = -1 from gcd y + 1.
  auto sections = [&](NodeKey k) {
    std::vector<Polynomial> out;
    for (NodeKey c : t.present_children(k)) {
      if (t.node(c).constraint.is_eq()) out.push_back(t.node(c).constraint.poly);
    }
    return out;
  };
  auto s0 = sections(t.present_children(t.root())[0]);
  ASSERT_FALSE(s0.empty());
  EXPECT_EQ(s0[0], P("y"));
  auto s1 = sections(t.present_children(t.root())[1]);
  ASSERT_FALSE(s1.empty());
  EXPECT_EQ(s1[0], P("y + 1"));
  for (const auto& p : t.paths()) {
    EXPECT_EQ(t.node(p.back()).signs.size(), 2U);
  }
}

TEST(Squarefree, SquareOverTrivialTree) {
  auto t = fresh_tree();
  Engine e(t);
  const Path g = project(t.paths()[0], 1);
  e.squarefree(P("y^2"), g, 1);
  EXPECT_EQ(t.node(g[1]).squarefree.at(P("y^2")), P("y"));
}

TEST(Squarefree, UnivariateBaseCaseThroughIntersect) {
  const VarOrder x_only({"x"});
  CylindricalTree t = fresh_tree(x_only);
  Engine e(t);
  const Polynomial p = parse_polynomial("x^2*(x + 1)", x_only);
  e.intersect(p);
  EXPECT_EQ(t.node(t.root()).squarefree.at(p), parse_polynomial("x^2 + x", x_only));
}

TEST(Squarefree, VanishingInitialSplits) {
  auto t = fresh_tree();
  Engine e(t);
  e.squarefree(P("x*y + 1"), project(t.paths()[0], 1), 1);
  auto kids = t.present_children(t.root());
  ASSERT_EQ(kids.size(), 2U);
  EXPECT_EQ(t.node(kids[0]).constraint, Constraint::eq(P("x")));
  EXPECT_TRUE(t.node(kids[0]).squarefree.at(P("x*y + 1")).is_one());
  EXPECT_EQ(t.node(kids[1]).squarefree.at(P("x*y + 1")), P("x*y + 1"));
}

TEST(RegularizeInitial, Cases) {
  {
    auto t = fresh_tree();
    Engine e(t);
    e.regularize_initial(P("y^2 + x"), P("y^2 + x"), project(t.paths()[0], 1), 1);
    EXPECT_EQ(t.present_children(t.root()).size(), 1U);
    EXPECT_EQ(t.node(t.paths(1)[0][1]).invert_lc.at(P("y^2 + x")), P("y^2 + x"));
  }
  {
    auto t = fresh_tree();
    Engine e(t);
    const Polynomial p = P("x*y^2 + y");
    e.regularize_initial(p, p, project(t.paths()[0], 1), 1);
    auto kids = t.present_children(t.root());
    ASSERT_EQ(kids.size(), 2U);
    EXPECT_EQ(t.node(kids[0]).invert_lc.at(p), P("y"));
    EXPECT_EQ(t.node(kids[1]).invert_lc.at(p), p);
  }
  {
    auto t = fresh_tree();
    Engine e(t);
    const Polynomial p = P("x*y^2 + x*y");
    e.regularize_initial(p, p, project(t.paths()[0], 1), 1);
    auto kids = t.present_children(t.root());
    ASSERT_EQ(kids.size(), 2U);
    EXPECT_TRUE(t.node(kids[0]).invert_lc.at(p).is_zero());
  }
}

TEST(RegularGcd, ResultantVanishesOnBranch) {
  auto t = fresh_tree();
  Engine e(t);
  t.split(t.paths()[0][1], {Constraint::eq(P("x")), Constraint::neq(P("x"))});
  const Path x0 = t.paths(1)[0];
  e.regular_gcd(P("y^2 + y"), P("y"), x0, 1, false);
  EXPECT_EQ(t.node(x0[1]).gcd.at({P("y^2 + y"), P("y")}), P("y"));
}

// Without factorization the resultant x^2 + x stays one section.
TEST(RegularGcd, SplitsOnResultant) {
  auto t = fresh_tree();
  Engine e(t);
  const Polynomial p = P("y^2 + x");
  const Polynomial f = P("y^2 + y");
  e.regular_gcd(p, f, project(t.paths()[0], 1), 1, false);
  auto kids = t.present_children(t.root());
  ASSERT_EQ(kids.size(), 2U);
  EXPECT_EQ(t.node(kids[0]).constraint, Constraint::eq(P("x^2 + x")));
  EXPECT_EQ(t.node(kids[1]).constraint, Constraint::neq(P("x^2 + x")));
  EXPECT_TRUE(associates(t.node(kids[0]).gcd.at({p, f}), P("x - y")));
  EXPECT_TRUE(t.node(kids[1]).gcd.at({p, f}).is_one());
}

TEST(RegularGcd, EqualInputs) {
  auto t = fresh_tree();
  Engine e(t);
  const Polynomial p = P("y^2 + x");
  e.regular_gcd(p, p, project(t.paths()[0], 1), 1, false);
  EXPECT_EQ(t.node(t.paths(1)[0][1]).gcd.at({p, p}), p);
  EXPECT_EQ(t.present_children(t.root()).size(), 1U);
}

TEST(SolveSystem, PaperExample) {
  auto t = solve_system(equations({"y^2 + x", "y^2 + y"}));
  EXPECT_EQ(shape(t),
            "{\n"
            "  x = 0 {\n"
            "    y = 0\n"
            "  }\n"
            "  x + 1 = 0 {\n"
            "    y + 1 = 0\n"
            "  }\n"
            "}\n");
}

TEST(SolveSystem, SingleEquationKeepsSections) {
  auto t = solve_system(equations({"y^2 + x"}));
  EXPECT_EQ(shape(t),
            "{\n"
            "  x = 0 {\n"
            "    y = 0\n"
            "  }\n"
            "  x <> 0 {\n"
            "    y^2 + x = 0\n"
            "  }\n"
            "}\n");
}

TEST(SolveSystem, InconsistentIsEmpty) {
  InputSystem s{kXY, {{P("x"), Role::Equation}, {P("x"), Role::Inequation}}};
  EXPECT_EQ(solve_system(s).paths().size(), 0U);
}

TEST(SolveSystem, InequationPrunesZeroBranches) {
  InputSystem s{kXY, {{P("y^2 + x"), Role::Equation}, {P("y"), Role::Inequation}}};
  auto t = solve_system(s);
  EXPECT_EQ(shape(t),
            "{\n"
            "  x <> 0 {\n"
            "    y^2 + x = 0\n"
            "  }\n"
            "}\n");
}

TEST(SolveSystem, DegenerateConstants) {
  InputSystem zero_eq{kXY, {{Polynomial(), Role::Equation}}};
  EXPECT_EQ(solve_system(zero_eq).paths().size(), 1U);
  InputSystem const_eq{kXY, {{Polynomial(3), Role::Equation}}};
  EXPECT_EQ(solve_system(const_eq).paths().size(), 0U);
  InputSystem const_neq{kXY, {{Polynomial(3), Role::Inequation}}};
  EXPECT_EQ(solve_system(const_neq).paths().size(), 1U);
  InputSystem zero_neq{kXY, {{Polynomial(), Role::Inequation}}};
  EXPECT_EQ(solve_system(zero_neq).paths().size(), 0U);
}

TEST(Serialize, JsonShape) {
  auto t = cylindrical_decompose(plain({"y^2 + x"}));
  auto j = tree_to_json(t, "ccd", false);
  EXPECT_EQ(j["vars"], nlohmann::json({"x", "y"}));
  EXPECT_EQ(j["paths"], 4);
  EXPECT_EQ(j["root"]["children"].size(), 2U);
  EXPECT_EQ(j["root"]["children"][0]["constraint"]["kind"], "eq");
  EXPECT_EQ(j["root"]["children"][0]["constraint"]["poly"], "x");
  EXPECT_EQ(j["root"]["children"][1]["children"][0]["signs"]["y^2 + x"], 0);
  EXPECT_FALSE(j.contains("history"));
  auto h = tree_to_json(t, "ccd", true);
  ASSERT_TRUE(h.contains("history"));
  EXPECT_GT(h["history"].size(), 0U);
  for (const auto& e : h["history"]) EXPECT_TRUE(e.contains("replacing"));
}
