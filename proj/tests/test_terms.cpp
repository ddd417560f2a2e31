#include <gtest/gtest.h>

#include "oracles.hpp"
#include "spacebound/error.hpp"
#include "spacebound/term.hpp"

using namespace spacebound;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::Io;
}

}  // namespace

TEST(Validate, ValidTree) {
  EXPECT_TRUE(validate(make_and(make_true(), box2d(0, 0, 5, 5))).empty());
}

TEST(Validate, UnorderedBoxAtRoot) {
  auto v = validate(box2d(5, 0, 0, 5));
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].kind, ViolationKind::BoxUnordered);
  EXPECT_EQ(v[0].path, "root");
}

TEST(Validate, EmptyBigConnective) {
  auto v = validate(make_big_and({}));
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].kind, ViolationKind::EmptyBigConnective);
}

TEST(Validate, PathsAndOtherViolations) {
  Term t = make_big_or({make_true(), make_and(segment2d(0, 0, 1, 1, -1), box3d(0, 0, 2, 1, 1, 1))});
  auto v = validate(t);
  ASSERT_EQ(v.size(), 2u);
  EXPECT_EQ(v[0].kind, ViolationKind::NegativeRadius);
  EXPECT_EQ(v[0].path, "root.1.0");
  EXPECT_EQ(v[1].kind, ViolationKind::BoxUnordered);
  EXPECT_EQ(v[1].path, "root.1.1");
}

TEST(Validate, OwnershipRules) {
  Atom nested = owned_atom("a", owned_atom("b", Atom{OccupyBox2D{0, 0, 1, 1}}));
  auto v = validate(make_atom(nested));
  ASSERT_FALSE(v.empty());
  EXPECT_EQ(v[0].kind, ViolationKind::NestedOwnership);

  auto w = validate(make_atom(owned_atom("a", Atom{Event{"e"}})));
  ASSERT_FALSE(w.empty());
  EXPECT_EQ(w[0].kind, ViolationKind::OwnedNonSpatial);

  EXPECT_FALSE(validate(time_point("")).empty());
}

TEST(SymIntEval, Examples) {
  auto e = SymInt::add(SymInt::constant(2), SymInt::mul(SymInt::var("x"), SymInt::constant(3)));
  EXPECT_EQ(eval_symint(e, {{"x", 4}}), 14);
  EXPECT_EQ(eval_symint(SymInt::constant(7), {}), 7);
  EXPECT_EQ(eval_symint(SymInt::sub(SymInt::var("a"), SymInt::var("a")), {{"a", 9}}), 0);
}

TEST(SymIntEval, UnboundVariable) {
  EXPECT_EQ(code_of([] { eval_symint(SymInt::var("q"), {}); }), ErrorCode::UnboundVariable);
}

TEST(SymIntEval, AgreesWithRecursiveOracle) {
  sbtest::Gen g(101);
  const std::vector<std::string> vars = {"a", "b", "c"};
  for (int i = 0; i < 1000; ++i) {
    auto s = sbtest::random_symint(g, 8, vars);
    Env env;
    for (const auto& v : vars)
      if (g.coin(0.9)) env[v] = g.range(-20, 20);
    auto expected = sbtest::oracle_eval(s, env);
    if (expected) {
      EXPECT_EQ(eval_symint(s, env), *expected) << "case " << i;
    } else {
      EXPECT_EQ(code_of([&] { eval_symint(s, env); }), ErrorCode::UnboundVariable) << "case " << i;
    }
  }
}

TEST(Ground, SubstitutesSymbolicBox) {
  Term t = box_sym(SymInt::var("x"), SymInt::constant(0), SymInt::add(SymInt::var("x"), SymInt::constant(10)),
                   SymInt::constant(5));
  EXPECT_EQ(ground(t, {{"x", 100}}), box2d(100, 0, 110, 5));
}

TEST(Ground, IdentityWithoutSymbols) {
  Term t = make_implies(time_point("t1"), make_or(box2d(0, 0, 1, 1), node("n3")));
  Term g = ground(t, {});
  EXPECT_EQ(g, t);
}

TEST(Ground, Errors) {
  Term bad = box_sym(SymInt::var("x"), SymInt::constant(0), SymInt::constant(0), SymInt::constant(1));
  EXPECT_EQ(code_of([&] { ground(bad, {{"x", 5}}); }), ErrorCode::BoxUnordered);
  EXPECT_EQ(code_of([&] { ground(bad, {}); }), ErrorCode::UnboundVariable);
}

TEST(Ground, SymbolicQueries) {
  Term t = make_and(box_sym(SymInt::var("u"), SymInt::constant(0), SymInt::var("v"), SymInt::constant(1)),
                    box2d(0, 0, 1, 1));
  EXPECT_TRUE(has_symbolic(t));
  EXPECT_EQ(symbolic_variables(t), (std::set<std::string>{"u", "v"}));
  EXPECT_FALSE(has_symbolic(ground(t, {{"u", 0}, {"v", 3}})));
}

namespace {

// Symbolic box whose evaluated corners stay ordered: hi = lo + width.
Term ordered_sym_box(sbtest::Gen& g, const std::vector<std::string>& vars) {
  auto x1 = sbtest::random_symint(g, 3, vars);
  auto y1 = sbtest::random_symint(g, 3, vars);
  auto w = SymInt::constant(g.range(0, 30));
  auto h = SymInt::constant(g.range(0, 30));
  return box_sym(x1, y1, SymInt::add(x1, w), SymInt::add(y1, h));
}

Term random_symbolic_term(sbtest::Gen& g, int depth, const std::vector<std::string>& vars) {
  if (depth <= 0 || g.coin(0.3)) {
    if (g.coin()) return ordered_sym_box(g, vars);
    return sbtest::box_term(sbtest::random_box(g, 2, -50, 50, 20), 2);
  }
  std::vector<Term> kids;
  const auto n = g.range(1, 3);
  for (int i = 0; i < n; ++i) kids.push_back(random_symbolic_term(g, depth - 1, vars));
  Term body = g.coin() ? make_big_and(std::move(kids)) : make_big_or(std::move(kids));
  return g.coin(0.3) ? make_implies(time_point("t" + std::to_string(depth)), body) : body;
}

}  // namespace

TEST(Ground, PreservesValidityAndIsIdempotent) {
  sbtest::Gen g(202);
  const std::vector<std::string> vars = {"x", "y"};
  for (int i = 0; i < 500; ++i) {
    Term t = random_symbolic_term(g, 5, vars);
    ASSERT_TRUE(validate(t).empty());
    Env env{{"x", g.range(-10, 10)}, {"y", g.range(-10, 10)}};
    Term once = ground(t, env);
    EXPECT_FALSE(has_symbolic(once));
    EXPECT_TRUE(validate(once).empty()) << "case " << i;
    EXPECT_EQ(ground(once, env), once) << "case " << i;
  }
}

TEST(Term, StructuralEqualityAndSharing) {
  Term a = make_and(box2d(0, 0, 1, 1), node("n"));
  Term b = make_and(box2d(0, 0, 1, 1), node("n"));
  EXPECT_EQ(a, b);
  EXPECT_FALSE(a.shares(b));
  Term c = a;
  EXPECT_TRUE(c.shares(a));
  EXPECT_NE(a, make_or(box2d(0, 0, 1, 1), node("n")));
  EXPECT_EQ(term_size(a), 3u);
}

TEST(Term, OwnedWrapsOnlyAtoms) {
  EXPECT_EQ(code_of([] { owned("c", make_and(box2d(0, 0, 1, 1), box2d(0, 0, 1, 1))); }),
            ErrorCode::InvalidArgument);
  Term o = owned("c", box2d(0, 0, 1, 1));
  ASSERT_NE(o.atom().owner(), nullptr);
  EXPECT_EQ(*o.atom().owner(), "c");
  EXPECT_TRUE(o.atom().unowned().is<OccupyBox2D>());
}
