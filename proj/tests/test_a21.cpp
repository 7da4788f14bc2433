#include <gtest/gtest.h>

#include "oracle.hpp"
#include "qca/a21.hpp"

using namespace qca;

namespace {

Elem mono(const Exp6& e, int v = 0) { return Elem::monomial(initial_form(), e, QCoefficient::monomial(v)); }

const oracle::Exp kY123{0, 0, 0, 1, 1, 1};

oracle::Poly naive_u1() {
  // w z - q^{-1/2} y1 y3 - q^{1/2} y2 in the naive torus
  const auto& L = kInitialLambda;
  const auto w = oracle::add(oracle::mono({1, -1, 0, 0, 1, 0}), oracle::mono({0, -1, 1, 0, 0, 0}));
  const auto z = oracle::add(oracle::add(oracle::mono({0, 1, -1, 1, 0, 1}), oracle::mono({-1, 0, -1, 1, 0, 0})),
                             oracle::mono({-1, 1, 0, 0, 0, 0}));
  auto u = oracle::mul(w, z, L);
  u = oracle::add(u, oracle::mono({0, 0, 0, 1, 0, 1}, -1), -1);
  return oracle::add(u, oracle::mono({0, 0, 0, 0, 1, 0}, 1), -1);
}

}  // namespace

TEST(Generators, WAndZ) {
  Registry reg;
  EXPECT_EQ(reg.w(), mono({1, -1, 0, 0, 1, 0}) + mono({0, -1, 1, 0, 0, 0}));
  EXPECT_EQ(reg.z(), mono({0, 1, -1, 1, 0, 1}) + mono({-1, 0, -1, 1, 0, 0}) + mono({-1, 1, 0, 0, 0, 0}));
}

TEST(Generators, U1ClosedForm) {
  Registry reg;
  const Elem closed = mono({1, 0, -1, 1, 1, 1}) + mono({0, -1, -1, 1, 1, 0}) + mono({-1, -1, 0, 1, 0, 0}) +
                      mono({-1, 0, 1, 0, 0, 0});
  EXPECT_EQ(reg.u(1), closed);
  EXPECT_EQ(oracle::to(naive_u1(), initial_form()), closed);
}

TEST(Generators, ChebyshevRecurrenceInNaiveTorus) {
  Registry reg;
  const auto u1 = naive_u1();
  auto prev = oracle::mono({});  // u_0 = 1
  auto cur = oracle::add(oracle::mul(u1, u1, kInitialLambda), oracle::mono(kY123, 0, 2), -1);
  ASSERT_EQ(oracle::to(cur, initial_form()), reg.u(2));
  prev = u1;
  for (int n = 3; n <= 5; ++n) {
    auto next = oracle::add(oracle::mul(u1, cur, kInitialLambda), oracle::mul(oracle::mono(kY123), prev, kInitialLambda), -1);
    prev = cur;
    cur = next;
    EXPECT_EQ(oracle::to(cur, initial_form()), reg.u(n)) << "u" << n;
  }
  EXPECT_EQ(reg.u(0), Elem::one(initial_form()));
}

TEST(Generators, BaseClusterVariables) {
  Registry reg;
  for (int i = 1; i <= 3; ++i) {
    Exp6 e{};
    e[static_cast<std::size_t>(i - 1)] = 1;
    EXPECT_EQ(reg.x(i), mono(e));
  }
  EXPECT_EQ(reg.x(0), mono({1, 1, -1, 0, 0, 1}) + mono({0, 0, -1, 0, 0, 0}));
  EXPECT_EQ(reg.x(-1), mono({2, 0, -1, 0, 1, 1}) + mono({1, -1, -1, 0, 1, 0}) + mono({0, -1, 0, 0, 0, 0}));
  EXPECT_EQ(reg.x(5), mono({0, -1, 0, 1, 1, 0}) + mono({-1, 0, 2, 0, 0, 0}) + mono({-1, -1, 1, 1, 0, 0}));
}

TEST(Generators, MutationAgreesWithNaiveRecursion) {
  // X_n = u1 X_{n-2} - q^{5/2} X_{n-4} y1y2y3, multiplied in the naive torus
  // from the single-mutation variables X_1..X_4. Here y1y2y3 is the ordered
  // product, not the normalized monomial.
  Registry reg;
  const auto u1 = naive_u1();
  const auto& L = kInitialLambda;
  const auto yyy = oracle::mul(oracle::mul(oracle::mono({0, 0, 0, 1, 0, 0}, 5), oracle::mono({0, 0, 0, 0, 1, 0}), L),
                               oracle::mono({0, 0, 0, 0, 0, 1}), L);
  std::map<int, oracle::Poly> xs;
  for (int n = 1; n <= 4; ++n) xs[n] = oracle::from(reg.x(n));
  for (int n = 5; n <= 10; ++n) {
    xs[n] = oracle::add(oracle::mul(u1, xs[n - 2], kInitialLambda),
                        oracle::mul(xs[n - 4], yyy, kInitialLambda), -1);
    EXPECT_EQ(oracle::to(xs[n], initial_form()), reg.x(n)) << "X" << n;
  }
}

TEST(Generators, ExpansionSizes) {
  Registry reg;
  const std::map<int, std::pair<std::size_t, std::size_t>> expected{
      {-6, {27, 78}}, {-5, {17, 38}}, {-4, {14, 25}}, {-3, {8, 11}}, {-2, {6, 7}},   {-1, {3, 3}},
      {0, {2, 2}},    {4, {2, 2}},    {5, {3, 3}},    {6, {6, 7}},   {7, {8, 11}},   {8, {14, 25}},
      {9, {17, 38}},  {10, {27, 78}}};
  for (const auto& [n, sz] : expected) {
    EXPECT_EQ(reg.x(n).size(), sz.first) << "X" << n;
    EXPECT_EQ(reg.x(n).flat_size(), sz.second) << "X" << n;
  }
  const std::vector<std::size_t> u_sizes{1, 4, 9, 18, 32, 52, 79};
  for (std::size_t n = 0; n < u_sizes.size(); ++n) EXPECT_EQ(reg.u(static_cast<int>(n)).size(), u_sizes[n]);
}

TEST(Generators, RecursionOracleMatchesMutation) {
  Registry reg;
  for (int n = -8; n <= 10; ++n) EXPECT_EQ(reg.x_by_recursion(n), reg.x(n)) << "X" << n;
}

TEST(Generators, PolynomialExpressions) {
  Registry reg(Window{}.cover(-12, 14));
  for (int n : {-6, -5, -4, -3, -2, 5, 6, 7, 8, 9})
    EXPECT_EQ(reg.eval(polynomial_expression(n)), reg.x(n)) << "X" << n;
  EXPECT_EQ(reg.eval(base_expression_z()), reg.z());
  EXPECT_EQ(reg.eval(base_expression_x_minus1()), reg.x(-1));
}

TEST(Generators, FrozenMonomials) {
  Registry reg;
  EXPECT_EQ(reg.y(1, 0, 2), mono({0, 0, 0, 1, 0, 2}));
  EXPECT_EQ(reg.get(ElementName::yi(2)), mono({0, 0, 0, 0, 1, 0}));
}

TEST(Generators, WindowAndBudget) {
  Registry reg;
  EXPECT_THROW(reg.x(500), GenerationBudgetExceeded);
  EXPECT_THROW(reg.u(500), GenerationBudgetExceeded);
  EXPECT_THROW(reg.u(-1), Error);
  Window tight;
  tight.budget_terms = 50;
  Registry small(tight);
  EXPECT_THROW(small.x(12), GenerationBudgetExceeded);
}

TEST(Generators, BudgetFromEnvironment) {
  ::setenv("QCA_BUDGET_TERMS", "1234", 1);
  EXPECT_EQ(budget_from_env(7), 1234u);
  ::setenv("QCA_BUDGET_TERMS", "junk", 1);
  EXPECT_EQ(budget_from_env(7), 7u);
  ::unsetenv("QCA_BUDGET_TERMS");
  EXPECT_EQ(budget_from_env(7), 7u);
}

TEST(Reroot, RootClusterBecomesMonomials) {
  Registry reg = reroot({1});
  EXPECT_EQ(reg.x(4), Elem::monomial(reg.form(), {1, 0, 0, 0, 0, 0}));
  EXPECT_EQ(reg.x(2), Elem::monomial(reg.form(), {0, 1, 0, 0, 0, 0}));
  EXPECT_EQ(reg.root_walk(), std::vector<int>{1});
}

TEST(Reroot, RelationsSurviveAChangeOfRoot) {
  for (const std::vector<int>& walk : {std::vector<int>{2}, std::vector<int>{3, 2}}) {
    Registry reg = reroot(walk);
    // X_0 X_3 = q^{1/2} X_1 X_2 y_3 + 1
    EXPECT_EQ(reg.eval(X(0) * X(3)), reg.eval(qpow(1, 2) * X(1) * X(2) * y(3) + Expr(1)));
    EXPECT_EQ(reg.eval(U(1)), reg.eval(Wv() * Zv() - qpow(-1, 2) * Expr(ElementName::y(1, 0, 1)) - qpow(1, 2) * y(2)));
    EXPECT_EQ(reg.u(1).bar(), reg.u(1));
  }
}

TEST(Walks, InPlaceWalkReachesSigma) {
  Registry reg;
  for (int m = -4; m <= 6; ++m) {
    const QuantumSeed& s = reg.sigma(m);
    for (int j = m; j <= m + 2; ++j)
      EXPECT_EQ(s.cluster[static_cast<std::size_t>(slot_of(j) - 1)], reg.x(j)) << "sigma " << m << " X" << j;
  }
}
