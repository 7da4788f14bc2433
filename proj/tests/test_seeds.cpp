#include <gtest/gtest.h>

#include "oracle.hpp"
#include "qca/a21.hpp"
#include "qca/seed_table.hpp"

using namespace qca;

namespace {

// Lambda * B-tilde by hand; compatibility means B-tilde^T Lambda = [D | 0].
std::array<std::array<int, 6>, 3> bt_lambda(const FormMatrix& lam, const ExchangeMatrix& b) {
  std::array<std::array<int, 6>, 3> out{};
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 6; ++k)
      for (int i = 0; i < 6; ++i) out[j][k] += b[i][j] * lam[i][k];
  return out;
}

}  // namespace

TEST(Seeds, InitialSeedIsCompatibleByDirectArithmetic) {
  const auto p = bt_lambda(kInitialLambda, kInitialExchange);
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 6; ++k) EXPECT_EQ(p[j][k], j == k ? 1 : 0) << j << "," << k;
  const auto rep = check_compatible(Form6(kInitialLambda), kInitialExchange);
  EXPECT_TRUE(rep.ok);
  EXPECT_EQ(rep.d, (std::array<int, 3>{1, 1, 1}));
}

TEST(Seeds, IncompatiblePairIsReported) {
  ExchangeMatrix b = kInitialExchange;
  b[3][0] = 2;
  const auto rep = check_compatible(Form6(kInitialLambda), b);
  EXPECT_FALSE(rep.ok);
  EXPECT_FALSE(rep.violations.empty());
}

TEST(Seeds, MutationIsAnInvolution) {
  const QuantumSeed s0 = initial_seed();
  for (int k = 1; k <= 3; ++k) {
    const QuantumSeed back = mutate_seed(mutate_seed(s0, k), k);
    EXPECT_EQ(back, s0) << "direction " << k;
  }
}

TEST(Seeds, MutationPreservesCompatibility) {
  QuantumSeed s = initial_seed();
  for (int k : {1, 2, 3, 1, 3, 2, 2, 1}) {
    s = mutate_seed(s, k);
    const auto p = bt_lambda(s.form.matrix(), s.exchange);
    for (int j = 0; j < 3; ++j)
      for (int c = 0; c < 6; ++c) EXPECT_EQ(p[j][c], j == c ? 1 : 0);
  }
}

TEST(Seeds, FirstMutationMatchesClosedForm) {
  const auto& f = initial_form();
  const Elem x4 = mutate_seed(initial_seed(), 1).cluster[0];
  EXPECT_EQ(x4, Elem::monomial(f, {-1, 0, 0, 1, 0, 0}) + Elem::monomial(f, {-1, 1, 1, 0, 0, 0}));
}

TEST(Seeds, ExchangeRelationAgainstNaiveTorus) {
  // X_1 X_4 = q^{-1/2} y_1 + X_2 X_3, multiplied in the independent torus.
  const QuantumSeed s = mutate_seed(initial_seed(), 1);
  const auto lhs = oracle::mul(oracle::mono({1, 0, 0, 0, 0, 0}), oracle::from(s.cluster[0]), kInitialLambda);
  const auto rhs = oracle::add(oracle::mono({0, 0, 0, 1, 0, 0}, -1),
                               oracle::mul(oracle::mono({0, 1, 0, 0, 0, 0}), oracle::mono({0, 0, 1, 0, 0, 0}),
                                           kInitialLambda));
  EXPECT_EQ(lhs, rhs);
}

TEST(Seeds, ClusterMonomialTwistMakesItBarInvariant) {
  const QuantumSeed s = initial_seed();
  const Elem m = eval_cluster_monomial(s, {1, 1, 0, 1, 0, 0});
  EXPECT_EQ(m, Elem::monomial(initial_form(), {1, 1, 0, 1, 0, 0}));
  EXPECT_THROW(eval_cluster_monomial(s, {-1, 0, 0, 0, 0, 0}), NegativeExponent);
}

TEST(Seeds, WalkParsing) {
  EXPECT_EQ(parse_walk(""), std::vector<int>{});
  EXPECT_EQ(parse_walk("1,2,3"), (std::vector<int>{1, 2, 3}));
  EXPECT_EQ(format_walk({3, 2}), "3,2");
  EXPECT_THROW(parse_walk("1,4"), ParseError);
  EXPECT_THROW(parse_walk("1,"), ParseError);
  EXPECT_THROW(parse_walk("1,,2"), ParseError);
  EXPECT_THROW(mutate_seed(initial_seed(), 0), BadDirection);
}

TEST(Seeds, PermutationEquivalence) {
  const QuantumSeed s = mutate_seed(initial_seed(), 2);
  const Permutation p{2, 0, 1};
  const auto found = seed_equiv(s, permute_seed(s, p));
  ASSERT_TRUE(found.has_value());
  EXPECT_EQ(permute_seed(s, *found), permute_seed(s, p));
  EXPECT_FALSE(seed_equiv(s, initial_seed()).has_value());
}

TEST(Seeds, SlotsOfTheInPlaceWalk) {
  EXPECT_EQ(slot_of(1), 1);
  EXPECT_EQ(slot_of(3), 3);
  EXPECT_EQ(slot_of(4), 1);
  EXPECT_EQ(slot_of(0), 3);
  EXPECT_EQ(slot_of(-1), 2);
  EXPECT_EQ(sigma_walk(1), std::vector<int>{});
  EXPECT_EQ(sigma_walk(3), (std::vector<int>{1, 2}));
  EXPECT_EQ(sigma_walk(-1), (std::vector<int>{3, 2}));
  EXPECT_EQ(cyc_walk(1), (std::vector<int>{2}));
}

TEST(Seeds, PrintedTableAtSmallIndices) {
  Registry reg;
  for (int m = -3; m <= 3; ++m) {
    const QuantumSeed& s = reg.sigma(m);
    const PrintedSeed p = printed_sigma(m);
    EXPECT_TRUE(matrices_equiv(s.form, s.exchange, Form6(p.lambda), p.exchange).has_value()) << "sigma " << m;
    const QuantumSeed& c = reg.cyc(m);
    const PrintedSeed pc = printed_cyc(m);
    EXPECT_TRUE(matrices_equiv(c.form, c.exchange, Form6(pc.lambda), pc.exchange).has_value()) << "cyc " << m;
  }
}

TEST(Seeds, MiddleOfCyclicSeedAlternatesBetweenWAndZ) {
  Registry reg;
  for (int m = -4; m <= 5; ++m) {
    const Elem& mid = reg.cyc(m).cluster[static_cast<std::size_t>(slot_of(m + 1) - 1)];
    EXPECT_EQ(mid, m % 2 != 0 ? reg.w() : reg.z()) << "m = " << m;
  }
}
