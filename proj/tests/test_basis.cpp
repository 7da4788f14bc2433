#include <gtest/gtest.h>

#include "qca/basis.hpp"

using namespace qca;

TEST(BasisLabel, TextRoundTrip) {
  for (const char* s : {"cm::1,0,2", "cm:3,2:0,1,1", "uw:2:1", "uz:4:0"}) {
    const BasisLabel l = parse_basis_label(s);
    EXPECT_EQ(l.to_string(), s);
    EXPECT_EQ(parse_basis_label(l.to_string()), l);
  }
  EXPECT_THROW(parse_basis_label("cm:1"), ParseError);
  EXPECT_THROW(parse_basis_label("xx:1:2"), ParseError);
  EXPECT_THROW(parse_basis_label("cm:4:1,0,0"), ParseError);
  EXPECT_THROW(parse_basis_label("uw:0:1"), ParseError);
}

TEST(BasisLabel, Expansion) {
  Registry reg;
  EXPECT_EQ(expand(parse_basis_label("uw:1:0"), reg), reg.u(1));
  EXPECT_EQ(expand(parse_basis_label("uz:2:0"), reg), reg.u(2));
  EXPECT_EQ(expand(parse_basis_label("uw:1:2"), reg), reg.u(1) * reg.w() * reg.w());
  // X_4 sits in slot 1 after mutating the initial seed in direction 1.
  EXPECT_EQ(expand(parse_basis_label("cm:1:1,0,0"), reg), reg.x(4));
  EXPECT_EQ(expand(parse_basis_label("cm::0,0,0"), reg), Elem::one(reg.form()));
}

TEST(BasisLabel, BarInvariance) {
  Registry reg;
  for (const char* s : {"cm:1,2:2,1,0", "uw:3:2", "uz:2:3", "cm:3:1,1,1"})
    EXPECT_TRUE(check_bar_invariant(parse_basis_label(s), reg)) << s;
  // X_1 X_4 is not bar-invariant without the twist of a cluster monomial.
  EXPECT_FALSE(check_bar_invariant(reg.x(1) * reg.x(4)));
}

TEST(BasisLabel, PositivityAtSeveralRoots) {
  RootSet roots;
  for (const char* s : {"cm:2,3:1,2,0", "uw:2:1", "uz:3:2"}) {
    const PositivityReport r = check_positivity(parse_basis_label(s), roots, default_positivity_roots());
    EXPECT_TRUE(r.positive) << s << " " << r.to_json().dump();
  }
}

TEST(BasisLabel, NegativeWitness) {
  Registry reg;
  const Elem e = reg.x(4) - reg.x(1);
  const auto w = negative_witness_at(e, {});
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->exp, (Exp6{1, 0, 0, 0, 0, 0}));
  EXPECT_EQ(w->coeff, -1);
}

TEST(BasisLabel, EnumerationIsDuplicateFreeWithDistinctLeadingTerms) {
  Registry reg;
  const auto labels = enumerate_basis(BasisWindow{2, 1, 2, 1}, reg);
  EXPECT_GT(labels.size(), 10u);
  std::set<std::string> seen;
  for (const auto& l : labels) EXPECT_TRUE(seen.insert(expand(l, reg).to_string()).second) << l.to_string();
  EXPECT_TRUE(check_leading_distinct(labels, reg).distinct);
}

TEST(BasisLabel, LeadingCollisionIsReported) {
  Registry reg;
  const std::vector<BasisLabel> same{parse_basis_label("uw:1:0"), parse_basis_label("uz:1:0")};
  const LeadingReport r = check_leading_distinct(same, reg);
  EXPECT_FALSE(r.distinct);
  EXPECT_EQ(r.collisions.size(), 1u);
}

TEST(Product, ChebyshevProduct) {
  // u_2 u_1 = u_3 + y1y2y3 u_1
  Registry reg;
  const Decomposition d = product_decompose(ElementName::u(2), ElementName::u(1), reg);
  ASSERT_TRUE(d.supported);
  EXPECT_TRUE(d.verified);
  EXPECT_TRUE(d.nonnegative);
  ASSERT_EQ(d.terms.size(), 2u);
  std::map<std::string, std::array<int, 3>> got;
  for (const auto& t : d.terms) {
    EXPECT_EQ(t.coeff, QCoefficient(1));
    got[t.label.to_string()] = t.frozen;
  }
  EXPECT_EQ(got.at("uw:3:0"), (std::array<int, 3>{0, 0, 0}));
  EXPECT_EQ(got.at("uw:1:0"), (std::array<int, 3>{1, 1, 1}));
}

TEST(Product, ClusterVariablesFarApart) {
  Registry reg;
  for (auto [a, b] : std::vector<std::pair<int, int>>{{0, 3}, {3, 0}, {-1, 3}, {2, 7}, {-4, 1}}) {
    const Decomposition d = product_decompose(ElementName::x(a), ElementName::x(b), reg);
    ASSERT_TRUE(d.supported) << a << "," << b << ": " << d.reason;
    EXPECT_TRUE(d.verified);
    EXPECT_TRUE(d.nonnegative) << d.formula;
  }
}

TEST(Product, UnsupportedPairs) {
  Registry reg;
  EXPECT_FALSE(product_decompose(ElementName::x(1), ElementName::x(2), reg).supported);
  EXPECT_FALSE(product_decompose(ElementName::yi(1), ElementName::x(2), reg).supported);
  const Json j = product_decompose(ElementName::x(1), ElementName::x(1), reg).to_json();
  EXPECT_TRUE(j["unsupported"].get<bool>());
}

TEST(Product, UnderAnotherRoot) {
  Registry reg = reroot({2});
  const Decomposition d = product_decompose(ElementName::u(1), ElementName::x(3), reg);
  ASSERT_TRUE(d.supported) << d.reason;
  EXPECT_TRUE(d.verified);
}

TEST(BasisSuite, SmallWindow) {
  RootSet roots;
  const SuiteReport r = verify_basis(roots, BasisWindow{1, 1, 2, 1}, {{}, {1}}, 2);
  EXPECT_TRUE(r.ok()) << r.to_json().dump();
  EXPECT_GT(r.per_family.at("product"), 0u);
}
