#include <gtest/gtest.h>

#include "qca/a21.hpp"
#include "qca/json_io.hpp"

using namespace qca;

TEST(Json, CoefficientRoundTrip) {
  const QCoefficient c{{3, 2}, {-1, -7}, {0, Integer(1) << 80}};
  EXPECT_EQ(qcoefficient_from_json(to_json(c)), c);
  EXPECT_EQ(qcoefficient_from_json(to_json(QCoefficient())), QCoefficient());
}

TEST(Json, ElementRoundTrip) {
  Registry reg;
  for (int n : {-4, 0, 5, 9}) {
    const Elem& x = reg.x(n);
    EXPECT_EQ(element_from_json<6>(to_json(x), reg.form()), x);
  }
  EXPECT_EQ(element_from_json<6>(to_json(reg.u(3)), reg.form()), reg.u(3));
}

TEST(Json, SeedRoundTrip) {
  Registry reg;
  const QuantumSeed& s = reg.sigma(4);
  const Json j = to_json(s);
  EXPECT_EQ(j["lambda"].size(), 6u);
  EXPECT_EQ(j["btilde"].size(), 6u);
  EXPECT_EQ(seed_from_json(j, reg.form()), s);
}

TEST(Json, SeedAcceptsColumnMajorExchangeMatrix) {
  const QuantumSeed s = initial_seed();
  Json j = to_json(s);
  Json cols = Json::array();
  for (std::size_t k = 0; k < kMutable; ++k) {
    Json col = Json::array();
    for (std::size_t i = 0; i < kRank; ++i) col.push_back(s.exchange[i][k]);
    cols.push_back(col);
  }
  j["btilde"] = cols;
  EXPECT_EQ(seed_from_json(j, initial_form()), s);
}

TEST(Json, MalformedInputIsRejected) {
  EXPECT_THROW(element_from_json<6>(Json::array(), initial_form()), ParseError);
  Json bad = {{"terms", {{{"exp", {1, 2}}, {"coeff", Json::array()}}}}};
  EXPECT_THROW(element_from_json<6>(bad, initial_form()), ParseError);
  Json seed = to_json(initial_seed());
  seed["lambda"].erase(0);
  EXPECT_THROW(seed_from_json(seed, initial_form()), ParseError);
}
