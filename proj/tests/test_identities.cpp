#include <gtest/gtest.h>

#include <atomic>
#include <set>

#include "qca/identities.hpp"

using namespace qca;

namespace {

std::set<std::string> families(const CheckList& l) {
  std::set<std::string> out;
  for (const auto& c : l.checks) out.insert(c.family);
  return out;
}

}  // namespace

TEST(Suites, ExchangeSmall) {
  Registry reg(window_for_suite("exchange", 4, 0, Window{}));
  const SuiteReport r = verify_exchange(reg, 4, 2);
  EXPECT_TRUE(r.ok()) << r.to_json().dump();
  EXPECT_EQ(r.instances, 4u * 12 + 9);
  EXPECT_EQ(r.per_family.size(), 21u);
}

TEST(Suites, FamiliesAreComplete) {
  const Window wide = Window{}.cover(-100, 100);
  EXPECT_EQ(families(exchange_checks(3, wide)).size(), 21u);
  const auto un = families(un_action_checks(3, 10, wide));
  EXPECT_EQ(std::count_if(un.begin(), un.end(), [](const std::string& f) { return f.rfind("u1X", 0) == 0; }), 6);
  EXPECT_EQ(std::count_if(un.begin(), un.end(), [](const std::string& f) { return f.rfind("unX", 0) == 0; }), 6);
}

TEST(Suites, SeedTableAndCompatibility) {
  Registry reg;
  const SuiteReport t = verify_seed_table(reg, -3, 3);
  EXPECT_TRUE(t.ok()) << t.to_json().dump();
  EXPECT_EQ(t.instances, 14u);
  const SuiteReport c = verify_compatibility(reg, -3, 3);
  EXPECT_TRUE(c.ok()) << c.to_json().dump();
}

TEST(Suites, UAlgebraSmall) {
  Registry reg(window_for_suite("u-algebra", 4, 0, Window{}));
  const SuiteReport r = verify_u_algebra(reg, 4, 2);
  EXPECT_TRUE(r.ok()) << r.to_json().dump();
  EXPECT_GT(r.instances, 0u);
}

TEST(Suites, UnActionAndCorollarySmall) {
  Registry reg(window_for_suite("corollary", 4, 0, Window{}));
  const SuiteReport a = verify_un_action(reg, 3, 10, 2);
  EXPECT_TRUE(a.ok()) << a.to_json().dump();
  EXPECT_GT(a.skipped, 0u);
  const SuiteReport c = verify_corollary(reg, 4, 2);
  EXPECT_TRUE(c.ok()) << c.to_json().dump();
}

TEST(Suites, ProductsSmall) {
  Registry reg(window_for_suite("products", 3, 3, Window{}));
  const SuiteReport r = verify_products(reg, 3, 3, 2);
  EXPECT_TRUE(r.ok()) << r.to_json().dump();
  EXPECT_GT(r.instances, 0u);
}

TEST(Suites, BarDualitySmall) {
  Registry reg(window_for_suite("bar-duality", 3, 3, Window{}));
  const SuiteReport r = verify_bar_duality(reg, 3, 3, 2);
  EXPECT_TRUE(r.ok()) << r.to_json().dump();
}

TEST(Suites, CrossOracle) {
  Registry reg(Window{}.cover(-12, 14));
  const SuiteReport r = verify_cross_oracle(reg, -12, 14, 2);
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.instances, 27u);
}

TEST(Suites, PerturbedFormulasFail) {
  Registry reg;
  CheckList list;
  const Window w;
  // Correct: X_0 X_3 = q^{1/2} X_1 X_2 y_3 + 1.
  list.add(formula_check("good", {}, X(0) * X(3), qpow(1, 2) * X(1) * X(2) * y(3) + 1), w);
  list.add(formula_check("wrong-q", {}, X(0) * X(3), qpow(-1, 2) * X(1) * X(2) * y(3) + 1), w);
  list.add(formula_check("wrong-y", {}, X(0) * X(3), qpow(1, 2) * X(1) * X(2) * y(2) + 1), w);
  list.add(formula_check("swapped", {}, X(3) * X(0), qpow(1, 2) * X(1) * X(2) * y(3) + 1), w);
  list.add(formula_check("u-product-sign", {{"n", 2}}, U(2) * U(1), U(3) - ydiag(1) * U(1)), w);
  const SuiteReport r = run_checks("perturbed", Json::object(), list, reg);
  ASSERT_EQ(r.instances, 5u);
  ASSERT_EQ(r.failures.size(), 4u);
  for (const auto& f : r.failures) {
    EXPECT_NE(f.family, "good");
    ASSERT_TRUE(f.diff.has_value());
    EXPECT_FALSE(f.diff->is_zero());
  }
}

TEST(Suites, OutOfWindowInstancesAreCounted) {
  Window w;
  w.x_min = -3;
  w.x_max = 6;
  const CheckList l = exchange_checks(5, w);
  EXPECT_GT(l.out_of_window, 0u);
  EXPECT_EQ(l.checks.size() + l.out_of_window, 5u * 12 + 9);
}

TEST(Suites, LibraryErrorsBecomeFailureNotes) {
  Registry reg;
  CheckList list;
  list.checks.push_back(element_check("throws", {}, [](Registry&) -> std::pair<Elem, Elem> {
    throw NotDivisible("synthetic");
  }));
  const SuiteReport r = run_checks("errors", Json::object(), list, reg);
  ASSERT_EQ(r.failures.size(), 1u);
  EXPECT_NE(r.failures[0].note.find("synthetic"), std::string::npos);
  EXPECT_FALSE(r.failures[0].diff.has_value());
}

TEST(Suites, BudgetExhaustionPropagates) {
  Window w;
  w.budget_terms = 10;
  Registry reg(w);
  EXPECT_THROW(verify_cross_oracle(reg, 8, 10), GenerationBudgetExceeded);
}

TEST(Suites, ReportJsonShape) {
  Registry reg;
  CheckList list;
  list.add(formula_check("bad", {{"n", 1}}, X(1), X(2)), Window{});
  const Json j = run_checks("demo", {{"n", {1, 1}}}, list, reg).to_json();
  for (const char* key : {"family", "range", "instances", "skipped", "out_of_window", "per_family", "failures"})
    EXPECT_TRUE(j.contains(key)) << key;
  ASSERT_EQ(j["failures"].size(), 1u);
  EXPECT_EQ(j["failures"][0]["params"]["n"], 1);
  EXPECT_TRUE(j["failures"][0]["diff"].is_object());
}

TEST(Suites, ParallelForVisitsEveryIndexAndRethrows) {
  std::vector<std::atomic<int>> hits(100);
  parallel_for(hits.size(), 4, [&](std::size_t i) { ++hits[i]; });
  for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
  EXPECT_THROW(parallel_for(10, 3, [](std::size_t i) { if (i == 7) throw std::runtime_error("x"); }),
               std::runtime_error);
}

TEST(Suites, WindowForSuiteCoversBounds) {
  const Window w = window_for_suite("u-algebra", 10, 0, Window{});
  EXPECT_GE(w.u_max, 20);
  const Window p = window_for_suite("products", 6, 6, Window{});
  EXPECT_LE(p.x_min, -21);
  EXPECT_GE(p.x_max, 21);
}
