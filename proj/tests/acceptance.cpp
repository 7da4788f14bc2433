// Acceptance gate: one PASS/FAIL line per criterion, each against a wall-clock
// limit. Exit status is nonzero if any line fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "qca/basis.hpp"
#include "qca/identities.hpp"

namespace {

using namespace qca;

struct Outcome {
  bool ok = false;
  std::string detail;
};

std::string summarize(const SuiteReport& r) {
  std::string s = std::to_string(r.instances) + " instances";
  if (r.skipped) s += ", " + std::to_string(r.skipped) + " outside hypotheses";
  if (r.out_of_window) s += ", " + std::to_string(r.out_of_window) + " outside window";
  s += ", " + std::to_string(r.failures.size()) + " failures";
  if (!r.failures.empty()) {
    const auto& f = r.failures.front();
    s += " (first: " + f.family;
    for (const auto& [k, v] : f.params) s += " " + k + "=" + std::to_string(v);
    if (!f.note.empty()) s += ": " + f.note;
    s += ")";
  }
  return s;
}

Outcome from_reports(std::initializer_list<SuiteReport> reports) {
  Outcome o{true, {}};
  for (const auto& r : reports) {
    o.ok = o.ok && r.ok() && r.instances > 0;
    if (!o.detail.empty()) o.detail += "; ";
    o.detail += r.family + ": " + summarize(r);
  }
  return o;
}

Window window_for(const std::string& suite, int n, int m) { return window_for_suite(suite, n, m, Window{}); }

}  // namespace

int main() {
  const int jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

  struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<Outcome()> run;
  };

  const std::vector<Criterion> criteria{
      {1, "exchange relations, n = 1..10", 10.0,
       [&] {
         Registry reg(window_for("exchange", 10, 0));
         return from_reports({verify_exchange(reg, 10, jobs)});
       }},
      {2, "seed table, m in [-5, 5]", 5.0,
       [&] {
         Registry reg(window_for("seed-table", 5, 0));
         return from_reports({verify_seed_table(reg, -5, 5, jobs)});
       }},
      {3, "compatibility of visited seeds", 1.0,
       [&] {
         Registry reg(window_for("compatibility", 5, 0));
         return from_reports({verify_compatibility(reg, -5, 5, jobs)});
       }},
      {4, "u_n algebra, n, p <= 10", 30.0,
       [&] {
         Registry reg(window_for("u-algebra", 10, 0));
         return from_reports({verify_u_algebra(reg, 10, jobs)});
       }},
      {5, "u_n action and polynomial expressions, n <= 8", 60.0,
       [&] {
         Registry reg(window_for("un-action", 8, 0));
         const Window& w = reg.window();
         const int m_max = std::max(-w.x_min, w.x_max);
         Registry creg(window_for("corollary", 8, 0));
         return from_reports({verify_un_action(reg, 8, m_max, jobs), verify_corollary(creg, 8, jobs)});
       }},
      {6, "products X_m X_n, m, n <= 6", 120.0,
       [&] {
         Registry reg(window_for("products", 6, 6));
         return from_reports({verify_products(reg, 6, 6, jobs)});
       }},
      {7, "basis labels (depth 3, cap 2, n 6, k 3)", 120.0,
       [&] {
         RootSet roots(Window{});
         return from_reports({verify_basis(roots, BasisWindow{3, 2, 6, 3}, default_positivity_roots(), jobs)});
       }},
      {8, "X_n by mutation vs recursion, n in [-12, 14]", 30.0,
       [&] {
         Registry reg(Window{}.cover(-12, 14));
         return from_reports({verify_cross_oracle(reg, -12, 14, jobs)});
       }},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs <= c.limit_s;
    const bool pass = o.ok && in_time;
    if (!pass) ++failed;
    std::printf("criterion %d %s: %s (%.2fs / %.0fs%s) %s\n", c.id, c.name, pass ? "PASS" : "FAIL", secs, c.limit_s,
                in_time ? "" : ", over time limit", o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
