#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "qca/a21.hpp"
#include "qca/formula.hpp"
#include "qca/json_io.hpp"
#include "qca/seed_table.hpp"

namespace qca {

using Params = std::vector<std::pair<std::string, int>>;

/// Result of one instantiated identity. diff is lhs - rhs when both sides
/// could be evaluated.
struct IdentityInstance {
  std::string family;
  Params params;
  bool pass = false;
  std::optional<Elem> diff;
  std::string note;
};

struct SuiteReport {
  std::string family;
  Json range = Json::object();
  std::size_t instances = 0;
  /// Tuples enumerated but outside the stated hypotheses of their family.
  std::size_t skipped = 0;
  /// Tuples that need a generator outside the configured window.
  std::size_t out_of_window = 0;
  std::map<std::string, std::size_t> per_family;
  std::vector<IdentityInstance> failures;

  bool ok() const { return failures.empty(); }

  void absorb(const SuiteReport& other) {
    instances += other.instances;
    skipped += other.skipped;
    out_of_window += other.out_of_window;
    for (const auto& [k, v] : other.per_family) per_family[other.family + "/" + k] += v;
    failures.insert(failures.end(), other.failures.begin(), other.failures.end());
  }

  Json to_json() const {
    Json fails = Json::array();
    for (const auto& f : failures) {
      Json params = Json::object();
      for (const auto& [k, v] : f.params) params[k] = v;
      Json j = {{"family", f.family}, {"params", params}};
      j["diff"] = f.diff ? qca::to_json(*f.diff) : Json(nullptr);
      if (!f.note.empty()) j["note"] = f.note;
      fails.push_back(std::move(j));
    }
    Json counts = Json::object();
    for (const auto& [k, v] : per_family) counts[k] = v;
    return {{"family", family},       {"range", range},          {"instances", instances},
            {"skipped", skipped},     {"out_of_window", out_of_window},
            {"per_family", counts},   {"failures", fails}};
  }
};

/// One unevaluated instance. Formula checks keep their two sides so the
/// bar-duality suite can reuse them.
struct Check {
  std::string family;
  Params params;
  std::optional<std::pair<Expr, Expr>> formula;
  std::function<IdentityInstance(Registry&)> run;
};

namespace detail {

inline IdentityInstance compare(Elem lhs, const Elem& rhs) {
  IdentityInstance r;
  r.pass = lhs == rhs;
  if (!r.pass) r.diff = std::move(lhs) - rhs;
  return r;
}

inline bool expr_fits(const Expr& e, const Window& w) {
  for (const auto& p : e.terms())
    for (const auto& f : p.factors)
      for (const auto& n : f.group) {
        if (n.kind == ElementName::Kind::X && (n.index < w.x_min || n.index > w.x_max)) return false;
        if (n.kind == ElementName::Kind::U && n.index > w.u_max) return false;
      }
  return true;
}

}  // namespace detail

inline Check formula_check(std::string family, Params params, Expr lhs, Expr rhs) {
  Check c{std::move(family), std::move(params), std::pair{lhs, rhs}, {}};
  c.run = [lhs, rhs](Registry& reg) { return detail::compare(reg.eval(lhs), reg.eval(rhs)); };
  return c;
}

inline Check element_check(std::string family, Params params, std::function<std::pair<Elem, Elem>(Registry&)> sides) {
  Check c{std::move(family), std::move(params), std::nullopt, {}};
  c.run = [sides = std::move(sides)](Registry& reg) {
    auto [l, r] = sides(reg);
    return detail::compare(std::move(l), r);
  };
  return c;
}

/// Enumerated checks plus the tuples that were not instantiated.
struct CheckList {
  std::vector<Check> checks;
  std::size_t skipped = 0;
  std::size_t out_of_window = 0;

  void add(Check c, const Window& w) {
    if (c.formula && !(detail::expr_fits(c.formula->first, w) && detail::expr_fits(c.formula->second, w))) {
      ++out_of_window;
      return;
    }
    checks.push_back(std::move(c));
  }
  void append(CheckList other) {
    for (auto& c : other.checks) checks.push_back(std::move(c));
    skipped += other.skipped;
    out_of_window += other.out_of_window;
  }
};

/// Runs fn(i) for i in [0, n) on up to `jobs` threads. The first exception
/// thrown by any task is rethrown after all threads finish.
inline void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(jobs, 1)), 1, std::max<std::size_t>(n, 1));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first;
  std::mutex err_mu;
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < workers; ++t)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < n;) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(err_mu);
          if (!first) first = std::current_exception();
          next = n;
        }
      }
    });
  for (auto& t : pool) t.join();
  if (first) std::rethrow_exception(first);
}

/// Evaluates every check. Budget exhaustion propagates; any other library
/// error inside an instance is recorded as a failure of that instance.
inline SuiteReport run_checks(std::string name, Json range, const CheckList& list, Registry& reg, int jobs = 1) {
  std::vector<IdentityInstance> results(list.checks.size());
  parallel_for(list.checks.size(), jobs, [&](std::size_t i) {
    const Check& c = list.checks[i];
    IdentityInstance r;
    try {
      r = c.run(reg);
    } catch (const GenerationBudgetExceeded&) {
      throw;
    } catch (const Error& e) {
      r.pass = false;
      r.note = e.what();
    }
    r.family = c.family;
    r.params = c.params;
    results[i] = std::move(r);
  });
  SuiteReport rep;
  rep.family = std::move(name);
  rep.range = std::move(range);
  rep.instances = list.checks.size();
  rep.skipped = list.skipped;
  rep.out_of_window = list.out_of_window;
  for (auto& r : results) {
    ++rep.per_family[r.family];
    if (!r.pass) rep.failures.push_back(std::move(r));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Exchange relations between consecutive cluster variables.

inline CheckList exchange_checks(int n_max, const Window& win) {
  CheckList out;
  auto add = [&](const char* fam, Params p, Expr l, Expr r) { out.add(formula_check(fam, std::move(p), l, r), win); };
  auto sq = [](int i) { return Expr::power(ElementName::x(i), 2); };
  for (int n = 1; n <= n_max; ++n) {
    const Params p{{"n", n}};
    add("X[2n]X[2n+3]", p, X(2 * n) * X(2 * n + 3),
        qpow(3 * n * n - 2 * n - 1, 2) * y(1, n) * y(2, n) * y(3, n - 1) + X(2 * n + 1) * X(2 * n + 2));
    add("X[2n-1]X[2n+2]", p, X(2 * n - 1) * X(2 * n + 2),
        qpow(3 * n * n - 4 * n, 2) * y(1, n) * y(2, n - 1) * y(3, n - 1) + X(2 * n) * X(2 * n + 1));
    add("X[-(2n+1)]X[-(2n-2)]", p, X(-(2 * n + 1)) * X(-(2 * n - 2)),
        qpow(3 * n * n - 4 * n, 2) * y(1, n - 1) * y(2, n - 1) * y(3, n) + X(-(2 * n - 1)) * X(-2 * n));
    add("X[-(2n+2)]X[-(2n-1)]", p, X(-(2 * n + 2)) * X(-(2 * n - 1)),
        qpow(3 * n * n - 2 * n - 1, 2) * y(1, n - 1) * y(2, n) * y(3, n) + X(-2 * n) * X(-(2 * n + 1)));
    add("wX[2n]", p, Wv() * X(2 * n), qpow(1, 2) * X(2 * n - 1) * y(2) + X(2 * n + 1));
    add("wX[-2n]", p, Wv() * X(-2 * n), X(-(2 * n - 1)) * y(1) * y(3) + X(-(2 * n + 1)));
    add("zX[2n+1]", p, Zv() * X(2 * n + 1), qpow(1) * X(2 * n) * y(1) * y(3) + X(2 * n + 2));
    add("zX[-(2n-1)]", p, Zv() * X(-(2 * n - 1)), qpow(-1, 2) * X(-(2 * n - 2)) * y(2) + X(-2 * n));
    add("X[2n-1]X[2n+3]", p, X(2 * n - 1) * X(2 * n + 3),
        qpow(3 * n * n - 4 * n, 2) * Wv() * y(1, n) * y(2, n - 1) * y(3, n - 1) + sq(2 * n + 1));
    add("X[-(2n+3)]X[-(2n-1)]", p, X(-(2 * n + 3)) * X(-(2 * n - 1)),
        qpow(3 * n * n - 2 * n - 1, 2) * Wv() * y(1, n - 1) * y(2, n) * y(3, n) + sq(-(2 * n + 1)));
    add("X[2n]X[2n+4]", p, X(2 * n) * X(2 * n + 4),
        qpow(3 * n * n - 2 * n - 1, 2) * Zv() * y(1, n) * y(2, n) * y(3, n - 1) + sq(2 * n + 2));
    add("X[-(2n+2)]X[-(2n-2)]", p, X(-(2 * n + 2)) * X(-(2 * n - 2)),
        qpow(3 * n * n - 4 * n, 2) * Zv() * y(1, n - 1) * y(2, n - 1) * y(3, n) + sq(-2 * n));
  }
  if (n_max >= 1) {
    add("X0X3", {}, X(0) * X(3), qpow(1, 2) * X(1) * X(2) * y(3) + 1);
    add("X[-1]X2", {}, X(-1) * X(2), qpow(1, 2) * X(0) * X(1) * y(2) + 1);
    add("X[-2]X1", {}, X(-2) * X(1), qpow(1, 2) * X(-1) * X(0) * y(1) + 1);
    add("wX0", {}, Wv() * X(0), qpow(-1, 2) * X(1) * y(3) + X(-1));
    add("zX1", {}, Zv() * X(1), qpow(1, 2) * X(0) * y(1) + X(2));
    add("X[-1]X3", {}, X(-1) * X(3), qpow(1) * sq(1) * y(2) * y(3) + Wv());
    add("X[-3]X1", {}, X(-3) * X(1), qpow(1, 2) * sq(-1) * y(1) + Wv());
    add("X0X4", {}, X(0) * X(4), qpow(1, 2) * sq(2) * y(3) + Zv());
    add("X[-2]X2", {}, X(-2) * X(2), qpow(1) * sq(0) * y(1) * y(2) + Zv());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Seed table and compatibility.

/// Compares the seed reached by the in-place walk with the reference
/// matrices, after relabelling slots to the labeled order. Falls back to a
/// search over all relabellings and reports which one matched.
inline CheckList seed_table_checks(int lo, int hi) {
  CheckList out;
  auto make = [](bool cyc, int m) {
    return [cyc, m](Registry& reg) {
      IdentityInstance r;
      const QuantumSeed& s = cyc ? reg.cyc(m) : reg.sigma(m);
      const PrintedSeed ref = cyc ? printed_cyc(m) : printed_sigma(m);
      Permutation aligned{};
      for (int t = 0; t < 3; ++t) aligned[static_cast<std::size_t>(slot_of(m + t) - 1)] = t;
      std::optional<Form6> lam;
      try {
        lam = Form6(ref.lambda);
      } catch (const Error& e) {
        r.note = std::string("reference Lambda is not skew-symmetric: ") + e.what();
        return r;
      }
      const QuantumSeed p = permute_seed(s, aligned);
      if (p.form == *lam && p.exchange == ref.exchange) {
        r.pass = true;
        return r;
      }
      if (auto other = matrices_equiv(s.form, s.exchange, *lam, ref.exchange)) {
        r.note = "matches only under slot relabelling " + format_walk({(*other)[0] + 1, (*other)[1] + 1, (*other)[2] + 1});
        return r;
      }
      r.note = "walk seed:\n" + format_matrix(p.form.matrix()) + format_matrix(p.exchange) + "reference:\n" +
               format_matrix(ref.lambda) + format_matrix(ref.exchange);
      return r;
    };
  };
  for (int m = lo; m <= hi; ++m) {
    out.checks.push_back({"sigma", {{"m", m}}, std::nullopt, make(false, m)});
    out.checks.push_back({"cyc", {{"m", m}}, std::nullopt, make(true, m)});
  }
  return out;
}

/// Every seed of the walks to Sigma_m and Sigma^cyc_m, m in [lo, hi], must
/// satisfy Lambda(b_j, e_i) = delta_ij d_j with d = (1,1,1).
inline CheckList compatibility_checks(int lo, int hi) {
  CheckList out;
  auto make = [](bool cyc, int m) {
    return [cyc, m](Registry& reg) {
      IdentityInstance r;
      const QuantumSeed& s = cyc ? reg.cyc(m) : reg.sigma(m);
      const CompatibilityReport c = check_compatible(s.form, s.exchange);
      r.pass = c.ok && c.d == std::array<int, 3>{1, 1, 1};
      if (!r.pass) {
        r.note = "d = (" + std::to_string(c.d[0]) + "," + std::to_string(c.d[1]) + "," + std::to_string(c.d[2]) +
                 "), violations: " + std::to_string(c.violations.size());
      }
      return r;
    };
  };
  for (int m = lo; m <= hi; ++m) {
    out.checks.push_back({"sigma", {{"m", m}}, std::nullopt, make(false, m)});
    out.checks.push_back({"cyc", {{"m", m}}, std::nullopt, make(true, m)});
  }
  return out;
}

// ---------------------------------------------------------------------------
// The u_n family.

inline CheckList u_algebra_checks(int n_max, const Window& win) {
  CheckList out;
  auto add = [&](const char* fam, Params p, Expr l, Expr r) { out.add(formula_check(fam, std::move(p), l, r), win); };
  for (int n = 1; n <= n_max; ++n) {
    add("unY=Yun", {{"n", n}}, U(n) * ydiag(1), ydiag(1) * U(n));
    add("unw=wun", {{"n", n}}, U(n) * Wv(), Wv() * U(n));
    add("unz=zun", {{"n", n}}, U(n) * Zv(), Zv() * U(n));
    for (int p = 1; p <= n_max; ++p) {
      const Params np{{"n", n}, {"p", p}};
      if (p < n) add("upun=unup", np, U(p) * U(n), U(n) * U(p));
      if (n > p) add("unup:n>p", np, U(n) * U(p), U(n + p) + ydiag(p) * U(n - p));
      if (n == p) add("unup:n=p", np, U(n) * U(p), U(2 * n) + 2 * ydiag(n));
    }
  }
  for (int n = 0; n <= n_max; ++n) {
    if (n > win.u_max) {
      out.out_of_window += 2;
      continue;
    }
    out.checks.push_back(element_check("bar(un)", {{"n", n}}, [n](Registry& reg) {
      return std::pair{reg.u(n).bar(), reg.u(n)};
    }));
    out.checks.push_back(element_check("bar(Yun)", {{"n", n}}, [n](Registry& reg) {
      Elem v = reg.y(1, 1, 1) * reg.u(n);
      return std::pair{v.bar(), v};
    }));
  }
  return out;
}

/// u_1 X_n in six cases, for |n| <= m_max, and u_n X_m in six families for
/// 1 <= n <= n_max, 1 <= m <= m_max.
inline CheckList un_action_checks(int n_max, int m_max, const Window& win) {
  CheckList out;
  auto add = [&](const char* fam, Params p, Expr l, Expr r) { out.add(formula_check(fam, std::move(p), l, r), win); };
  for (int n = -m_max; n <= m_max; ++n) {
    const Params p{{"n", n}};
    const Expr lhs = U(1) * X(n);
    if (n == 1) add("u1X1", p, lhs, qpow(1, 2) * X(-1) * y(1) + X(3));
    else if (n == 2) add("u1X2", p, lhs, qpow(1) * X(0) * y(1) * y(2) + X(4));
    else if (n >= 3) add("u1X[n]:n>=3", p, lhs, qpow(5, 2) * X(n - 2) * y(1) * y(2) * y(3) + X(n + 2));
    else if (n == 0) add("u1X0", p, lhs, qpow(-1, 2) * X(2) * y(3) + X(-2));
    else if (n == -1) add("u1X[-1]", p, lhs, X(1) * y(2) * y(3) + X(-3));
    else add("u1X[n]:n<=-2", p, lhs, qpow(1, 2) * X(n + 2) * y(1) * y(2) * y(3) + X(n - 2));
  }
  for (int n = 1; n <= n_max; ++n)
    for (int m = 1; m <= m_max; ++m) {
      const Params p{{"n", n}, {"m", m}};
      if (m >= 2 * n + 1)
        add("unX[m]:m>=2n+1", p, U(n) * X(m),
            qpow(3 * n * n + 2 * n, 2) * X(m - 2 * n) * y(1, n) * y(2, n) * y(3, n) + X(m + 2 * n));
      else
        ++out.skipped;
      if (1 <= 2 * m - 1 && 2 * m - 1 <= 2 * n)
        add("unX[2m-1]:2m-1<=2n", p, U(n) * X(2 * m - 1),
            qpow(3 * m * m - 4 * m + 2, 2) * X(2 * m - 1 - 2 * n) * y(1, m) * y(2, m - 1) * y(3, m - 1) +
                X(2 * m - 1 + 2 * n));
      else
        ++out.skipped;
      if (1 <= 2 * m && 2 * m <= 2 * n)
        add("unX[2m]:2m<=2n", p, U(n) * X(2 * m),
            qpow(3 * m * m - 2 * m + 1, 2) * X(2 * m - 2 * n) * y(1, m) * y(2, m) * y(3, m - 1) + X(2 * m + 2 * n));
      else
        ++out.skipped;
      if (m >= 2 * n)
        add("unX[-m]:m>=2n", p, U(n) * X(-m),
            qpow(3 * n * n - 2 * n, 2) * X(-m + 2 * n) * y(1, n) * y(2, n) * y(3, n) + X(-m - 2 * n));
      else
        ++out.skipped;
      if (0 <= 2 * m - 1 && 2 * m - 1 <= 2 * n - 1)
        add("unX[-(2m-1)]:2m-1<=2n-1", p, U(n) * X(-(2 * m - 1)),
            qpow(3 * m * m - 2 * m - 1, 2) * X(-(2 * m - 1) + 2 * n) * y(1, m - 1) * y(2, m) * y(3, m) +
                X(-(2 * m - 1) - 2 * n));
      else
        ++out.skipped;
      if (0 <= 2 * m - 2 && 2 * m - 2 <= 2 * n - 1)
        add("unX[-(2m-2)]:2m-2<=2n-1", p, U(n) * X(-(2 * m - 2)),
            qpow(3 * m * m - 4 * m, 2) * X(-(2 * m - 2) + 2 * n) * y(1, m - 1) * y(2, m - 1) * y(3, m) +
                X(-(2 * m - 2) - 2 * n));
      else
        ++out.skipped;
    }
  return out;
}

/// X_n from mutation against its polynomial in u_k, X_{-1..4} and y's.
inline CheckList corollary_checks(int n_max, const Window& win) {
  CheckList out;
  auto add = [&](const char* fam, Params p, Expr l, Expr r) { out.add(formula_check(fam, std::move(p), l, r), win); };
  for (int n = 1; n <= n_max; ++n) {
    const Params p{{"n", n}};
    add("X[2n+3]", p, X(2 * n + 3), polynomial_expression(2 * n + 3));
    add("X[2n+4]", p, X(2 * n + 4), polynomial_expression(2 * n + 4));
    add("X[-2n]", p, X(-2 * n), polynomial_expression(-2 * n));
    add("X[-(2n+1)]", p, X(-(2 * n + 1)), polynomial_expression(-(2 * n + 1)));
  }
  add("z", {}, Zv(), base_expression_z());
  add("X[-1]", {}, X(-1), base_expression_x_minus1());
  return out;
}

// ---------------------------------------------------------------------------
// Products of two cluster variables far apart.

namespace detail {

/// sum_{l=0}^{L} (sum_{i=0}^{l} q^{(2i + c0 + c1 l)/2}) u_{ubase - 2l} (y1y2y3)^l
inline Expr lsum(long long L, int c0, int c1, int ubase) {
  Expr e;
  for (int l = 0; l <= L; ++l) e += qsum(l, c0 + c1 * l) * U(ubase - 2 * l) * y123(l);
  return e;
}

inline Expr pair_x(int a, int b) { return X(a) * X(b); }

}  // namespace detail

inline CheckList product_checks(int m_max, int n_max, const Window& win) {
  using detail::lsum;
  CheckList out;
  auto add = [&](const char* fam, Params p, Expr l, Expr r) { out.add(formula_check(fam, std::move(p), l, r), win); };
  auto fl = [](long long a, long long b) { return floor_div(a, b); };
  auto cl = [](long long a, long long b) { return ceil_div(a, b); };

  // Far-apart products on one side of the exchange graph.
  for (int m = 0; m <= m_max; ++m)
    for (int n = 0; n <= n_max; ++n) {
      const Params p{{"m", m}, {"n", n}};
      const int h = static_cast<int>(fl(n, 2)), c = static_cast<int>(cl(n, 2));
      const Expr near = detail::pair_x(m + n + 1, m + n + 2);
      const Expr near_neg = detail::pair_x(-(m + n + 1), -(m + n + 2));
      const Expr mid = detail::pair_x(m + 2 * h, m + 2 * c);
      const Expr mid_neg = detail::pair_x(-(m + 2 * h), -(m + 2 * c));
      if (m % 2 == 1) {
        const int k = (m - 1) / 2;
        add("XmX[m+2n+3]:odd", p, X(m) * X(m + 2 * n + 3),
            near + qpow(5 * m - 5, 4) * y(1) * y123(k) * lsum(fl(n, 2), -1, 3, n) +
                qpow(5 * m - 5, 4) * y(1) * y(2) * y123(k) * lsum(fl(n - 1, 2), 0, 3, n - 1));
        add("XmX[m+2n]:odd", p, X(m) * X(m + 2 * n),
            mid + qpow(5 * m - 5, 4) * y(1) * Wv() * y123(k) * lsum(fl(n - 2, 2), -1, 3, n - 2));
        add("X[-m]X[-(m+2n+3)]:odd", p, X(-m) * X(-(m + 2 * n + 3)),
            near_neg + qpow(m - 1, 4) * y(2) * y(3) * y123(k) * lsum(fl(n, 2), 2, 1, n) +
                qpow(m - 1, 4) * y(3) * y123(k + 1) * lsum(fl(n - 1, 2), 2, 1, n - 1));
        add("X[-m]X[-(m+2n)]:odd", p, X(-m) * X(-(m + 2 * n)),
            mid_neg + qpow(m - 1, 4) * Wv() * y(2) * y(3) * y123(k) * lsum(fl(n - 2, 2), 2, 1, n - 2));
      } else {
        if (m > 0) {
          add("XmX[m+2n+3]:even", p, X(m) * X(m + 2 * n + 3),
              near + qpow(5 * m - 10, 4) * y(1) * y(2) * y123((m - 2) / 2) * lsum(fl(n, 2), 0, 3, n) +
                  qpow(5 * m, 4) * y(1) * y123(m / 2) * lsum(fl(n - 1, 2), -1, 3, n - 1));
          add("XmX[m+2n]:even", p, X(m) * X(m + 2 * n),
              mid + qpow(5 * m - 10, 4) * y(1) * y(2) * Zv() * y123((m - 2) / 2) * lsum(fl(n - 2, 2), 0, 3, n - 2));
        } else {
          out.skipped += 2;
        }
        add("X[-m]X[-(m+2n+3)]:even", p, X(-m) * X(-(m + 2 * n + 3)),
            near_neg + qpow(m - 2, 4) * y(3) * y123(m / 2) * lsum(fl(n, 2), 2, 1, n) +
                qpow(m - 2, 4) * y(2) * y(3) * y123(m / 2) * lsum(fl(n - 1, 2), 3, 1, n - 1));
        add("X[-m]X[-(m+2n)]:even", p, X(-m) * X(-(m + 2 * n)),
            mid_neg + qpow(m - 2, 4) * Zv() * y(3) * y123(m / 2) * lsum(fl(n - 2, 2), 2, 1, n - 2));
      }
    }

  // X_{-m} times X_1 and X_2.
  for (int m = 0; m <= m_max; ++m) {
    const Params p{{"m", m}};
    if (m < 2) {
      out.skipped += 2;
      continue;
    }
    if (m % 2 == 1) {
      add("X[-m]X1:odd", p, X(-m) * X(1),
          qpow(m - 2, 2) * y(1) * detail::pair_x(-m + 2 * static_cast<int>(fl(m + 1, 4)), -m + 2 * static_cast<int>(cl(m + 1, 4))) +
              Wv() * lsum(fl(m - 3, 4), 0, 3, (m - 3) / 2));
      add("X[-m]X2:odd", p, X(-m) * X(2),
          qpow(m + 1, 2) * y(1) * y(2) * detail::pair_x((1 - m) / 2, (3 - m) / 2) + lsum(fl(m - 1, 4), 0, 3, (m - 1) / 2) +
              y(2) * lsum(fl(m - 3, 4), 1, 3, (m - 3) / 2));
    } else {
      add("X[-m]X1:even", p, X(-m) * X(1),
          qpow(m - 1, 2) * y(1) * detail::pair_x(-m / 2, (2 - m) / 2) + lsum(fl(m - 2, 4), 0, 3, (m - 2) / 2) +
              y(1) * y(3) * lsum(fl(m - 4, 4), 2, 3, (m - 4) / 2));
      add("X[-m]X2:even", p, X(-m) * X(2),
          qpow(m, 2) * y(1) * y(2) * detail::pair_x(-m + 2 * static_cast<int>(fl(m + 2, 4)), -m + 2 * static_cast<int>(cl(m + 2, 4))) +
              Zv() * lsum(fl(m - 2, 4), 0, 3, (m - 2) / 2));
    }
  }

  // Products across the two sides: X_{-m} X_{-m+2n+3} and X_{-m} X_{-m+2n}.
  auto SA = [&](int n) { return lsum(fl(n, 2), 0, 3, n); };
  auto SB = [&](int n) { return lsum(fl(n - 1, 2), 1, 3, n - 1); };
  auto SC = [&](int n) { return lsum(fl(n - 2, 2), 0, 3, n - 2); };
  auto SD = [&](int n) { return lsum(fl(n - 1, 2), 2, 3, n - 1); };
  for (int m = 0; m <= m_max; ++m)
    for (int n = 0; n <= n_max; ++n) {
      const Params p{{"m", m}, {"n", n}};
      const Expr lhs_i = X(-m) * X(-m + 2 * n + 3);
      const Expr lhs_ii = X(-m) * X(-m + 2 * n);
      const Expr near = detail::pair_x(-m + n + 1, -m + n + 2);
      const Expr mid = detail::pair_x(-m + 2 * static_cast<int>(fl(n, 2)), -m + 2 * static_cast<int>(cl(n, 2)));
      if (m % 2 == 1) {
        const Expr tail_i = SA(n) + y(2) * SB(n);
        if (2 * n >= m - 1 && n <= m - 2)
          add("X[-m]X[-m+2n+3]:odd:low", p, lhs_i,
              qpow(14 * n - 5 * m + 9, 4) * y(1) * y(2) * y123((2 * n - m + 1) / 2) * near + tail_i);
        else if (n == m - 1)
          add("X[-m]X[-m+2n+3]:odd:edge", p, lhs_i, qpow(5 * m - 3, 4) * y(2) * y123((m - 1) / 2) * near + tail_i);
        else if (n >= m)
          add("X[-m]X[-m+2n+3]:odd:high", p, lhs_i, qpow(m + 3, 4) * y(2) * y(3) * y123((m - 1) / 2) * near + tail_i);
        else
          ++out.skipped;
        const Expr tail_ii = Wv() * SC(n);
        if (2 * n >= m + 1 && n <= m - 1)
          add("X[-m]X[-m+2n]:odd:low", p, lhs_ii,
              qpow(14 * n - 5 * m - 11, 4) * y(1) * y123((2 * n - m - 1) / 2) * mid + tail_ii);
        else if (n == m)
          add("X[-m]X[-m+2n]:odd:edge", p, lhs_ii, qpow(5 * m - 5, 4) * y123((m - 1) / 2) * mid + tail_ii);
        else if (n >= m + 1)
          add("X[-m]X[-m+2n]:odd:high", p, lhs_ii, qpow(m + 3, 4) * y(2) * y(3) * y123((m - 1) / 2) * mid + tail_ii);
        else
          ++out.skipped;
      } else {
        const Expr tail_i = SA(n) + y(1) * y(3) * SD(n);
        if (2 * n >= m - 2 && n <= m - 2)
          add("X[-m]X[-m+2n+3]:even:low", p, lhs_i,
              qpow(14 * n - 5 * m + 12, 4) * y(1) * y123((2 * n - m + 2) / 2) * near + tail_i);
        else if (n == m - 1)
          add("X[-m]X[-m+2n+3]:even:edge", p, lhs_i, qpow(5 * m, 4) * y123(m / 2) * near + tail_i);
        else if (n >= m)
          add("X[-m]X[-m+2n+3]:even:high", p, lhs_i, qpow(m + 2, 4) * y(3) * y123(m / 2) * near + tail_i);
        else
          ++out.skipped;
        const Expr tail_ii = Zv() * SC(n);
        if (2 * n >= m + 2 && n <= m)
          add("X[-m]X[-m+2n]:even:low", p, lhs_ii,
              qpow(14 * n - 5 * m - 14, 4) * y(1) * y(2) * y123((2 * n - m - 2) / 2) * mid + tail_ii);
        else if (n == m + 1)
          add("X[-m]X[-m+2n]:even:edge", p, lhs_ii, qpow(5 * m, 4) * y123(m / 2) * mid + tail_ii);
        else if (n >= m + 2)
          add("X[-m]X[-m+2n]:even:high", p, lhs_ii, qpow(m + 2, 4) * y(3) * y123(m / 2) * mid + tail_ii);
        else
          ++out.skipped;
      }
    }
  return out;
}

// ---------------------------------------------------------------------------
// Bar duality and the second oracle for X_n.

/// For each formula check A = B (all named generators bar-invariant),
/// checks that the reversed-order formulas agree and equal bar(A).
inline CheckList bar_duality_checks(const CheckList& source) {
  CheckList out;
  out.skipped = source.skipped;
  out.out_of_window = source.out_of_window;
  for (const auto& c : source.checks) {
    if (!c.formula) continue;
    const Expr lhs = c.formula->first, rhs = c.formula->second;
    Check d{c.family, c.params, std::pair{lhs.reversed(), rhs.reversed()}, {}};
    d.run = [lhs, rhs](Registry& reg) {
      const Elem l_rev = reg.eval(lhs.reversed());
      const Elem r_rev = reg.eval(rhs.reversed());
      IdentityInstance r = detail::compare(l_rev, r_rev);
      if (r.pass && reg.eval(lhs).bar() != l_rev) {
        r.pass = false;
        r.diff = reg.eval(lhs).bar() - l_rev;
        r.note = "reversed product differs from bar of the original";
      }
      return r;
    };
    out.checks.push_back(std::move(d));
  }
  return out;
}

inline CheckList cross_oracle_checks(int lo, int hi) {
  CheckList out;
  for (int n = lo; n <= hi; ++n)
    out.checks.push_back(element_check("X[n]", {{"n", n}}, [n](Registry& reg) {
      return std::pair{reg.x(n), reg.x_by_recursion(n)};
    }));
  return out;
}

// ---------------------------------------------------------------------------
// Suite entry points.

inline SuiteReport verify_exchange(Registry& reg, int n_max, int jobs = 1) {
  return run_checks("exchange", {{"n", {1, n_max}}}, exchange_checks(n_max, reg.window()), reg, jobs);
}

inline SuiteReport verify_seed_table(Registry& reg, int lo, int hi, int jobs = 1) {
  return run_checks("seed-table", {{"m", {lo, hi}}}, seed_table_checks(lo, hi), reg, jobs);
}

inline SuiteReport verify_compatibility(Registry& reg, int lo, int hi, int jobs = 1) {
  return run_checks("compatibility", {{"m", {lo, hi}}}, compatibility_checks(lo, hi), reg, jobs);
}

inline SuiteReport verify_u_algebra(Registry& reg, int n_max, int jobs = 1) {
  return run_checks("u-algebra", {{"n", {1, n_max}}, {"p", {1, n_max}}}, u_algebra_checks(n_max, reg.window()), reg,
                    jobs);
}

inline SuiteReport verify_un_action(Registry& reg, int n_max, int m_max, int jobs = 1) {
  return run_checks("un-action", {{"n", {1, n_max}}, {"m", {1, m_max}}},
                    un_action_checks(n_max, m_max, reg.window()), reg, jobs);
}

inline SuiteReport verify_corollary(Registry& reg, int n_max, int jobs = 1) {
  return run_checks("corollary", {{"n", {1, n_max}}}, corollary_checks(n_max, reg.window()), reg, jobs);
}

inline SuiteReport verify_products(Registry& reg, int m_max, int n_max, int jobs = 1) {
  return run_checks("products", {{"m", {0, m_max}}, {"n", {0, n_max}}}, product_checks(m_max, n_max, reg.window()),
                    reg, jobs);
}

inline SuiteReport verify_cross_oracle(Registry& reg, int lo, int hi, int jobs = 1) {
  return run_checks("cross-oracle", {{"n", {lo, hi}}}, cross_oracle_checks(lo, hi), reg, jobs);
}

/// Bar duality over the formula checks of the exchange, u_n-action,
/// corollary and product suites.
inline SuiteReport verify_bar_duality(Registry& reg, int n_max, int m_max, int jobs = 1) {
  const Window& w = reg.window();
  CheckList src = exchange_checks(n_max, w);
  src.append(un_action_checks(n_max, m_max, w));
  src.append(corollary_checks(n_max, w));
  src.append(product_checks(m_max, n_max, w));
  return run_checks("bar-duality", {{"n", {1, n_max}}, {"m", {0, m_max}}}, bar_duality_checks(src), reg, jobs);
}

/// Window large enough for a suite at the given bounds.
inline Window window_for_suite(const std::string& suite, int n_max, int m_max, Window w) {
  auto u_at_least = [&](int k) { w.u_max = std::max(w.u_max, k); };
  if (suite == "exchange" || suite == "all" || suite == "bar-duality") w.cover(-(2 * n_max + 3), 2 * n_max + 4);
  if (suite == "corollary" || suite == "all" || suite == "bar-duality") {
    w.cover(-(2 * n_max + 1), 2 * n_max + 4);
    u_at_least(n_max);
  }
  if (suite == "un-action" || suite == "all" || suite == "bar-duality") u_at_least(n_max);
  if (suite == "products" || suite == "all" || suite == "bar-duality") {
    w.cover(-(m_max + 2 * n_max + 3), m_max + 2 * n_max + 3);
    u_at_least(std::max(n_max, m_max));
  }
  if (suite == "u-algebra" || suite == "all") u_at_least(2 * n_max);
  if (suite == "seed-table" || suite == "compatibility" || suite == "all") w.cover(-n_max - 3, n_max + 3);
  return w;
}

}  // namespace qca
