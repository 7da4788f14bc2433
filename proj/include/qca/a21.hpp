#pragma once

#include <algorithm>
#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "qca/error.hpp"
#include "qca/formula.hpp"
#include "qca/names.hpp"
#include "qca/seeds.hpp"

namespace qca {

inline const FormMatrix kInitialLambda{{
    {0, 0, 0, -1, 0, 0},
    {0, 0, 0, 0, -1, 0},
    {0, 0, 0, 0, 0, -1},
    {1, 0, 0, 0, -1, -1},
    {0, 1, 0, 1, 0, -1},
    {0, 0, 1, 1, 1, 0},
}};

inline const ExchangeMatrix kInitialExchange{{
    {0, 1, 1},
    {-1, 0, 1},
    {-1, -1, 0},
    {1, 0, 0},
    {0, 1, 0},
    {0, 0, 1},
}};

/// The torus of the initial seed. Shared so that every default-rooted
/// element lives in one torus.
inline const FormPtr<kRank>& initial_form() {
  static const FormPtr<kRank> form = make_form<kRank>(kInitialLambda);
  return form;
}

inline QuantumSeed monomial_seed(const FormPtr<kRank>& form, const ExchangeMatrix& b) {
  QuantumSeed s;
  s.form = *form;
  s.exchange = b;
  for (std::size_t i = 0; i < kRank; ++i) s.cluster[i] = Elem::monomial(form, unit_vector<kRank>(i));
  return s;
}

inline QuantumSeed initial_seed() { return monomial_seed(initial_form(), kInitialExchange); }

inline Elem element_w() {
  const auto& f = initial_form();
  return Elem::monomial(f, {1, -1, 0, 0, 1, 0}) + Elem::monomial(f, {0, -1, 1, 0, 0, 0});
}

inline Elem element_z() {
  const auto& f = initial_form();
  return Elem::monomial(f, {0, 1, -1, 1, 0, 1}) + Elem::monomial(f, {-1, 0, -1, 1, 0, 0}) +
         Elem::monomial(f, {-1, 1, 0, 0, 0, 0});
}

/// Slot (1-based) occupied by X_j in every seed of the in-place walk.
inline int slot_of(int j) { return static_cast<int>((j - 1) - 3 * floor_div(j - 1, 3)) + 1; }

/// Walk from the base seed to Sigma_m: 1,2,3,1,... rightward, 3,2,1,3,...
/// leftward. Each step replaces the variable leaving the window.
inline std::vector<int> sigma_walk(int m) {
  std::vector<int> w;
  for (int j = 1; j < m; ++j) w.push_back(slot_of(j));
  for (int j = 0; j >= m; --j) w.push_back(slot_of(j));
  return w;
}

/// Sigma^cyc_m: Sigma_m mutated at the slot of X_{m+1}.
inline std::vector<int> cyc_walk(int m) {
  auto w = sigma_walk(m);
  w.push_back(slot_of(m + 1));
  return w;
}

struct Window {
  int x_min = -20;
  int x_max = 22;
  int u_max = 12;
  /// Cap on the total number of stored (exponent, v-power) pairs.
  std::size_t budget_terms = 5'000'000;

  /// Widens the X range so that it contains [lo, hi].
  Window& cover(int lo, int hi) {
    x_min = std::min(x_min, lo);
    x_max = std::max(x_max, hi);
    return *this;
  }
};

/// Budget from QCA_BUDGET_TERMS if set and valid, otherwise the fallback.
inline std::size_t budget_from_env(std::size_t fallback) {
  if (const char* s = std::getenv("QCA_BUDGET_TERMS")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(s, &end, 10);
    if (end != s && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return fallback;
}

/// Generators of the algebra expanded in the torus of one root seed, with
/// an append-only cache. Thread-safe: every public call takes the lock, and
/// returned references stay valid for the lifetime of the registry.
class Registry {
 public:
  explicit Registry(Window window = {})
      : Registry(initial_seed(), initial_seed(), {}, window) {}

  Registry(Registry&&) = default;
  Registry& operator=(Registry&&) = default;

  /// root: the seed whose torus the expansions live in (cluster = monomials).
  /// base: the initial seed expressed in that torus.
  Registry(QuantumSeed root, QuantumSeed base, std::vector<int> root_walk, Window window)
      : mu_(std::make_unique<std::recursive_mutex>()),
        root_(std::move(root)),
        base_(std::move(base)),
        root_walk_(std::move(root_walk)),
        window_(window) {
    seeds_.emplace(std::string(), base_);
  }

  const FormPtr<kRank>& form() const { return base_.cluster[0].form(); }
  const QuantumSeed& root() const { return root_; }
  const QuantumSeed& base() const { return base_; }
  const std::vector<int>& root_walk() const { return root_walk_; }
  const Window& window() const { return window_; }
  bool is_default_root() const { return root_walk_.empty(); }

  std::size_t stored_terms() const {
    std::lock_guard lock(*mu_);
    return stored_terms_;
  }

  /// Seed reached from the base seed by the walk; prefixes are cached.
  const QuantumSeed& seed_at(const std::vector<int>& walk) {
    std::lock_guard lock(*mu_);
    const std::string key = format_walk(walk);
    if (auto it = seeds_.find(key); it != seeds_.end()) return it->second;
    std::vector<int> prefix(walk.begin(), walk.end() - 1);
    const QuantumSeed& parent = seed_at(prefix);
    QuantumSeed next = mutate_seed(parent, walk.back());
    std::size_t add = 0;
    for (const auto& c : next.cluster) add += c.flat_size();
    charge(add / kRank);
    return seeds_.emplace(key, std::move(next)).first->second;
  }

  const QuantumSeed& sigma(int m) { return seed_at(sigma_walk(m)); }
  const QuantumSeed& cyc(int m) { return seed_at(cyc_walk(m)); }

  /// X_n from the mutation walk.
  const Elem& x(int n) {
    std::lock_guard lock(*mu_);
    if (auto it = xs_.find(n); it != xs_.end()) return it->second;
    if (n < window_.x_min || n > window_.x_max)
      throw GenerationBudgetExceeded("X_" + std::to_string(n) + " is outside the window [" +
                                     std::to_string(window_.x_min) + ", " + std::to_string(window_.x_max) + "]");
    const int m = n >= 1 ? std::max(1, n - 2) : n;
    const Elem& v = sigma(m).cluster[static_cast<std::size_t>(slot_of(n) - 1)];
    return store(xs_, n, v);
  }

  const Elem& w() {
    std::lock_guard lock(*mu_);
    if (!w_) w_ = std::make_unique<Elem>(is_default_root() ? element_w() : middle_of_cyc(1));
    return *w_;
  }

  const Elem& z() {
    std::lock_guard lock(*mu_);
    if (!z_) z_ = std::make_unique<Elem>(is_default_root() ? element_z() : middle_of_cyc(0));
    return *z_;
  }

  /// X^(0,0,0,a,b,c). The frozen block of the form is the same in every
  /// seed, so this is also the normalized frozen monomial of any root.
  const Elem& y(int a, int b, int c) {
    std::lock_guard lock(*mu_);
    const std::array<int, 3> key{a, b, c};
    if (auto it = ys_.find(key); it != ys_.end()) return it->second;
    return ys_.emplace(key, Elem::monomial(form(), {0, 0, 0, a, b, c})).first->second;
  }

  /// u_n for n >= 0.
  const Elem& u(int n) {
    std::lock_guard lock(*mu_);
    if (n < 0) throw Error("u_n is only defined here for n >= 0");
    if (auto it = us_.find(n); it != us_.end()) return it->second;
    if (n > window_.u_max)
      throw GenerationBudgetExceeded("u_" + std::to_string(n) + " is beyond the window bound " +
                                     std::to_string(window_.u_max));
    Elem v;
    const Elem& diag = y(1, 1, 1);
    if (n == 0) {
      v = Elem::one(form());
    } else if (n == 1) {
      v = w() * z() - QCoefficient::monomial(-1) * y(1, 0, 1) - QCoefficient::monomial(1) * y(0, 1, 0);
    } else if (n == 2) {
      v = u(1) * u(1) - QCoefficient(2) * diag;
    } else {
      v = u(1) * u(n - 1) - diag * u(n - 2);
    }
    return store(us_, n, std::move(v));
  }

  const Elem& get(const ElementName& name) {
    switch (name.kind) {
      case ElementName::Kind::X: return x(name.index);
      case ElementName::Kind::W: return w();
      case ElementName::Kind::Z: return z();
      case ElementName::Kind::U: return u(name.index);
      case ElementName::Kind::Y: return y(name.frozen[0], name.frozen[1], name.frozen[2]);
    }
    throw Error("unreachable element kind");
  }

  Resolver resolver() {
    return [this](const ElementName& n) -> const Elem& { return get(n); };
  }

  Elem eval(const Expr& e) { return evaluate(e, form(), resolver()); }

  /// X_n through the linear recursion in u_1 instead of mutation:
  ///   X_n = u1 X_{n-2} - q^{5/2} X_{n-4} y1y2y3          (n >= 5)
  ///   X_n = u1 X_{n+2} - q^{1/2} X_{n+4} y1y2y3          (n <= -4)
  /// with X_{-3}, X_{-2} from the u1 X_{-1}, u1 X_0 relations and the
  /// single-mutation variables X_{-1}, ..., X_4 as base cases.
  const Elem& x_by_recursion(int n) {
    std::lock_guard lock(*mu_);
    if (auto it = xrec_.find(n); it != xrec_.end()) return it->second;
    if (n < window_.x_min || n > window_.x_max)
      throw GenerationBudgetExceeded("X_" + std::to_string(n) + " is outside the window");
    if (n >= -1 && n <= 4) return store(xrec_, n, x(n));
    Expr e;
    const Expr yyy = qca::y(1) * qca::y(2) * qca::y(3);
    const Resolver rec = [this](const ElementName& nm) -> const Elem& {
      return nm.kind == ElementName::Kind::X ? x_by_recursion(nm.index) : get(nm);
    };
    if (n >= 5) {
      e = U(1) * X(n - 2) - qpow(5, 2) * X(n - 4) * yyy;
    } else if (n == -2) {
      e = U(1) * X(0) - qpow(-1, 2) * X(2) * qca::y(3);
    } else if (n == -3) {
      e = U(1) * X(-1) - X(1) * qca::y(2) * qca::y(3);
    } else {
      e = U(1) * X(n + 2) - qpow(1, 2) * X(n + 4) * yyy;
    }
    return store(xrec_, n, evaluate(e, form(), rec));
  }

 private:
  Elem middle_of_cyc(int m) {
    return cyc(m).cluster[static_cast<std::size_t>(slot_of(m + 1) - 1)];
  }

  void charge(std::size_t terms) {
    if (stored_terms_ + terms > window_.budget_terms)
      throw GenerationBudgetExceeded("term budget of " + std::to_string(window_.budget_terms) + " exhausted");
    stored_terms_ += terms;
  }

  template <typename Map>
  const Elem& store(Map& m, int key, Elem v) {
    charge(v.flat_size());
    return m.emplace(key, std::move(v)).first->second;
  }

  std::unique_ptr<std::recursive_mutex> mu_;
  QuantumSeed root_;
  QuantumSeed base_;
  std::vector<int> root_walk_;
  Window window_;
  std::size_t stored_terms_ = 0;
  std::map<std::string, QuantumSeed> seeds_;
  std::map<int, Elem> xs_;
  std::map<int, Elem> xrec_;
  std::map<int, Elem> us_;
  std::map<std::array<int, 3>, Elem> ys_;
  std::unique_ptr<Elem> w_;
  std::unique_ptr<Elem> z_;
};

/// A registry whose torus is that of the seed reached from the initial seed
/// by the walk. The root seed becomes a fresh initial seed (its Lambda and
/// B-tilde govern, its cluster is X^{e_1},...,X^{e_6}); the original initial
/// seed is recovered inside it by walking back, and every generator is
/// rebuilt from there.
inline Registry reroot(const std::vector<int>& walk, Window window = {}) {
  if (walk.empty()) return Registry(window);
  const QuantumSeed reached = apply_walk(initial_seed(), walk);
  const auto form = make_form<kRank>(reached.form.matrix());
  QuantumSeed root = monomial_seed(form, reached.exchange);
  std::vector<int> back(walk.rbegin(), walk.rend());
  QuantumSeed base = apply_walk(root, back);
  return Registry(std::move(root), std::move(base), walk, window);
}

/// Polynomial in u_k, X_{-1..4} and y's equal to X_n, for n
/// outside the base range -1..4.
inline Expr polynomial_expression(int n) {
  if (n >= -1 && n <= 4)
    throw OutOfFamilyRange("X_" + std::to_string(n) + " is a base case; no polynomial family covers it");
  auto pw = [](int l) { return y123(l); };
  Expr e;
  if (n >= 5 && n % 2 != 0) {
    const int k = (n - 3) / 2;
    for (int l = 0; l <= k / 2; ++l) e += qpow(5 * l, 2) * U(k - 2 * l) * X(3) * pw(l);
    for (int l = 0; l <= (k - 1) / 2; ++l) e -= qpow(5 * (l + 1), 2) * U(k - 1 - 2 * l) * X(1) * pw(l + 1);
  } else if (n >= 6) {
    const int k = (n - 4) / 2;
    for (int l = 0; l <= k / 2; ++l) e += qpow(5 * l, 2) * U(k - 2 * l) * X(4) * pw(l);
    for (int l = 0; l <= (k - 1) / 2; ++l) e -= qpow(5 * (l + 1), 2) * U(k - 1 - 2 * l) * X(2) * pw(l + 1);
  } else if (n % 2 == 0) {
    const int k = -n / 2;
    for (int l = 0; l <= k / 2; ++l) e += qpow(l, 2) * U(k - 2 * l) * X(0) * pw(l);
    for (int l = 0; l <= (k - 1) / 2; ++l) e -= qpow(l - 1, 2) * U(k - 1 - 2 * l) * X(2) * y(3) * pw(l);
  } else {
    const int k = (-n - 1) / 2;
    for (int l = 0; l <= k / 2; ++l) e += qpow(l, 2) * U(k - 2 * l) * X(-1) * pw(l);
    for (int l = 0; l <= (k - 1) / 2; ++l) e -= qpow(l, 2) * U(k - 1 - 2 * l) * X(1) * y(2) * y(3) * pw(l);
  }
  return e;
}

/// z and X_{-1} in terms of X_0, ..., X_4 and w.
inline Expr base_expression_z() {
  return X(0) * X(4) - qpow(1, 2) * Expr::power(ElementName::x(2), 2) * y(3);
}
inline Expr base_expression_x_minus1() { return Wv() * X(0) - qpow(-1, 2) * X(1) * y(3); }

}  // namespace qca
