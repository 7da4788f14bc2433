#pragma once

#include <algorithm>
#include <compare>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "qca/a21.hpp"
#include "qca/identities.hpp"
#include "qca/json_io.hpp"

namespace qca {

/// An element of the basis: a cluster monomial of one seed (mutable part
/// only), u_n w^k, or u_n z^k.
struct BasisLabel {
  enum class Kind { ClusterMonomial, UW, UZ };
  Kind kind = Kind::ClusterMonomial;
  std::vector<int> walk;
  std::array<int, 3> a{};
  int n = 0;
  int k = 0;

  static BasisLabel cluster(std::vector<int> walk, std::array<int, 3> a) {
    for (int x : a)
      if (x < 0) throw NegativeExponent();
    return {Kind::ClusterMonomial, std::move(walk), a, 0, 0};
  }
  static BasisLabel uw(int n, int k) { return {Kind::UW, {}, {}, n, k}; }
  static BasisLabel uz(int n, int k) { return {Kind::UZ, {}, {}, n, k}; }

  friend auto operator<=>(const BasisLabel&, const BasisLabel&) = default;
  friend bool operator==(const BasisLabel&, const BasisLabel&) = default;

  std::string to_string() const {
    switch (kind) {
      case Kind::ClusterMonomial:
        return "cm:" + format_walk(walk) + ":" + std::to_string(a[0]) + "," + std::to_string(a[1]) + "," +
               std::to_string(a[2]);
      case Kind::UW: return "uw:" + std::to_string(n) + ":" + std::to_string(k);
      case Kind::UZ: return "uz:" + std::to_string(n) + ":" + std::to_string(k);
    }
    return {};
  }
};

/// cm:<walk>:<a,b,c> | uw:<n>:<k> | uz:<n>:<k>
inline BasisLabel parse_basis_label(std::string_view s) {
  auto split = [](std::string_view t, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= t.size(); ++i)
      if (i == t.size() || t[i] == sep) {
        parts.push_back(t.substr(start, i - start));
        start = i + 1;
      }
    return parts;
  };
  const auto parts = split(s, ':');
  if (parts.size() != 3) throw ParseError("basis label must have three ':'-separated fields: '" + std::string(s) + "'");
  if (parts[0] == "cm") {
    const auto ex = split(parts[2], ',');
    if (ex.size() != 3) throw ParseError("cluster monomial exponent must be a,b,c");
    std::array<int, 3> a{};
    for (std::size_t i = 0; i < 3; ++i) {
      a[i] = detail::parse_int(ex[i], "cluster monomial exponent");
      if (a[i] < 0) throw ParseError("cluster monomial exponents must be nonnegative");
    }
    return BasisLabel::cluster(parse_walk(parts[1]), a);
  }
  if (parts[0] == "uw" || parts[0] == "uz") {
    const int n = detail::parse_int(parts[1], "u index");
    const int k = detail::parse_int(parts[2], "power");
    if (n < 1 || k < 0) throw ParseError("uw/uz labels need n >= 1 and k >= 0");
    return parts[0] == "uw" ? BasisLabel::uw(n, k) : BasisLabel::uz(n, k);
  }
  throw ParseError("unknown basis label kind '" + std::string(parts[0]) + "'");
}

/// Expansion of a label in the torus of the registry's root.
inline Elem expand(const BasisLabel& label, Registry& reg) {
  if (label.kind == BasisLabel::Kind::ClusterMonomial) {
    const QuantumSeed& s = reg.seed_at(label.walk);
    return eval_cluster_monomial(s, {label.a[0], label.a[1], label.a[2], 0, 0, 0});
  }
  Elem r = reg.u(label.n);
  const Elem& g = label.kind == BasisLabel::Kind::UW ? reg.w() : reg.z();
  for (int i = 0; i < label.k; ++i) r = r * g;
  return r;
}

inline bool check_bar_invariant(const Elem& e) { return e.bar() == e; }
inline bool check_bar_invariant(const BasisLabel& label, Registry& reg) { return check_bar_invariant(expand(label, reg)); }

/// Registries rooted at several seeds, created on demand.
class RootSet {
 public:
  explicit RootSet(Window window = {}) : window_(window) {}

  Registry& at(const std::vector<int>& walk) {
    std::lock_guard lock(mu_);
    const std::string key = format_walk(walk);
    auto it = regs_.find(key);
    if (it == regs_.end()) it = regs_.emplace(key, std::make_unique<Registry>(reroot(walk, window_))).first;
    return *it->second;
  }

  const Window& window() const { return window_; }

 private:
  Window window_;
  std::mutex mu_;
  std::map<std::string, std::unique_ptr<Registry>> regs_;
};

inline std::vector<std::vector<int>> default_positivity_roots() { return {{}, {1}, {2}, {3, 2}}; }

struct PositivityReport {
  BasisLabel label;
  std::vector<std::vector<int>> clusters_checked;
  bool positive = true;
  struct Witness {
    std::vector<int> root;
    Exp6 exp{};
    int v = 0;
    Integer coeff;
  };
  std::optional<Witness> witness;

  Json to_json() const {
    Json roots = Json::array();
    for (const auto& w : clusters_checked) roots.push_back(format_walk(w));
    Json j = {{"label", label.to_string()}, {"clusters_checked", roots}, {"positive", positive}};
    if (witness) {
      Json exp = Json::array();
      for (int x : witness->exp) exp.push_back(x);
      j["witness"] = {{"root", format_walk(witness->root)}, {"exp", exp}, {"v", witness->v}, {"c", witness->coeff.str()}};
    }
    return j;
  }
};

/// Positivity of an already expanded element at one root.
inline std::optional<PositivityReport::Witness> negative_witness_at(const Elem& e, const std::vector<int>& root) {
  if (auto w = e.negative_witness()) return PositivityReport::Witness{root, w->first, w->second.first, w->second.second};
  return std::nullopt;
}

inline PositivityReport check_positivity(const BasisLabel& label, RootSet& roots,
                                         const std::vector<std::vector<int>>& walks) {
  PositivityReport r{label, walks, true, std::nullopt};
  for (const auto& w : walks) {
    if (auto wit = negative_witness_at(expand(label, roots.at(w)), w)) {
      r.positive = false;
      r.witness = std::move(wit);
      break;
    }
  }
  return r;
}

struct LeadingReport {
  bool distinct = true;
  std::vector<std::pair<BasisLabel, BasisLabel>> collisions;
};

/// Compares lex-maximal exponents (all six coordinates).
inline LeadingReport check_leading_distinct(const std::vector<BasisLabel>& labels, Registry& reg) {
  LeadingReport rep;
  std::map<Exp6, BasisLabel> seen;
  for (const auto& l : labels) {
    const Elem e = expand(l, reg);
    if (e.is_zero()) continue;
    auto [it, fresh] = seen.emplace(e.leading().exp, l);
    if (!fresh) {
      rep.distinct = false;
      rep.collisions.emplace_back(it->second, l);
    }
  }
  return rep;
}

struct BasisWindow {
  int depth = 3;
  int exp_cap = 2;
  int n_max = 6;
  int k_max = 3;
};

/// All walks of length <= depth without immediate repetition.
inline std::vector<std::vector<int>> walks_up_to(int depth) {
  std::vector<std::vector<int>> out{{}};
  for (std::size_t start = 0, len = 0; static_cast<int>(len) < depth; ++len) {
    const std::size_t end = out.size();
    for (std::size_t i = start; i < end; ++i)
      for (int k = 1; k <= 3; ++k)
        if (out[i].empty() || out[i].back() != k) {
          auto w = out[i];
          w.push_back(k);
          out.push_back(std::move(w));
        }
    start = end;
  }
  return out;
}

/// Cluster monomials over the walks, then u_n w^k and u_n z^k; a label whose
/// expansion at the registry's root equals an earlier one is dropped.
inline std::vector<BasisLabel> enumerate_basis(const BasisWindow& win, Registry& reg) {
  std::vector<BasisLabel> out;
  std::set<std::string> seen;
  auto offer = [&](BasisLabel l) {
    if (seen.insert(expand(l, reg).to_string()).second) out.push_back(std::move(l));
  };
  for (const auto& w : walks_up_to(win.depth))
    for (int a = 0; a <= win.exp_cap; ++a)
      for (int b = 0; b <= win.exp_cap; ++b)
        for (int c = 0; c <= win.exp_cap; ++c) offer(BasisLabel::cluster(w, {a, b, c}));
  for (int n = 1; n <= win.n_max; ++n)
    for (int k = 0; k <= win.k_max; ++k) offer(BasisLabel::uw(n, k));
  for (int n = 1; n <= win.n_max; ++n)
    for (int k = 0; k <= win.k_max; ++k) offer(BasisLabel::uz(n, k));
  return out;
}

// ---------------------------------------------------------------------------
// Structure constants for the products covered by closed formulas.

struct DecompositionTerm {
  QCoefficient coeff;
  std::array<int, 3> frozen{};
  BasisLabel label;
};

struct Decomposition {
  bool supported = false;
  std::string reason;
  std::string family;
  std::string formula;
  std::vector<DecompositionTerm> terms;
  bool nonnegative = true;
  bool verified = false;

  Json to_json() const {
    if (!supported) return {{"unsupported", true}, {"reason", reason}};
    Json ts = Json::array();
    for (const auto& t : terms)
      ts.push_back({{"coeff", qca::to_json(t.coeff)},
                    {"coeff_text", t.coeff.to_string()},
                    {"frozen", {t.frozen[0], t.frozen[1], t.frozen[2]}},
                    {"label", t.label.to_string()}});
    return {{"unsupported", false}, {"family", family},          {"formula", formula},
            {"terms", ts},          {"nonnegative", nonnegative}, {"verified", verified}};
  }
};

namespace detail {

inline bool contains(const std::vector<int>& v, int x) { return std::find(v.begin(), v.end(), x) != v.end(); }

/// The label of the cluster monomial in the given variables, using the
/// seed with the shortest walk among those that contain all of them.
inline std::optional<BasisLabel> cluster_label(const std::map<int, int>& xs, int w_pow, int z_pow) {
  if (w_pow > 0 && z_pow > 0) return std::nullopt;
  std::vector<std::pair<std::vector<int>, std::array<int, 3>>> cands;
  auto try_seed = [&](std::vector<int> walk, std::array<int, 3> members, int middle_pow, bool cyc) {
    std::array<int, 3> a{};
    for (const auto& [idx, pow] : xs) {
      const auto it = std::find(members.begin(), members.end(), idx);
      if (it == members.end() || (cyc && it == members.begin() + 1)) return;
      a[static_cast<std::size_t>(slot_of(idx) - 1)] = pow;
    }
    if (cyc) a[static_cast<std::size_t>(slot_of(members[1]) - 1)] = middle_pow;
    cands.emplace_back(std::move(walk), a);
  };
  if (w_pow == 0 && z_pow == 0) {
    if (xs.empty()) return BasisLabel::cluster({}, {0, 0, 0});
    const int lo = xs.begin()->first, hi = xs.rbegin()->first;
    for (int m = hi - 2; m <= lo; ++m) try_seed(sigma_walk(m), {m, m + 1, m + 2}, 0, false);
  } else {
    const bool odd = w_pow > 0;
    const int pow = odd ? w_pow : z_pow;
    std::vector<int> ms;
    if (xs.empty()) ms.push_back(odd ? 1 : 0);
    for (const auto& [idx, p] : xs) {
      ms.push_back(idx);
      ms.push_back(idx - 2);
    }
    for (int m : ms)
      if ((m % 2 != 0) == odd) try_seed(cyc_walk(m), {m, m + 1, m + 2}, pow, true);
  }
  if (cands.empty()) return std::nullopt;
  std::stable_sort(cands.begin(), cands.end(), [](const auto& x, const auto& y) { return x.first.size() < y.first.size(); });
  return BasisLabel::cluster(cands.front().first, cands.front().second);
}

/// Basis label and frozen part of one ordered product of generators.
inline std::optional<std::pair<BasisLabel, std::array<int, 3>>> classify(const Product& p) {
  std::map<int, int> xs;
  std::array<int, 3> frozen{};
  int w_pow = 0, z_pow = 0;
  std::vector<int> us;
  for (const auto& f : p.factors)
    for (const auto& n : f.group) {
      const int pw = static_cast<int>(f.power);
      switch (n.kind) {
        case ElementName::Kind::X: xs[n.index] += pw; break;
        case ElementName::Kind::W: w_pow += pw; break;
        case ElementName::Kind::Z: z_pow += pw; break;
        case ElementName::Kind::U:
          if (n.index > 0)
            for (int i = 0; i < pw; ++i) us.push_back(n.index);
          break;
        case ElementName::Kind::Y:
          for (std::size_t i = 0; i < 3; ++i) frozen[i] += pw * n.frozen[i];
          break;
      }
    }
  if (us.size() > 1) return std::nullopt;
  if (us.size() == 1) {
    if (!xs.empty() || (w_pow > 0 && z_pow > 0)) return std::nullopt;
    return std::pair{z_pow > 0 ? BasisLabel::uz(us[0], z_pow) : BasisLabel::uw(us[0], w_pow), frozen};
  }
  if (auto l = cluster_label(xs, w_pow, z_pow)) return std::pair{*l, frozen};
  return std::nullopt;
}

inline std::string generator_key(const ElementName& a, const ElementName& b) {
  return (Expr(a) * Expr(b)).to_string();
}

/// Closed formulas whose left side is a product of two generators.
inline std::vector<Check> product_formulas(const ElementName& a, const ElementName& b, const Window& win) {
  int reach = 2;
  for (const auto& n : {a, b}) reach = std::max(reach, std::abs(n.index) + 3);
  std::vector<Check> out;
  Window wide = win;
  wide.cover(-1000000, 1000000);
  wide.u_max = 1000000;
  auto take = [&](CheckList l) {
    for (auto& c : l.checks)
      if (c.formula) out.push_back(std::move(c));
  };
  for (int n = 1; n <= reach; ++n)
    for (int p = 1; p <= n; ++p) {
      if (n > p) out.push_back(formula_check("unup:n>p", {{"n", n}, {"p", p}}, U(n) * U(p), U(n + p) + ydiag(p) * U(n - p)));
      if (n == p) out.push_back(formula_check("unup:n=p", {{"n", n}, {"p", p}}, U(n) * U(p), U(2 * n) + 2 * ydiag(n)));
    }
  for (int n = 1; n <= reach; ++n) {
    out.push_back(formula_check("unw=wun", {{"n", n}}, U(n) * Wv(), Wv() * U(n)));
    out.push_back(formula_check("unz=zun", {{"n", n}}, U(n) * Zv(), Zv() * U(n)));
  }
  CheckList u1 = un_action_checks(1, reach, wide);
  take(std::move(u1));
  CheckList un = un_action_checks(reach, reach, wide);
  std::erase_if(un.checks, [](const Check& c) { return c.family.rfind("u1X", 0) == 0; });
  take(std::move(un));
  take(product_checks(reach, reach, wide));
  take(exchange_checks(reach, wide));
  return out;
}

}  // namespace detail

/// Writes a*b as a combination of basis labels via the closed product
/// formulas (or the reversed formula for the opposite order), and checks
/// the result against the direct product.
inline Decomposition product_decompose(const ElementName& a, const ElementName& b, Registry& reg) {
  Decomposition d;
  for (const auto& n : {a, b})
    if (n.kind == ElementName::Kind::Y) {
      d.reason = "frozen monomials are coefficients, not basis elements";
      return d;
    }
  if (a.kind == ElementName::Kind::X && b.kind == ElementName::Kind::X && std::abs(a.index - b.index) <= 2) {
    d.reason = "both factors lie in one cluster; the product is a cluster monomial";
    return d;
  }
  const std::string direct = detail::generator_key(a, b);
  const std::string swapped = detail::generator_key(b, a);
  std::optional<std::pair<Expr, Expr>> found;
  for (const auto& c : detail::product_formulas(a, b, reg.window())) {
    const std::string lhs = c.formula->first.to_string();
    if (lhs == direct) {
      found = c.formula;
    } else if (lhs == swapped) {
      found = std::pair{c.formula->first.reversed(), c.formula->second.reversed()};
    } else {
      continue;
    }
    d.family = c.family;
    break;
  }
  if (!found) {
    d.reason = "no closed product formula covers " + direct;
    return d;
  }
  d.supported = true;
  d.formula = found->first.to_string() + " = " + found->second.to_string();

  const Elem lhs = reg.eval(found->first);
  std::map<std::pair<BasisLabel, std::array<int, 3>>, QCoefficient> acc;
  for (const auto& p : found->second.terms()) {
    auto cls = detail::classify(p);
    if (!cls) throw DecompositionMismatch("term of " + d.formula + " is not a basis element times a frozen monomial");
    Expr bare;
    {
      Expr one(1);
      bare = one;
      for (const auto& f : p.factors) bare = bare * Expr::group(f.group, f.power);
    }
    const Elem prod = reg.eval(bare);
    const Elem target = reg.y(cls->second[0], cls->second[1], cls->second[2]) * expand(cls->first, reg);
    if (prod.is_zero() || target.is_zero() || prod.leading().exp != target.leading().exp)
      throw DecompositionMismatch("product term does not match its basis label " + cls->first.to_string());
    auto ratio = prod.leading().coeff.divide_exact(target.leading().coeff);
    if (!ratio || *ratio * target != prod)
      throw DecompositionMismatch("product term is not a scalar multiple of " + cls->first.to_string());
    acc[*cls] += p.coeff * *ratio;
  }
  Elem total(reg.form());
  for (const auto& [key, c] : acc) {
    if (c.is_zero()) continue;
    d.terms.push_back({c, key.second, key.first});
    if (!c.all_nonnegative()) d.nonnegative = false;
    total += c * (reg.y(key.second[0], key.second[1], key.second[2]) * expand(key.first, reg));
  }
  if (total != lhs) throw DecompositionMismatch("decomposition of " + direct + " does not reproduce the product");
  d.verified = true;
  return d;
}

// ---------------------------------------------------------------------------
// The basis suite.

/// Generator pairs whose products are exercised by the basis suite.
inline std::vector<std::pair<ElementName, ElementName>> covered_product_pairs(int n_max, int x_lo, int x_hi) {
  std::vector<std::pair<ElementName, ElementName>> out;
  for (int n = 1; n <= n_max; ++n)
    for (int p = 1; p <= n_max; ++p) out.emplace_back(ElementName::u(n), ElementName::u(p));
  for (int n = 1; n <= n_max; ++n) {
    out.emplace_back(ElementName::u(n), ElementName::w());
    out.emplace_back(ElementName::z(), ElementName::u(n));
    for (int m = x_lo; m <= x_hi; ++m) {
      out.emplace_back(ElementName::u(n), ElementName::x(m));
      out.emplace_back(ElementName::x(m), ElementName::u(n));
    }
  }
  for (int a = x_lo; a <= x_hi; ++a)
    for (int b = x_lo; b <= x_hi; ++b)
      if (std::abs(a - b) > 2) out.emplace_back(ElementName::x(a), ElementName::x(b));
  return out;
}

inline SuiteReport verify_basis(RootSet& roots, const BasisWindow& win, const std::vector<std::vector<int>>& walks,
                                int jobs = 1) {
  Registry& home = roots.at({});
  const std::vector<BasisLabel> labels = enumerate_basis(win, home);
  CheckList list;
  auto add = [&](std::string fam, Params p, std::function<IdentityInstance(Registry&)> fn) {
    list.checks.push_back({std::move(fam), std::move(p), std::nullopt, std::move(fn)});
  };
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const BasisLabel l = labels[i];
    const Params p{{"label", static_cast<int>(i)}};
    add("bar-invariant", p, [l](Registry& reg) {
      IdentityInstance r;
      r.pass = check_bar_invariant(l, reg);
      if (!r.pass) r.note = l.to_string();
      return r;
    });
    add("positive", p, [l, &roots, walks](Registry&) {
      IdentityInstance r;
      const PositivityReport rep = check_positivity(l, roots, walks);
      r.pass = rep.positive;
      if (!r.pass) r.note = rep.to_json().dump();
      return r;
    });
    add("classical-nonnegative", p, [l](Registry& reg) {
      IdentityInstance r;
      r.pass = !expand(l, reg).specialize_classical().negative_witness();
      if (!r.pass) r.note = l.to_string();
      return r;
    });
  }
  add("leading-distinct", {{"labels", static_cast<int>(labels.size())}}, [&labels](Registry& reg) {
    IdentityInstance r;
    const LeadingReport rep = check_leading_distinct(labels, reg);
    r.pass = rep.distinct;
    for (const auto& [x, y] : rep.collisions) r.note += x.to_string() + " ~ " + y.to_string() + "; ";
    return r;
  });
  const auto pairs = covered_product_pairs(win.n_max, -6, 8);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto [a, b] = pairs[i];
    add("product", {{"pair", static_cast<int>(i)}}, [a, b](Registry& reg) {
      IdentityInstance r;
      try {
        const Decomposition d = product_decompose(a, b, reg);
        r.pass = d.supported && d.verified && d.nonnegative;
        if (!d.supported) r.note = a.to_string() + " * " + b.to_string() + ": " + d.reason;
        else if (!d.nonnegative) r.note = d.formula;
      } catch (const DecompositionMismatch& e) {
        r.note = a.to_string() + " * " + b.to_string() + ": " + e.what();
      }
      return r;
    });
  }
  Json range = {{"depth", win.depth}, {"exp_cap", win.exp_cap}, {"n", win.n_max}, {"k", win.k_max}};
  Json rts = Json::array();
  for (const auto& w : walks) rts.push_back(format_walk(w));
  range["roots"] = rts;
  SuiteReport rep = run_checks("basis", range, list, home, jobs);
  // Label-indexed failures are easier to read with the label spelled out.
  for (auto& f : rep.failures)
    if (!f.params.empty() && f.params[0].first == "label" && f.note.empty())
      f.note = labels[static_cast<std::size_t>(f.params[0].second)].to_string();
  return rep;
}

}  // namespace qca
