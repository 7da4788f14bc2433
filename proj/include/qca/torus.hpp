#pragma once

#include <algorithm>
#include <climits>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <type_traits>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qca/error.hpp"
#include "qca/qcoefficient.hpp"
#include "qca/skew_form.hpp"

namespace qca {

namespace detail {

template <std::size_t M>
struct ExponentHash {
  std::size_t operator()(const Exponent<M>& e) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (int x : e) {
      h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(x)) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

/// Dense accumulator for one output exponent, indexed by v-exponent.
template <typename T>
struct DenseAcc {
  int lo = INT_MAX;
  std::vector<T> vals;

  void add(int e, const T& x) {
    if (vals.empty()) {
      lo = e;
      vals.assign(1, x);
      return;
    }
    if (e < lo) {
      vals.insert(vals.begin(), static_cast<std::size_t>(lo - e), T(0));
      lo = e;
    } else if (e >= lo + static_cast<int>(vals.size())) {
      vals.resize(static_cast<std::size_t>(e - lo + 1), T(0));
    }
    vals[static_cast<std::size_t>(e - lo)] += x;
  }

  /// Grows the window so that [from, to] is addressable; returns the
  /// offset of `from` in vals.
  std::size_t cover(int from, int to) {
    if (vals.empty()) {
      lo = from;
      vals.assign(static_cast<std::size_t>(to - from + 1), T(0));
    } else {
      if (from < lo) {
        vals.insert(vals.begin(), static_cast<std::size_t>(lo - from), T(0));
        lo = from;
      }
      if (to >= lo + static_cast<int>(vals.size())) vals.resize(static_cast<std::size_t>(to - lo + 1), T(0));
    }
    return static_cast<std::size_t>(from - lo);
  }
};

/// A v-polynomial as a strided dense array: coefficient of v^{lo + stride*i}
/// is vals[i]. Stride 2 captures the usual single-parity coefficients.
template <typename T>
struct Packed {
  int lo = 0;
  int hi = 0;
  int stride = 1;
  std::vector<T> vals;

  template <typename Conv>
  static Packed from(const QCoefficient& c, Conv conv) {
    Packed p;
    const auto& ts = c.terms();
    p.lo = ts.front().first;
    p.hi = ts.back().first;
    p.stride = 2;
    for (const auto& t : ts)
      if ((t.first - p.lo) % 2 != 0) p.stride = 1;
    p.vals.assign(static_cast<std::size_t>((p.hi - p.lo) / p.stride + 1), T(0));
    for (const auto& [e, x] : ts) p.vals[static_cast<std::size_t>((e - p.lo) / p.stride)] = conv(x);
    return p;
  }
};

/// out[i*sa + j*sb] += a[i] * b[j]
template <typename T>
inline void convolve_into(T* out, const Packed<T>& a, const Packed<T>& b, bool negate = false) {
  const std::size_t na = a.vals.size(), nb = b.vals.size();
  const std::size_t sa = static_cast<std::size_t>(a.stride), sb = static_cast<std::size_t>(b.stride);
  for (std::size_t i = 0; i < na; ++i) {
    const T x = negate ? T(-a.vals[i]) : a.vals[i];
    if (x == T(0)) continue;
    T* row = out + i * sa;
    const T* bv = b.vals.data();
    for (std::size_t j = 0; j < nb; ++j) row[j * sb] += x * bv[j];
  }
}

}  // namespace detail

/// Element of the based quantum torus T(Lambda): a finite sum of
/// coefficient * X^c with X^c X^d = q^{Lambda(c,d)/2} X^{c+d}.
///
/// Terms are sorted by descending lexicographic exponent and carry no zero
/// coefficients. Every element references the form of its torus; combining
/// elements of different tori (compared by identity) throws FormMismatch.
template <std::size_t M>
class Element {
 public:
  using Exp = Exponent<M>;
  struct Term {
    Exp exp;
    QCoefficient coeff;
    friend bool operator==(const Term&, const Term&) = default;
  };

  Element() = default;
  explicit Element(FormPtr<M> form) : form_(std::move(form)) {}

  static Element monomial(FormPtr<M> form, const Exp& c, QCoefficient coeff = 1) {
    Element r(std::move(form));
    if (!coeff.is_zero()) r.terms_.push_back({c, std::move(coeff)});
    return r;
  }
  static Element scalar(FormPtr<M> form, QCoefficient coeff) {
    return monomial(std::move(form), Exp{}, std::move(coeff));
  }
  static Element one(FormPtr<M> form) { return scalar(std::move(form), 1); }

  /// Arbitrary terms; duplicates are merged and zeros dropped.
  static Element from_terms(FormPtr<M> form, std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return b.exp < a.exp; });
    Element r(std::move(form));
    for (auto& t : terms) {
      if (!r.terms_.empty() && r.terms_.back().exp == t.exp) {
        r.terms_.back().coeff += t.coeff;
        if (r.terms_.back().coeff.is_zero()) r.terms_.pop_back();
      } else if (!t.coeff.is_zero()) {
        r.terms_.push_back(std::move(t));
      }
    }
    return r;
  }

  const FormPtr<M>& form() const { return form_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Number of distinct exponents.
  std::size_t size() const { return terms_.size(); }
  /// Number of (exponent, v-power) pairs.
  std::size_t flat_size() const {
    std::size_t n = 0;
    for (const auto& t : terms_) n += t.coeff.size();
    return n;
  }

  const Term& leading() const { return terms_.front(); }

  QCoefficient coefficient(const Exp& c) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), c, [](const Term& t, const Exp& e) { return e < t.exp; });
    if (it != terms_.end() && it->exp == c) return it->coeff;
    return {};
  }

  bool same_torus(const Element& o) const { return form_ == o.form_; }

  friend bool operator==(const Element& a, const Element& b) {
    return a.form_ == b.form_ && a.terms_ == b.terms_;
  }

  Element operator-() const {
    Element r = *this;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
  }

  Element& operator+=(const Element& o) { return *this = combine(*this, o, false); }
  Element& operator-=(const Element& o) { return *this = combine(*this, o, true); }
  friend Element operator+(const Element& a, const Element& b) { return combine(a, b, false); }
  friend Element operator-(const Element& a, const Element& b) { return combine(a, b, true); }

  friend Element operator*(const Element& a, const Element& b) { return multiply(a, b); }
  Element& operator*=(const Element& o) { return *this = multiply(*this, o); }

  /// Scalars are central.
  friend Element operator*(const QCoefficient& s, const Element& a) {
    Element r(a.form_);
    if (s.is_zero()) return r;
    r.terms_.reserve(a.terms_.size());
    for (const auto& t : a.terms_) r.terms_.push_back({t.exp, s * t.coeff});
    return r;
  }

  /// (coeff * X^c) * this, without the general product machinery.
  Element left_monomial_mul(const Exp& c, const QCoefficient& coeff) const {
    Element r(form_);
    if (coeff.is_zero()) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
      r.terms_.push_back({c + t.exp, (coeff * t.coeff).shifted(form_->pair(c, t.exp))});
    }
    return r;
  }

  Element pow(unsigned k) const {
    Element r = one(form_);
    for (unsigned i = 0; i < k; ++i) r = r * *this;
    return r;
  }

  /// Z-linear bar involution: q^{l/2} X^c -> q^{-l/2} X^c.
  Element bar() const {
    Element r(form_);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.exp, t.coeff.bar()});
    return r;
  }

  /// Evaluation at q = 1; coefficients become constants.
  Element specialize_classical() const {
    Element r(form_);
    for (const auto& t : terms_) {
      Integer c = t.coeff.at_one();
      if (c != 0) r.terms_.push_back({t.exp, QCoefficient(std::move(c))});
    }
    return r;
  }

  /// First (exponent, v-exponent, coefficient) with a negative integer, if any.
  std::optional<std::pair<Exp, QCoefficient::Term>> negative_witness() const {
    for (const auto& t : terms_)
      for (const auto& vt : t.coeff.terms())
        if (vt.second < 0) return std::make_pair(t.exp, vt);
    return std::nullopt;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      if (i) out += " + ";
      const auto& t = terms_[i];
      const bool unit_exp = t.exp == Exp{};
      if (t.coeff.is_one() && !unit_exp) {
        out += "X^" + qca::to_string(t.exp);
      } else {
        out += t.coeff.size() == 1 ? t.coeff.to_string() : "(" + t.coeff.to_string() + ")";
        if (!unit_exp) out += "*X^" + qca::to_string(t.exp);
      }
    }
    return out;
  }

 private:
  static void check_same(const Element& a, const Element& b) {
    if (a.form_ != b.form_) throw FormMismatch();
  }

  static Element combine(const Element& a, const Element& b, bool subtract) {
    check_same(a, b);
    Element r(a.form_);
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      if (j == b.terms_.size() || (i < a.terms_.size() && b.terms_[j].exp < a.terms_[i].exp)) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (i == a.terms_.size() || a.terms_[i].exp < b.terms_[j].exp) {
        r.terms_.push_back({b.terms_[j].exp, subtract ? -b.terms_[j].coeff : b.terms_[j].coeff});
        ++j;
      } else {
        QCoefficient c = subtract ? a.terms_[i].coeff - b.terms_[j].coeff : a.terms_[i].coeff + b.terms_[j].coeff;
        if (!c.is_zero()) r.terms_.push_back({a.terms_[i].exp, std::move(c)});
        ++i;
        ++j;
      }
    }
    return r;
  }

  template <typename T, typename Conv>
  static Element multiply_with(const Element& a, const Element& b, Conv conv) {
    auto pack = [&](const Element& x) {
      std::vector<detail::Packed<T>> out;
      out.reserve(x.terms_.size());
      for (const auto& t : x.terms_) out.push_back(detail::Packed<T>::from(t.coeff, conv));
      return out;
    };
    const auto pa = pack(a);
    const auto pb = pack(b);
    std::vector<Exp> lam_b(b.terms_.size());
    for (std::size_t j = 0; j < b.terms_.size(); ++j) lam_b[j] = a.form_->apply(b.terms_[j].exp);

    // Pass 1: output slot and v-range of every pair of terms.
    struct Slot {
      Exp exp;
      int lo = INT_MAX;
      int hi = INT_MIN;
      std::vector<T> vals;
    };
    std::vector<Slot> slots;
    std::unordered_map<Exp, std::size_t, detail::ExponentHash<M>> index;
    index.reserve(a.terms_.size() * b.terms_.size());
    struct Pair {
      std::size_t slot;
      int base;
    };
    std::vector<Pair> pairs(a.terms_.size() * b.terms_.size());
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
      const Exp& ea = a.terms_[i].exp;
      for (std::size_t j = 0; j < b.terms_.size(); ++j) {
        int twist = 0;
        for (std::size_t k = 0; k < M; ++k) twist += ea[k] * lam_b[j][k];
        const Exp e = ea + b.terms_[j].exp;
        auto [it, fresh] = index.try_emplace(e, slots.size());
        if (fresh) slots.push_back({e, INT_MAX, INT_MIN, {}});
        Slot& sl = slots[it->second];
        const int base = pa[i].lo + pb[j].lo + twist;
        sl.lo = std::min(sl.lo, base);
        sl.hi = std::max(sl.hi, pa[i].hi + pb[j].hi + twist);
        pairs[i * b.terms_.size() + j] = {it->second, base};
      }
    }
    for (auto& sl : slots) sl.vals.assign(static_cast<std::size_t>(sl.hi - sl.lo + 1), T(0));

    // Pass 2: strided convolutions into the preallocated slots.
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      for (std::size_t j = 0; j < b.terms_.size(); ++j) {
        const Pair& p = pairs[i * b.terms_.size() + j];
        Slot& sl = slots[p.slot];
        detail::convolve_into(sl.vals.data() + (p.base - sl.lo), pa[i], pb[j]);
      }

    Element r(a.form_);
    r.terms_.reserve(slots.size());
    for (auto& sl : slots) {
      std::vector<QCoefficient::Term> ts;
      for (std::size_t k = 0; k < sl.vals.size(); ++k) {
        if (sl.vals[k] != T(0)) {
          if constexpr (std::is_same_v<T, Integer>) {
            ts.emplace_back(sl.lo + static_cast<int>(k), std::move(sl.vals[k]));
          } else {
            ts.emplace_back(sl.lo + static_cast<int>(k), detail::to_integer(static_cast<__int128>(sl.vals[k])));
          }
        }
      }
      if (!ts.empty()) r.terms_.push_back({sl.exp, QCoefficient::from_sorted(std::move(ts))});
    }
    std::sort(r.terms_.begin(), r.terms_.end(), [](const Term& x, const Term& y) { return y.exp < x.exp; });
    return r;
  }

  /// Largest |coefficient| if every coefficient is below 2^50, else nullopt.
  static std::optional<long long> max_small_coefficient(const Element& x) {
    long long m = 0;
    for (const auto& t : x.terms_) {
      if (!t.coeff.small()) return std::nullopt;
      for (const auto& vc : t.coeff.terms()) m = std::max(m, static_cast<long long>(abs(vc.second)));
    }
    return m;
  }

  static Element multiply(const Element& a, const Element& b) {
    check_same(a, b);
    if (a.is_zero() || b.is_zero()) return Element(a.form_);
    const auto ma = max_small_coefficient(a);
    const auto mb = max_small_coefficient(b);
    if (ma && mb) {
      // Each output coefficient collects at most min(flat sizes) products.
      const auto bound = static_cast<__int128>(*ma) * *mb * static_cast<__int128>(std::min(a.flat_size(), b.flat_size()));
      const auto as_ll = [](const Integer& c) { return static_cast<long long>(c); };
      if (bound < (static_cast<__int128>(1) << 62)) return multiply_with<long long>(a, b, as_ll);
      if (bound < (static_cast<__int128>(1) << 126))
        return multiply_with<__int128>(a, b, [&](const Integer& c) { return static_cast<__int128>(as_ll(c)); });
    }
    return multiply_with<Integer>(a, b, [](const Integer& c) { return c; });
  }

  FormPtr<M> form_;
  std::vector<Term> terms_;
};

/// X^c X^d = q^{Lambda(c,d)/2} X^{c+d}
template <std::size_t M>
Element<M> monomial_mul(const Exponent<M>& c, const Exponent<M>& d, const FormPtr<M>& form) {
  return Element<M>::monomial(form, c + d, QCoefficient::monomial(form->pair(c, d)));
}

struct DivisionOptions {
  /// Step cap is cap_factor * |A| * max(|B|, 1).
  std::size_t cap_factor = 16;
};

namespace detail {

/// Division with 128-bit dense remainders, for a divisor whose leading
/// coefficient is +-v^d. Returns nullopt when the inputs or intermediate
/// values leave the safe range; the caller then uses the generic path.
template <std::size_t M>
std::optional<Element<M>> left_divide_small(const Element<M>& a, const Element<M>& b, std::size_t cap) {
  using Term = typename Element<M>::Term;
  using Exp = Exponent<M>;
  // Quotient coefficients below 2^60 times divisor coefficients below 2^20
  // leave 2^47 accumulations of headroom per slot.
  constexpr __int128 kLimit = static_cast<__int128>(1) << 60;
  const auto small = [](const Element<M>& x) {
    return std::all_of(x.terms().begin(), x.terms().end(), [](const Term& t) { return t.coeff.small(); });
  };
  const auto tiny = [](const Element<M>& x) {
    for (const auto& t : x.terms())
      for (const auto& vc : t.coeff.terms())
        if (abs(vc.second) >= (1 << 20)) return false;
    return true;
  };
  const Term& lead_b = b.leading();
  if (lead_b.coeff.size() != 1 || abs(lead_b.coeff.terms()[0].second) != 1 || !small(a) || !tiny(b))
    return std::nullopt;
  const int lead_v = lead_b.coeff.terms()[0].first;
  const int lead_sign = lead_b.coeff.terms()[0].second > 0 ? 1 : -1;
  const auto& form = a.form();

  struct Flat {
    Exp exp;
    Exp lam;
    Packed<__int128> coeff;
  };
  const auto conv = [](const Integer& c) { return static_cast<__int128>(static_cast<long long>(c)); };
  std::vector<Flat> fb;
  for (const auto& t : b.terms()) fb.push_back({t.exp, form->apply(t.exp), Packed<__int128>::from(t.coeff, conv)});
  auto dot = [](const Exp& x, const Exp& y) {
    int s = 0;
    for (std::size_t k = 0; k < M; ++k) s += x[k] * y[k];
    return s;
  };

  std::map<Exp, DenseAcc<__int128>, std::greater<>> rem;
  for (const auto& t : a.terms()) {
    auto& acc = rem[t.exp];
    for (const auto& [v, c] : t.coeff.terms()) acc.add(v, conv(c));
  }
  std::vector<Term> quotient;
  std::size_t steps = 0;
  while (!rem.empty()) {
    auto lead = rem.begin();
    std::vector<QCoefficient::Term> ts;
    const Exp qe = lead->first - lead_b.exp;
    const int shift = lead_v + dot(qe, fb[0].lam);
    for (std::size_t k = 0; k < lead->second.vals.size(); ++k) {
      const __int128 c = lead->second.vals[k] * lead_sign;
      if (c == 0) continue;
      if (c >= kLimit || -c >= kLimit) return std::nullopt;
      ts.emplace_back(lead->second.lo + static_cast<int>(k) - shift, to_integer(c));
    }
    if (ts.empty()) {
      rem.erase(lead);
      continue;
    }
    if (++steps > cap) throw NotDivisible("leading-term elimination exceeded the iteration cap");
    QCoefficient qc = QCoefficient::from_sorted(std::move(ts));
    const Packed<__int128> q = Packed<__int128>::from(qc, conv);
    for (const auto& f : fb) {
      const int tw = dot(qe, f.lam);
      auto& acc = rem[qe + f.exp];
      const std::size_t off = acc.cover(q.lo + f.coeff.lo + tw, q.hi + f.coeff.hi + tw);
      convolve_into(acc.vals.data() + off, q, f.coeff, true);
    }
    quotient.push_back({qe, std::move(qc)});
  }
  return Element<M>::from_terms(form, std::move(quotient));
}

}  // namespace detail

/// Q with A = Q * B exactly (B is the right factor), by greedy elimination
/// of leading terms under the lexicographic order.
template <std::size_t M>
Element<M> left_divide_exact(const Element<M>& a, const Element<M>& b, DivisionOptions opts = {}) {
  using Term = typename Element<M>::Term;
  if (!a.same_torus(b)) throw FormMismatch();
  if (b.is_zero()) throw DivisionByZero();
  const auto& form = a.form();
  const Term& lead_b = b.leading();
  const std::size_t cap = opts.cap_factor * std::max<std::size_t>(a.size(), 1) * std::max<std::size_t>(b.size(), 1);
  if (auto fast = detail::left_divide_small(a, b, cap)) return std::move(*fast);

  // The remainder lives in an ordered map so that each elimination step
  // only touches |B| entries.
  std::map<Exponent<M>, QCoefficient, std::greater<>> rem;
  for (const auto& t : a.terms()) rem.emplace_hint(rem.end(), t.exp, t.coeff);
  std::vector<Term> quotient;
  std::size_t steps = 0;
  while (!rem.empty()) {
    if (++steps > cap) throw NotDivisible("leading-term elimination exceeded the iteration cap");
    const auto lead_r = rem.begin();
    const auto qe = lead_r->first - lead_b.exp;
    const QCoefficient denom = lead_b.coeff.shifted(form->pair(qe, lead_b.exp));
    auto qc = lead_r->second.divide_exact(denom);
    if (!qc) throw NotDivisible("coefficient " + lead_r->second.to_string() + " is not divisible by " + denom.to_string());
    for (const auto& t : b.terms()) {
      const auto e = qe + t.exp;
      QCoefficient c = (*qc * t.coeff).shifted(form->pair(qe, t.exp));
      auto [it, inserted] = rem.try_emplace(e);
      it->second -= c;
      if (it->second.is_zero()) rem.erase(it);
    }
    quotient.push_back({qe, std::move(*qc)});
  }
  return Element<M>::from_terms(form, std::move(quotient));
}

}  // namespace qca
