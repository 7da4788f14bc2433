#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace qca {

using Integer = boost::multiprecision::cpp_int;

namespace detail {

inline Integer to_integer(__int128 x) {
  const bool neg = x < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(x + 1)) + 1 : static_cast<unsigned __int128>(x);
  Integer r = static_cast<std::uint64_t>(u >> 64);
  r <<= 64;
  r += static_cast<std::uint64_t>(u);
  return neg ? Integer(-r) : r;
}

/// |c| < 2^50: products of two such values summed 2^26 times fit in 128 bits.
inline bool fits_small(const Integer& c) {
  static const Integer kLimit = Integer(1) << 50;
  return c < kLimit && c > -kLimit;
}

}  // namespace detail

/// Laurent polynomial in v = q^{1/2} with arbitrary-precision integer
/// coefficients. Terms are kept sorted by ascending v-exponent and never
/// store a zero coefficient, so structural equality is ring equality.
class QCoefficient {
 public:
  using Term = std::pair<int, Integer>;

  QCoefficient() = default;
  QCoefficient(long long c) {  // NOLINT: implicit from integer literals
    if (c != 0) terms_.emplace_back(0, Integer(c));
  }
  QCoefficient(Integer c) {  // NOLINT
    if (c != 0) terms_.emplace_back(0, std::move(c));
  }
  QCoefficient(std::initializer_list<Term> terms) : terms_(terms) { normalize(); }

  /// c * v^e
  static QCoefficient monomial(int v_exp, Integer c = 1) {
    QCoefficient r;
    if (c != 0) r.terms_.emplace_back(v_exp, std::move(c));
    return r;
  }

  /// Builds from arbitrary (possibly unsorted, duplicated, zero) terms.
  static QCoefficient from_terms(std::vector<Term> terms) {
    QCoefficient r;
    r.terms_ = std::move(terms);
    r.normalize();
    return r;
  }

  /// Adopts terms that are already sorted, merged and nonzero.
  static QCoefficient from_sorted(std::vector<Term> terms) {
    QCoefficient r;
    r.terms_ = std::move(terms);
    return r;
  }

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  bool is_one() const { return terms_.size() == 1 && terms_[0].first == 0 && terms_[0].second == 1; }

  int min_exp() const { return terms_.front().first; }
  int max_exp() const { return terms_.back().first; }

  Integer coefficient(int v_exp) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), v_exp,
                               [](const Term& t, int e) { return t.first < e; });
    if (it != terms_.end() && it->first == v_exp) return it->second;
    return 0;
  }

  friend bool operator==(const QCoefficient&, const QCoefficient&) = default;

  QCoefficient operator-() const {
    QCoefficient r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
  }

  QCoefficient& operator+=(const QCoefficient& o) {
    terms_ = merge(terms_, o.terms_, false);
    return *this;
  }
  QCoefficient& operator-=(const QCoefficient& o) {
    terms_ = merge(terms_, o.terms_, true);
    return *this;
  }
  friend QCoefficient operator+(QCoefficient a, const QCoefficient& b) { return a += b; }
  friend QCoefficient operator-(QCoefficient a, const QCoefficient& b) { return a -= b; }

  friend QCoefficient operator*(const QCoefficient& a, const QCoefficient& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.size() == 1) return b.scaled_shifted(a.terms_[0].second, a.terms_[0].first);
    if (b.size() == 1) return a.scaled_shifted(b.terms_[0].second, b.terms_[0].first);
    const int lo = a.min_exp() + b.min_exp();
    const auto width = static_cast<std::size_t>(a.max_exp() + b.max_exp() - lo + 1);
    if (a.small() && b.small() && std::min(a.size(), b.size()) < (1u << 26)) {
      std::vector<__int128> acc(width, 0);
      for (const auto& [ea, ca] : a.terms_) {
        const auto x = static_cast<__int128>(static_cast<long long>(ca));
        for (const auto& [eb, cb] : b.terms_)
          acc[static_cast<std::size_t>(ea + eb - lo)] += x * static_cast<long long>(cb);
      }
      QCoefficient r;
      for (std::size_t i = 0; i < width; ++i)
        if (acc[i] != 0) r.terms_.emplace_back(lo + static_cast<int>(i), detail::to_integer(acc[i]));
      return r;
    }
    std::vector<Integer> dense(width);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) dense[static_cast<std::size_t>(ea + eb - lo)] += ca * cb;
    return from_dense(lo, dense);
  }
  QCoefficient& operator*=(const QCoefficient& o) { return *this = *this * o; }

  /// Multiplies by c * v^shift.
  QCoefficient scaled_shifted(const Integer& c, int shift) const {
    if (c == 0) return {};
    QCoefficient r;
    r.terms_.reserve(terms_.size());
    for (const auto& [e, x] : terms_) r.terms_.emplace_back(e + shift, x * c);
    return r;
  }
  QCoefficient shifted(int shift) const {
    QCoefficient r = *this;
    for (auto& t : r.terms_) t.first += shift;
    return r;
  }

  /// v -> v^{-1}
  QCoefficient bar() const {
    QCoefficient r;
    r.terms_.reserve(terms_.size());
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) r.terms_.emplace_back(-it->first, it->second);
    return r;
  }

  /// Value at v = 1 (q = 1).
  Integer at_one() const {
    Integer s = 0;
    for (const auto& t : terms_) s += t.second;
    return s;
  }

  bool small() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return detail::fits_small(t.second); });
  }

  bool all_nonnegative() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.second > 0; });
  }

  /// Exact quotient in Z[v^{+-1}], or nullopt when the divisor does not
  /// divide this coefficient.
  std::optional<QCoefficient> divide_exact(const QCoefficient& d) const {
    if (d.is_zero()) return std::nullopt;
    if (is_zero()) return QCoefficient{};
    if (d.size() == 1) {
      const auto& [de, dc] = d.terms_[0];
      QCoefficient r;
      r.terms_.reserve(terms_.size());
      for (const auto& [e, c] : terms_) {
        if (c % dc != 0) return std::nullopt;
        r.terms_.emplace_back(e - de, c / dc);
      }
      return r;
    }
    // Long division from the top degree; the remainder must vanish.
    const int d_lo = d.min_exp();
    const int d_hi = d.max_exp();
    const Integer& lead = d.terms_.back().second;
    int lo = min_exp();
    std::vector<Integer> rem(static_cast<std::size_t>(max_exp() - lo + 1));
    for (const auto& [e, c] : terms_) rem[static_cast<std::size_t>(e - lo)] = c;
    std::vector<Term> quot;
    for (int top = max_exp(); top - (d_hi - d_lo) >= lo; --top) {
      Integer& c = rem[static_cast<std::size_t>(top - lo)];
      if (c == 0) continue;
      if (c % lead != 0) return std::nullopt;
      Integer qc = c / lead;
      const int qe = top - d_hi;
      for (const auto& [e, dc] : d.terms_) rem[static_cast<std::size_t>(qe + e - lo)] -= qc * dc;
      quot.emplace_back(qe, std::move(qc));
    }
    for (const auto& c : rem)
      if (c != 0) return std::nullopt;
    std::reverse(quot.begin(), quot.end());
    return from_sorted(std::move(quot));
  }

  /// Human-readable form in q, e.g. "q^(3/2) + 2 - q^-1".
  std::string to_string() const {
    if (is_zero()) return "0";
    std::string out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [e, c] = *it;
      Integer mag = c < 0 ? Integer(-c) : c;
      if (first) {
        if (c < 0) out += "-";
      } else {
        out += c < 0 ? " - " : " + ";
      }
      first = false;
      const std::string power = q_power_string(e);
      if (power.empty()) {
        out += mag.str();
      } else {
        if (mag != 1) out += mag.str() + "*";
        out += power;
      }
    }
    return out;
  }

  /// "q^(e/2)" rendering of v^e; empty for e = 0.
  static std::string q_power_string(int e) {
    if (e == 0) return "";
    if (e == 2) return "q";
    if (e % 2 == 0) return "q^" + std::to_string(e / 2);
    return "q^(" + std::to_string(e) + "/2)";
  }

 private:
  static QCoefficient from_dense(int lo, const std::vector<Integer>& dense) {
    QCoefficient r;
    for (std::size_t i = 0; i < dense.size(); ++i)
      if (dense[i] != 0) r.terms_.emplace_back(lo + static_cast<int>(i), dense[i]);
    return r;
  }

  static std::vector<Term> merge(const std::vector<Term>& a, const std::vector<Term>& b, bool negate_b) {
    std::vector<Term> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
      if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
        out.push_back(a[i++]);
      } else if (i == a.size() || b[j].first < a[i].first) {
        out.emplace_back(b[j].first, negate_b ? Integer(-b[j].second) : b[j].second);
        ++j;
      } else {
        Integer s = negate_b ? Integer(a[i].second - b[j].second) : Integer(a[i].second + b[j].second);
        if (s != 0) out.emplace_back(a[i].first, std::move(s));
        ++i;
        ++j;
      }
    }
    return out;
  }

  void normalize() {
    std::sort(terms_.begin(), terms_.end(), [](const Term& x, const Term& y) { return x.first < y.first; });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!out.empty() && out.back().first == t.first) {
        out.back().second += t.second;
      } else {
        out.push_back(std::move(t));
      }
      if (out.back().second == 0) out.pop_back();
    }
    terms_ = std::move(out);
  }

  std::vector<Term> terms_;
};

/// q^{num/den} as a coefficient; nullopt when 2*num/den is not an integer.
inline std::optional<QCoefficient> q_power(long long num, long long den = 1) {
  if ((2 * num) % den != 0) return std::nullopt;
  return QCoefficient::monomial(static_cast<int>(2 * num / den));
}

}  // namespace qca
