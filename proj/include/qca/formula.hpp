#pragma once

#include <algorithm>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "qca/error.hpp"
#include "qca/names.hpp"
#include "qca/qcoefficient.hpp"
#include "qca/torus.hpp"

namespace qca {

/// One factor of an ordered product: (g_1 g_2 ... g_r)^power.
struct Factor {
  std::vector<ElementName> group;
  unsigned power = 1;
};

/// coeff * f_1 f_2 ... f_s, factors multiplied left to right.
struct Product {
  QCoefficient coeff;
  std::vector<Factor> factors;
};

/// A formal Z[q^{+-1/2}]-linear combination of ordered products of named
/// generators. Nothing is simplified: the point is to evaluate a displayed
/// formula exactly as written.
class Expr {
 public:
  Expr() = default;
  Expr(QCoefficient c) {  // NOLINT: scalars promote
    if (!c.is_zero()) terms_.push_back({std::move(c), {}});
  }
  Expr(long long c) : Expr(QCoefficient(c)) {}  // NOLINT
  Expr(const ElementName& n) { terms_.push_back({1, {{{n}, 1}}}); }  // NOLINT

  static Expr power(const ElementName& n, unsigned k) { return group({n}, k); }
  static Expr group(std::vector<ElementName> names, unsigned k) {
    Expr e;
    e.terms_.push_back({1, {}});
    if (k > 0) e.terms_[0].factors.push_back({std::move(names), k});
    return e;
  }

  const std::vector<Product>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  friend Expr operator+(Expr a, const Expr& b) {
    a.terms_.insert(a.terms_.end(), b.terms_.begin(), b.terms_.end());
    return a;
  }
  friend Expr operator-(Expr a, const Expr& b) {
    for (const auto& t : b.terms_) a.terms_.push_back({-t.coeff, t.factors});
    return a;
  }
  Expr& operator+=(const Expr& b) { return *this = *this + b; }
  Expr& operator-=(const Expr& b) { return *this = *this - b; }

  /// Concatenates factor lists; scalars are central.
  friend Expr operator*(const Expr& a, const Expr& b) {
    Expr r;
    for (const auto& s : a.terms_)
      for (const auto& t : b.terms_) {
        Product p{s.coeff * t.coeff, s.factors};
        p.factors.insert(p.factors.end(), t.factors.begin(), t.factors.end());
        if (!p.coeff.is_zero()) r.terms_.push_back(std::move(p));
      }
    return r;
  }

  /// The image under the bar anti-automorphism when every named generator
  /// is bar-invariant: coefficients conjugated, factor order reversed.
  Expr reversed() const {
    Expr r;
    for (const auto& t : terms_) {
      Product p{t.coeff.bar(), {}};
      for (auto it = t.factors.rbegin(); it != t.factors.rend(); ++it) {
        Factor f = *it;
        std::reverse(f.group.begin(), f.group.end());
        p.factors.push_back(std::move(f));
      }
      r.terms_.push_back(std::move(p));
    }
    return r;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      const auto& t = terms_[i];
      std::string c = t.coeff.to_string();
      bool neg = false;
      if (t.coeff.size() == 1 && t.coeff.terms()[0].second < 0) {
        neg = true;
        c = (-t.coeff).to_string();
      }
      if (i) out += neg ? " - " : " + ";
      else if (neg) out += "-";
      std::string body;
      for (const auto& f : t.factors) {
        if (!body.empty()) body += "*";
        if (f.group.size() == 1) {
          body += f.group[0].symbol();
        } else {
          body += "(";
          for (std::size_t k = 0; k < f.group.size(); ++k) body += (k ? "*" : "") + f.group[k].symbol();
          body += ")";
        }
        if (f.power != 1) body += "^" + std::to_string(f.power);
      }
      if (body.empty()) {
        out += c;
      } else if (c == "1") {
        out += body;
      } else {
        out += (t.coeff.size() == 1 ? c : "(" + c + ")") + "*" + body;
      }
    }
    return out;
  }

 private:
  std::vector<Product> terms_;
};

inline Expr X(int n) { return ElementName::x(n); }
inline Expr U(int n) { return ElementName::u(n); }
inline Expr Wv() { return ElementName::w(); }
inline Expr Zv() { return ElementName::z(); }
/// y_i^k as a literal power of the single frozen variable.
inline Expr y(int i, int k = 1) {
  if (k < 0) throw Error("negative power of a frozen variable in a formula");
  return Expr::power(ElementName::yi(i), static_cast<unsigned>(k));
}
/// (y1 y2 y3)^k as a literal power of the ordered product.
inline Expr y123(int k) {
  if (k < 0) throw Error("negative power of y1y2y3 in a formula");
  return Expr::group({ElementName::yi(1), ElementName::yi(2), ElementName::yi(3)}, static_cast<unsigned>(k));
}
/// X^{k(0,0,0,1,1,1)}
inline Expr ydiag(int k) { return ElementName::y(k, k, k); }

/// q^{num/den}; the exponent must be a half-integer.
inline QCoefficient qpow(long long num, long long den = 1) {
  if (den < 0) num = -num, den = -den;
  if ((2 * num) % den != 0)
    throw Error("q exponent " + std::to_string(num) + "/" + std::to_string(den) + " is not a half-integer");
  return QCoefficient::monomial(static_cast<int>(2 * num / den));
}

/// sum_{i=0}^{upper} q^{(2i + shift)/2}; zero when upper < 0.
inline QCoefficient qsum(int upper, int shift) {
  std::vector<QCoefficient::Term> t;
  for (int i = 0; i <= upper; ++i) t.emplace_back(2 * i + shift, 1);
  return QCoefficient::from_terms(std::move(t));
}

/// Floor and ceiling of a/b for b > 0, rounding toward -infinity / +infinity.
inline long long floor_div(long long a, long long b) {
  long long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}
inline long long ceil_div(long long a, long long b) { return -floor_div(-a, b); }

using Resolver = std::function<const Element<6>&(const ElementName&)>;

/// Evaluates every product in the given order.
inline Element<6> evaluate(const Expr& e, const FormPtr<6>& form, const Resolver& resolve) {
  Element<6> total(form);
  for (const auto& p : e.terms()) {
    Element<6> prod = Element<6>::one(form);
    for (const auto& f : p.factors) {
      Element<6> g = Element<6>::one(form);
      for (const auto& n : f.group) g = g * resolve(n);
      for (unsigned k = 0; k < f.power; ++k) prod = prod * g;
    }
    total += p.coeff * prod;
  }
  return total;
}

}  // namespace qca
