#pragma once

// A deliberately naive quantum torus used as an independent reference in
// tests: a map from exponent to a map from v-power to a machine integer,
// multiplied term by term straight from the matrix.

#include <array>
#include <map>
#include <ostream>
#include <random>

#include "qca/seeds.hpp"

namespace oracle {

using Exp = std::array<int, 6>;
using Coeff = std::map<int, long long>;
using Poly = std::map<Exp, Coeff>;
using Mat = std::array<std::array<int, 6>, 6>;

inline void prune(Poly& p) {
  for (auto it = p.begin(); it != p.end();) {
    for (auto jt = it->second.begin(); jt != it->second.end();)
      jt = jt->second == 0 ? it->second.erase(jt) : std::next(jt);
    it = it->second.empty() ? p.erase(it) : std::next(it);
  }
}

inline Poly mul(const Poly& a, const Poly& b, const Mat& lam) {
  Poly r;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      int twist = 0;
      Exp e{};
      for (int i = 0; i < 6; ++i) {
        e[i] = ea[i] + eb[i];
        for (int j = 0; j < 6; ++j) twist += ea[i] * lam[i][j] * eb[j];
      }
      for (const auto& [va, xa] : ca)
        for (const auto& [vb, xb] : cb) r[e][va + vb + twist] += xa * xb;
    }
  prune(r);
  return r;
}

inline Poly add(Poly a, const Poly& b, long long sign = 1) {
  for (const auto& [e, c] : b)
    for (const auto& [v, x] : c) a[e][v] += sign * x;
  prune(a);
  return a;
}

inline Poly mono(const Exp& e, int v = 0, long long c = 1) { return Poly{{e, Coeff{{v, c}}}}; }

inline Poly from(const qca::Elem& x) {
  Poly r;
  for (const auto& t : x.terms())
    for (const auto& [v, c] : t.coeff.terms()) r[t.exp][v] = static_cast<long long>(c);
  return r;
}

inline qca::Elem to(const Poly& p, const qca::FormPtr<6>& form) {
  std::vector<qca::Elem::Term> terms;
  for (const auto& [e, c] : p) {
    std::vector<qca::QCoefficient::Term> vt;
    for (const auto& [v, x] : c) vt.emplace_back(v, qca::Integer(x));
    terms.push_back({e, qca::QCoefficient::from_terms(vt)});
  }
  return qca::Elem::from_terms(form, terms);
}

/// Random element with small exponents and coefficients.
inline Poly random_poly(std::mt19937& rng, int terms, int exp_range = 2, int coeff_range = 3) {
  std::uniform_int_distribution<int> ex(-exp_range, exp_range), vx(-3, 3), cx(-coeff_range, coeff_range);
  Poly p;
  for (int t = 0; t < terms; ++t) {
    Exp e{};
    for (auto& x : e) x = ex(rng);
    p[e][vx(rng)] += cx(rng);
  }
  prune(p);
  return p;
}

}  // namespace oracle

namespace qca {
// Readable gtest failure messages.
template <std::size_t M>
void PrintTo(const Element<M>& e, std::ostream* os) {
  *os << e.to_string();
}
inline void PrintTo(const QCoefficient& c, std::ostream* os) { *os << c.to_string(); }
}  // namespace qca
