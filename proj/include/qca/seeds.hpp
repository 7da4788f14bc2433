#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "qca/error.hpp"
#include "qca/skew_form.hpp"
#include "qca/torus.hpp"

namespace qca {

inline constexpr std::size_t kRank = 6;     // m: cluster plus frozen
inline constexpr std::size_t kMutable = 3;  // n: exchangeable positions

using Exp6 = Exponent<kRank>;
using Form6 = SkewForm<kRank>;
using FormMatrix = Form6::Matrix;
using Elem = Element<kRank>;
using ExchangeMatrix = std::array<std::array<int, kMutable>, kRank>;
using Permutation = std::array<int, kMutable>;

struct QuantumSeed {
  Form6 form;
  ExchangeMatrix exchange{};
  /// Expansions of the six cluster variables in the ambient torus.
  std::array<Elem, kRank> cluster;

  friend bool operator==(const QuantumSeed&, const QuantumSeed&) = default;
};

struct CompatibilityReport {
  struct Violation {
    int i;
    int j;
    int value;
  };
  bool ok = false;
  std::array<int, kMutable> d{};
  std::vector<Violation> violations;
};

inline int positive_part(int a) { return a > 0 ? a : 0; }

inline void check_direction(int k) {
  if (k < 1 || k > static_cast<int>(kMutable)) throw BadDirection(k);
}

/// Lambda(b_j, e_i) must equal delta_ij d_j with every d_j > 0.
inline CompatibilityReport check_compatible(const Form6& lambda, const ExchangeMatrix& b) {
  CompatibilityReport rep;
  for (std::size_t j = 0; j < kMutable; ++j) {
    for (std::size_t i = 0; i < kRank; ++i) {
      int s = 0;
      for (std::size_t p = 0; p < kRank; ++p) s += b[p][j] * lambda(p, i);
      if (i == j) {
        rep.d[j] = s;
      } else if (s != 0) {
        rep.violations.push_back({static_cast<int>(i) + 1, static_cast<int>(j) + 1, s});
      }
    }
  }
  rep.ok = rep.violations.empty() && std::all_of(rep.d.begin(), rep.d.end(), [](int x) { return x > 0; });
  return rep;
}

/// Lambda' = E^T Lambda E where E is the identity except in column k.
inline Form6 mutate_form(const Form6& lambda, const ExchangeMatrix& b, int k) {
  check_direction(k);
  const std::size_t kk = static_cast<std::size_t>(k - 1);
  FormMatrix e{};
  for (std::size_t i = 0; i < kRank; ++i) e[i][i] = 1;
  for (std::size_t i = 0; i < kRank; ++i) e[i][kk] = i == kk ? -1 : positive_part(-b[i][kk]);
  FormMatrix out{};
  for (std::size_t i = 0; i < kRank; ++i)
    for (std::size_t j = 0; j < kRank; ++j) {
      int s = 0;
      for (std::size_t p = 0; p < kRank; ++p) {
        if (e[p][i] == 0) continue;
        for (std::size_t r = 0; r < kRank; ++r) s += e[p][i] * lambda(p, r) * e[r][j];
      }
      out[i][j] = s;
    }
  return Form6(out);
}

inline ExchangeMatrix mutate_exchange(const ExchangeMatrix& b, int k) {
  check_direction(k);
  const std::size_t kk = static_cast<std::size_t>(k - 1);
  ExchangeMatrix out{};
  for (std::size_t i = 0; i < kRank; ++i)
    for (std::size_t j = 0; j < kMutable; ++j) {
      if (i == kk || j == kk) {
        out[i][j] = -b[i][j];
      } else {
        const int bik = b[i][kk];
        const int bkj = b[kk][j];
        out[i][j] = b[i][j] + (std::abs(bik) * bkj + bik * std::abs(bkj)) / 2;
      }
    }
  return out;
}

/// Expansion of the seed-torus monomial Z^a: the ordered product
/// Z_1^{a_1} ... Z_6^{a_6} rescaled by q^{-1/2 sum_{i<j} a_i a_j lambda_ij}.
inline Elem eval_cluster_monomial(const QuantumSeed& s, const Exp6& a) {
  for (int x : a)
    if (x < 0) throw NegativeExponent();
  const auto& form = s.cluster[0].form();
  Elem r = Elem::one(form);
  int twist = 0;
  for (std::size_t i = 0; i < kRank; ++i) {
    for (int t = 0; t < a[i]; ++t) r = r * s.cluster[i];
    for (std::size_t j = i + 1; j < kRank; ++j) twist += a[i] * a[j] * s.form(i, j);
  }
  return QCoefficient::monomial(-twist) * r;
}

inline std::string format_matrix(const auto& m) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < m.size(); ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < m[i].size(); ++j) os << (j ? "," : "") << m[i][j];
    os << "]";
  }
  os << "]";
  return os.str();
}

/// mu_k. The new variable X'_k is obtained from
///   X'_k * X_k = q^{Lambda(a,e_k)/2} Z^a + q^{Lambda(b,e_k)/2} Z^b
/// with Lambda the form of S, by exact division on the right by X_k.
inline QuantumSeed mutate_seed(const QuantumSeed& s, int k) {
  check_direction(k);
  const std::size_t kk = static_cast<std::size_t>(k - 1);
  Exp6 a{}, b{};
  for (std::size_t i = 0; i < kRank; ++i) {
    a[i] = positive_part(s.exchange[i][kk]);
    b[i] = positive_part(-s.exchange[i][kk]);
  }
  const auto ek = unit_vector<kRank>(kk);
  const Elem rhs = QCoefficient::monomial(s.form.pair(a, ek)) * eval_cluster_monomial(s, a) +
                   QCoefficient::monomial(s.form.pair(b, ek)) * eval_cluster_monomial(s, b);
  QuantumSeed out;
  out.form = mutate_form(s.form, s.exchange, k);
  out.exchange = mutate_exchange(s.exchange, k);
  out.cluster = s.cluster;
  try {
    out.cluster[kk] = left_divide_exact(rhs, s.cluster[kk]);
  } catch (const NotDivisible& err) {
    throw NotDivisible(std::string("mutation in direction ") + std::to_string(k) +
                       " failed: " + err.what() + "; seed lambda=" + format_matrix(s.form.matrix()) +
                       " btilde=" + format_matrix(s.exchange));
  }
  return out;
}

/// "1,2,3" -> {1,2,3}; the empty string is the empty walk.
inline std::vector<int> parse_walk(std::string_view text) {
  std::vector<int> walk;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view tok = text.substr(pos, end - pos);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    if (tok.size() != 1 || tok[0] < '1' || tok[0] > '3')
      throw ParseError("bad mutation direction '" + std::string(tok) + "' in walk");
    walk.push_back(tok[0] - '0');
    pos = end + 1;
    if (end + 1 == text.size()) throw ParseError("walk ends with a comma");
  }
  return walk;
}

inline std::string format_walk(const std::vector<int>& walk) {
  std::string s;
  for (std::size_t i = 0; i < walk.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(walk[i]);
  }
  return s;
}

inline QuantumSeed apply_walk(QuantumSeed s, const std::vector<int>& walk) {
  for (int k : walk) s = mutate_seed(s, k);
  return s;
}

/// Relabels the mutable positions: position i of s moves to sigma[i].
inline QuantumSeed permute_seed(const QuantumSeed& s, const Permutation& sigma) {
  std::array<std::size_t, kRank> to{};
  for (std::size_t i = 0; i < kRank; ++i) to[i] = i < kMutable ? static_cast<std::size_t>(sigma[i]) : i;
  FormMatrix lam{};
  for (std::size_t i = 0; i < kRank; ++i)
    for (std::size_t j = 0; j < kRank; ++j) lam[to[i]][to[j]] = s.form(i, j);
  QuantumSeed out;
  out.form = Form6(lam);
  for (std::size_t i = 0; i < kRank; ++i)
    for (std::size_t j = 0; j < kMutable; ++j) out.exchange[to[i]][to[j]] = s.exchange[i][j];
  for (std::size_t i = 0; i < kRank; ++i) out.cluster[to[i]] = s.cluster[i];
  return out;
}

inline std::vector<Permutation> all_permutations() {
  std::vector<Permutation> out;
  Permutation p{0, 1, 2};
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

/// Permutation carrying sa onto sb exactly, if any. The identity is tried first.
inline std::optional<Permutation> seed_equiv(const QuantumSeed& sa, const QuantumSeed& sb) {
  for (const auto& p : all_permutations())
    if (permute_seed(sa, p) == sb) return p;
  return std::nullopt;
}

/// Same as seed_equiv but ignoring the clusters.
inline std::optional<Permutation> matrices_equiv(const Form6& la, const ExchangeMatrix& ba, const Form6& lb,
                                                 const ExchangeMatrix& bb) {
  QuantumSeed sa, sb;
  sa.form = la;
  sa.exchange = ba;
  sb.form = lb;
  sb.exchange = bb;
  return seed_equiv(sa, sb);
}

}  // namespace qca
