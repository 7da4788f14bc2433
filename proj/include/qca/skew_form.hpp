#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <string>

#include "qca/error.hpp"

namespace qca {

template <std::size_t M>
using Exponent = std::array<int, M>;

template <std::size_t M>
Exponent<M> operator+(const Exponent<M>& a, const Exponent<M>& b) {
  Exponent<M> r;
  for (std::size_t i = 0; i < M; ++i) r[i] = a[i] + b[i];
  return r;
}

template <std::size_t M>
Exponent<M> operator-(const Exponent<M>& a, const Exponent<M>& b) {
  Exponent<M> r;
  for (std::size_t i = 0; i < M; ++i) r[i] = a[i] - b[i];
  return r;
}

template <std::size_t M>
Exponent<M> scaled(const Exponent<M>& a, int k) {
  Exponent<M> r;
  for (std::size_t i = 0; i < M; ++i) r[i] = a[i] * k;
  return r;
}

/// i-th standard basis vector, 0-based.
template <std::size_t M>
Exponent<M> unit_vector(std::size_t i) {
  Exponent<M> r{};
  r[i] = 1;
  return r;
}

/// Lexicographic order on Z^M with position 0 most significant. It is
/// translation invariant, which is what leading-term division relies on.
struct LexOrder {
  template <std::size_t M>
  static bool less(const Exponent<M>& a, const Exponent<M>& b) {
    return a < b;
  }
};

template <std::size_t M>
std::string to_string(const Exponent<M>& e) {
  std::string s = "(";
  for (std::size_t i = 0; i < M; ++i) {
    if (i) s += ",";
    s += std::to_string(e[i]);
  }
  return s + ")";
}

/// Skew-symmetric integer matrix lambda_ij = Lambda(e_i, e_j).
template <std::size_t M>
class SkewForm {
 public:
  using Matrix = std::array<std::array<int, M>, M>;

  SkewForm() : m_{} {}
  explicit SkewForm(const Matrix& m) : m_(m) {
    for (std::size_t i = 0; i < M; ++i)
      for (std::size_t j = 0; j < M; ++j)
        if (m_[i][j] != -m_[j][i]) throw Error("form matrix is not skew-symmetric");
  }

  int operator()(std::size_t i, std::size_t j) const { return m_[i][j]; }
  const Matrix& matrix() const { return m_; }

  /// Lambda(c, d) = c^T Lambda d
  int pair(const Exponent<M>& c, const Exponent<M>& d) const {
    int s = 0;
    for (std::size_t i = 0; i < M; ++i) {
      if (c[i] == 0) continue;
      int row = 0;
      for (std::size_t j = 0; j < M; ++j) row += m_[i][j] * d[j];
      s += c[i] * row;
    }
    return s;
  }

  /// Lambda d, so that Lambda(c, d) = c . (Lambda d).
  Exponent<M> apply(const Exponent<M>& d) const {
    Exponent<M> r{};
    for (std::size_t i = 0; i < M; ++i)
      for (std::size_t j = 0; j < M; ++j) r[i] += m_[i][j] * d[j];
    return r;
  }

  friend bool operator==(const SkewForm&, const SkewForm&) = default;

 private:
  Matrix m_;
};

template <std::size_t M>
using FormPtr = std::shared_ptr<const SkewForm<M>>;

template <std::size_t M>
FormPtr<M> make_form(const typename SkewForm<M>::Matrix& m) {
  return std::make_shared<const SkewForm<M>>(m);
}

}  // namespace qca
