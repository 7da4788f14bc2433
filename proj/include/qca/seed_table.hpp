#pragma once

#include <optional>
#include <utility>

#include "qca/seeds.hpp"

namespace qca {

/// Reference matrices (Lambda, B-tilde) for the labeled seeds Sigma_m and
/// Sigma^cyc_m, in the labeled order (X_m, X_{m+1}, X_{m+2}) resp.
/// (X_m, w or z, X_{m+2}). Entries are written as printed, as functions of
/// the family parameter n.
struct PrintedSeed {
  FormMatrix lambda;
  ExchangeMatrix exchange;
};

namespace detail {

inline ExchangeMatrix exch(std::array<int, 3> r1, std::array<int, 3> r2, std::array<int, 3> r3,
                           std::array<int, 3> r4, std::array<int, 3> r5, std::array<int, 3> r6) {
  return {r1, r2, r3, r4, r5, r6};
}

inline constexpr std::array<int, 3> kP1{0, 1, 1}, kP2{-1, 0, 1}, kP3{-1, -1, 0};
inline constexpr std::array<int, 3> kC1{0, -1, 2}, kC2{1, 0, -1}, kC3{-2, 1, 0};

}  // namespace detail

inline PrintedSeed printed_sigma(int m) {
  using detail::exch;
  using detail::kP1, detail::kP2, detail::kP3;
  if (m >= 1 && m % 2 == 1) {
    const int n = (m + 1) / 2;
    return {{{{0, 0, 0, n - 2, 0, 1 - n},
              {0, 0, 0, n - 1, -1, 1 - n},
              {0, 0, 0, n - 1, 0, -n},
              {2 - n, 1 - n, 1 - n, 0, -1, -1},
              {0, 1, 0, 1, 0, -1},
              {n - 1, n - 1, n, 1, 1, 0}}},
            exch(kP1, kP2, kP3, {n, 0, 1 - n}, {n - 1, 1, 1 - n}, {n - 1, 0, 2 - n})};
  }
  if (m >= 2) {
    const int n = m / 2;
    return {{{{0, 0, 0, n - 1, -1, 1 - n},
              {0, 0, 0, n - 1, 0, -n},
              {0, 0, 0, n, -1, -n},
              {1 - n, 1 - n, -n, 0, -1, -1},
              {1, 0, 1, 1, 0, -1},
              {n - 1, n, n, 1, 1, 0}}},
            exch(kP1, kP2, kP3, {n, 1, -n}, {n, 0, 1 - n}, {n - 1, 1, 1 - n})};
  }
  if (m == 0) {
    return {{{{0, 0, 0, 0, 0, 1},
              {0, 0, 0, -1, 0, 0},
              {0, 0, 0, 0, -1, 0},
              {0, 1, 0, 0, -1, -1},
              {0, 0, 1, 1, 0, -1},
              {-1, 0, 0, 1, 1, 0}}},
            exch(kP1, kP2, kP3, {0, 1, 0}, {0, 0, 1}, {-1, 0, 0})};
  }
  if (m == -1) {
    return {{{{0, 0, 0, 0, 1, 0},
              {0, 0, 0, 0, 0, 1},
              {0, 0, 0, -1, 0, 0},
              {0, 0, 1, 0, -1, -1},
              {-1, 0, 0, 1, 0, -1},
              {0, -1, 0, 1, 1, 0}}},
            exch(kP1, kP2, kP3, {0, 0, 1}, {-1, 0, 0}, {0, -1, 0})};
  }
  if (m % 2 != 0) {
    const int n = (-m - 1) / 2;
    return {{{{0, 0, 0, n, 1, -n},
              {0, 0, 0, n, 0, 1 - n},
              {0, 0, 0, n - 1, 1, 1 - n},
              {-n, -n, 1 - n, 0, -1, -1},
              {-1, 0, -1, 1, 0, -1},
              {n, n - 1, n - 1, 1, 1, 0}}},
            exch(kP1, kP2, kP3, {n - 1, -1, 1 - n}, {n - 1, 0, -n}, {n, -1, -n})};
  }
  const int n = -m / 2;
  return {{{{0, 0, 0, n, 0, 1 - n},
            {0, 0, 0, n - 1, 1, 1 - n},
            {0, 0, 0, n - 1, 0, 2 - n},
            {-n, 1 - n, 1 - n, 0, -1, -1},
            {0, -1, 0, 1, 0, -1},
            {n - 1, n - 1, n - 2, 1, 1, 0}}},
          exch(kP1, kP2, kP3, {n - 2, 0, 1 - n}, {n - 1, -1, 1 - n}, {n - 1, 0, -n})};
}

inline PrintedSeed printed_cyc(int m) {
  using detail::exch;
  using detail::kC1, detail::kC2, detail::kC3;
  if (m >= 1 && m % 2 == 1) {
    const int n = (m + 1) / 2;
    return {{{{0, 0, 0, n - 2, 0, 1 - n},
              {0, 0, 0, 0, 1, -1},
              {0, 0, 0, n - 1, 0, -n},
              {2 - n, 0, 1 - n, 0, -1, -1},
              {0, -1, 0, 1, 0, -1},
              {n - 1, 1, n, 1, 1, 0}}},
            exch(kC1, kC2, kC3, {n, 0, 1 - n}, {n - 1, -1, 2 - n}, {n - 1, 0, 2 - n})};
  }
  if (m >= 2) {
    const int n = m / 2;
    return {{{{0, 0, 0, n - 1, -1, 1 - n},
              {0, 0, 0, 1, -1, 0},
              {0, 0, 0, n, -1, -n},
              {1 - n, -1, -n, 0, -1, -1},
              {1, 1, 1, 1, 0, -1},
              {n - 1, 0, n, 1, 1, 0}}},
            exch(kC1, kC2, kC3, {n, -1, 1 - n}, {n, 0, 1 - n}, {n - 1, -1, 2 - n})};
  }
  if (m == 0) {
    return {{{{0, 0, 0, 0, 0, 1},
              {0, 0, 0, 1, -1, 0},
              {0, 0, 0, 0, -1, 0},
              {0, -1, 0, 0, -1, -1},
              {0, 1, 1, 1, 0, -1},
              {-1, 0, 0, 1, 1, 0}}},
            exch(kC1, kC2, kC3, {0, -1, 1}, {0, 0, 1}, {-1, 0, 0})};
  }
  if (m == -1) {
    return {{{{0, 0, 0, 0, 1, 0},
              {0, 0, 0, 0, 1, -1},
              {0, 0, 0, -1, 0, 0},
              {0, 0, 1, 0, -1, -1},
              {-1, -1, 0, 1, 0, -1},
              {0, 1, 0, 1, 1, 0}}},
            exch(kC1, kC2, kC3, {0, 0, 1}, {-1, 0, 0}, {-1, 1, 0})};
  }
  if (m % 2 != 0) {
    const int n = (-m - 1) / 2;
    return {{{{0, 0, 0, n, 1, -n},
              {0, 0, 0, 0, 1, -1},
              {0, 0, 0, n - 1, 1, 1 - n},
              {-n, 0, 1 - n, 0, -1, -1},
              {-1, -1, -1, 1, 0, -1},
              {n, 1, n - 1, 1, 1, 0}}},
            exch(kC1, kC2, kC3, {n - 2, 1, 1 - n}, {n - 1, 0, -n}, {n - 1, 1, -n})};
  }
  const int n = -m / 2;
  return {{{{0, 0, 0, n, 0, 1 - n},
            {0, 0, 0, 1, -1, 0},
            {0, 0, 0, n - 1, 0, 2 - n},
            {-n, -1, 1 - n, 0, -1, -1},
            {0, 1, 0, 1, 0, -1},
            {n - 1, 0, n - 2, 1, 1, 0}}},
          exch(kC1, kC2, kC3, {n - 2, 0, 1 - n}, {n - 2, 1, 1 - n}, {n - 1, 0, -n})};
}

}  // namespace qca
