#pragma once

#include <array>
#include <charconv>
#include <compare>
#include <string>
#include <string_view>

#include "qca/error.hpp"

namespace qca {

/// Symbolic name of a generator: X_n, w, z, u_n, or a frozen monomial
/// y1^a y2^b y3^c (normalized, i.e. the torus monomial X^(0,0,0,a,b,c)).
struct ElementName {
  enum class Kind { X, W, Z, U, Y };
  Kind kind = Kind::X;
  int index = 0;
  std::array<int, 3> frozen{};

  static ElementName x(int n) { return {Kind::X, n, {}}; }
  static ElementName w() { return {Kind::W, 0, {}}; }
  static ElementName z() { return {Kind::Z, 0, {}}; }
  static ElementName u(int n) { return {Kind::U, n, {}}; }
  static ElementName y(int a, int b, int c) { return {Kind::Y, 0, {a, b, c}}; }
  /// The single frozen variable y_i, i in {1,2,3}.
  static ElementName yi(int i) {
    std::array<int, 3> f{};
    f[static_cast<std::size_t>(i - 1)] = 1;
    return {Kind::Y, 0, f};
  }

  friend auto operator<=>(const ElementName&, const ElementName&) = default;
  friend bool operator==(const ElementName&, const ElementName&) = default;

  /// CLI grammar: X:<int>, U:<uint>, W, Z, Y:(a,b,c)
  std::string to_string() const {
    switch (kind) {
      case Kind::X: return "X:" + std::to_string(index);
      case Kind::W: return "W";
      case Kind::Z: return "Z";
      case Kind::U: return "U:" + std::to_string(index);
      case Kind::Y:
        return "Y:(" + std::to_string(frozen[0]) + "," + std::to_string(frozen[1]) + "," +
               std::to_string(frozen[2]) + ")";
    }
    return {};
  }

  /// Short mathematical rendering used inside formulas.
  std::string symbol() const {
    switch (kind) {
      case Kind::X: return "X" + (index < 0 ? "_{" + std::to_string(index) + "}" : std::to_string(index));
      case Kind::W: return "w";
      case Kind::Z: return "z";
      case Kind::U: return "u" + std::to_string(index);
      case Kind::Y: {
        int nonzero = 0, which = 0;
        for (int i = 0; i < 3; ++i)
          if (frozen[static_cast<std::size_t>(i)] != 0) ++nonzero, which = i;
        if (nonzero == 1 && frozen[static_cast<std::size_t>(which)] == 1) return "y" + std::to_string(which + 1);
        return "Y(" + std::to_string(frozen[0]) + "," + std::to_string(frozen[1]) + "," + std::to_string(frozen[2]) +
               ")";
      }
    }
    return {};
  }
};

namespace detail {

inline int parse_int(std::string_view s, std::string_view what) {
  int v = 0;
  const char* first = s.data();
  if (!s.empty() && s.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw ParseError("expected an integer for " + std::string(what) + ", got '" + std::string(s) + "'");
  return v;
}

}  // namespace detail

inline ElementName parse_element_name(std::string_view s) {
  if (s == "W" || s == "w") return ElementName::w();
  if (s == "Z" || s == "z") return ElementName::z();
  if (s.size() > 2 && (s[0] == 'X' || s[0] == 'x') && s[1] == ':') return ElementName::x(detail::parse_int(s.substr(2), "X index"));
  if (s.size() > 2 && (s[0] == 'U' || s[0] == 'u') && s[1] == ':') {
    const int n = detail::parse_int(s.substr(2), "U index");
    if (n < 0) throw ParseError("U index must be nonnegative");
    return ElementName::u(n);
  }
  if (s.size() > 2 && (s[0] == 'Y' || s[0] == 'y') && s[1] == ':') {
    std::string_view body = s.substr(2);
    if (body.size() < 2 || body.front() != '(' || body.back() != ')')
      throw ParseError("frozen monomial must look like Y:(a,b,c)");
    body = body.substr(1, body.size() - 2);
    std::array<int, 3> f{};
    for (std::size_t i = 0; i < 3; ++i) {
      const auto comma = body.find(',');
      if ((i < 2) == (comma == std::string_view::npos)) throw ParseError("frozen monomial needs three entries");
      f[i] = detail::parse_int(body.substr(0, comma), "frozen exponent");
      body = comma == std::string_view::npos ? std::string_view{} : body.substr(comma + 1);
    }
    return ElementName::y(f[0], f[1], f[2]);
  }
  throw ParseError("unknown element name '" + std::string(s) + "'");
}

}  // namespace qca
