#pragma once

#include <string>

#include "json.hpp"
#include "qca/error.hpp"
#include "qca/seeds.hpp"
#include "qca/torus.hpp"

namespace qca {

using Json = nlohmann::ordered_json;

inline Json to_json(const QCoefficient& c) {
  Json arr = Json::array();
  for (const auto& [v, x] : c.terms()) arr.push_back({{"v", v}, {"c", x.str()}});
  return arr;
}

inline QCoefficient qcoefficient_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("coefficient must be an array");
  std::vector<QCoefficient::Term> terms;
  for (const auto& t : j) {
    if (!t.contains("v") || !t.contains("c") || !t["c"].is_string())
      throw ParseError("coefficient entry needs integer 'v' and decimal string 'c'");
    try {
      terms.emplace_back(t["v"].get<int>(), Integer(t["c"].get<std::string>()));
    } catch (const std::runtime_error&) {
      throw ParseError("bad decimal integer '" + t["c"].get<std::string>() + "'");
    }
  }
  return QCoefficient::from_terms(std::move(terms));
}

template <std::size_t M>
Json to_json(const Element<M>& e) {
  Json terms = Json::array();
  for (const auto& t : e.terms()) {
    Json exp = Json::array();
    for (int x : t.exp) exp.push_back(x);
    terms.push_back({{"exp", exp}, {"coeff", to_json(t.coeff)}});
  }
  return {{"terms", terms}};
}

template <std::size_t M>
Element<M> element_from_json(const Json& j, const FormPtr<M>& form) {
  if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array())
    throw ParseError("element must be an object with a 'terms' array");
  std::vector<typename Element<M>::Term> terms;
  for (const auto& t : j["terms"]) {
    const auto& exp = t.at("exp");
    if (!exp.is_array() || exp.size() != M) throw ParseError("exponent has wrong length");
    Exponent<M> c{};
    for (std::size_t i = 0; i < M; ++i) c[i] = exp[i].get<int>();
    terms.push_back({c, qcoefficient_from_json(t.at("coeff"))});
  }
  return Element<M>::from_terms(form, std::move(terms));
}

inline Json to_json(const QuantumSeed& s) {
  Json lam = Json::array();
  for (const auto& row : s.form.matrix()) lam.push_back(row);
  Json bt = Json::array();
  for (const auto& row : s.exchange) bt.push_back(row);
  Json cl = Json::array();
  for (const auto& x : s.cluster) cl.push_back(to_json(x));
  return {{"lambda", lam}, {"btilde", bt}, {"cluster", cl}};
}

/// Accepts btilde either as 6 rows of 3 or as 3 columns of 6.
inline QuantumSeed seed_from_json(const Json& j, const FormPtr<kRank>& ambient) {
  QuantumSeed s;
  FormMatrix lam{};
  const auto& jl = j.at("lambda");
  if (jl.size() != kRank) throw ParseError("lambda must have 6 rows");
  for (std::size_t i = 0; i < kRank; ++i) {
    if (jl[i].size() != kRank) throw ParseError("lambda rows must have 6 entries");
    for (std::size_t k = 0; k < kRank; ++k) lam[i][k] = jl[i][k].get<int>();
  }
  s.form = Form6(lam);
  const auto& jb = j.at("btilde");
  if (jb.size() == kRank) {
    for (std::size_t i = 0; i < kRank; ++i)
      for (std::size_t k = 0; k < kMutable; ++k) s.exchange[i][k] = jb[i].at(k).get<int>();
  } else if (jb.size() == kMutable) {
    for (std::size_t k = 0; k < kMutable; ++k)
      for (std::size_t i = 0; i < kRank; ++i) s.exchange[i][k] = jb[k].at(i).get<int>();
  } else {
    throw ParseError("btilde must be 6 rows or 3 columns");
  }
  const auto& jc = j.at("cluster");
  if (jc.size() != kRank) throw ParseError("cluster must have 6 entries");
  for (std::size_t i = 0; i < kRank; ++i) s.cluster[i] = element_from_json<kRank>(jc[i], ambient);
  return s;
}

}  // namespace qca
