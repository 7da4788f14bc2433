#pragma once

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qca/a21.hpp"
#include "qca/basis.hpp"
#include "qca/identities.hpp"
#include "qca/json_io.hpp"

namespace qca::cli {

enum ExitCode : int { kOk = 0, kMathFailure = 1, kUsage = 2, kBudget = 3 };

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"exchange",  "seed-table",   "compatibility", "u-algebra",
                                              "un-action", "corollary",    "products",      "bar-duality",
                                              "cross-oracle", "basis",     "all"};
  return names;
}

struct Options {
  std::size_t budget_terms = 0;
  std::optional<int> x_min, x_max, u_max;

  std::string element;
  std::string label;
  std::string root;
  std::string format = "json";
  std::string walk;

  std::string suite;
  int max_n = 6;
  int max_m = 6;
  int jobs = 1;
  std::optional<int> lo, hi;
  int depth = 3;
  int exp_cap = 2;
  int max_k = 3;
  std::string roots = ";1;2;3,2";

  std::string left;
  std::string right;
};

inline Window base_window(const Options& o) {
  Window w;
  w.budget_terms = o.budget_terms;
  if (o.x_min) w.x_min = *o.x_min;
  if (o.x_max) w.x_max = *o.x_max;
  if (o.u_max) w.u_max = *o.u_max;
  return w;
}

inline std::vector<std::vector<int>> parse_roots(const std::string& s) {
  std::vector<std::vector<int>> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i)
    if (i == s.size() || s[i] == ';') {
      out.push_back(parse_walk(std::string_view(s).substr(start, i - start)));
      start = i + 1;
    }
  return out;
}

inline void emit(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

inline int cmd_expand(const Options& o, std::ostream& out) {
  if (o.element.empty() == o.label.empty()) throw ParseError("expand needs exactly one of --element or --label");
  std::optional<ElementName> name;
  std::optional<BasisLabel> label;
  if (!o.element.empty()) name = parse_element_name(o.element);
  else label = parse_basis_label(o.label);
  const auto walk = parse_walk(o.root);
  Registry reg = reroot(walk, base_window(o));
  const Elem e = name ? reg.get(*name) : expand(*label, reg);
  if (o.format == "pretty") {
    out << e.to_string() << "\n";
  } else {
    emit(out, {{"element", name ? name->to_string() : label->to_string()},
               {"root", format_walk(walk)},
               {"expansion", to_json(e)}});
  }
  return kOk;
}

inline int cmd_mutate(const Options& o, std::ostream& out) {
  const auto walk = parse_walk(o.walk);
  Registry reg(base_window(o));
  const QuantumSeed& s = reg.seed_at(walk);
  const CompatibilityReport c = check_compatible(s.form, s.exchange);
  if (o.format == "pretty") {
    out << "walk " << format_walk(walk) << "\nlambda " << format_matrix(s.form.matrix()) << "\nbtilde "
        << format_matrix(s.exchange) << "\n";
    for (std::size_t i = 0; i < kRank; ++i) out << "X'" << i + 1 << " = " << s.cluster[i].to_string() << "\n";
    return kOk;
  }
  Json j = to_json(s);
  j["walk"] = format_walk(walk);
  j["compatible"] = {{"ok", c.ok}, {"d", c.d}};
  emit(out, j);
  return kOk;
}

inline SuiteReport run_suite(const std::string& suite, const Options& o) {
  const Window w = window_for_suite(suite, o.max_n, o.max_m, base_window(o));
  if (suite == "basis") {
    RootSet roots(w);
    return verify_basis(roots, BasisWindow{o.depth, o.exp_cap, o.max_n, o.max_k}, parse_roots(o.roots), o.jobs);
  }
  Registry reg(w);
  if (suite == "exchange") return verify_exchange(reg, o.max_n, o.jobs);
  if (suite == "seed-table") return verify_seed_table(reg, o.lo.value_or(-5), o.hi.value_or(5), o.jobs);
  if (suite == "compatibility") return verify_compatibility(reg, o.lo.value_or(-5), o.hi.value_or(5), o.jobs);
  if (suite == "u-algebra") return verify_u_algebra(reg, o.max_n, o.jobs);
  if (suite == "un-action") return verify_un_action(reg, o.max_n, o.max_m, o.jobs);
  if (suite == "corollary") return verify_corollary(reg, o.max_n, o.jobs);
  if (suite == "products") return verify_products(reg, o.max_m, o.max_n, o.jobs);
  if (suite == "bar-duality") return verify_bar_duality(reg, o.max_n, o.max_m, o.jobs);
  if (suite == "cross-oracle") return verify_cross_oracle(reg, o.lo.value_or(-12), o.hi.value_or(14), o.jobs);
  throw ParseError("unknown suite '" + suite + "'");
}

inline int cmd_verify(const Options& o, std::ostream& out) {
  if (o.suite != "all") {
    const SuiteReport r = run_suite(o.suite, o);
    emit(out, r.to_json());
    return r.ok() ? kOk : kMathFailure;
  }
  SuiteReport total;
  total.family = "all";
  total.range = {{"max_n", o.max_n}, {"max_m", o.max_m}};
  Json parts = Json::array();
  for (const auto& s : suite_names()) {
    if (s == "all") continue;
    const SuiteReport r = run_suite(s, o);
    total.absorb(r);
    parts.push_back(r.to_json());
  }
  Json j = total.to_json();
  j["suites"] = parts;
  emit(out, j);
  return total.ok() ? kOk : kMathFailure;
}

inline int cmd_basis(const Options& o, std::ostream& out) {
  const auto walks = parse_roots(o.roots);
  std::optional<BasisLabel> only;
  if (!o.label.empty()) only = parse_basis_label(o.label);
  RootSet roots(base_window(o));
  Registry& home = roots.at({});
  const std::vector<BasisLabel> labels =
      only ? std::vector<BasisLabel>{*only} : enumerate_basis(BasisWindow{o.depth, o.exp_cap, o.max_n, o.max_k}, home);
  Json items = Json::array();
  bool ok = true;
  for (const auto& l : labels) {
    const Elem e = expand(l, home);
    const bool bar = check_bar_invariant(e);
    const PositivityReport pos = check_positivity(l, roots, walks);
    ok = ok && bar && pos.positive;
    Json j = {{"label", l.to_string()}, {"bar_invariant", bar}, {"positivity", pos.to_json()}};
    if (only) j["expansion"] = to_json(e);
    items.push_back(std::move(j));
  }
  const LeadingReport lead = check_leading_distinct(labels, home);
  Json coll = Json::array();
  for (const auto& [a, b] : lead.collisions) coll.push_back({a.to_string(), b.to_string()});
  ok = ok && lead.distinct;
  emit(out, {{"labels", items}, {"leading_distinct", lead.distinct}, {"collisions", coll}});
  return ok ? kOk : kMathFailure;
}

inline int cmd_product(const Options& o, std::ostream& out) {
  const ElementName a = parse_element_name(o.left);
  const ElementName b = parse_element_name(o.right);
  Registry reg = reroot(parse_walk(o.root), base_window(o));
  const Decomposition d = product_decompose(a, b, reg);
  Json j = {{"left", a.to_string()}, {"right", b.to_string()}};
  j.update(d.to_json());
  emit(out, j);
  return kOk;
}

/// Runs the command line; returns the process exit status.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  Options o;
  o.budget_terms = budget_from_env(5'000'000);
  CLI::App app{"Quantum cluster algebra of type A2(1): expansions, mutation, identity checks, basis"};
  app.require_subcommand(1);
  app.add_option("--budget-terms", o.budget_terms, "Cap on stored (exponent, v-power) pairs")->check(CLI::PositiveNumber);
  app.add_option("--x-min", o.x_min, "Smallest generated X index");
  app.add_option("--x-max", o.x_max, "Largest generated X index");
  app.add_option("--u-max", o.u_max, "Largest generated u index")->check(CLI::NonNegativeNumber);
  const auto formats = CLI::IsMember({"json", "pretty"});

  auto* expand_cmd = app.add_subcommand("expand", "Expand a generator or basis label in the torus of a root seed");
  expand_cmd->add_option("--element", o.element, "X:<int>, U:<uint>, W, Z or Y:(a,b,c)");
  expand_cmd->add_option("--label", o.label, "cm:<walk>:<a,b,c>, uw:<n>:<k> or uz:<n>:<k>");
  expand_cmd->add_option("--root", o.root, "Walk from the initial seed to the root seed");
  expand_cmd->add_option("--format", o.format)->check(formats);

  auto* mutate_cmd = app.add_subcommand("mutate", "Apply a mutation walk to the initial seed");
  mutate_cmd->add_option("--walk", o.walk, "Comma-separated directions in {1,2,3}");
  mutate_cmd->add_option("--format", o.format)->check(formats);

  auto* verify_cmd = app.add_subcommand("verify", "Run an identity suite and print its report");
  verify_cmd->add_option("--suite", o.suite)->required()->check(CLI::IsMember(suite_names()));
  verify_cmd->add_option("--max-n", o.max_n)->check(CLI::NonNegativeNumber);
  verify_cmd->add_option("--max-m", o.max_m)->check(CLI::NonNegativeNumber);
  verify_cmd->add_option("--jobs", o.jobs)->check(CLI::PositiveNumber);
  verify_cmd->add_option("--lo", o.lo, "Lower index for seed-table, compatibility, cross-oracle");
  verify_cmd->add_option("--hi", o.hi, "Upper index for seed-table, compatibility, cross-oracle");
  verify_cmd->add_option("--depth", o.depth, "basis: walk depth")->check(CLI::NonNegativeNumber);
  verify_cmd->add_option("--exp-cap", o.exp_cap, "basis: exponent cap")->check(CLI::NonNegativeNumber);
  verify_cmd->add_option("--max-k", o.max_k, "basis: power of w and z")->check(CLI::NonNegativeNumber);
  verify_cmd->add_option("--roots", o.roots, "basis: ';'-separated root walks");

  auto* basis_cmd = app.add_subcommand("basis", "Enumerate basis labels and check them");
  basis_cmd->add_option("--label", o.label, "Check a single label");
  basis_cmd->add_option("--depth", o.depth)->check(CLI::NonNegativeNumber);
  basis_cmd->add_option("--exp-cap", o.exp_cap)->check(CLI::NonNegativeNumber);
  basis_cmd->add_option("--max-n", o.max_n)->check(CLI::NonNegativeNumber);
  basis_cmd->add_option("--max-k", o.max_k)->check(CLI::NonNegativeNumber);
  basis_cmd->add_option("--roots", o.roots, "';'-separated root walks");

  auto* product_cmd = app.add_subcommand("product", "Decompose a product of two generators in the basis");
  product_cmd->add_option("--left", o.left)->required();
  product_cmd->add_option("--right", o.right)->required();
  product_cmd->add_option("--root", o.root);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (expand_cmd->parsed()) return cmd_expand(o, out);
    if (mutate_cmd->parsed()) return cmd_mutate(o, out);
    if (verify_cmd->parsed()) return cmd_verify(o, out);
    if (basis_cmd->parsed()) return cmd_basis(o, out);
    if (product_cmd->parsed()) return cmd_product(o, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const BadDirection& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const GenerationBudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kMathFailure;
  }
  return kUsage;
}

}  // namespace qca::cli
