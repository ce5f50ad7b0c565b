#pragma once

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "awfair/awfair.hpp"
#include "awfair/cli/instance.hpp"

namespace awfair::cli {

enum class Command { allocate, audit, equilibria, poa, epsilon_nash, deviate2 };

inline const std::vector<std::pair<std::string, Command>>& command_names() {
  static const std::vector<std::pair<std::string, Command>> names{
      {"allocate", Command::allocate}, {"audit", Command::audit},
      {"equilibria", Command::equilibria}, {"poa", Command::poa},
      {"epsilon-nash", Command::epsilon_nash}, {"deviate2", Command::deviate2}};
  return names;
}

inline Command parse_command(std::string_view name) {
  for (const auto& [n, c] : command_names()) {
    if (n == name) return c;
  }
  throw ParseError("unknown command '" + std::string(name) + "'");
}

inline std::string to_string(Command c) {
  for (const auto& [n, cmd] : command_names()) {
    if (cmd == c) return n;
  }
  return "?";
}

struct Options {
  Rational epsilon{1, 100};
  std::optional<std::int64_t> deviation_grid;
  std::uint64_t budget = default_profile_budget;
  unsigned threads = 0;
};

struct AllocateReport {
  std::string rule;
  StrategyProfile declared;
  OrderedOutcome outcome;
  Allocation allocation;
  FairnessReport fairness;  // at the true valuations
  bool operator==(const AllocateReport&) const = default;
};

struct AuditReport {
  Allocation allocation;
  FairnessReport fairness;
  std::optional<ExchangeWitness> witness;
  bool operator==(const AuditReport&) const = default;
};

struct EquilibriaReport {
  std::string rule;
  std::int64_t points = 0;
  std::vector<AuditEntry> equilibria;
  bool operator==(const EquilibriaReport&) const = default;
};

struct PoaReport {
  std::string rule;
  std::int64_t points = 0;
  PriceOfAnarchy poa;
  bool operator==(const PoaReport&) const = default;
};

struct EpsilonNashReport {
  EpsilonNash construction;
  std::int64_t grid = 0;             // deviation grid denominator used for the measured gaps
  PerPlayer<Rational> measured_gaps;
  bool certified = false;            // both measured gaps <= epsilon
  bool operator==(const EpsilonNashReport&) const = default;
};

struct Deviate2Report {
  StrategyProfile profile;
  DeviationWitness witness;
  Rational before;
  Rational after;
  bool operator==(const Deviate2Report&) const = default;
};

using Report = std::variant<AllocateReport, AuditReport, EquilibriaReport, PoaReport, EpsilonNashReport,
                            Deviate2Report>;

inline std::string rule_name(const TieBreakRule& rule) {
  if (!rule.is_informed()) return "lexicographic";
  return "informed(" + to_string(rule.designated()) + ")";
}

inline Report run_command(Command command, const Instance& inst, const Options& options = {}) {
  const Valuation& a = inst.alice;
  const Valuation& b = inst.bob;
  const SearchOptions search{options.budget, options.threads};
  switch (command) {
    case Command::allocate: {
      const auto profile = inst.declared().value_or(StrategyProfile{a, b});
      const auto rule = inst.rule();
      auto r = adjusted_winner(profile.x, profile.y, rule);
      return AllocateReport{rule_name(rule), profile, r.outcome, r.allocation,
                            evaluate_fairness(a, b, r.allocation)};
    }
    case Command::audit: {
      if (!inst.allocation) throw NotApplicable("audit needs an 'allocation' line in the instance");
      const auto w = Allocation::from_alice_shares(*inst.allocation);
      return AuditReport{w, evaluate_fairness(a, b, w), pareto_improving_exchange(a, b, w)};
    }
    case Command::equilibria: {
      const auto game = inst.game();
      if (!game.points()) throw NotApplicable("equilibria needs 'points' (or --points)");
      return EquilibriaReport{rule_name(game.rule()), *game.points(), equilibrium_fairness_audit(game, search)};
    }
    case Command::poa: {
      const auto game = inst.game();
      if (!game.points()) throw NotApplicable("poa needs 'points' (or --points)");
      return PoaReport{rule_name(game.rule()), *game.points(), price_of_anarchy(game, search)};
    }
    case Command::epsilon_nash: {
      auto eq = construct_epsilon_nash(a, b, options.epsilon);
      const Game game(a, b, Continuous{}, TieBreakRule::lexicographic());
      const std::int64_t grid = options.deviation_grid.value_or(
          inst.points ? 10 * *inst.points : awfair::detail::deviation_denominator(game, std::nullopt));
      const std::uint64_t n = strategy_count(a.size(), grid);
      if (n > options.budget / 2) throw SearchBudgetExceeded(n > UINT64_MAX / 2 ? UINT64_MAX : 2 * n, options.budget);
      const auto check = check_profile(game, eq.profile, grid, options.threads);
      const auto gaps = check.report.gaps;
      const bool ok = gaps.alice <= eq.epsilon && gaps.bob <= eq.epsilon;
      return EpsilonNashReport{std::move(eq), grid, gaps, ok};
    }
    case Command::deviate2: {
      const auto profile = inst.declared();
      if (!profile) throw NotApplicable("deviate2 needs 'declared_alice' and 'declared_bob'");
      auto w = improving_deviation_two_items(a, b, *profile);
      const Game game(a, b, Continuous{}, TieBreakRule::lexicographic());
      const Rational before = true_utility(game, *profile, w.player);
      const Rational after = before + w.gain;
      return Deviate2Report{*profile, std::move(w), before, after};
    }
  }
  throw ParseError("unknown command");
}

// ---------------------------------------------------------------------------
// machine format: JSON, exact "n/d" strings, keys sorted

namespace json_io {

using nlohmann::json;

inline json put(const Rational& r) { return to_string(r); }
inline json put(const Integer& i) { return i.str(); }
inline json put(Player p) { return to_string(p); }

inline json put(const Valuation& v) {
  json out = json::array();
  for (const auto& x : v.values()) out.push_back(put(x));
  return out;
}

inline json put_shares(const std::vector<Rational>& shares) {
  json out = json::array();
  for (const auto& x : shares) out.push_back(put(x));
  return out;
}

inline json put(const Allocation& w) {
  return put_shares(std::vector<Rational>(w.alice().begin(), w.alice().end()));
}

template <typename T>
json put(const PerPlayer<T>& p) {
  if constexpr (std::is_same_v<T, bool>) {
    return json{{"alice", p.alice}, {"bob", p.bob}};
  } else {
    return json{{"alice", put(p.alice)}, {"bob", put(p.bob)}};
  }
}

inline json put(const StrategyProfile& p) { return json{{"alice", put(p.x)}, {"bob", put(p.y)}}; }

inline json put(const OrderedOutcome& o) {
  return json{{"order", o.permutation}, {"boundary", o.boundary}, {"split_fraction", put(o.split_fraction)}};
}

inline json put(const Boundary& b) { return json{{"position", b.position}, {"fraction", put(b.fraction)}}; }

inline json put(const FairnessReport& f) {
  return json{{"utilities", put(f.utilities)},
              {"envy_free", put(f.envy_free)},
              {"proportional", put(f.proportional)},
              {"equitable", f.equitable},
              {"pareto_optimal", f.pareto_optimal},
              {"minimally_fractional", f.minimally_fractional},
              {"social_welfare", put(f.social_welfare)},
              {"maxmin_value", put(f.maxmin_value)}};
}

inline json put(const ExchangeWitness& e) {
  return json{{"item_i", e.item_i}, {"item_j", e.item_j}, {"lambda_i", put(e.lambda_i)}, {"lambda_j", put(e.lambda_j)}};
}

inline json put(const DeviationWitness& d) {
  return json{{"player", put(d.player)}, {"deviation", put(d.deviation)}, {"gain", put(d.gain)}};
}

inline json put(const EquilibriumReport& e) {
  return json{{"profile", put(e.profile)}, {"allocation", put(e.allocation)}, {"gaps", put(e.gaps)},
              {"is_pure_nash", e.is_pure_nash}, {"fairness", put(e.fairness)}, {"welfare", put(e.welfare)}};
}

inline json put(const AuditEntry& a) { return json{{"equilibrium", put(a.equilibrium)}, {"violations", a.violations}}; }

template <typename T>
json put_optional(const std::optional<T>& v) {
  return v ? put(*v) : json(nullptr);
}

inline Rational get_rational(const json& j) { return parse_rational(j.get<std::string>()); }
inline Integer get_integer(const json& j) { return Integer{j.get<std::string>()}; }
inline Player get_player(const json& j) { return parse_player(j.get<std::string>()); }

inline Valuation get_valuation(const json& j) {
  std::vector<Rational> values;
  for (const auto& x : j) values.push_back(get_rational(x));
  return Valuation::from_values(std::move(values));
}

inline std::vector<Rational> get_shares(const json& j) {
  std::vector<Rational> out;
  for (const auto& x : j) out.push_back(get_rational(x));
  return out;
}

inline Allocation get_allocation(const json& j) { return Allocation::from_alice_shares(get_shares(j)); }

inline PerPlayer<Rational> get_rationals(const json& j) {
  return {get_rational(j.at("alice")), get_rational(j.at("bob"))};
}

inline PerPlayer<bool> get_flags(const json& j) { return {j.at("alice").get<bool>(), j.at("bob").get<bool>()}; }

inline StrategyProfile get_profile(const json& j) {
  return {get_valuation(j.at("alice")), get_valuation(j.at("bob"))};
}

inline OrderedOutcome get_outcome(const json& j) {
  return {j.at("order").get<Permutation>(), j.at("boundary").get<std::size_t>(), get_rational(j.at("split_fraction"))};
}

inline Boundary get_boundary(const json& j) {
  return {j.at("position").get<std::size_t>(), get_rational(j.at("fraction"))};
}

inline FairnessReport get_fairness(const json& j) {
  FairnessReport f;
  f.utilities = get_rationals(j.at("utilities"));
  f.envy_free = get_flags(j.at("envy_free"));
  f.proportional = get_flags(j.at("proportional"));
  f.equitable = j.at("equitable").get<bool>();
  f.pareto_optimal = j.at("pareto_optimal").get<bool>();
  f.minimally_fractional = j.at("minimally_fractional").get<bool>();
  f.social_welfare = get_rational(j.at("social_welfare"));
  f.maxmin_value = get_rational(j.at("maxmin_value"));
  return f;
}

inline EquilibriumReport get_equilibrium(const json& j) {
  EquilibriumReport e;
  e.profile = get_profile(j.at("profile"));
  e.allocation = get_allocation(j.at("allocation"));
  e.gaps = get_rationals(j.at("gaps"));
  e.is_pure_nash = j.at("is_pure_nash").get<bool>();
  e.fairness = get_fairness(j.at("fairness"));
  e.welfare = get_rational(j.at("welfare"));
  return e;
}

inline json put(const AllocateReport& r) {
  return json{{"rule", r.rule}, {"declared", put(r.declared)}, {"outcome", put(r.outcome)},
              {"allocation", put(r.allocation)}, {"fairness", put(r.fairness)}};
}

inline json put(const AuditReport& r) {
  return json{{"allocation", put(r.allocation)}, {"fairness", put(r.fairness)}, {"witness", put_optional(r.witness)}};
}

inline json put(const EquilibriaReport& r) {
  json list = json::array();
  for (const auto& e : r.equilibria) list.push_back(put(e));
  return json{{"rule", r.rule}, {"points", r.points}, {"count", r.equilibria.size()}, {"equilibria", list}};
}

inline json put(const PoaReport& r) {
  return json{{"rule", r.rule},
              {"points", r.points},
              {"truthful_welfare", put(r.poa.truthful_welfare)},
              {"worst_equilibrium_welfare", put_optional(r.poa.worst_equilibrium_welfare)},
              {"ratio", put_optional(r.poa.ratio)},
              {"count", r.poa.equilibrium_count}};
}

inline json put(const EpsilonNashReport& r) {
  const auto& c = r.construction;
  return json{{"epsilon", put(c.epsilon)},
              {"profile", put(c.profile)},
              {"order", c.order},
              {"target_boundary", put(c.target_boundary)},
              {"achieved_boundary", put(c.achieved_boundary)},
              {"step", put(c.step)},
              {"points", put(c.points)},
              {"gap_bound", put(c.gap_bound)},
              {"grid", r.grid},
              {"measured_gaps", put(r.measured_gaps)},
              {"certified", r.certified}};
}

inline json put(const Deviate2Report& r) {
  return json{{"profile", put(r.profile)}, {"witness", put(r.witness)}, {"before", put(r.before)}, {"after", put(r.after)}};
}

inline Report get_report(const json& j) {
  const auto command = parse_command(j.at("command").get<std::string>());
  switch (command) {
    case Command::allocate:
      return AllocateReport{j.at("rule").get<std::string>(), get_profile(j.at("declared")),
                            get_outcome(j.at("outcome")), get_allocation(j.at("allocation")),
                            get_fairness(j.at("fairness"))};
    case Command::audit: {
      AuditReport r{get_allocation(j.at("allocation")), get_fairness(j.at("fairness")), std::nullopt};
      if (const auto& w = j.at("witness"); !w.is_null()) {
        r.witness = ExchangeWitness{w.at("item_i").get<std::size_t>(), w.at("item_j").get<std::size_t>(),
                                    get_rational(w.at("lambda_i")), get_rational(w.at("lambda_j"))};
      }
      return r;
    }
    case Command::equilibria: {
      EquilibriaReport r{j.at("rule").get<std::string>(), j.at("points").get<std::int64_t>(), {}};
      for (const auto& e : j.at("equilibria")) {
        r.equilibria.push_back(
            AuditEntry{get_equilibrium(e.at("equilibrium")), e.at("violations").get<std::vector<std::string>>()});
      }
      if (r.equilibria.size() != j.at("count").get<std::size_t>()) throw ParseError("count mismatch", 0, "count");
      return r;
    }
    case Command::poa: {
      PoaReport r{j.at("rule").get<std::string>(), j.at("points").get<std::int64_t>(), {}};
      r.poa.truthful_welfare = get_rational(j.at("truthful_welfare"));
      if (!j.at("worst_equilibrium_welfare").is_null()) {
        r.poa.worst_equilibrium_welfare = get_rational(j.at("worst_equilibrium_welfare"));
      }
      if (!j.at("ratio").is_null()) r.poa.ratio = get_rational(j.at("ratio"));
      r.poa.equilibrium_count = j.at("count").get<std::size_t>();
      return r;
    }
    case Command::epsilon_nash: {
      EpsilonNashReport r;
      auto& c = r.construction;
      c.epsilon = get_rational(j.at("epsilon"));
      c.profile = get_profile(j.at("profile"));
      c.order = j.at("order").get<Permutation>();
      c.target_boundary = get_boundary(j.at("target_boundary"));
      c.achieved_boundary = get_boundary(j.at("achieved_boundary"));
      c.step = get_rational(j.at("step"));
      c.points = get_integer(j.at("points"));
      c.gap_bound = get_rationals(j.at("gap_bound"));
      r.grid = j.at("grid").get<std::int64_t>();
      r.measured_gaps = get_rationals(j.at("measured_gaps"));
      r.certified = j.at("certified").get<bool>();
      return r;
    }
    case Command::deviate2: {
      const auto& w = j.at("witness");
      return Deviate2Report{get_profile(j.at("profile")),
                            DeviationWitness{get_player(w.at("player")), get_valuation(w.at("deviation")),
                                             get_rational(w.at("gain"))},
                            get_rational(j.at("before")), get_rational(j.at("after"))};
    }
  }
  throw ParseError("unknown command");
}

}  // namespace json_io

inline Command command_of(const Report& r) {
  static constexpr Command order[] = {Command::allocate, Command::audit, Command::equilibria,
                                      Command::poa, Command::epsilon_nash, Command::deviate2};
  return order[r.index()];
}

inline std::string format_machine(const Report& report) {
  auto j = std::visit([](const auto& r) { return json_io::put(r); }, report);
  j["command"] = to_string(command_of(report));
  return j.dump(2) + "\n";
}

/// Inverse of format_machine.
inline Report parse_machine(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
    return json_io::get_report(j);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed report: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// human format: items numbered from 1, rationals with a decimal approximation

namespace human {

inline std::string yes(bool b) { return b ? "yes" : "no"; }

inline std::string vec(const Valuation& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + to_string(v[i]);
  return s + ")";
}

inline std::string items(const Permutation& order) {
  std::string s;
  for (std::size_t k = 0; k < order.size(); ++k) s += (k ? " " : "") + std::to_string(order[k] + 1);
  return s;
}

inline void bundles(std::ostream& os, const Allocation& w) {
  for (Player p : {Player::alice, Player::bob}) {
    os << "  " << (p == Player::alice ? "alice" : "bob  ") << ":";
    bool any = false;
    for (std::size_t i = 0; i < w.size(); ++i) {
      const Rational& s = w.bundle(p)[i];
      if (s == 0) continue;
      os << " item " << i + 1;
      if (s != 1) os << " (" << to_string(s) << ")";
      any = true;
    }
    if (!any) os << " nothing";
    os << '\n';
  }
}

inline void fairness(std::ostream& os, const FairnessReport& f) {
  os << "utilities     alice " << to_human(f.utilities.alice) << ", bob " << to_human(f.utilities.bob) << '\n';
  os << "welfare       " << to_human(f.social_welfare);
  std::ostringstream scaled;
  scaled << std::fixed << std::setprecision(1) << to_double(f.social_welfare * 100);
  os << "  [" << scaled.str() << " on the 0-100 scale]\n";
  os << "envy-free     alice " << yes(f.envy_free.alice) << ", bob " << yes(f.envy_free.bob) << '\n';
  os << "proportional  alice " << yes(f.proportional.alice) << ", bob " << yes(f.proportional.bob) << '\n';
  os << "equitable     " << yes(f.equitable) << '\n';
  os << "Pareto opt.   " << yes(f.pareto_optimal) << '\n';
  os << "min. fract.   " << yes(f.minimally_fractional) << '\n';
  os << "maxmin value  " << to_human(f.maxmin_value) << '\n';
}

inline void print(std::ostream& os, const AllocateReport& r) {
  os << "Adjusted Winner, " << r.rule << " tie-breaking\n";
  os << "declared      alice " << vec(r.declared.x) << ", bob " << vec(r.declared.y) << '\n';
  os << "order         " << items(r.outcome.permutation) << '\n';
  if (r.outcome.boundary < r.outcome.permutation.size()) {
    os << "boundary      item " << r.outcome.permutation[r.outcome.boundary] + 1 << ", alice keeps "
       << to_human(r.outcome.split_fraction) << '\n';
  }
  bundles(os, r.allocation);
  fairness(os, r.fairness);
}

inline void print(std::ostream& os, const AuditReport& r) {
  os << "Allocation audit at the true valuations\n";
  bundles(os, r.allocation);
  fairness(os, r.fairness);
  if (r.witness) {
    const auto& e = *r.witness;
    os << "improvement   bob gives " << to_string(e.lambda_i) << " of item " << e.item_i + 1 << ", alice gives "
       << to_string(e.lambda_j) << " of item " << e.item_j + 1 << '\n';
  }
}

inline void print(std::ostream& os, const EquilibriaReport& r) {
  os << r.equilibria.size() << " pure Nash equilibri" << (r.equilibria.size() == 1 ? "um" : "a") << " ("
     << r.rule << " tie-breaking, " << r.points << " points)\n";
  std::size_t n = 0;
  std::size_t flagged = 0;
  for (const auto& e : r.equilibria) {
    const auto& q = e.equilibrium;
    os << "#" << ++n << "  alice " << vec(q.profile.x) << "  bob " << vec(q.profile.y) << '\n';
    os << "    utilities " << to_human(q.fairness.utilities.alice) << " / " << to_human(q.fairness.utilities.bob)
       << ", welfare " << to_human(q.welfare) << '\n';
    for (const auto& v : e.violations) os << "    VIOLATION: " << v << '\n';
    if (!e.violations.empty()) ++flagged;
  }
  if (!r.equilibria.empty()) os << flagged << " with fairness violations\n";
}

inline void print(std::ostream& os, const PoaReport& r) {
  os << "Price of anarchy (" << r.rule << " tie-breaking, " << r.points << " points)\n";
  os << "equilibria       " << r.poa.equilibrium_count << '\n';
  os << "truthful welfare " << to_human(r.poa.truthful_welfare) << '\n';
  if (!r.poa.ratio) {
    os << "no pure Nash equilibrium\n";
    return;
  }
  os << "worst welfare    " << to_human(*r.poa.worst_equilibrium_welfare) << '\n';
  os << "ratio            " << to_human(*r.poa.ratio) << '\n';
}

inline void print(std::ostream& os, const EpsilonNashReport& r) {
  const auto& c = r.construction;
  os << "epsilon-Nash profile, lexicographic tie-breaking, epsilon " << to_human(c.epsilon) << '\n';
  os << "alice         " << vec(c.profile.x) << '\n';
  os << "bob           " << vec(c.profile.y) << '\n';
  os << "order         " << items(c.order) << '\n';
  os << "split item    " << c.order[c.target_boundary.position] + 1 << ", target " << to_human(c.target_boundary.fraction)
     << ", achieved " << to_human(c.achieved_boundary.fraction) << '\n';
  os << "P'            " << c.points.str() << '\n';
  os << "gap bound     alice " << to_human(c.gap_bound.alice) << ", bob " << to_human(c.gap_bound.bob) << '\n';
  os << "measured gap  alice " << to_human(r.measured_gaps.alice) << ", bob " << to_human(r.measured_gaps.bob)
     << " (deviations with denominator " << r.grid << ")\n";
  os << "certified     " << yes(r.certified) << '\n';
}

inline void print(std::ostream& os, const Deviate2Report& r) {
  os << "profile       alice " << vec(r.profile.x) << ", bob " << vec(r.profile.y) << '\n';
  os << to_string(r.witness.player) << " deviates to " << vec(r.witness.deviation) << '\n';
  os << "utility       " << to_human(r.before) << " -> " << to_human(r.after) << ", gain " << to_human(r.witness.gain)
     << '\n';
}

}  // namespace human

inline std::string format_human(const Report& report) {
  std::ostringstream os;
  std::visit([&](const auto& r) { human::print(os, r); }, report);
  return os.str();
}

enum class OutputMode { human, machine };

inline std::string format_report(const Report& report, OutputMode mode) {
  return mode == OutputMode::machine ? format_machine(report) : format_human(report);
}

}  // namespace awfair::cli
