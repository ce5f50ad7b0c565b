#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "awfair/errors.hpp"
#include "awfair/fairness.hpp"
#include "awfair/game.hpp"
#include "awfair/parallel.hpp"
#include "awfair/rational.hpp"
#include "awfair/valuation.hpp"

namespace awfair {

struct BestResponse {
  Valuation strategy;
  Rational utility;
};

/// Certificate that a profile is not an equilibrium.
struct DeviationWitness {
  Player player = Player::alice;
  Valuation deviation;
  Rational gain;
  bool operator==(const DeviationWitness&) const = default;
};

struct EquilibriumReport {
  StrategyProfile profile;
  Allocation allocation;
  PerPlayer<Rational> gaps;  // best unilateral true-utility gain, clamped at 0
  bool is_pure_nash = false;
  FairnessReport fairness;  // at the true valuations
  Rational welfare;
  bool operator==(const EquilibriumReport&) const = default;
};

struct NashCheck {
  EquilibriumReport report;
  std::optional<DeviationWitness> witness;
};

inline constexpr std::uint64_t default_profile_budget = 4'000'000;

namespace detail {

inline std::int64_t discrete_points(const Game& game, const char* what) {
  const auto p = game.points();
  if (!p) throw NotApplicable(std::string(what) + " needs the discrete variant");
  return *p;
}

/// Deviation grid for a game: the strategy space itself for discrete games,
/// denominator `grid` for continuous ones (default 10 times the common
/// denominator of the true valuations).
inline std::int64_t deviation_denominator(const Game& game, std::optional<std::int64_t> grid) {
  if (grid) return *grid;
  if (const auto p = game.points()) return *p;
  const Integer d = lcm(game.truth(Player::alice).common_denominator(),
                        game.truth(Player::bob).common_denominator());
  return 10 * d.convert_to<std::int64_t>();
}

inline EquilibriumReport make_report(const Game& game, const StrategyProfile& profile,
                                     const AwResult& result, PerPlayer<Rational> gaps) {
  EquilibriumReport r;
  r.profile = profile;
  r.allocation = result.allocation;
  r.is_pure_nash = gaps.alice == 0 && gaps.bob == 0;
  r.gaps = std::move(gaps);
  r.fairness = evaluate_fairness(game.truth(Player::alice), game.truth(Player::bob), r.allocation);
  r.welfare = r.fairness.social_welfare;
  return r;
}

}  // namespace detail

/// Exhaustive best response of `player` over `space`; among equal utilities the
/// first strategy in `space` wins.
inline BestResponse best_response_over(const Game& game, Player player,
                                       const Valuation& opponent_strategy,
                                       const std::vector<Valuation>& space, unsigned threads = 0) {
  if (space.empty()) throw InfeasibleStrategySpace("empty strategy space");
  std::vector<Rational> values(space.size());
  parallel_for(space.size(), threads, [&](std::size_t k) {
    const StrategyProfile profile = player == Player::alice
                                        ? StrategyProfile{space[k], opponent_strategy}
                                        : StrategyProfile{opponent_strategy, space[k]};
    values[k] = true_utility(game, profile, player);
  });
  const auto best = std::max_element(values.begin(), values.end());  // first maximum
  const auto k = static_cast<std::size_t>(best - values.begin());
  return BestResponse{space[k], values[k]};
}

inline BestResponse best_response(const Game& game, Player player,
                                  const Valuation& opponent_strategy, unsigned threads = 0) {
  const auto points = detail::discrete_points(game, "best_response");
  return best_response_over(game, player, opponent_strategy,
                            enumerate_strategies(game.items(), points), threads);
}

/// Deviation gaps of both players at `profile`.
///
/// Discrete games scan their own strategy space and the result decides pure
/// Nash. Continuous games scan the grid of denominator `grid` and the result is
/// only a certificate relative to that grid.
inline NashCheck check_profile(const Game& game, const StrategyProfile& profile,
                               std::optional<std::int64_t> grid = std::nullopt,
                               unsigned threads = 0) {
  const auto space = enumerate_strategies(game.items(), detail::deviation_denominator(game, grid));
  const auto current = play(game, profile);
  const PerPlayer<Rational> now{utility(game.truth(Player::alice), current.allocation.alice()),
                                utility(game.truth(Player::bob), current.allocation.bob())};
  PerPlayer<Rational> gaps;
  std::optional<DeviationWitness> witness;
  for (Player p : {Player::alice, Player::bob}) {
    auto br = best_response_over(game, p, profile.of(other(p)), space, threads);
    const Rational gain = br.utility - now[p];
    gaps[p] = gain > 0 ? gain : Rational(0);
    if (gain > 0 && (!witness || gain > witness->gain)) {
      witness = DeviationWitness{p, std::move(br.strategy), gain};
    }
  }
  return NashCheck{detail::make_report(game, profile, current, std::move(gaps)), std::move(witness)};
}

inline NashCheck is_pure_nash(const Game& game, const StrategyProfile& profile,
                              std::optional<std::int64_t> grid = std::nullopt, unsigned threads = 0) {
  return check_profile(game, profile, grid, threads);
}

struct SearchOptions {
  std::uint64_t budget = default_profile_budget;  // max profiles evaluated
  unsigned threads = 0;                           // 0: hardware concurrency
};

/// Every pure Nash equilibrium of a discrete game, in (Alice strategy, Bob
/// strategy) enumeration order. All |S|^2 outcomes are tabulated once; a cell
/// is an equilibrium when it attains both its column maximum for Alice and its
/// row maximum for Bob.
inline std::vector<EquilibriumReport> enumerate_pure_nash(const Game& game,
                                                          const SearchOptions& options = {}) {
  const auto points = detail::discrete_points(game, "enumerate_pure_nash");
  const std::uint64_t n = strategy_count(game.items(), points);
  const std::uint64_t profiles = n > (UINT64_MAX / std::max<std::uint64_t>(n, 1)) ? UINT64_MAX : n * n;
  if (profiles > options.budget) throw SearchBudgetExceeded(profiles, options.budget);

  const auto space = enumerate_strategies(game.items(), points);
  const std::size_t s = space.size();
  std::vector<Rational> alice_u(s * s);
  std::vector<Rational> bob_u(s * s);
  parallel_for(s, options.threads, [&](std::size_t i) {
    for (std::size_t j = 0; j < s; ++j) {
      const auto result = adjusted_winner(space[i], space[j], game.rule());
      alice_u[i * s + j] = utility(game.truth(Player::alice), result.allocation.alice());
      bob_u[i * s + j] = utility(game.truth(Player::bob), result.allocation.bob());
    }
  });

  std::vector<Rational> alice_best(s, Rational(-1));  // per Bob strategy j
  std::vector<Rational> bob_best(s, Rational(-1));    // per Alice strategy i
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t j = 0; j < s; ++j) {
      alice_best[j] = std::max(alice_best[j], alice_u[i * s + j]);
      bob_best[i] = std::max(bob_best[i], bob_u[i * s + j]);
    }
  }

  std::vector<EquilibriumReport> out;
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t j = 0; j < s; ++j) {
      if (alice_u[i * s + j] != alice_best[j] || bob_u[i * s + j] != bob_best[i]) continue;
      StrategyProfile profile{space[i], space[j]};
      const auto result = play(game, profile);
      out.push_back(detail::make_report(game, profile, result, {Rational(0), Rational(0)}));
    }
  }
  return out;
}

struct AuditEntry {
  EquilibriumReport equilibrium;
  std::vector<std::string> violations;
  bool operator==(const AuditEntry&) const = default;
};

/// Envy-freeness (any rule) and, for informed rules, Pareto optimality of every
/// pure equilibrium, at the true valuations. Both are expected to hold; any
/// violation is listed.
inline std::vector<AuditEntry> equilibrium_fairness_audit(const Game& game,
                                                          const SearchOptions& options = {}) {
  std::vector<AuditEntry> out;
  for (auto& eq : enumerate_pure_nash(game, options)) {
    AuditEntry entry{std::move(eq), {}};
    const auto& f = entry.equilibrium.fairness;
    if (!f.envy_free.alice) entry.violations.emplace_back("alice envies bob at true valuations");
    if (!f.envy_free.bob) entry.violations.emplace_back("bob envies alice at true valuations");
    if (game.rule().is_informed() && !f.pareto_optimal) {
      entry.violations.emplace_back("not Pareto optimal at true valuations");
    }
    out.push_back(std::move(entry));
  }
  return out;
}

/// Welfare of the truthful outcome AW(a, b) under the game's tie rule.
inline Rational truthful_welfare(const Game& game) {
  const auto& a = game.truth(Player::alice);
  const auto& b = game.truth(Player::bob);
  return social_welfare(a, b, adjusted_winner(a, b, game.rule()).allocation);
}

/// Truthful welfare over the welfare at `profile`.
inline Rational welfare_ratio(const Game& game, const StrategyProfile& profile) {
  const auto& a = game.truth(Player::alice);
  const auto& b = game.truth(Player::bob);
  return truthful_welfare(game) / social_welfare(a, b, play(game, profile).allocation);
}

struct PriceOfAnarchy {
  Rational truthful_welfare;
  std::optional<Rational> worst_equilibrium_welfare;  // empty when there is no PNE
  std::optional<Rational> ratio;
  std::size_t equilibrium_count = 0;
  bool operator==(const PriceOfAnarchy&) const = default;
};

inline PriceOfAnarchy price_of_anarchy(const Game& game, const SearchOptions& options = {}) {
  PriceOfAnarchy out;
  out.truthful_welfare = truthful_welfare(game);
  const auto equilibria = enumerate_pure_nash(game, options);
  out.equilibrium_count = equilibria.size();
  for (const auto& eq : equilibria) {
    if (!out.worst_equilibrium_welfare || eq.welfare < *out.worst_equilibrium_welfare) {
      out.worst_equilibrium_welfare = eq.welfare;
    }
  }
  if (out.worst_equilibrium_welfare) out.ratio = out.truthful_welfare / *out.worst_equilibrium_welfare;
  return out;
}

}  // namespace awfair
