#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <variant>
#include <vector>

#include "awfair/adjusted_winner.hpp"
#include "awfair/errors.hpp"
#include "awfair/ordering.hpp"
#include "awfair/rational.hpp"
#include "awfair/valuation.hpp"

namespace awfair {

/// Strategies are positive integer point vectors summing to `points`.
struct Discrete {
  std::int64_t points = 0;
  bool operator==(const Discrete&) const = default;
};

/// Strategies are arbitrary positive rational vectors summing to 1.
struct Continuous {
  bool operator==(const Continuous&) const = default;
};

using Variant = std::variant<Discrete, Continuous>;

/// True valuations, strategy space and tie rule.
class Game {
 public:
  Game(Valuation truth_alice, Valuation truth_bob, Variant variant, TieBreakRule rule)
      : truth_{std::move(truth_alice), std::move(truth_bob)},
        variant_(variant),
        rule_(std::move(rule)) {
    detail::check_same_size(truth_.alice, truth_.bob);
    if (const auto* d = std::get_if<Discrete>(&variant_)) {
      if (d->points < static_cast<std::int64_t>(items())) {
        throw InfeasibleStrategySpace("need at least one point per item: " +
                                      std::to_string(d->points) + " points for " +
                                      std::to_string(items()) + " items");
      }
    }
    if (rule_.is_informed() && !(rule_.truth() == truth_[rule_.designated()])) {
      throw InvalidValuation("informed tie-breaking must carry the designated player's true valuation");
    }
  }

  /// Convenience for informed rules: the designated player's truth is taken from the game.
  static Game informed(Valuation truth_alice, Valuation truth_bob, Variant variant,
                       Player designated) {
    const Valuation& t = designated == Player::alice ? truth_alice : truth_bob;
    auto rule = TieBreakRule::informed(designated, t);
    return Game(std::move(truth_alice), std::move(truth_bob), variant, std::move(rule));
  }

  std::size_t items() const { return truth_.alice.size(); }
  const Valuation& truth(Player p) const { return truth_[p]; }
  const PerPlayer<Valuation>& truths() const { return truth_; }
  const Variant& variant() const { return variant_; }
  const TieBreakRule& rule() const { return rule_; }

  bool is_discrete() const { return std::holds_alternative<Discrete>(variant_); }
  std::optional<std::int64_t> points() const {
    if (const auto* d = std::get_if<Discrete>(&variant_)) return d->points;
    return std::nullopt;
  }

 private:
  PerPlayer<Valuation> truth_;
  Variant variant_;
  TieBreakRule rule_;
};

/// Declared valuations: x for Alice, y for Bob.
struct StrategyProfile {
  Valuation x;
  Valuation y;

  const Valuation& of(Player p) const { return p == Player::alice ? x : y; }
  StrategyProfile with(Player p, Valuation s) const {
    StrategyProfile out = *this;
    (p == Player::alice ? out.x : out.y) = std::move(s);
    return out;
  }
  bool operator==(const StrategyProfile&) const = default;
};

inline AwResult play(const Game& game, const StrategyProfile& profile) {
  return adjusted_winner(profile.x, profile.y, game.rule());
}

/// True utilities of the outcome at a declared profile.
inline PerPlayer<Rational> true_utilities(const Game& game, const StrategyProfile& profile) {
  const auto result = play(game, profile);
  return {utility(game.truth(Player::alice), result.allocation.alice()),
          utility(game.truth(Player::bob), result.allocation.bob())};
}

inline Rational true_utility(const Game& game, const StrategyProfile& profile, Player p) {
  const auto result = play(game, profile);
  return utility(game.truth(p), result.allocation.bundle(p));
}

/// C(points-1, items-1), saturating at the uint64 maximum.
inline std::uint64_t strategy_count(std::size_t items, std::int64_t points) {
  if (items == 0 || points < static_cast<std::int64_t>(items)) return 0;
  const std::uint64_t n = static_cast<std::uint64_t>(points - 1);
  std::uint64_t k = items - 1;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // result * (n - k + i) / i stays integral at every step
    const std::uint64_t factor = n - k + i;
    if (result > std::numeric_limits<std::uint64_t>::max() / factor) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    result = result * factor / i;
  }
  return result;
}

/// Every composition of `points` into `items` positive parts, normalized, in
/// lexicographic order of the point vectors.
inline std::vector<Valuation> enumerate_strategies(std::size_t items, std::int64_t points) {
  if (items == 0 || points < static_cast<std::int64_t>(items)) {
    throw InfeasibleStrategySpace(std::to_string(points) + " points cannot give every one of " +
                                  std::to_string(items) + " items a positive value");
  }
  std::vector<Valuation> out;
  out.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(strategy_count(items, points), 1u << 20)));
  std::vector<std::int64_t> parts(items, 1);
  parts.back() = points - static_cast<std::int64_t>(items) + 1;
  for (;;) {
    out.push_back(Valuation::from_points(parts));
    // Successor: the part just before the last part > 1 grows by one, everything
    // after it drops to 1 and the last part takes the remainder.
    std::size_t end = items;
    while (end > 0 && parts[end - 1] == 1) --end;
    if (end <= 1) break;
    const std::size_t k = end - 2;
    std::int64_t suffix = 0;
    for (std::size_t t = k + 1; t < items; ++t) suffix += parts[t];
    ++parts[k];
    std::fill(parts.begin() + static_cast<std::ptrdiff_t>(k) + 1, parts.end() - 1, 1);
    parts.back() = suffix - 1 - static_cast<std::int64_t>(items - 2 - k);
  }
  return out;
}

/// Largest sum_i values_i t_i subject to sum_i weights_i t_i <= budget, t in [0,1]^m.
/// Greedy by values_i/weights_i (ties by index). Returns the value and the fill
/// order used.
inline std::pair<Rational, Permutation> fractional_knapsack(const Valuation& weights,
                                                            const Valuation& values,
                                                            const Rational& budget) {
  detail::check_same_size(weights, values);
  Permutation order(weights.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return compare_ratios(values[i], weights[i], values[j], weights[j]) > 0;
  });
  Rational room = budget;
  Rational total = 0;
  for (auto i : order) {
    if (room <= 0) break;
    if (weights[i] <= room) {
      total += values[i];
      room -= weights[i];
    } else {
      total += values[i] * room / weights[i];
      room = 0;
    }
  }
  return {total, order};
}

/// Upper bound on what `p` can get, measured by `truth`, against any declaration
/// of the opponent's `opponent_declared`: AW is envy-free in declared values, so
/// p's bundle weighs at most 1/2 under the opponent's declaration. The bound is
/// approached by declarations close to `opponent_declared`.
inline Rational utility_ceiling(const Valuation& truth, const Valuation& opponent_declared) {
  return fractional_knapsack(opponent_declared, truth, Rational(1, 2)).first;
}

}  // namespace awfair
