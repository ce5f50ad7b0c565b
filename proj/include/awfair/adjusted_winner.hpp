#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <vector>

#include "awfair/ordering.hpp"
#include "awfair/rational.hpp"
#include "awfair/valuation.hpp"

namespace awfair {

struct AwResult {
  Allocation allocation;
  OrderedOutcome outcome;
};

/// Adjusted Winner on declared valuations (x for Alice, y for Bob), in its
/// ordered form: sort by declared ratio, place the equitable boundary.
inline AwResult adjusted_winner(const Valuation& x, const Valuation& y, const TieBreakRule& rule) {
  OrderedOutcome outcome;
  outcome.permutation = ratio_order(x, y, rule);
  auto cut = equitable_boundary(x, y, outcome.permutation);
  outcome.boundary = cut.position;
  outcome.split_fraction = std::move(cut.fraction);
  Allocation allocation = outcome.allocation();
  return AwResult{std::move(allocation), std::move(outcome)};
}

/// The procedure as originally stated: each item to its higher declarer (ties
/// to Bob), then the player who is ahead hands over items, lowest-advantage
/// ratio first, until declared utilities match. When Bob is ahead the transfer
/// runs the other way.
///
/// Items with equal ratios are handed over in the order the same tie rule
/// would place them, so the result is comparable with adjusted_winner().
inline Allocation two_phase_adjusted_winner(const Valuation& x, const Valuation& y,
                                            const TieBreakRule& rule) {
  detail::check_same_size(x, y);
  const std::size_t m = x.size();

  std::vector<std::size_t> tie_rank(m);
  if (rule.is_informed()) {
    const auto order = informed_tie_order(x, y, rule.truth(), rule.designated());
    for (std::size_t k = 0; k < m; ++k) tie_rank[order[k]] = k;
  } else {
    std::iota(tie_rank.begin(), tie_rank.end(), std::size_t{0});
  }

  // Phase 1
  std::vector<Rational> alice(m, Rational(0));
  Rational alice_utility = 0;
  Rational bob_utility = 0;
  std::vector<std::size_t> alice_items;
  std::vector<std::size_t> bob_items;
  for (std::size_t i = 0; i < m; ++i) {
    if (x[i] > y[i]) {
      alice[i] = 1;
      alice_utility += x[i];
      alice_items.push_back(i);
    } else {
      bob_utility += y[i];
      bob_items.push_back(i);
    }
  }

  // Phase 2
  const bool alice_ahead = alice_utility > bob_utility;
  Rational gap = alice_ahead ? alice_utility - bob_utility : bob_utility - alice_utility;
  if (gap == 0) return Allocation::from_alice_shares(std::move(alice));

  // Giver's items, increasing in the giver's own ratio (x/y for Alice, y/x for Bob).
  std::vector<std::size_t> givers = alice_ahead ? alice_items : bob_items;
  std::sort(givers.begin(), givers.end(), [&](std::size_t i, std::size_t j) {
    const int c = alice_ahead ? compare_ratios(x[i], y[i], x[j], y[j])
                              : compare_ratios(y[i], x[i], y[j], x[j]);
    if (c != 0) return c < 0;
    // Alice gives back from the end of her prefix, Bob from the front of his suffix.
    return alice_ahead ? tie_rank[i] > tie_rank[j] : tie_rank[i] < tie_rank[j];
  });

  for (auto item : givers) {
    // Moving the whole item closes the gap by x_i + y_i.
    const Rational whole = x[item] + y[item];
    if (gap >= whole) {
      alice[item] = alice_ahead ? 0 : 1;
      gap -= whole;
      if (gap == 0) break;
    } else {
      const Rational moved = gap / whole;
      alice[item] = alice_ahead ? 1 - moved : moved;
      break;
    }
  }
  return Allocation::from_alice_shares(std::move(alice));
}

}  // namespace awfair
