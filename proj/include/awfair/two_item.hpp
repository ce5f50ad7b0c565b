#pragma once

#include <algorithm>
#include <vector>

#include "awfair/equilibrium.hpp"
#include "awfair/errors.hpp"
#include "awfair/game.hpp"
#include "awfair/rational.hpp"
#include "awfair/valuation.hpp"

namespace awfair {

/// Two-item continuous lexicographic games with b1 > a1 > a2 > b2 > 0 have no
/// pure equilibrium. For any profile x = (x, 1-x), y = (y, 1-y) this returns a
/// unilateral deviation with strictly positive gain:
///
///   x != y       Alice moves to (x+y)/2, pushing the boundary her way.
///   x = y < 1/2  Bob raises item 1 halfway to 1/2 and wins item 1 outright.
///   x = y > 1/2  whichever of 4x(x-a1)/(2x-a1) (Alice lowers x) and
///                4x(b1-x)/(2x-b1) (Bob raises y) is positive bounds delta;
///                delta is half the smallest of that bound, 1-x and 2x-1.
///   x = y = 1/2  Bob raises item 1 by min((b1-b2)/(2 b2), 1/4).
///
/// The gain is recomputed exactly from the two outcomes before returning.
inline DeviationWitness improving_deviation_two_items(const Valuation& a, const Valuation& b,
                                                      const StrategyProfile& profile) {
  if (a.size() != 2 || b.size() != 2 || profile.x.size() != 2 || profile.y.size() != 2) {
    throw NotApplicable("two-item deviations need exactly two items");
  }
  if (!(b[0] > a[0] && a[0] > a[1] && a[1] > b[1])) {
    throw NotApplicable("needs b1 > a1 > a2 > b2");
  }
  const Game game(a, b, Continuous{}, TieBreakRule::lexicographic());
  const Rational& x = profile.x[0];
  const Rational& y = profile.y[0];
  const Rational half(1, 2);

  auto two = [](const Rational& first) { return Valuation::from_values({first, 1 - first}); };

  Player mover = Player::alice;
  Rational declared;
  if (x != y) {
    declared = (x + y) / 2;
  } else if (x < half) {
    mover = Player::bob;
    declared = x + (half - x) / 2;
  } else if (x > half) {
    const Rational alice_bound = 4 * x * (x - a[0]) / (2 * x - a[0]);
    const Rational bob_bound = 4 * x * (b[0] - x) / (2 * x - b[0]);
    // b1 > a1 guarantees at least one bound is positive.
    mover = alice_bound > 0 ? Player::alice : Player::bob;
    const Rational& bound = mover == Player::alice ? alice_bound : bob_bound;
    const Rational delta = std::min({Rational(1 - x), Rational(2 * x - 1), bound}) / 2;
    declared = mover == Player::alice ? x - delta : x + delta;
  } else {
    mover = Player::bob;
    const Rational delta = std::min(Rational((b[0] - b[1]) / (2 * b[1])), Rational(1, 4));
    declared = half + delta;
  }

  Valuation deviation = two(declared);
  const Rational before = true_utility(game, profile, mover);
  const Rational after = true_utility(game, profile.with(mover, deviation), mover);
  if (after <= before) {
    throw ConstructionFailed("deviation for " + to_string(mover) + " did not improve (" +
                             before.str() + " -> " + after.str() + ")");
  }
  return DeviationWitness{mover, std::move(deviation), after - before};
}

}  // namespace awfair
