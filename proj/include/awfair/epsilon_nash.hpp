#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "awfair/adjusted_winner.hpp"
#include "awfair/errors.hpp"
#include "awfair/game.hpp"
#include "awfair/ordering.hpp"
#include "awfair/rational.hpp"
#include "awfair/valuation.hpp"

namespace awfair {

/// Best value Bob can secure when both declarations equal `a` and he may order
/// the items freely: the right-of-boundary bundle has a-mass exactly 1/2, so
/// this is a fractional knapsack over b_j/a_j.
inline Rational bob_target_value(const Valuation& a, const Valuation& b) {
  return fractional_knapsack(a, b, Rational(1, 2)).first;
}

/// The item order (left to right) that realizes bob_target_value: Bob's
/// greedy fill order reversed, so his densest items sit at the right end.
inline Permutation bob_target_order(const Valuation& a, const Valuation& b) {
  auto order = fractional_knapsack(a, b, Rational(1, 2)).second;
  std::reverse(order.begin(), order.end());
  return order;
}

struct EpsilonNash {
  StrategyProfile profile;           // (a, a + perturbation)
  Permutation order;                 // Bob's target order, strict in the perturbed ratios
  Boundary target_boundary;          // boundary of the unperturbed target order
  Boundary achieved_boundary;        // boundary actually produced at `profile`
  Rational step;                     // perturbation scale that passed every check
  Integer points;                    // P': both strategies are integer vectors at this total
  PerPlayer<Rational> gap_bound;     // exact upper bounds on any unilateral gain
  Rational epsilon;
  bool operator==(const EpsilonNash&) const = default;
};

namespace detail {

/// Perturbation a_j + step * a_j * (k - c) for the item at position k of
/// `order`, with c = sum_k k a_{order_k} so the perturbations sum to zero.
inline std::vector<Rational> perturbation(const Valuation& a, const Permutation& order,
                                          const Rational& step) {
  Rational center = 0;
  for (std::size_t k = 0; k < order.size(); ++k) center += a[order[k]] * k;
  std::vector<Rational> out(a.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    out[order[k]] = step * a[order[k]] * (Rational(k) - center);
  }
  return out;
}

}  // namespace detail

/// Builds an epsilon-Nash profile for continuous lexicographic Adjusted Winner:
/// Alice declares her truth a, Bob declares a small zero-sum perturbation of a
/// that strictly orders the items in his target order and puts the boundary on
/// the same item, at nearly the same fraction, as the unperturbed target.
///
/// The perturbation scale starts at epsilon and is halved until all of these
/// hold exactly:
///   |e_j| < min(eps/m, 2 lambda a_l / m)   (or min(eps/m, a_l/m) when lambda = 0)
///   a_j / (a_j + e_j) strictly decreasing along the order
///   sum_j e_j = 0
///   the split item is unchanged and |lambda - lambda'| < eps / b_l
/// and the exact gap bounds (utility ceilings minus achieved utilities) are at
/// most epsilon.
inline EpsilonNash construct_epsilon_nash(const Valuation& a, const Valuation& b,
                                          const Rational& epsilon, int max_halvings = 256) {
  detail::check_same_size(a, b);
  if (epsilon <= 0) throw NotApplicable("epsilon must be positive");
  const std::size_t m = a.size();
  const Rational items(static_cast<long>(m));

  EpsilonNash out;
  out.epsilon = epsilon;
  out.order = bob_target_order(a, b);
  out.target_boundary = equitable_boundary(a, a, out.order);
  const auto split_item = out.order[out.target_boundary.position];
  const Rational& lambda = out.target_boundary.fraction;
  const Rational magnitude_cap =
      std::min(epsilon / items,
               lambda > 0 ? 2 * lambda * a[split_item] / items : a[split_item] / items);
  const Rational bob_ceiling = bob_target_value(a, b);

  Rational step = epsilon;
  for (int attempt = 0; attempt <= max_halvings; ++attempt, step /= 2) {
    const auto e = detail::perturbation(a, out.order, step);

    Rational sum = 0;
    bool small = true;
    for (std::size_t j = 0; j < m; ++j) {
      sum += e[j];
      small = small && abs(e[j]) < magnitude_cap && a[j] + e[j] > 0;
    }
    if (!small || sum != 0) continue;

    std::vector<Rational> perturbed(m);
    for (std::size_t j = 0; j < m; ++j) perturbed[j] = a[j] + e[j];
    const Valuation bob_declared = Valuation::from_values(std::move(perturbed));

    bool strict = true;
    for (std::size_t k = 1; k < m; ++k) {
      const auto prev = out.order[k - 1];
      const auto cur = out.order[k];
      strict = strict && compare_ratios(a[prev], bob_declared[prev], a[cur], bob_declared[cur]) > 0;
    }
    if (!strict) continue;

    const auto result = adjusted_winner(a, bob_declared, TieBreakRule::lexicographic());
    if (result.outcome.permutation != out.order) continue;
    if (result.outcome.boundary != out.target_boundary.position) continue;
    const Rational& achieved = result.outcome.split_fraction;
    if (lambda > 0 && achieved == 0) continue;
    if (abs(lambda - achieved) >= epsilon / b[split_item]) continue;

    const PerPlayer<Rational> gap_bound{
        utility_ceiling(a, bob_declared) - utility(a, result.allocation.alice()),
        bob_ceiling - utility(b, result.allocation.bob())};
    if (gap_bound.alice > epsilon || gap_bound.bob > epsilon) continue;

    out.profile = StrategyProfile{a, bob_declared};
    out.achieved_boundary = Boundary{result.outcome.boundary, achieved};
    out.step = step;
    out.points = lcm(a.common_denominator(), bob_declared.common_denominator());
    out.gap_bound = gap_bound;
    return out;
  }
  throw ConstructionFailed("no perturbation passed the checks after " +
                           std::to_string(max_halvings) + " halvings");
}

}  // namespace awfair
