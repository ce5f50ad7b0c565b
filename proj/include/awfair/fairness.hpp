#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <vector>

#include "awfair/adjusted_winner.hpp"
#include "awfair/ordering.hpp"
#include "awfair/rational.hpp"
#include "awfair/valuation.hpp"

namespace awfair {

namespace detail {

inline void check_allocation(const Valuation& a, const Valuation& b, const Allocation& w) {
  check_same_size(a, b);
  if (w.size() != a.size()) {
    throw DimensionError("allocation has " + std::to_string(w.size()) + " items, valuations have " +
                         std::to_string(a.size()));
  }
}

}  // namespace detail

/// Each player weakly prefers their own bundle under their own valuation.
inline PerPlayer<bool> is_envy_free(const Valuation& a, const Valuation& b, const Allocation& w) {
  detail::check_allocation(a, b, w);
  return {utility(a, w.alice()) >= utility(a, w.bob()), utility(b, w.bob()) >= utility(b, w.alice())};
}

/// Each player gets at least half of their value for everything.
inline PerPlayer<bool> is_proportional(const Valuation& a, const Valuation& b, const Allocation& w) {
  detail::check_allocation(a, b, w);
  const Rational half(1, 2);
  return {utility(a, w.alice()) >= half, utility(b, w.bob()) >= half};
}

inline bool is_equitable(const Valuation& x, const Valuation& y, const Allocation& w) {
  detail::check_allocation(x, y, w);
  return utility(x, w.alice()) == utility(y, w.bob());
}

inline bool is_minimally_fractional(const Allocation& w) {
  return std::count_if(w.alice().begin(), w.alice().end(),
                       [](const Rational& s) { return s > 0 && s < 1; }) <= 1;
}

/// Bob hands `lambda_i` of item i to Alice, Alice hands `lambda_j` of item j to Bob.
struct ExchangeWitness {
  std::size_t item_i = 0;
  std::size_t item_j = 0;
  Rational lambda_i = 0;
  Rational lambda_j = 0;
  bool operator==(const ExchangeWitness&) const = default;
};

inline Allocation apply_exchange(const Allocation& w, const ExchangeWitness& e) {
  std::vector<Rational> alice(w.alice().begin(), w.alice().end());
  alice[e.item_i] += e.lambda_i;
  alice[e.item_j] -= e.lambda_j;
  return Allocation::from_alice_shares(std::move(alice));
}

namespace detail {

/// First (i, j) in row-major order with Bob holding some of i, Alice some of j,
/// and a_i b_j > a_j b_i.
inline std::optional<std::pair<std::size_t, std::size_t>> improvable_pair(const Valuation& a,
                                                                         const Valuation& b,
                                                                         const Allocation& w) {
  check_allocation(a, b, w);
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w.bob()[i] == 0) continue;
    for (std::size_t j = 0; j < w.size(); ++j) {
      if (w.alice()[j] == 0) continue;
      if (a[i] * b[j] > a[j] * b[i]) return std::pair{i, j};
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// Pairwise exchange test: W is Pareto optimal unless some item i held (partly)
/// by Bob and some item j held (partly) by Alice satisfy a_i b_j > a_j b_i.
inline bool is_pareto_optimal(const Valuation& a, const Valuation& b, const Allocation& w) {
  return !detail::improvable_pair(a, b, w).has_value();
}

/// A concrete exchange that makes both players strictly better off, or nothing
/// when W is Pareto optimal.
///
/// lambda_i is all of Bob's holding of i and lambda_j the midpoint of
/// ((b_i/b_j) lambda_i, (a_i/a_j) lambda_i). If Alice holds less of j than that,
/// lambda_j is clipped to her holding when the holding still lies inside the
/// interval; otherwise both amounts are scaled down together.
inline std::optional<ExchangeWitness> pareto_improving_exchange(const Valuation& a,
                                                                const Valuation& b,
                                                                const Allocation& w) {
  const auto pair = detail::improvable_pair(a, b, w);
  if (!pair) return std::nullopt;
  const auto [i, j] = *pair;
  ExchangeWitness e{i, j, std::min(Rational(w.bob()[i]), Rational(1)), 0};
  const Rational low = b[i] / b[j] * e.lambda_i;
  const Rational high = a[i] / a[j] * e.lambda_i;
  const Rational mid = (low + high) / 2;
  const Rational& holding = w.alice()[j];
  if (mid <= holding) {
    e.lambda_j = mid;
  } else if (holding > low) {
    e.lambda_j = holding;
  } else {
    e.lambda_i = e.lambda_i * holding / mid;
    e.lambda_j = holding;
  }
  return e;
}

/// Recovers (permutation, boundary, fraction) when W is an ordered allocation
/// for the ratios x_i/y_i. The all-to-Alice allocation comes back with
/// boundary == size().
inline std::optional<OrderedOutcome> ordered_form(const Allocation& w, const Valuation& x,
                                                  const Valuation& y) {
  detail::check_allocation(x, y, w);
  if (!is_minimally_fractional(w)) return std::nullopt;
  const std::size_t m = w.size();
  // Among equal ratios, put Alice's whole items first and Bob's whole items last.
  auto side = [&](std::size_t i) { return w.alice()[i] == 1 ? 0 : (w.alice()[i] == 0 ? 2 : 1); };
  OrderedOutcome out;
  out.permutation.resize(m);
  std::iota(out.permutation.begin(), out.permutation.end(), std::size_t{0});
  std::stable_sort(out.permutation.begin(), out.permutation.end(),
                   [&](std::size_t i, std::size_t j) {
                     const int c = compare_ratios(x[i], y[i], x[j], y[j]);
                     if (c != 0) return c > 0;
                     return side(i) < side(j);
                   });
  std::size_t k = 0;
  while (k < m && w.alice()[out.permutation[k]] == 1) ++k;
  out.boundary = k;
  if (k < m && w.alice()[out.permutation[k]] != 0) {
    out.split_fraction = w.alice()[out.permutation[k]];
    ++k;
  }
  for (; k < m; ++k) {
    if (w.alice()[out.permutation[k]] != 0) return std::nullopt;
  }
  return out;
}

inline bool is_ordered(const Allocation& w, const Valuation& x, const Valuation& y) {
  return ordered_form(w, x, y).has_value();
}

inline Rational social_welfare(const Valuation& a, const Valuation& b, const Allocation& w) {
  detail::check_allocation(a, b, w);
  return utility(a, w.alice()) + utility(b, w.bob());
}

/// The Adjusted Winner outcome is maxmin and minimally fractional, so it is
/// returned as the maxmin allocation.
inline Allocation maxmin_allocation(const Valuation& a, const Valuation& b) {
  return adjusted_winner(a, b, TieBreakRule::lexicographic()).allocation;
}

/// Largest achievable min(u_a, u_b), i.e. the common utility of the AW outcome.
inline Rational maxmin_value(const Valuation& a, const Valuation& b) {
  return utility(a, maxmin_allocation(a, b).alice());
}

struct FairnessReport {
  PerPlayer<Rational> utilities;
  PerPlayer<bool> envy_free;
  PerPlayer<bool> proportional;
  bool equitable = false;
  bool pareto_optimal = false;
  bool minimally_fractional = false;
  Rational social_welfare = 0;
  Rational maxmin_value = 0;  // of the instance, for comparison with min(utilities)

  bool operator==(const FairnessReport&) const = default;
};

inline FairnessReport evaluate_fairness(const Valuation& a, const Valuation& b, const Allocation& w) {
  FairnessReport r;
  r.utilities = {utility(a, w.alice()), utility(b, w.bob())};
  r.envy_free = is_envy_free(a, b, w);
  r.proportional = is_proportional(a, b, w);
  r.equitable = is_equitable(a, b, w);
  r.pareto_optimal = is_pareto_optimal(a, b, w);
  r.minimally_fractional = is_minimally_fractional(w);
  r.social_welfare = r.utilities.alice + r.utilities.bob;
  r.maxmin_value = maxmin_value(a, b);
  return r;
}

}  // namespace awfair
