#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "awfair/errors.hpp"
#include "awfair/rational.hpp"
#include "awfair/valuation.hpp"

namespace awfair {

using Permutation = std::vector<std::size_t>;

/// How items with equal declared ratios x_i/y_i are ordered.
///
/// Lexicographic puts lower indices first. Informed lets a designated player
/// order tied items to maximize their true utility, which is why it carries
/// that player's true valuation.
class TieBreakRule {
 public:
  enum class Kind { lexicographic, informed };

  static TieBreakRule lexicographic() { return TieBreakRule{}; }

  static TieBreakRule informed(Player designated, Valuation truth) {
    TieBreakRule r;
    r.kind_ = Kind::informed;
    r.designated_ = designated;
    r.truth_ = std::move(truth);
    return r;
  }

  Kind kind() const { return kind_; }
  bool is_informed() const { return kind_ == Kind::informed; }
  Player designated() const { return designated_; }
  const Valuation& truth() const { return *truth_; }

  bool operator==(const TieBreakRule&) const = default;

 private:
  Kind kind_ = Kind::lexicographic;
  Player designated_ = Player::bob;
  std::optional<Valuation> truth_;
};

/// Canonical ordered form: Alice holds permutation[0..boundary), a fraction
/// `split_fraction` of permutation[boundary], Bob the rest. split_fraction is
/// in [0,1); a whole prefix is written with fraction 0 at the next position.
/// boundary == size() (all items to Alice) only arises from ordered_form().
struct OrderedOutcome {
  Permutation permutation;
  std::size_t boundary = 0;
  Rational split_fraction = 0;

  Allocation allocation() const {
    std::vector<Rational> alice(permutation.size(), Rational(0));
    for (std::size_t k = 0; k < permutation.size(); ++k) {
      if (k < boundary) {
        alice[permutation[k]] = 1;
      } else if (k == boundary) {
        alice[permutation[k]] = split_fraction;
      }
    }
    return Allocation::from_alice_shares(std::move(alice));
  }

  bool operator==(const OrderedOutcome&) const = default;
};

namespace detail {

inline void check_same_size(const Valuation& x, const Valuation& y) {
  if (x.size() != y.size()) {
    throw DimensionError("valuations have " + std::to_string(x.size()) + " and " +
                         std::to_string(y.size()) + " items");
  }
}

inline void check_permutation(const Permutation& order, std::size_t m) {
  if (order.size() != m) throw DimensionError("permutation has wrong length");
  std::vector<bool> seen(m, false);
  for (auto i : order) {
    if (i >= m || seen[i]) throw DimensionError("not a permutation of the items");
    seen[i] = true;
  }
}

/// Maximal runs of equal declared ratio along a ratio-sorted order, as
/// half-open [first, last) position ranges.
inline std::vector<std::pair<std::size_t, std::size_t>> tie_groups(const Valuation& x,
                                                                   const Valuation& y,
                                                                   const Permutation& order) {
  std::vector<std::pair<std::size_t, std::size_t>> groups;
  std::size_t first = 0;
  for (std::size_t k = 1; k <= order.size(); ++k) {
    if (k == order.size() ||
        compare_ratios(x[order[first]], y[order[first]], x[order[k]], y[order[k]]) != 0) {
      groups.emplace_back(first, k);
      first = k;
    }
  }
  return groups;
}

}  // namespace detail

/// Items by non-increasing x_i/y_i, equal ratios by increasing index.
inline Permutation lexicographic_ratio_order(const Valuation& x, const Valuation& y) {
  detail::check_same_size(x, y);
  Permutation order(x.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return compare_ratios(x[i], y[i], x[j], y[j]) > 0;
  });
  return order;
}

/// True when x_i/y_i is non-increasing along `order`.
inline bool is_ratio_consistent(const Valuation& x, const Valuation& y, const Permutation& order) {
  for (std::size_t k = 1; k < order.size(); ++k) {
    if (compare_ratios(x[order[k - 1]], y[order[k - 1]], x[order[k]], y[order[k]]) < 0) {
      return false;
    }
  }
  return true;
}

struct Boundary {
  std::size_t position = 0;
  Rational fraction = 0;
  bool operator==(const Boundary&) const = default;
};

/// Solves  x[π0] + ... + x[π(l-1)] + λ x[πl]  =  (1-λ) y[πl] + y[π(l+1)] + ... + y[π(m-1)]
/// for the unique position l and λ in [0,1). Alice's side grows and Bob's
/// shrinks strictly with the cut, so a left-to-right scan finds it.
inline Boundary equitable_boundary(const Valuation& x, const Valuation& y,
                                   const Permutation& order) {
  detail::check_same_size(x, y);
  detail::check_permutation(order, x.size());
  Rational alice_prefix = 0;
  Rational bob_suffix = 1;  // y sums to 1
  for (std::size_t k = 0; k < order.size(); ++k) {
    const auto item = order[k];
    // alice_prefix excludes item, bob_suffix includes it.
    Rational lambda = (bob_suffix - alice_prefix) / (x[item] + y[item]);
    if (lambda >= 0 && lambda < 1) return Boundary{k, std::move(lambda)};
    alice_prefix += x[item];
    bob_suffix -= y[item];
  }
  // Unreachable for positive valuations: the gap goes from -1 to +1.
  throw Error("no equitable boundary found");
}

/// Tie order chosen by an informed designated player.
///
/// Only the tie group containing the boundary can change anything: every other
/// group goes wholly to one side. Inside that group the ratio is constant, so
/// the declared mass cut by the boundary is the same for every internal order,
/// and picking the order is a fractional knapsack. Alice wants her prefix dense
/// in a_i/x_i, Bob wants his suffix dense in b_i/y_i. Density ties fall back to
/// index order.
inline Permutation informed_tie_order(const Valuation& x, const Valuation& y,
                                      const Valuation& designated_truth, Player designated) {
  detail::check_same_size(x, y);
  detail::check_same_size(x, designated_truth);
  Permutation order = lexicographic_ratio_order(x, y);
  const Boundary cut = equitable_boundary(x, y, order);
  for (const auto& [first, last] : detail::tie_groups(x, y, order)) {
    if (cut.position < first || cut.position >= last) continue;
    if (cut.position == first && cut.fraction == 0) break;  // boundary sits before the group
    const auto begin = order.begin() + static_cast<std::ptrdiff_t>(first);
    const auto end = order.begin() + static_cast<std::ptrdiff_t>(last);
    const Valuation& declared = designated == Player::alice ? x : y;
    const Valuation& truth = designated_truth;
    std::stable_sort(begin, end, [&](std::size_t i, std::size_t j) {
      const int c = compare_ratios(truth[i], declared[i], truth[j], declared[j]);
      // Alice: densest first. Bob: densest last.
      return designated == Player::alice ? c > 0 : c < 0;
    });
    break;
  }
  return order;
}

inline Permutation ratio_order(const Valuation& x, const Valuation& y, const TieBreakRule& rule) {
  if (rule.is_informed()) return informed_tie_order(x, y, rule.truth(), rule.designated());
  return lexicographic_ratio_order(x, y);
}

}  // namespace awfair
