#pragma once

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "awfair/errors.hpp"
#include "awfair/rational.hpp"

namespace awfair {

enum class Player { alice, bob };

constexpr Player other(Player p) { return p == Player::alice ? Player::bob : Player::alice; }

inline std::string to_string(Player p) { return p == Player::alice ? "alice" : "bob"; }

/// Per-player pair of anything (flags, gaps, utilities).
template <typename T>
struct PerPlayer {
  T alice{};
  T bob{};

  T& operator[](Player p) { return p == Player::alice ? alice : bob; }
  const T& operator[](Player p) const { return p == Player::alice ? alice : bob; }
  bool operator==(const PerPlayer&) const = default;
};

/// Strictly positive per-item values summing to exactly 1. Declared strategies
/// and true valuations share this type.
///
/// Point-count valuations (the discrete variant) additionally remember their
/// integer points and total P. Equality compares the normalized values only, so
/// (2,2,4,6) and (1,1,2,3) are the same valuation.
class Valuation {
 public:
  Valuation() = default;

  /// Normalizes positive integer point counts by their sum.
  static Valuation from_points(std::span<const std::int64_t> points) {
    if (points.empty()) throw InvalidValuation("valuation needs at least one item");
    std::int64_t total = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (points[i] <= 0) {
        throw InvalidValuation("item " + std::to_string(i) + " has non-positive points " +
                               std::to_string(points[i]));
      }
      total += points[i];
    }
    Valuation v;
    v.values_.reserve(points.size());
    for (auto p : points) v.values_.emplace_back(Rational(p, total));
    v.points_.assign(points.begin(), points.end());
    v.total_ = total;
    return v;
  }

  static Valuation from_points(std::initializer_list<std::int64_t> points) {
    return from_points(std::span<const std::int64_t>(points.begin(), points.size()));
  }

  /// Values must already be positive and sum to 1.
  static Valuation from_values(std::vector<Rational> values) {
    check_positive(values);
    Rational sum = 0;
    for (const auto& v : values) sum += v;
    if (sum != 1) throw InvalidValuation("values sum to " + sum.str() + ", expected 1");
    Valuation v;
    v.values_ = std::move(values);
    return v;
  }

  /// Positive values of any scale, divided by their sum.
  static Valuation normalized(std::vector<Rational> values) {
    check_positive(values);
    Rational sum = 0;
    for (const auto& v : values) sum += v;
    for (auto& v : values) v /= sum;
    Valuation v;
    v.values_ = std::move(values);
    return v;
  }

  std::size_t size() const { return values_.size(); }
  const Rational& operator[](std::size_t i) const { return values_[i]; }
  std::span<const Rational> values() const { return values_; }

  /// Point counts when this valuation was built from points.
  std::span<const std::int64_t> points() const { return points_; }
  std::optional<std::int64_t> point_total() const { return total_; }

  /// Least common denominator of the values: the smallest P at which the
  /// valuation is an integer point vector.
  Integer common_denominator() const {
    Integer d = 1;
    for (const auto& v : values_) d = lcm(d, denominator_of(v));
    return d;
  }

  /// Point vector at total `total`, if every value times `total` is an integer.
  std::optional<std::vector<std::int64_t>> points_at(std::int64_t total) const {
    std::vector<std::int64_t> out;
    out.reserve(values_.size());
    for (const auto& v : values_) {
      const Rational scaled = v * total;
      if (denominator_of(scaled) != 1) return std::nullopt;
      out.push_back(numerator_of(scaled).convert_to<std::int64_t>());
    }
    return out;
  }

  bool operator==(const Valuation& other) const { return values_ == other.values_; }

 private:
  static void check_positive(const std::vector<Rational>& values) {
    if (values.empty()) throw InvalidValuation("valuation needs at least one item");
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (values[i] <= 0) {
        throw InvalidValuation("item " + std::to_string(i) + " has non-positive value " +
                               values[i].str());
      }
    }
  }

  std::vector<Rational> values_;
  std::vector<std::int64_t> points_;
  std::optional<std::int64_t> total_;
};

inline Valuation normalize(std::span<const std::int64_t> points) {
  return Valuation::from_points(points);
}

/// Additive utility sum_j v_j * share_j.
inline Rational utility(const Valuation& v, std::span<const Rational> bundle) {
  if (bundle.size() != v.size()) {
    throw DimensionError("bundle has " + std::to_string(bundle.size()) + " items, valuation has " +
                         std::to_string(v.size()));
  }
  Rational total = 0;
  for (std::size_t i = 0; i < bundle.size(); ++i) total += v[i] * bundle[i];
  return total;
}

/// Full allocation of divisible items: alice[i] + bob[i] == 1 for every item.
class Allocation {
 public:
  Allocation() = default;

  Allocation(std::vector<Rational> alice, std::vector<Rational> bob)
      : alice_(std::move(alice)), bob_(std::move(bob)) {
    if (alice_.size() != bob_.size()) throw DimensionError("bundle lengths differ");
    for (std::size_t i = 0; i < alice_.size(); ++i) {
      if (alice_[i] < 0 || alice_[i] > 1 || bob_[i] < 0 || bob_[i] > 1) {
        throw InvalidValuation("share of item " + std::to_string(i) + " outside [0,1]");
      }
      if (alice_[i] + bob_[i] != 1) {
        throw InvalidValuation("item " + std::to_string(i) + " is not fully allocated");
      }
    }
  }

  static Allocation from_alice_shares(std::vector<Rational> alice) {
    std::vector<Rational> bob;
    bob.reserve(alice.size());
    for (const auto& s : alice) bob.emplace_back(1 - s);
    return Allocation(std::move(alice), std::move(bob));
  }

  static Allocation all_to(Player p, std::size_t items) {
    return from_alice_shares(std::vector<Rational>(items, p == Player::alice ? 1 : 0));
  }

  std::size_t size() const { return alice_.size(); }
  std::span<const Rational> alice() const { return alice_; }
  std::span<const Rational> bob() const { return bob_; }
  std::span<const Rational> bundle(Player p) const { return p == Player::alice ? alice() : bob(); }

  bool operator==(const Allocation&) const = default;

 private:
  std::vector<Rational> alice_;
  std::vector<Rational> bob_;
};

inline Rational utility(const Valuation& v, const Allocation& w, Player holder) {
  return utility(v, w.bundle(holder));
}

}  // namespace awfair
