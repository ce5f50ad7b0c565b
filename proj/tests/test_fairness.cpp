#include <gtest/gtest.h>

#include <random>
#include <set>
#include <vector>

#include "awfair/awfair.hpp"
#include "oracles.hpp"

using namespace awfair;

namespace {

Rational q(long n, long d = 1) { return Rational(n, d); }
Valuation pts(std::initializer_list<std::int64_t> p) { return Valuation::from_points(p); }
Allocation shares(std::vector<Rational> s) { return Allocation::from_alice_shares(std::move(s)); }

const auto lex = TieBreakRule::lexicographic();

std::vector<Rational> alice_vec(const Allocation& w) { return {w.alice().begin(), w.alice().end()}; }

}  // namespace

TEST(EnvyFree, IdenticalHalves) {
  const auto v = pts({1, 1});
  EXPECT_EQ(is_envy_free(v, v, shares({q(1), q(0)})), (PerPlayer<bool>{true, true}));
}

TEST(EnvyFree, TruthfulOutcomeIsEnvyFree) {
  const auto a = pts({1, 1, 2, 3});
  const auto b = pts({2, 3, 1, 1});
  const auto w = adjusted_winner(a, b, lex).allocation;
  EXPECT_EQ(is_envy_free(a, b, w), (PerPlayer<bool>{true, true}));
}

TEST(EnvyFree, AliceEnviesWhenGivenHerWorseItem) {
  const auto a = pts({99, 1});
  const auto b = pts({1, 99});
  EXPECT_FALSE(is_envy_free(a, b, shares({q(0), q(1)})).alice);
}

TEST(EnvyFree, DimensionMismatch) {
  EXPECT_THROW(is_envy_free(pts({1, 1}), pts({1, 1}), shares({q(1)})), DimensionError);
}

TEST(Equitable, Examples) {
  const auto a = pts({1, 1, 2, 3});
  const auto b = pts({2, 3, 1, 1});
  EXPECT_TRUE(is_equitable(a, b, adjusted_winner(a, b, lex).allocation));
  EXPECT_FALSE(is_equitable(a, b, Allocation::all_to(Player::bob, 4)));
  EXPECT_TRUE(is_equitable(a, b, shares({q(0), q(0), q(1), q(1)})));
}

TEST(ParetoOptimal, OrderedAllocationsAreOptimal) {
  const auto a = pts({1, 1, 2, 3});
  const auto b = pts({2, 3, 1, 1});
  const Permutation order = lexicographic_ratio_order(a, b);
  for (std::size_t l = 0; l < 4; ++l) {
    for (const auto& f : {q(0), q(1, 3)}) {
      const OrderedOutcome o{order, l, f};
      EXPECT_TRUE(is_pareto_optimal(a, b, o.allocation()));
    }
  }
}

TEST(ParetoOptimal, SwappedItemsAreNotOptimal) {
  const auto a = pts({3, 2});
  const auto b = pts({2, 3});
  EXPECT_FALSE(is_pareto_optimal(a, b, shares({q(0), q(1)})));
}

TEST(ParetoOptimal, IdenticalValuationsAlwaysOptimal) {
  const auto v = pts({1, 4, 2});
  EXPECT_TRUE(is_pareto_optimal(v, v, shares({q(1, 2), q(1, 3), q(1)})));
  EXPECT_TRUE(is_pareto_optimal(v, v, shares({q(0), q(1), q(0)})));
}

TEST(ExchangeWitness, NoneWhenOptimal) {
  const auto a = pts({3, 2});
  const auto b = pts({2, 3});
  EXPECT_FALSE(pareto_improving_exchange(a, b, shares({q(1), q(0)})).has_value());
  EXPECT_FALSE(pareto_improving_exchange(a, b, adjusted_winner(a, b, lex).allocation).has_value());
}

TEST(ExchangeWitness, SwapExample) {
  const auto a = pts({3, 2});
  const auto b = pts({2, 3});
  const auto w = shares({q(0), q(1)});
  const auto e = pareto_improving_exchange(a, b, w);
  ASSERT_TRUE(e.has_value());
  EXPECT_EQ(*e, (ExchangeWitness{0, 1, q(1), q(1)}));
  const auto after = apply_exchange(w, *e);
  EXPECT_EQ(utility(a, w.alice()), q(2, 5));
  EXPECT_EQ(utility(b, w.bob()), q(2, 5));
  EXPECT_EQ(utility(a, after.alice()), q(3, 5));
  EXPECT_EQ(utility(b, after.bob()), q(3, 5));
}

TEST(ExchangeWitness, ScalesDownWhenHoldingTooSmall) {
  // Alice holds only 1/10 of item 2: the interval (2/3, 3/2) lies above it.
  const auto a = pts({3, 2});
  const auto b = pts({2, 3});
  const auto w = shares({q(0), q(1, 10)});
  const auto e = pareto_improving_exchange(a, b, w);
  ASSERT_TRUE(e.has_value());
  EXPECT_EQ(e->lambda_j, q(1, 10));
  EXPECT_GT(utility(a, apply_exchange(w, *e).alice()), utility(a, w.alice()));
  EXPECT_GT(utility(b, apply_exchange(w, *e).bob()), utility(b, w.bob()));
}

TEST(MinimallyFractional, Examples) {
  EXPECT_TRUE(is_minimally_fractional(shares({q(1), q(0), q(1)})));
  EXPECT_TRUE(is_minimally_fractional(shares({q(1), q(2, 3), q(0)})));
  EXPECT_FALSE(is_minimally_fractional(shares({q(1, 2), q(1, 2)})));
}

TEST(Ordered, AllToAlice) {
  const auto a = pts({1, 1, 2, 3});
  const auto b = pts({2, 3, 1, 1});
  const auto form = ordered_form(Allocation::all_to(Player::alice, 4), a, b);
  ASSERT_TRUE(form.has_value());
  EXPECT_EQ(form->boundary, 4u);
}

TEST(Ordered, AdjustedWinnerOutputIsOrdered) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 200; ++t) {
    const auto x = oracle::random_valuation(rng, 1 + t % 5, 4);
    const auto y = oracle::random_valuation(rng, 1 + t % 5, 4);
    const auto r = adjusted_winner(x, y, lex);
    const auto form = ordered_form(r.allocation, x, y);
    ASSERT_TRUE(form.has_value());
    EXPECT_EQ(form->allocation(), r.allocation);
  }
}

TEST(Ordered, SwapIsNotOrdered) {
  EXPECT_FALSE(is_ordered(shares({q(0), q(1)}), pts({3, 2}), pts({2, 3})));
}

TEST(Maxmin, Examples) {
  EXPECT_EQ(maxmin_value(pts({1, 1, 2, 3}), pts({2, 3, 1, 1})), q(5, 7));
  EXPECT_EQ(maxmin_value(pts({1, 5, 2}), pts({1, 5, 2})), q(1, 2));
  EXPECT_EQ(maxmin_value(pts({1, 1}), pts({3, 2})), q(6, 11));
}

TEST(Welfare, FiftyFiftyInstance) {
  const auto a = pts({50, 50});
  const auto b = pts({60, 40});
  EXPECT_EQ(social_welfare(a, b, adjusted_winner(a, b, lex).allocation), q(12, 11));
  EXPECT_EQ(social_welfare(a, b, shares({q(0), q(1)})), q(11, 10));
  EXPECT_EQ(social_welfare(a, b, Allocation::all_to(Player::alice, 2)), q(1));
  EXPECT_EQ(social_welfare(a, b, Allocation::all_to(Player::bob, 2)), q(1));
}

TEST(FairnessReport, EnvyFreeImpliesProportional) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 500; ++t) {
    const std::size_t m = 1 + t % 4;
    const auto a = oracle::random_valuation(rng, m, 5);
    const auto b = oracle::random_valuation(rng, m, 5);
    std::vector<Rational> s(m);
    for (auto& v : s) v = Rational(static_cast<long>(rng() % 5), 4);
    const auto r = evaluate_fairness(a, b, shares(s));
    if (r.envy_free.alice) EXPECT_TRUE(r.proportional.alice);
    if (r.envy_free.bob) EXPECT_TRUE(r.proportional.bob);
    EXPECT_EQ(r.social_welfare, r.utilities.alice + r.utilities.bob);
  }
}

// Pairwise test against brute force: a dominating allocation on a coarse grid
// means "not optimal"; an improving exchange on a grid fine enough to contain
// one whenever one exists decides the rest.
TEST(ParetoOptimal, AgreesWithBruteForce) {
  std::mt19937_64 rng(5);
  int non_optimal = 0;
  for (int t = 0; t < 300; ++t) {
    const std::size_t m = 2 + t % 3;
    const auto a = oracle::random_valuation(rng, m, 5);
    const auto b = oracle::random_valuation(rng, m, 5);
    std::vector<Rational> s(m);
    for (auto& v : s) v = Rational(static_cast<long>(rng() % 5), 4);
    const bool optimal = is_pareto_optimal(a, b, shares(s));
    const std::int64_t fine = 8 * oracle::scaled(a).denominator * oracle::scaled(b).denominator;
    const bool improvable =
        oracle::grid_dominated(a, b, s, 8) || oracle::exchange_grid_improves(a, b, s, fine);
    EXPECT_EQ(optimal, !improvable);
    if (!optimal) {
      ++non_optimal;
      const auto e = pareto_improving_exchange(a, b, shares(s));
      ASSERT_TRUE(e.has_value());
      const auto after = apply_exchange(shares(s), *e);
      EXPECT_GT(utility(a, after.alice()), utility(a, shares(s).alice()));
      EXPECT_GT(utility(b, after.bob()), utility(b, shares(s).bob()));
    }
  }
  EXPECT_GT(non_optimal, 30);
}

// Pareto optimal + equitable + minimally fractional allocations are exactly the
// AW outputs over all tie-consistent orders, on instances with ties.
TEST(Characterization, MatchesAllTieOrders) {
  std::mt19937_64 rng(17);
  int with_ties = 0;
  for (int t = 0; t < 150; ++t) {
    const std::size_t m = 2 + t % 3;
    const auto a = oracle::random_valuation(rng, m, 3);
    const auto b = oracle::random_valuation(rng, m, 3);
    std::set<std::vector<Rational>> by_properties;
    for (const auto& w : oracle::equitable_allocations(a, b, {q(0), q(1)})) {
      if (is_pareto_optimal(a, b, shares(w))) by_properties.insert(w);
    }
    std::set<std::vector<Rational>> by_orders;
    const auto orders = oracle::ratio_consistent_orders(a, b);
    for (const auto& order : orders) by_orders.insert(oracle::ordered_shares(a, b, order));
    if (orders.size() > 1) ++with_ties;
    EXPECT_EQ(by_properties, by_orders);
    EXPECT_TRUE(by_orders.contains(alice_vec(adjusted_winner(a, b, lex).allocation)));
  }
  EXPECT_GT(with_ties, 20);
}

TEST(Characterization, DistinctRatiosHaveOneEquitableOptimum) {
  std::mt19937_64 rng(23);
  int checked = 0;
  while (checked < 40) {
    const std::size_t m = 2 + checked % 3;
    const auto a = oracle::random_valuation(rng, m, 6);
    const auto b = oracle::random_valuation(rng, m, 6);
    if (oracle::ratio_consistent_orders(a, b).size() != 1) continue;
    ++checked;
    std::vector<std::vector<Rational>> found;
    for (const auto& w : oracle::equitable_allocations(a, b, oracle::grid_levels(6))) {
      if (is_pareto_optimal(a, b, shares(w))) found.push_back(w);
    }
    ASSERT_EQ(found.size(), 1u);
    EXPECT_EQ(shares(found.front()), adjusted_winner(a, b, lex).allocation);
  }
}

TEST(Maxmin, MatchesGridWithinResolution) {
  std::mt19937_64 rng(29);
  for (int t = 0; t < 60; ++t) {
    const std::size_t m = 1 + t % 3;
    const auto a = oracle::random_valuation(rng, m, 6);
    const auto b = oracle::random_valuation(rng, m, 6);
    const std::int64_t k = 12;
    const Rational grid = oracle::grid_maxmin(a, b, k);
    const Rational exact = maxmin_value(a, b);
    EXPECT_LE(grid, exact);
    EXPECT_GE(grid, exact - Rational(1, k));
    EXPECT_EQ(utility(a, maxmin_allocation(a, b).alice()), exact);
  }
}
