// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
//
//   acceptance [--seed N]

#include <chrono>
#include <cmath>
#include <iostream>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "awfair/awfair.hpp"
#include "oracles.hpp"

using namespace awfair;

namespace {

Rational q(long n, long d = 1) { return Rational(n, d); }
Valuation pts(std::initializer_list<std::int64_t> p) { return Valuation::from_points(p); }
Valuation two(const Rational& first) { return Valuation::from_values({first, 1 - first}); }

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (!pass) detail << "; ";
      detail << what;
      pass = false;
    }
  }
};

struct RandomDiscrete {
  Valuation a;
  Valuation b;
  std::int64_t points;
};

RandomDiscrete random_discrete(std::mt19937_64& rng) {
  const std::size_t m = 2 + rng() % 3;
  const std::int64_t p = static_cast<std::int64_t>(m) + static_cast<std::int64_t>(rng() % (10 - m));
  return {Valuation::from_points(oracle::random_composition(rng, m, p)),
          Valuation::from_points(oracle::random_composition(rng, m, p)), p};
}

const auto lex = TieBreakRule::lexicographic();

// 1
Outcome no_equilibrium(std::mt19937_64&) {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  const Game game(pts({1, 1, 2, 3}), pts({2, 3, 1, 1}), Discrete{7}, lex);
  const auto found = enumerate_pure_nash(game);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.require(strategy_count(4, 7) == 20, "strategy space is not 20");
  out.require(found.empty(), std::to_string(found.size()) + " equilibria found");
  out.require(secs < 5.0, "took " + std::to_string(secs) + " s");
  out.detail << (out.pass ? "" : "; ") << "400 profiles, 0 equilibria, " << secs << " s";
  return out;
}

// 2
Outcome informed_existence(std::mt19937_64& rng) {
  Outcome out;
  auto check = [&](const Valuation& a, const Valuation& b, std::int64_t p) {
    const auto game = Game::informed(a, b, Discrete{p}, Player::bob);
    const auto r = is_pure_nash(game, {a, a}).report;
    return r.is_pure_nash && r.gaps.alice == 0 && r.gaps.bob == 0;
  };
  out.require(check(pts({1, 1, 2, 3}), pts({2, 3, 1, 1}), 7), "fixed instance fails");
  int failed = 0;
  const int n = 150;
  for (int t = 0; t < n; ++t) {
    const auto g = random_discrete(rng);
    if (!check(g.a, g.b, g.points)) ++failed;
  }
  out.require(failed == 0, std::to_string(failed) + " random instances fail");
  out.detail << (out.pass ? "" : "; ") << "fixed instance + " << n << " random, all gaps exactly 0";
  return out;
}

// 3
Outcome fifty_fifty(std::mt19937_64&) {
  Outcome out;
  const auto a = pts({50, 50});
  const auto b = pts({60, 40});
  const Rational truthful = social_welfare(a, b, adjusted_winner(a, b, lex).allocation);
  out.require(truthful == q(12, 11), "truthful welfare " + truthful.str());
  const double scaled = to_double(truthful * 100);
  out.require(std::round(scaled * 10) / 10 == 109.1, "0-100 scale " + std::to_string(scaled));
  const auto game = Game::informed(a, b, Continuous{}, Player::bob);
  const StrategyProfile deviated{a, pts({50, 50})};
  const Rational after = social_welfare(a, b, play(game, deviated).allocation);
  out.require(after == q(11, 10), "welfare after deviation " + after.str());
  out.detail << (out.pass ? "" : "; ") << "12/11 (" << scaled << ") then " << after.str();
  return out;
}

// 4
Outcome poa_family(std::mt19937_64&) {
  Outcome out;
  std::vector<Rational> ratios;
  for (long n : {10L, 100L, 1000L}) {
    const Rational eps(1, n);
    const auto game = Game::informed(two(1 - eps), two(eps), Discrete{n}, Player::alice);
    const StrategyProfile profile{two(eps), two(eps)};
    const Rational eq_welfare =
        social_welfare(game.truth(Player::alice), game.truth(Player::bob), play(game, profile).allocation);
    const Rational ratio = truthful_welfare(game) / eq_welfare;
    ratios.push_back(ratio);
    out.require(is_pure_nash(game, profile).report.is_pure_nash, "not an equilibrium at 1/" + std::to_string(n));
    out.require(ratio <= q(4, 3), "ratio above 4/3 at 1/" + std::to_string(n));
    if (n == 100) {
      out.require(eq_welfare == q(148, 99), "equilibrium welfare " + eq_welfare.str());
      out.require(ratio == q(9801, 7400), "ratio " + ratio.str());
    }
  }
  out.require(ratios[0] < ratios[1] && ratios[1] < ratios[2], "ratios not increasing");
  out.require(q(4, 3) - ratios[2] < q(4, 3) - ratios[1], "not approaching 4/3");
  out.detail << (out.pass ? "" : "; ") << "ratios";
  for (const auto& r : ratios) out.detail << ' ' << r.str();
  return out;
}

// 5 and 6 share one sweep.
struct Sweep {
  int instances = 0;
  std::size_t equilibria = 0;
  Rational worst_ratio = 0;
  int ratio_violations = 0;
  int envy = 0;
  int not_pareto = 0;
  int broken_by_refinement = 0;
  std::vector<std::string> examples;
};

Sweep informed_sweep(std::mt19937_64& rng) {
  Sweep s;
  while (s.instances < 120) {
    const auto g = random_discrete(rng);
    const Player designated = s.instances % 2 == 0 ? Player::bob : Player::alice;
    const auto game = Game::informed(g.a, g.b, Discrete{g.points}, designated);
    const auto audit = equilibrium_fairness_audit(game);
    if (audit.empty()) continue;
    ++s.instances;
    const Rational truthful = truthful_welfare(game);
    for (const auto& e : audit) {
      ++s.equilibria;
      const auto& f = e.equilibrium.fairness;
      const Rational ratio = truthful / e.equilibrium.welfare;
      if (ratio > s.worst_ratio) s.worst_ratio = ratio;
      if (ratio > q(4, 3)) ++s.ratio_violations;
      if (!f.envy_free.alice || !f.envy_free.bob) ++s.envy;
      if (!f.pareto_optimal) {
        ++s.not_pareto;
        // Refinement check: does a 10x finer deviation grid break it?
        const auto fine = Game::informed(g.a, g.b, Continuous{}, designated);
        if (!check_profile(fine, e.equilibrium.profile, 10 * g.points).report.is_pure_nash) ++s.broken_by_refinement;
        if (s.examples.empty()) {
          auto join = [](std::span<const std::int64_t> v) {
            std::string out = "(";
            for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
            return out + ")";
          };
          s.examples.push_back("a=" + join(g.a.points()) + " b=" + join(g.b.points()) + " P=" +
                               std::to_string(g.points) + " designated " + to_string(designated));
        }
      }
    }
  }
  return s;
}

Outcome poa_bound(const Sweep& s) {
  Outcome out;
  out.require(s.instances >= 100, "only " + std::to_string(s.instances) + " instances");
  out.require(s.ratio_violations == 0, std::to_string(s.ratio_violations) + " ratios above 4/3");
  out.detail << (out.pass ? "" : "; ") << s.instances << " informed instances, " << s.equilibria
             << " equilibria, worst ratio " << s.worst_ratio.str() << " (" << to_double(s.worst_ratio) << ")";
  return out;
}

Outcome equilibrium_fairness(const Sweep& s) {
  Outcome out;
  out.require(s.envy == 0, std::to_string(s.envy) + " equilibria with envy");
  out.require(s.not_pareto == 0, std::to_string(s.not_pareto) + " of " + std::to_string(s.equilibria) +
                                     " informed equilibria not Pareto optimal at the true valuations (e.g. " +
                                     (s.examples.empty() ? std::string() : s.examples.front()) + ")");
  out.detail << (out.pass ? "" : "; ") << s.equilibria << " equilibria, " << s.envy << " envy, " << s.not_pareto
             << " not Pareto optimal, " << s.broken_by_refinement << " of those broken on the 10P deviation grid";
  return out;
}

// 7
Outcome epsilon_nash(std::mt19937_64& rng) {
  Outcome out;
  const Rational eps(1, 100);
  Rational worst = 0;
  const int n = 20;
  for (int t = 0; t < n; ++t) {
    const std::size_t m = 2 + t % 3;
    const std::int64_t p = static_cast<std::int64_t>(m) + static_cast<std::int64_t>(rng() % (10 - m));
    const auto a = Valuation::from_points(oracle::random_composition(rng, m, p));
    const auto b = Valuation::from_points(oracle::random_composition(rng, m, p));
    const auto eq = construct_epsilon_nash(a, b, eps);
    const Game game(a, b, Continuous{}, lex);
    const auto gaps = check_profile(game, eq.profile, 10 * p).report.gaps;
    worst = std::max({worst, gaps.alice, gaps.bob});
    if (gaps.alice > eps || gaps.bob > eps) out.require(false, "gap above epsilon on instance " + std::to_string(t));
    const auto pp = eq.points.convert_to<std::int64_t>();
    if (!eq.profile.x.points_at(pp) || !eq.profile.y.points_at(pp)) {
      out.require(false, "P' does not represent the profile on instance " + std::to_string(t));
    }
  }
  out.detail << (out.pass ? "" : "; ") << n << " instances, largest measured gap " << worst.str();
  return out;
}

// 8
Outcome pareto_oracle(std::mt19937_64& rng) {
  Outcome out;
  int disagreements = 0;
  int bad_witness = 0;
  int not_optimal = 0;
  const int n = 1200;
  for (int t = 0; t < n; ++t) {
    const std::size_t m = 1 + t % 4;
    const auto a = oracle::random_valuation(rng, m, 5);
    const auto b = oracle::random_valuation(rng, m, 5);
    std::vector<Rational> s(m);
    for (auto& v : s) v = Rational(static_cast<long>(rng() % 5), 4);
    const auto w = Allocation::from_alice_shares(s);
    const bool optimal = is_pareto_optimal(a, b, w);
    const std::int64_t fine = 8 * oracle::scaled(a).denominator * oracle::scaled(b).denominator;
    const bool improvable = oracle::grid_dominated(a, b, s, 8) || oracle::exchange_grid_improves(a, b, s, fine);
    if (optimal == improvable) ++disagreements;
    const auto e = pareto_improving_exchange(a, b, w);
    if (e.has_value() == optimal) ++bad_witness;
    if (e) {
      ++not_optimal;
      const auto after = apply_exchange(w, *e);
      if (!(utility(a, after.alice()) > utility(a, w.alice()) && utility(b, after.bob()) > utility(b, w.bob()))) {
        ++bad_witness;
      }
    }
  }
  out.require(disagreements == 0, std::to_string(disagreements) + " disagreements");
  out.require(bad_witness == 0, std::to_string(bad_witness) + " bad witnesses");
  out.detail << (out.pass ? "" : "; ") << n << " pairs (" << not_optimal << " not optimal), every witness improves both";
  return out;
}

// 9
Outcome two_formulations(std::mt19937_64& rng) {
  Outcome out;
  int mismatches = 0;
  const int n = 12000;
  for (int t = 0; t < n; ++t) {
    const std::size_t m = 1 + t % 6;
    const auto x = oracle::random_valuation(rng, m, t % 3 == 0 ? 3 : 9);
    const auto y = oracle::random_valuation(rng, m, t % 3 == 0 ? 3 : 9);
    const auto truth = oracle::random_valuation(rng, m, 9);
    const TieBreakRule rule = t % 3 == 0   ? lex
                              : t % 3 == 1 ? TieBreakRule::informed(Player::alice, truth)
                                           : TieBreakRule::informed(Player::bob, truth);
    if (adjusted_winner(x, y, rule).allocation != two_phase_adjusted_winner(x, y, rule)) ++mismatches;
  }
  out.require(mismatches == 0, std::to_string(mismatches) + " mismatches");
  out.detail << (out.pass ? "" : "; ") << n << " profiles, exact equality";
  return out;
}

// 10
Outcome characterization(std::mt19937_64& rng) {
  Outcome out;
  int checked = 0;
  int wrong = 0;
  int maxmin_wrong = 0;
  while (checked < 120) {
    const std::size_t m = 2 + checked % 3;
    const auto a = oracle::random_valuation(rng, m, 6);
    const auto b = oracle::random_valuation(rng, m, 6);
    if (oracle::ratio_consistent_orders(a, b).size() != 1) continue;
    ++checked;
    const auto aw = adjusted_winner(a, b, lex).allocation;
    std::vector<std::vector<Rational>> found;
    for (const auto& w : oracle::equitable_allocations(a, b, oracle::grid_levels(6))) {
      if (is_pareto_optimal(a, b, Allocation::from_alice_shares(w))) found.push_back(w);
    }
    if (found.size() != 1 || Allocation::from_alice_shares(found.front()) != aw) ++wrong;
    const std::int64_t k = 8;
    const Rational grid = oracle::grid_maxmin(a, b, k);
    const Rational common = utility(a, aw.alice());
    if (!(grid <= common && grid >= common - Rational(1, k))) ++maxmin_wrong;
  }
  out.require(wrong == 0, std::to_string(wrong) + " instances without a unique match");
  out.require(maxmin_wrong == 0, std::to_string(maxmin_wrong) + " maxmin mismatches");
  out.detail << (out.pass ? "" : "; ") << checked << " distinct-ratio instances, unique optimum = AW, maxmin within 1/8";
  return out;
}

// 11
Outcome two_item_deviations(std::mt19937_64&) {
  Outcome out;
  const auto a = two(q(11, 20));
  const auto b = two(q(7, 10));
  const Game game(a, b, Continuous{}, lex);
  int failures = 0;
  for (int i = 1; i <= 10; ++i) {
    for (int j = 1; j <= 10; ++j) {
      const StrategyProfile profile{two(q(i, 12)), two(q(j, 12))};
      try {
        const auto w = improving_deviation_two_items(a, b, profile);
        const Rational gain =
            true_utility(game, profile.with(w.player, w.deviation), w.player) - true_utility(game, profile, w.player);
        if (!(gain > 0 && gain == w.gain)) ++failures;
      } catch (const Error&) {
        ++failures;
      }
    }
  }
  out.require(failures == 0, std::to_string(failures) + " grid points without a verified deviation");
  out.detail << (out.pass ? "" : "; ") << "100 profiles x,y in {1/12..10/12}";
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::uint64_t seed = 20240601;
  app.add_option("--seed", seed, "random seed")->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  std::mt19937_64 rng(seed);
  std::cout << "seed " << seed << '\n';
  int failed = 0;
  auto report = [&](int id, const char* name, const Outcome& o) {
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << id << "  " << name << "  " << o.detail.str() << std::endl;
    if (!o.pass) ++failed;
  };

  report(1, "no pure equilibrium, 4 items / 7 points", no_equilibrium(rng));
  report(2, "informed tie-breaking: (a,a) is exact", informed_existence(rng));
  report(3, "fifty-fifty welfare", fifty_fifty(rng));
  report(4, "price-of-anarchy family", poa_family(rng));
  const Sweep sweep = informed_sweep(rng);
  report(5, "price of anarchy <= 4/3", poa_bound(sweep));
  report(6, "equilibria envy-free and Pareto optimal", equilibrium_fairness(sweep));
  report(7, "epsilon-Nash certification", epsilon_nash(rng));
  report(8, "Pareto test vs brute force", pareto_oracle(rng));
  report(9, "one-pass vs two-phase Adjusted Winner", two_formulations(rng));
  report(10, "characterization sweep", characterization(rng));
  report(11, "two-item improving deviations", two_item_deviations(rng));

  std::cout << (failed == 0 ? "all criteria pass" : std::to_string(failed) + " criteria fail") << '\n';
  return failed == 0 ? 0 : 1;
}
