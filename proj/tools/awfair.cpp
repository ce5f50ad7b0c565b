// awfair: command-line front end.
//
//   awfair allocate   instances/fifty_fifty.txt
//   awfair equilibria instances/no_equilibrium.txt --output machine
//   awfair generate   --items 3 --points 8 --seed 4
//
// Exit status: 0 ok, 2 bad input, 3 search budget exceeded, 1 anything else.

#include <iostream>
#include <random>
#include <string>

#include "CLI11.hpp"

#include "awfair/cli/instance.hpp"
#include "awfair/cli/report.hpp"

namespace {

using namespace awfair;
using namespace awfair::cli;

struct Flags {
  std::string instance_path;
  std::string tie_rule;
  std::string designated;
  std::int64_t points = 0;
  std::string epsilon = "1/100";
  std::int64_t grid = 0;
  std::uint64_t budget = default_profile_budget;
  std::string output = "human";
  unsigned threads = 0;
  // generate
  std::uint64_t seed = 1;
  std::size_t items = 3;
};

void apply_overrides(Instance& inst, const Flags& f) {
  if (!f.tie_rule.empty()) inst.tie_rule = parse_tie_rule(f.tie_rule);
  if (!f.designated.empty()) inst.designated = parse_player(f.designated);
  if (f.points > 0) {
    if (f.points < static_cast<std::int64_t>(inst.items())) {
      throw InfeasibleStrategySpace("--points " + std::to_string(f.points) + " is below the item count");
    }
    inst.points = f.points;
  }
}

Instance generate(const Flags& f) {
  if (f.items == 0 || f.points < static_cast<std::int64_t>(f.items)) {
    throw InfeasibleStrategySpace("generate needs --points >= --items >= 1");
  }
  std::mt19937_64 rng(f.seed);
  auto composition = [&] {
    // f.items - 1 distinct cut points in 1..points-1
    std::vector<std::int64_t> pool(static_cast<std::size_t>(f.points - 1));
    std::iota(pool.begin(), pool.end(), 1);
    std::shuffle(pool.begin(), pool.end(), rng);
    std::vector<std::int64_t> cuts(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(f.items - 1));
    std::sort(cuts.begin(), cuts.end());
    std::vector<std::int64_t> parts;
    std::int64_t prev = 0;
    for (auto c : cuts) {
      parts.push_back(c - prev);
      prev = c;
    }
    parts.push_back(f.points - prev);
    return Valuation::from_points(parts);
  };
  Instance inst;
  inst.alice = composition();
  inst.bob = composition();
  inst.points = f.points;
  if (!f.tie_rule.empty()) inst.tie_rule = parse_tie_rule(f.tie_rule);
  if (!f.designated.empty()) inst.designated = parse_player(f.designated);
  return inst;
}

int run(const std::string& name, const Flags& f) {
  if (name == "generate") {
    std::cout << "# seed " << f.seed << '\n' << write_instance(generate(f));
    return 0;
  }
  if (f.output != "human" && f.output != "machine") throw ParseError("--output must be human or machine");
  Instance inst = load_instance(f.instance_path);
  apply_overrides(inst, f);
  Options options;
  options.epsilon = parse_rational(f.epsilon);
  if (f.grid > 0) options.deviation_grid = f.grid;
  options.budget = f.budget;
  options.threads = f.threads;
  const auto report = run_command(parse_command(name), inst, options);
  std::cout << format_report(report, f.output == "machine" ? OutputMode::machine : OutputMode::human);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adjusted Winner allocation and strategic analysis"};
  app.require_subcommand(1);
  Flags f;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--tie-rule", f.tie_rule, "lexicographic | informed (overrides the file)");
    sub->add_option("--designated", f.designated, "alice | bob: who breaks ties under informed");
    sub->add_option("--points", f.points, "points per player (discrete variant)");
  };

  const std::vector<std::pair<std::string, std::string>> commands{
      {"allocate", "run Adjusted Winner and report fairness at the true valuations"},
      {"audit", "fairness of the allocation given in the instance"},
      {"equilibria", "all pure Nash equilibria of the discrete game, with a fairness audit"},
      {"poa", "price of anarchy of the discrete game"},
      {"epsilon-nash", "construct and certify an epsilon-Nash profile"},
      {"deviate2", "improving deviation for a two-item profile"}};
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("instance", f.instance_path, "instance file")->required()->check(CLI::ExistingFile);
    add_common(sub);
    sub->add_option("--epsilon", f.epsilon, "epsilon as NUM/DEN")->capture_default_str();
    sub->add_option("--deviation-grid-denominator", f.grid,
                    "denominator of the deviation grid for continuous certificates (default 10 P)");
    sub->add_option("--budget", f.budget, "maximum number of profiles to evaluate")->capture_default_str();
    sub->add_option("--output", f.output, "human | machine")->capture_default_str();
    sub->add_option("--threads", f.threads, "worker threads (0: all cores)");
  }
  auto* gen = app.add_subcommand("generate", "print a random discrete instance");
  add_common(gen);
  gen->add_option("--seed", f.seed, "random seed")->capture_default_str();
  gen->add_option("--items", f.items, "number of items")->capture_default_str();
  f.points = 0;
  gen->callback([&] {
    if (f.points == 0) f.points = 9;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    return run(name, f);
  } catch (const SearchBudgetExceeded& e) {
    std::cerr << "awfair: " << e.what() << " (raise --budget)\n";
    return 3;
  } catch (const ParseError& e) {
    std::cerr << "awfair: " << e.what() << '\n';
    return 2;
  } catch (const InvalidValuation& e) {
    std::cerr << "awfair: " << e.what() << '\n';
    return 2;
  } catch (const DimensionError& e) {
    std::cerr << "awfair: " << e.what() << '\n';
    return 2;
  } catch (const InfeasibleStrategySpace& e) {
    std::cerr << "awfair: " << e.what() << '\n';
    return 2;
  } catch (const NotApplicable& e) {
    std::cerr << "awfair: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "awfair: " << e.what() << '\n';
    return 1;
  }
}
