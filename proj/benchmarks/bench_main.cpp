#include <benchmark/benchmark.h>

#include "randteam/discrete_game.hpp"
#include "randteam/lqg_team.hpp"
#include "randteam/lqg_zero_sum.hpp"
#include "randteam/oracle.hpp"
#include "randteam/report.hpp"

namespace {

using namespace randteam;

void BM_PayoffMatrixExact(benchmark::State& state) {
  TeamGame game = chain_game(Rational(1, 4), Rational(1, 3), Rational(2, 3));
  for (auto _ : state) {
    PayoffMatrix m = payoff_matrix(game);
    benchmark::DoNotOptimize(m.values.sum());
  }
}
BENCHMARK(BM_PayoffMatrixExact);

void BM_MinimaxReferenceGame(benchmark::State& state) {
  TeamGame game = chain_game(Rational(1, 4), Rational(1, 3), Rational(2, 3));
  PayoffMatrix m = payoff_matrix(game);
  for (auto _ : state) {
    MatrixGameSolution sol = minimax_joint(m);
    benchmark::DoNotOptimize(sol.value);
  }
}
BENCHMARK(BM_MinimaxReferenceGame);

void BM_MinimaxRandom(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  PayoffMatrix m;
  m.values.resize(n, n);
  for (int i = 0; i < n; ++i) {
    m.row_profiles.push_back({i});
    m.row_labels.push_back("r");
    m.col_profiles.push_back({i});
    m.col_labels.push_back("c");
    for (int j = 0; j < n; ++j)
      m.values(i, j) = counter_uniform(99, i, j);
  }
  for (auto _ : state) {
    MatrixGameSolution sol = minimax_joint(m);
    benchmark::DoNotOptimize(sol.value);
  }
}
BENCHMARK(BM_MinimaxRandom)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

void BM_SolveTeamBaseline(benchmark::State& state) {
  MatrixXd b(2, 2), sigma(2, 2);
  b << 2, -1, -1, 1;
  sigma << 1, 0.25, 0.25, 1;
  LqgTeamSpec spec = LqgTeamSpec::diagonal(b, MatrixXd::Identity(2, 2), sigma);
  for (auto _ : state) {
    TeamSolution sol = solve_team(spec);
    benchmark::DoNotOptimize(sol.value);
  }
}
BENCHMARK(BM_SolveTeamBaseline);

void BM_SolveSaddle5x5(benchmark::State& state) {
  ZsLqgSpec spec = zs_reference_spec(1, "consultant");
  for (auto _ : state) {
    SaddleSolution sol = solve_saddle(spec);
    benchmark::DoNotOptimize(sol.value);
  }
}
BENCHMARK(BM_SolveSaddle5x5);

void BM_McFiniteProfile(benchmark::State& state) {
  TeamGame game = chain_game(Rational(1, 4), Rational(1, 3), Rational(2, 3));
  RuleProfile profile;
  auto rules = enumerate_rules(2, 2);
  profile.tables = {rules[1], rules[1], rules[1]};
  const std::uint64_t n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    McEstimate mc = mc_expected_payoff(game, profile, n, 1);
    benchmark::DoNotOptimize(mc.mean);
  }
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) *
                          static_cast<int64_t>(n));
}
BENCHMARK(BM_McFiniteProfile)->Arg(100000);

void BM_McZeroSumCost(benchmark::State& state) {
  ZsLqgSpec spec = zs_reference_spec(1, "mole");
  SaddleSolution sol = solve_saddle(spec);
  VectorXd coeffs = sol.as_vector();
  const std::uint64_t n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    McEstimate mc = mc_zs_cost(spec, coeffs, n, 1);
    benchmark::DoNotOptimize(mc.mean);
  }
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) *
                          static_cast<int64_t>(n));
}
BENCHMARK(BM_McZeroSumCost)->Arg(100000);

}  // namespace

BENCHMARK_MAIN();
