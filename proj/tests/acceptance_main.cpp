// Acceptance suite: re-derives every pinned reference result and property at
// its stated tolerance and prints one pass/fail line per criterion.
//
// Two reference values are documented errata (see data/known_discrepancies.json)
// and cannot be reproduced by any consistent computation from the stated
// inputs; the affected sub-checks are asserted as stated and reported
// honestly rather than loosened.

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "randteam/discrete_game.hpp"
#include "randteam/lqg_team.hpp"
#include "randteam/lqg_zero_sum.hpp"
#include "randteam/oracle.hpp"
#include "randteam/report.hpp"

using namespace randteam;

namespace {

struct Criterion {
  int number;
  std::string name;
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back(what);
    }
  }
  void note(const std::string& what) { notes.push_back(what); }
};

std::string fmt(double v) { return format_double(v); }

// ---------------------------------------------------------------------------
// 1. baseline two-DM team optimum
// ---------------------------------------------------------------------------
Criterion criterion1() {
  Criterion c{1, "baseline team optimum (theta and J within 5e-3)"};
  MatrixXd b(2, 2), sigma(2, 2);
  b << 2, -1, -1, 1;
  sigma << 1, 0.25, 0.25, 1;
  TeamSolution sol =
      solve_team(LqgTeamSpec::diagonal(b, MatrixXd::Identity(2, 2), sigma));
  c.require(std::abs(sol.policy.theta(0) - (-0.6452)) <= 5e-3,
            "theta1 " + fmt(sol.policy.theta(0)));
  c.require(std::abs(sol.policy.theta(1) - (-1.1613)) <= 5e-3,
            "theta2 " + fmt(sol.policy.theta(1)));
  c.require(std::abs(sol.value - (-1.806)) <= 5e-3, "J " + fmt(sol.value));
  if (c.pass) c.note("theta=(" + fmt(sol.policy.theta(0)) + "," +
                     fmt(sol.policy.theta(1)) + "), J=" + fmt(sol.value));
  return c;
}

// ---------------------------------------------------------------------------
// 2. as-printed table rows 3-5 and the corrected-mode bound
// ---------------------------------------------------------------------------
Criterion criterion2() {
  Criterion c{2, "as-printed rows 3-5 and corrected-mode centralized bound"};
  MatrixXd b(2, 2), sigma(2, 2);
  b << 2, -1, -1, 1;
  sigma << 1, 0.25, 0.25, 1;
  const MatrixXd s = MatrixXd::Identity(2, 2);

  struct Row {
    std::array<double, 4> phi;
    double printed_j;
    const char* name;
  };
  const Row rows[3] = {{{0.5, 0.5, 0.5, 0.5}, -5.2974, "row3"},
                       {{2.0 / 3, 1.0 / 3, 0.75, 0.25}, -4.5211, "row4"},
                       {{1.0 / 3, 2.0 / 3, 0.25, 0.75}, -3.6923, "row5"}};

  for (const Row& row : rows) {
    TeamSolution pf = paper_faithful_table1(row.phi, sigma, b, s);
    c.require(std::abs(pf.value - row.printed_j) <= 5e-3,
              std::string(row.name) + " as-printed J=" + fmt(pf.value) +
                  " vs printed " + fmt(row.printed_j) +
                  " (printed row is not a solution of the printed system; "
                  "ledgered erratum)");
    LqgTeamSpec dep = LqgTeamSpec::diagonal(b, s, sigma);
    MatrixXd phim(2, 2);
    phim << row.phi[0], row.phi[1], row.phi[2], row.phi[3];
    dep.randomness = LqgRandomness::dependent(phim, {true, true});
    double corrected = dependent_randomness_solve(dep).value;
    c.require(std::abs(corrected - (-3.5)) <= 1e-6,
              std::string(row.name) + " corrected J=" + fmt(corrected));
  }

  // row-3 printed coefficients
  TeamSolution r3 = paper_faithful_table1(rows[0].phi, sigma, b, s);
  const double printed_theta[4] = {-0.3434, -0.7046, -2.7862, -4.0062};
  for (int i = 0; i < 4; ++i)
    c.require(std::abs(r3.policy.theta(i) - printed_theta[i]) <= 5e-3,
              "row3 theta" + std::to_string(i + 1) + "=" + fmt(r3.policy.theta(i)));

  // the compatibility report must carry rows 2-5 as known discrepancies
  Report rep = reproduce_table1(SolveMode::Corrected, 5e-3);
  int kd = 0;
  for (const auto& rec : rep.records)
    kd += rec.status == CompatRecord::Status::KnownDiscrepancy;
  c.require(kd == 4, "corrected-mode report has " + std::to_string(kd) +
                         " known-discrepancy rows, expected rows 2-5");
  c.require(!has_mismatch(rep), "corrected-mode report has unexplained mismatches");
  return c;
}

// ---------------------------------------------------------------------------
// 3. the 16x4 expected-payoff table, security levels, no pure saddle
// ---------------------------------------------------------------------------
Criterion criterion3() {
  Criterion c{3, "16x4 payoff table (5e-3 or ledgered+cross-checked), security "
                 "levels exact, no pure saddle"};
  Report rep = reproduce_table3(Rational(1, 4), Rational(1, 3), Rational(2, 3), 5e-3);
  int matches = 0, ledgered = 0;
  for (const auto& rec : rep.records) {
    if (rec.status == CompatRecord::Status::Match) ++matches;
    else if (rec.status == CompatRecord::Status::KnownDiscrepancy) ++ledgered;
    else c.require(false, rec.case_id + " mismatch: computed " + fmt(rec.value) +
                              " vs printed " + fmt(*rec.paper_value));
  }
  c.note(std::to_string(matches) + " cells within 5e-3, " +
         std::to_string(ledgered) +
         " ledgered (each cross-checked against the direct 5-outcome sum)");

  TeamGame game = chain_game(Rational(1, 4), Rational(1, 3), Rational(2, 3));
  PayoffMatrix m = payoff_matrix(game);
  auto [lower, upper] = security_levels(m);
  c.require(lower == 0.25, "lower security level " + fmt(lower));
  c.require(upper == 1.0, "upper security level " + fmt(upper));
  c.require(!pure_saddle(m).has_value(), "unexpected pure saddle");
  return c;
}

// ---------------------------------------------------------------------------
// 4. private-randomization mixtures of the maximizer
// ---------------------------------------------------------------------------
Criterion criterion4() {
  Criterion c{4, "maximizer mixtures: 0.4306 and 0.5 within 1e-3"};
  TeamGame game = chain_game(Rational(1, 4), Rational(1, 3), Rational(2, 3));
  PayoffMatrix m = payoff_matrix(game);

  auto lex_mix = [&](const double (&a)[4]) {
    std::vector<double> v(4);
    for (int i = 0; i < 4; ++i) v[paper_rule_to_lex(i + 1)] = a[i];
    return MixedTeamStrategy::joint_dist(MixedTeamStrategy::Side::Maximizer, v);
  };
  auto a1 = lex_mix({5.0 / 18, 10.0 / 18, 1.0 / 12, 1.0 / 12});
  BestResponse br1 = best_response(m, a1);
  c.require(std::abs(br1.value - 0.4306) <= 1e-3,
            "best response to a1 " + fmt(br1.value));
  c.require(br1.profile_index == paper_row_index(4, 3),
            "best response profile " + br1.label);
  auto point = MixedTeamStrategy::point_mass(
      MixedTeamStrategy::Side::Minimizer,
      static_cast<std::size_t>(paper_row_index(4, 3)), 16);
  c.require(std::abs(mixed_payoff(m, point, a1) - 0.4306) <= 1e-3,
            "mixed payoff vs 0.4306");

  auto a2 = lex_mix({5.0 / 12, 5.0 / 12, 1.0 / 12, 1.0 / 12});
  BestResponse br2 = best_response(m, a2);
  c.require(std::abs(br2.value - 0.5) <= 1e-3,
            "best response to a2 " + fmt(br2.value));
  if (c.pass)
    c.note("0.43056 at d1^4 d2^3 and 0.5 (tie to the lowest index)");
  return c;
}

// ---------------------------------------------------------------------------
// 5. zero-sum saddle table, certificates, perturbation checks, coefficients
// ---------------------------------------------------------------------------
Criterion criterion5() {
  Criterion c{5, "zero-sum saddle values/coefficients with certificates and "
                 "10^4-perturbation verification"};
  struct Case {
    int which;
    const char* rand;
    double printed;
  };
  const Case cases[6] = {{1, "none", 0.598},      {1, "mole", 0.4012},
                         {1, "consultant", 0.1616}, {2, "none", 1.8991},
                         {2, "mole", 0.2037},      {2, "consultant", 0.2435}};
  for (const Case& k : cases) {
    ZsLqgSpec spec = zs_reference_spec(k.which, k.rand);
    SaddleSolution sol = solve_saddle(spec);
    c.require(std::abs(sol.value - k.printed) <= 5e-3,
              std::string("case") + std::to_string(k.which) + "/" + k.rand +
                  " J=" + fmt(sol.value) + " vs printed " + fmt(k.printed) +
                  (known_discrepancies().count("zs/case" +
                                               std::to_string(k.which) + "/" +
                                               k.rand + "/J")
                       ? " (ledgered erratum; printed value matches no "
                         "consistent computation)"
                       : ""));
    c.require(sol.max_curvature_negative && sol.min_block_eig > 0,
              std::string("case") + std::to_string(k.which) + "/" + k.rand +
                  " second-order certificates");
    SaddleCheck check = verify_saddle(spec, sol, 10000, 2024);
    c.require(check.ok, std::string("case") + std::to_string(k.which) + "/" +
                            k.rand + " perturbation check (violation " +
                            fmt(check.violation) + ")");
  }

  SaddleSolution mole = solve_saddle(zs_reference_spec(1, "mole"));
  const double printed[5] = {0.9615, 0.8052, 0.8052, -0.7103, -0.7103};
  VectorXd v = mole.as_vector();
  for (int i = 0; i < 5; ++i)
    c.require(std::abs(v(i) - printed[i]) <= 5e-3,
              "mole coefficient " + std::to_string(i) + " = " + fmt(v(i)));
  return c;
}

// ---------------------------------------------------------------------------
// 6. independence redundancy across both game families
// ---------------------------------------------------------------------------
Criterion criterion6() {
  Criterion c{6, "independent randomness is redundant (finite mixtures, LQG "
                 "C*=0, saddle-pinned mixed values)"};

  // finite: random single-team games, <= 16 profiles
  int games = 0;
  for (int trial = 0; trial < 100; ++trial, ++games) {
    double p1 = 0.1 + 0.8 * counter_uniform(101, trial, 0);
    double p = 0.1 + 0.8 * counter_uniform(101, trial, 1);
    double q = 0.1 + 0.8 * counter_uniform(101, trial, 2);
    FiniteEnv env = binary_chain_env(p1, p, q);
    ObservationMap maps;
    maps.entries = {ObsEntry::coordinate_select({1}),
                    ObsEntry::coordinate_select({2})};
    std::vector<double> table(4);
    for (int i = 0; i < 4; ++i)
      table[i] = std::floor(25.0 * counter_uniform(101, trial, 3 + i));
    TeamGame game = TeamGame::make(env, maps, {0, 1}, {},
                                   PayoffKernel::constant_kernel({2, 2}, table));
    TeamOptimum opt = team_optimum_pure(game);

    std::vector<double> values;
    auto r0 = enumerate_rules(2, 2), r1 = enumerate_rules(2, 2);
    for (const auto& a : r0)
      for (const auto& b : r1) {
        RuleProfile prof;
        prof.tables = {a, b};
        values.push_back(expected_payoff(game, prof));
      }
    bool vertex_attains = false;
    for (double val : values)
      vertex_attains = vertex_attains || std::abs(val - opt.value) <= 1e-12;
    c.require(vertex_attains, "optimum not attained at a vertex");
    for (int s = 0; s < 12; ++s) {
      double mixed = 0.0, total = 0.0;
      std::vector<double> w(values.size());
      for (std::size_t i = 0; i < w.size(); ++i)
        total += w[i] = counter_uniform(103, trial * 16 + s, i);
      for (std::size_t i = 0; i < w.size(); ++i)
        mixed += w[i] / total * values[i];
      c.require(mixed >= opt.value - 1e-9,
                "joint mixture undercuts the pure optimum");
    }
  }

  // LQG: random PD specs with private/common independent randomness
  int lqg = 0;
  for (int trial = 0; trial < 100; ++trial, ++lqg) {
    MatrixXd g(2, 2), h(2, 2), s(2, 2);
    for (int i = 0; i < 4; ++i) {
      g(i / 2, i % 2) = 2.0 * counter_uniform(107, trial, i) - 1.0;
      h(i / 2, i % 2) = 2.0 * counter_uniform(107, trial, 10 + i) - 1.0;
      s(i / 2, i % 2) = 2.0 * counter_uniform(107, trial, 20 + i) - 1.0;
    }
    LqgTeamSpec spec = LqgTeamSpec::diagonal(
        g * g.transpose() + 0.3 * MatrixXd::Identity(2, 2), s,
        h * h.transpose() + 0.3 * MatrixXd::Identity(2, 2));
    MatrixXd d = MatrixXd::Zero(2, 2);
    d(0, 0) = 0.2 + counter_uniform(107, trial, 30);
    d(1, 1) = 0.2 + counter_uniform(107, trial, 31);
    spec.randomness = trial % 2 == 0
                          ? LqgRandomness::private_indep(d)
                          : LqgRandomness::common_indep(
                                d + MatrixXd::Constant(2, 2, 0.15));
    IndependentRandomnessReport rep = independent_randomness_report(spec);
    c.require(rep.c_star.cwiseAbs().maxCoeff() <= 1e-10,
              "||C*|| = " + fmt(rep.c_star.cwiseAbs().maxCoeff()));
    c.require(std::abs(rep.j_total - rep.j_base) <= 1e-9 * (1 + std::abs(rep.j_base)),
              "randomized optimum differs from the base optimum");
  }

  // matrices with pure saddles pin the mixed value
  int saddles = 0;
  for (int trial = 0; trial < 100; ++trial) {
    int rows = 2 + static_cast<int>(counter_bits(109, trial, 0) % 5);
    int cols = 2 + static_cast<int>(counter_bits(109, trial, 1) % 5);
    MatrixXd vals(rows, cols);
    if (trial % 2 == 0) {
      for (int i = 0; i < rows * cols; ++i)
        vals(i / cols, i % cols) =
            std::floor(12.0 * counter_uniform(109, trial, 2 + i));
    } else {
      // additively separable games always admit pure saddles
      for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
          vals(i, j) = std::floor(9.0 * counter_uniform(109, trial, 2 + i)) +
                       std::floor(9.0 * counter_uniform(109, trial, 40 + j));
    }
    PayoffMatrix m;
    for (int i = 0; i < rows; ++i) {
      m.row_profiles.push_back({i});
      m.row_labels.push_back("r" + std::to_string(i));
    }
    for (int j = 0; j < cols; ++j) {
      m.col_profiles.push_back({j});
      m.col_labels.push_back("c" + std::to_string(j));
    }
    m.values = vals;
    if (auto cell = pure_saddle(m)) {
      ++saddles;
      double mixed = minimax_joint(m).value;
      c.require(std::abs(mixed - cell->value) <= 1e-9,
                "mixed value " + fmt(mixed) + " vs saddle " + fmt(cell->value));
    }
  }
  c.note(std::to_string(games) + " finite games, " + std::to_string(lqg) +
         " LQG specs, " + std::to_string(saddles) + " saddled matrices");
  c.require(saddles >= 40, "not enough saddled instances generated");
  return c;
}

// ---------------------------------------------------------------------------
// 7. information monotonicity
// ---------------------------------------------------------------------------
Criterion criterion7() {
  Criterion c{7, "coarsening never helps; enlarging a strategy set moves the "
                 "value in that team's favor"};
  int coarsenings = 0;
  for (int trial = 0; trial < 100; ++trial) {
    double p1 = 0.1 + 0.8 * counter_uniform(113, trial, 0);
    double p = 0.1 + 0.8 * counter_uniform(113, trial, 1);
    double q = 0.1 + 0.8 * counter_uniform(113, trial, 2);
    FiniteEnv env = binary_chain_env(p1, p, q);
    ObservationMap maps;
    maps.entries = {ObsEntry::coordinate_select({0}),
                    ObsEntry::coordinate_select({1, 2})};
    std::vector<double> table(4);
    for (int i = 0; i < 4; ++i)
      table[i] = std::floor(25.0 * counter_uniform(113, trial, 3 + i));
    TeamGame game = TeamGame::make(env, maps, {0, 1}, {},
                                   PayoffKernel::constant_kernel({2, 2}, table));
    double base = brute_force_optimum(game);
    for (int dm = 0; dm < 2; ++dm) {
      int k = game.alphabet_sizes[dm];
      for (int a = 0; a < k && coarsenings < 100000; ++a)
        for (int b2 = a + 1; b2 < k; ++b2) {
          ++coarsenings;
          double coarse = brute_force_optimum(merge_symbols(game, dm, a, b2));
          c.require(coarse >= base - 1e-12,
                    "coarsening improved the optimum by " + fmt(base - coarse));
        }
    }
  }

  for (int trial = 0; trial < 50; ++trial) {
    int rows = 3 + static_cast<int>(counter_bits(127, trial, 0) % 4);
    int cols = 3 + static_cast<int>(counter_bits(127, trial, 1) % 4);
    MatrixXd vals(rows, cols);
    for (int i = 0; i < rows * cols; ++i)
      vals(i / cols, i % cols) = 10.0 * counter_uniform(127, trial, 2 + i);
    auto wrap = [](MatrixXd v) {
      PayoffMatrix m;
      for (Eigen::Index i = 0; i < v.rows(); ++i) {
        m.row_profiles.push_back({static_cast<int>(i)});
        m.row_labels.push_back("r");
      }
      for (Eigen::Index j = 0; j < v.cols(); ++j) {
        m.col_profiles.push_back({static_cast<int>(j)});
        m.col_labels.push_back("c");
      }
      m.values = std::move(v);
      return m;
    };
    double full = minimax_joint(wrap(vals)).value;
    double fewer_rows = minimax_joint(wrap(vals.topRows(rows - 1))).value;
    double fewer_cols = minimax_joint(wrap(vals.leftCols(cols - 1))).value;
    c.require(fewer_rows >= full - 1e-9, "minimizer enlargement raised the value");
    c.require(fewer_cols <= full + 1e-9, "maximizer enlargement lowered the value");
  }
  c.note(std::to_string(coarsenings) + " coarsenings over 100 games; 50 matrices");
  return c;
}

// ---------------------------------------------------------------------------
// 8. convex-combination bound on symmetric instances
// ---------------------------------------------------------------------------
Criterion criterion8() {
  Criterion c{8, "convex-combination bound and own/swapped equality on "
                 "symmetric instances"};
  // The bound is a theorem only under the symmetric hypothesis (swap-invariant
  // Sigma, column-equal S); asymmetric counterexamples are documented in the
  // unit suite and the decisions ledger.
  int instances = 0;
  for (int trial = 0; trial < 100; ++trial, ++instances) {
    MatrixXd g(2, 2);
    for (int i = 0; i < 4; ++i)
      g(i / 2, i % 2) = 2.0 * counter_uniform(131, trial, i) - 1.0;
    MatrixXd b = g * g.transpose() + 0.3 * MatrixXd::Identity(2, 2);
    double var = 0.5 + counter_uniform(131, trial, 10);
    double cov = (2.0 * counter_uniform(131, trial, 11) - 1.0) * var * 0.9;
    MatrixXd sigma(2, 2);
    sigma << var, cov, cov, var;
    MatrixXd s(2, 2);
    double s0 = 2.0 * counter_uniform(131, trial, 12) - 1.0;
    double s1 = 2.0 * counter_uniform(131, trial, 13) - 1.0;
    s << s0, s0, s1, s1;
    LqgTeamSpec spec = LqgTeamSpec::diagonal(b, s, sigma);
    for (int bi = 1; bi <= 9; ++bi) {
      ConvexCombinationReport rep = problem123(spec, 0.1 * bi);
      c.require(rep.symmetric_case, "instance not recognized as symmetric");
      c.require(rep.bound_holds, "bound failed at beta=" + fmt(0.1 * bi));
      c.require(std::abs(rep.j1 - rep.j2) <= 1e-9, "J1 != J2 on a symmetric instance");
    }
  }
  c.note(std::to_string(instances) + " instances x 9 betas");
  return c;
}

// ---------------------------------------------------------------------------
// 9. oracle agreement (MC within 4 standard errors; grid refinement)
// ---------------------------------------------------------------------------
Criterion criterion9() {
  Criterion c{9, "MC oracle within 4 standard errors on every reference case; "
                 "grid refinement within 1e-4"};
  const std::uint64_t n = 1000000;
  const std::uint64_t seed = 2026;

  // every cell of the 16x4 table
  TeamGame game = chain_game(Rational(1, 4), Rational(1, 3), Rational(2, 3));
  auto rules = enumerate_rules(2, 2);
  int cells = 0;
  for (int gi = 1; gi <= 4; ++gi)
    for (int j = 1; j <= 4; ++j)
      for (int k = 1; k <= 4; ++k, ++cells) {
        RuleProfile prof;
        prof.tables = {rules[paper_rule_to_lex(gi)], rules[paper_rule_to_lex(j)],
                       rules[paper_rule_to_lex(k)]};
        double exact = expected_payoff(game, prof);
        McEstimate mc = mc_expected_payoff(game, prof, n, seed + cells);
        c.require(std::abs(mc.mean - exact) <= 4.0 * mc.stderr_ + 1e-12,
                  "cell g^" + std::to_string(gi) + " d1^" + std::to_string(j) +
                      " d2^" + std::to_string(k) + ": " + fmt(mc.mean) + " vs " +
                      fmt(exact));
      }

  // baseline team optimum
  MatrixXd b(2, 2), sigma(2, 2);
  b << 2, -1, -1, 1;
  sigma << 1, 0.25, 0.25, 1;
  LqgTeamSpec base = LqgTeamSpec::diagonal(b, MatrixXd::Identity(2, 2), sigma);
  Quadratic quad = assemble_quadratic(base);
  TeamSolution sol = solve_team(base);
  McEstimate mc = mc_team_cost(base, quad, sol.policy.theta, n, seed);
  c.require(std::abs(mc.mean - sol.value) <= 4.0 * mc.stderr_,
            "baseline MC " + fmt(mc.mean) + " vs " + fmt(sol.value));

  // corrected dependent-randomness optima (real expectations)
  for (const auto& phi : {std::array<double, 4>{0.5, 0.5, 0.5, 0.5},
                          std::array<double, 4>{2.0 / 3, 1.0 / 3, 0.75, 0.25}}) {
    LqgTeamSpec dep = base;
    MatrixXd phim(2, 2);
    phim << phi[0], phi[1], phi[2], phi[3];
    dep.randomness = LqgRandomness::dependent(phim, {true, true});
    Quadratic q2 = assemble_quadratic(dep);
    TeamSolution s2 = solve_team(dep);
    McEstimate m2 = mc_team_cost(dep, q2, s2.policy.theta, n, seed + 1);
    c.require(std::abs(m2.mean - s2.value) <= 4.0 * m2.stderr_,
              "dependent-randomness MC vs analytic");
  }

  // every zero-sum reference case
  for (int which : {1, 2})
    for (const char* rand : {"none", "mole", "consultant", "indep"}) {
      ZsLqgSpec spec = zs_reference_spec(which, rand);
      SaddleSolution zs = solve_saddle(spec);
      McEstimate m3 = mc_zs_cost(spec, zs.as_vector(), n, seed + which);
      c.require(std::abs(m3.mean - zs.value) <= 4.0 * m3.stderr_,
                std::string("zs case") + std::to_string(which) + "/" + rand +
                    " MC " + fmt(m3.mean) + " vs " + fmt(zs.value));
    }

  GridRefineResult grid = grid_refine(
      [&](const VectorXd& th) { return evaluate_cost(quad, th); },
      VectorXd::Constant(2, -5.0), VectorXd::Constant(2, 5.0), 6);
  c.require(std::abs(grid.value - sol.value) <= 1e-4,
            "grid refinement " + fmt(grid.value) + " vs " + fmt(sol.value));
  c.note("64 cells + 3 team optima + 8 saddle cases at n=10^6; grid ok");
  return c;
}

}  // namespace

int main() {
  std::vector<Criterion> results = {criterion1(), criterion2(), criterion3(),
                                    criterion4(), criterion5(), criterion6(),
                                    criterion7(), criterion8(), criterion9()};
  int failed = 0;
  for (const auto& c : results) {
    std::printf("[criterion %d] %s  %s\n", c.number, c.pass ? "PASS" : "FAIL",
                c.name.c_str());
    for (const auto& note : c.notes) std::printf("    - %s\n", note.c_str());
    failed += !c.pass;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(results.size()) - failed,
              results.size());
  return failed == 0 ? 0 : 1;
}
