#include <doctest.h>

#include "randteam/lqg_team.hpp"
#include "randteam/oracle.hpp"

using namespace randteam;

namespace {

MatrixXd table1_b() { return (MatrixXd(2, 2) << 2, -1, -1, 1).finished(); }
MatrixXd table1_sigma() { return (MatrixXd(2, 2) << 1, 0.25, 0.25, 1).finished(); }

LqgTeamSpec baseline_spec() {
  return LqgTeamSpec::diagonal(table1_b(), MatrixXd::Identity(2, 2), table1_sigma());
}

LqgTeamSpec with_phi(const std::array<double, 4>& phi) {
  LqgTeamSpec spec = baseline_spec();
  MatrixXd phim(2, 2);
  phim << phi[0], phi[1], phi[2], phi[3];
  spec.randomness = LqgRandomness::dependent(phim, {true, true});
  return spec;
}

// direct trace evaluation of E[u^T B u + 2 u^T S xi] for u = G xi + C w,
// with independent w of covariance Sw (an independent route for checking the
// assembled quadratic)
double trace_cost(const LqgTeamSpec& spec, const Quadratic& q,
                  const VectorXd& theta) {
  const int m = spec.decisions();
  const int n = static_cast<int>(spec.Sigma.rows());
  MatrixXd g = MatrixXd::Zero(m, n);
  MatrixXd c = MatrixXd::Zero(m, m);
  bool has_indep = false;
  for (std::size_t k = 0; k < q.keys.size(); ++k) {
    const CoeffKey& key = q.keys[k];
    if (q.indep_component[k] >= 0) {
      c(key.decision, q.indep_component[k]) += theta(k);
      has_indep = true;
    } else {
      g.row(key.decision) += theta(k) * q.dep_row[k].transpose();
    }
  }
  double j = (g.transpose() * spec.B * g * spec.Sigma).trace() +
             2.0 * (g.transpose() * spec.S * spec.Sigma).trace();
  if (has_indep)
    j += (c.transpose() * spec.B * c * spec.randomness.cov).trace();
  return j;
}

LqgTeamSpec random_pd_spec(std::uint64_t seed, int trial, int m = 2) {
  MatrixXd g(m, m), h(m, m), s(m, m);
  for (int i = 0; i < m * m; ++i) {
    g(i / m, i % m) = 2.0 * counter_uniform(seed, trial, i) - 1.0;
    h(i / m, i % m) = 2.0 * counter_uniform(seed, trial, 100 + i) - 1.0;
    s(i / m, i % m) = 2.0 * counter_uniform(seed, trial, 200 + i) - 1.0;
  }
  MatrixXd b = g * g.transpose() + 0.3 * MatrixXd::Identity(m, m);
  MatrixXd sigma = h * h.transpose() + 0.3 * MatrixXd::Identity(m, m);
  return LqgTeamSpec::diagonal(b, s, sigma);
}

}  // namespace

TEST_CASE("assembled quadratic of the two-DM instance") {
  Quadratic q = assemble_quadratic(baseline_spec());
  REQUIRE(q.free_count() == 2);
  CHECK(q.H(0, 0) == doctest::Approx(2.0));
  CHECK(q.H(0, 1) == doctest::Approx(-0.25));
  CHECK(q.H(1, 0) == doctest::Approx(-0.25));
  CHECK(q.H(1, 1) == doctest::Approx(1.0));
  CHECK(q.g(0) == doctest::Approx(1.0));
  CHECK(q.g(1) == doctest::Approx(1.0));
  CHECK(q.c == 0.0);
}

TEST_CASE("identity instance assembles to the identity") {
  LqgTeamSpec spec = LqgTeamSpec::diagonal(
      MatrixXd::Identity(2, 2), MatrixXd::Zero(2, 2), MatrixXd::Identity(2, 2));
  Quadratic q = assemble_quadratic(spec);
  CHECK((q.H - MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() == 0.0);
  CHECK(q.g.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("private randomness gives a block-diagonal quadratic") {
  LqgTeamSpec spec = baseline_spec();
  spec.randomness = LqgRandomness::private_indep(MatrixXd::Identity(2, 2));
  Quadratic q = assemble_quadratic(spec);
  REQUIRE(q.free_count() == 4);
  // cross block between feed and omega coefficients is zero
  CHECK(q.H(0, 2) == 0.0);
  CHECK(q.H(0, 3) == 0.0);
  CHECK(q.H(1, 2) == 0.0);
  CHECK(q.H(1, 3) == 0.0);
  // omega block carries the curvature of Tr[C^T B C Sigma_1]
  CHECK(q.H(2, 2) == doctest::Approx(spec.B(0, 0)));
  CHECK(q.H(3, 3) == doctest::Approx(spec.B(1, 1)));
  CHECK(q.H(2, 3) == doctest::Approx(0.0));  // Sigma_1 diagonal
  CHECK(q.g(2) == 0.0);
  CHECK(q.g(3) == 0.0);
}

TEST_CASE("assembled cost equals the direct trace evaluation") {
  for (int trial = 0; trial < 50; ++trial) {
    LqgTeamSpec spec = random_pd_spec(41, trial);
    if (trial % 3 == 1)
      spec.randomness = LqgRandomness::private_indep(
          (MatrixXd(2, 2) << 0.7, 0, 0, 1.3).finished());
    if (trial % 3 == 2) {
      MatrixXd phi(2, 2);
      for (int i = 0; i < 4; ++i)
        phi(i / 2, i % 2) = counter_uniform(41, trial, 300 + i);
      spec.randomness = LqgRandomness::dependent(phi, {true, true});
    }
    Quadratic q = assemble_quadratic(spec);
    VectorXd theta(q.keys.size());
    for (Eigen::Index i = 0; i < theta.size(); ++i)
      theta(i) = 2.0 * counter_uniform(41, trial, 400 + i) - 1.0;
    for (std::size_t k = 0; k < q.keys.size(); ++k)
      if (q.free_index[k] < 0) theta(static_cast<Eigen::Index>(k)) = 0.0;
    double direct = trace_cost(spec, q, theta);
    double assembled = evaluate_cost(q, theta);
    CHECK(assembled ==
          doctest::Approx(direct).epsilon(1e-10).scale(1.0 + std::abs(direct)));
  }
}

TEST_CASE("baseline solve reproduces the no-randomization optimum") {
  TeamSolution sol = solve_team(baseline_spec());
  CHECK(sol.policy.theta(0) == doctest::Approx(-20.0 / 31).epsilon(1e-12));
  CHECK(sol.policy.theta(1) == doctest::Approx(-36.0 / 31).epsilon(1e-12));
  CHECK(sol.value == doctest::Approx(-56.0 / 31).epsilon(1e-12));
  CHECK(sol.residual <= 1e-9 * (1 + std::sqrt(2.0)));
}

TEST_CASE("zero coupling to the environment solves to zero") {
  LqgTeamSpec spec = baseline_spec();
  spec.S = MatrixXd::Zero(2, 2);
  TeamSolution sol = solve_team(spec);
  CHECK(sol.policy.theta.cwiseAbs().maxCoeff() <= 1e-14);
  CHECK(sol.value == doctest::Approx(0.0));
}

TEST_CASE("centralized information reaches the closed-form bound") {
  LqgTeamSpec spec = baseline_spec();
  spec.feeds = {{VectorXd::Unit(2, 0), VectorXd::Unit(2, 1)},
                {VectorXd::Unit(2, 0), VectorXd::Unit(2, 1)}};
  TeamSolution sol = solve_team(spec);
  double bound = -(spec.S.transpose() * spec.B.inverse() * spec.S * spec.Sigma).trace();
  CHECK(bound == doctest::Approx(-3.5));
  CHECK(sol.value == doctest::Approx(-3.5).epsilon(1e-12));
}

TEST_CASE("indefinite or singular quadratics are rejected with the eigenvalue") {
  LqgTeamSpec spec = baseline_spec();
  // duplicated feeds make H singular
  spec.feeds = {{VectorXd::Unit(2, 0), VectorXd::Unit(2, 0)}, {VectorXd::Unit(2, 1)}};
  try {
    solve_team(spec);
    FAIL("expected NumericalError");
  } catch (const NumericalError& e) {
    CHECK(std::string(e.what()).find("eigenvalue") != std::string::npos);
  }
}

TEST_CASE("independent randomness is redundant") {
  SUBCASE("private, identity covariance") {
    LqgTeamSpec spec = baseline_spec();
    spec.randomness = LqgRandomness::private_indep(MatrixXd::Identity(2, 2));
    IndependentRandomnessReport rep = independent_randomness_report(spec);
    CHECK(rep.c_star.cwiseAbs().maxCoeff() <= 1e-10);
    CHECK(rep.j_base == doctest::Approx(-56.0 / 31).epsilon(1e-12));
    CHECK(rep.j_total == doctest::Approx(rep.j_base).epsilon(1e-12));
  }
  SUBCASE("common, perfectly correlated (rank 1)") {
    LqgTeamSpec spec = baseline_spec();
    spec.randomness = LqgRandomness::common_indep((MatrixXd(2, 2) << 1, 1, 1, 1).finished());
    IndependentRandomnessReport rep = independent_randomness_report(spec);
    CHECK(rep.c_star.cwiseAbs().maxCoeff() <= 1e-10);
    CHECK(rep.j_total == doctest::Approx(-56.0 / 31).epsilon(1e-12));
  }
  SUBCASE("zero covariance vanishes identically") {
    LqgTeamSpec spec = baseline_spec();
    spec.randomness = LqgRandomness::private_indep(MatrixXd::Zero(2, 2));
    IndependentRandomnessReport rep = independent_randomness_report(spec);
    CHECK(rep.c_star.cwiseAbs().maxCoeff() == 0.0);
    CHECK(rep.j_total == doctest::Approx(rep.j_base));
  }
  SUBCASE("indefinite covariance is rejected") {
    LqgTeamSpec spec = baseline_spec();
    spec.randomness = LqgRandomness::common_indep((MatrixXd(2, 2) << 1, 2, 2, 1).finished());
    CHECK_THROWS_AS(independent_randomness_report(spec), std::invalid_argument);
  }
  SUBCASE("C* is exactly zero on random PD instances") {
    for (int trial = 0; trial < 100; ++trial) {
      LqgTeamSpec spec = random_pd_spec(43, trial);
      MatrixXd d = MatrixXd::Zero(2, 2);
      d(0, 0) = 0.2 + counter_uniform(43, trial, 500);
      d(1, 1) = 0.2 + counter_uniform(43, trial, 501);
      spec.randomness = trial % 2 == 0
                            ? LqgRandomness::private_indep(d)
                            : LqgRandomness::common_indep(
                                  d + MatrixXd::Constant(2, 2, 0.1));
      IndependentRandomnessReport rep = independent_randomness_report(spec);
      CHECK(rep.c_star.cwiseAbs().maxCoeff() <= 1e-10);
      CHECK(std::abs(rep.j_total - rep.j_base) <= 1e-9 * (1 + std::abs(rep.j_base)));
    }
  }
}

TEST_CASE("environment-dependent randomness expands the policy span") {
  SUBCASE("half-half mixing recovers the centralized optimum") {
    TeamSolution sol = dependent_randomness_solve(with_phi({0.5, 0.5, 0.5, 0.5}));
    CHECK(sol.value == doctest::Approx(-3.5).epsilon(1e-12));
  }
  SUBCASE("any full-span mixing recovers the centralized optimum") {
    TeamSolution sol =
        dependent_randomness_solve(with_phi({2.0 / 3, 1.0 / 3, 0.75, 0.25}));
    CHECK(sol.value == doctest::Approx(-3.5).epsilon(1e-12));
  }
  SUBCASE("zero mixing carries no information") {
    TeamSolution sol = dependent_randomness_solve(with_phi({0, 0, 0, 0}));
    CHECK(sol.value == doctest::Approx(-56.0 / 31).epsilon(1e-12));
  }
  SUBCASE("one-sided randomness solves the three-coefficient problem") {
    TeamSolution sol = dependent_randomness_solve(with_phi({0.25, 0.75, 0, 0}));
    CHECK(sol.value == doctest::Approx(-3.03125).epsilon(1e-12));
  }
  SUBCASE("value is bounded by the centralized and baseline optima") {
    for (int trial = 0; trial < 60; ++trial) {
      LqgTeamSpec spec = random_pd_spec(47, trial);
      MatrixXd phi(2, 2);
      for (int i = 0; i < 4; ++i)
        phi(i / 2, i % 2) = counter_uniform(47, trial, 600 + i);
      spec.randomness = LqgRandomness::dependent(phi, {true, true});
      double j = dependent_randomness_solve(spec).value;
      LqgTeamSpec base = spec;
      base.randomness = LqgRandomness::none();
      double j_base = solve_team(base).value;
      double centralized =
          -(spec.S.transpose() * spec.B.inverse() * spec.S * spec.Sigma).trace();
      CHECK(j <= j_base + 1e-9);
      CHECK(j >= centralized - 1e-9);
    }
  }
}

TEST_CASE("as-printed system reproduces the reference rows it supports") {
  MatrixXd b = table1_b(), sigma = table1_sigma(), s = MatrixXd::Identity(2, 2);

  SUBCASE("row 1: no randomization") {
    TeamSolution sol = paper_faithful_table1({0, 0, 0, 0}, sigma, b, s);
    CHECK(sol.policy.theta(0) == doctest::Approx(-20.0 / 31).epsilon(1e-12));
    CHECK(sol.policy.theta(1) == doctest::Approx(-36.0 / 31).epsilon(1e-12));
    CHECK(sol.value == doctest::Approx(-56.0 / 31).epsilon(1e-12));
    CHECK(sol.mode == TeamSolution::Mode::PaperFaithful);
  }
  SUBCASE("row 3: symmetric mixing (the reference-matching row)") {
    TeamSolution sol = paper_faithful_table1({0.5, 0.5, 0.5, 0.5}, sigma, b, s);
    // frozen from the independent solve of the as-printed system
    CHECK(sol.policy.theta(0) == doctest::Approx(-0.3433596856).epsilon(1e-8));
    CHECK(sol.policy.theta(1) == doctest::Approx(-0.7045890443).epsilon(1e-8));
    CHECK(sol.policy.theta(2) == doctest::Approx(-2.7861720541).epsilon(1e-8));
    CHECK(sol.policy.theta(3) == doctest::Approx(-4.0061748608).epsilon(1e-8));
    CHECK(sol.value == doctest::Approx(-5.2931655518).epsilon(1e-8));
    // within the reference's print precision
    CHECK(std::abs(sol.value - (-5.2974)) <= 5e-3);
  }
  SUBCASE("rows 4 and 5 solve to the system's own values") {
    // The as-printed system's solutions differ from the printed rows; these
    // are the values the system actually has (frozen independently).
    TeamSolution r4 = paper_faithful_table1({2.0 / 3, 1.0 / 3, 0.75, 0.25}, sigma, b, s);
    CHECK(r4.value == doctest::Approx(-4.9413837547).epsilon(1e-8));
    TeamSolution r5 = paper_faithful_table1({1.0 / 3, 2.0 / 3, 0.25, 0.75}, sigma, b, s);
    CHECK(r5.value == doctest::Approx(-5.1590984050).epsilon(1e-8));
  }
  SUBCASE("row 2: zero-variance component is dropped, system solvable") {
    TeamSolution sol = paper_faithful_table1({0.25, 0.75, 0, 0}, sigma, b, s);
    CHECK(sol.policy.theta(3) == 0.0);
    CHECK(sol.value == doctest::Approx(-1.8258097166).epsilon(1e-6));
  }
  SUBCASE("the printed system embeds the reference B and S") {
    CHECK_THROWS_AS(
        paper_faithful_table1({0, 0, 0, 0}, sigma, MatrixXd::Identity(2, 2), s),
        std::invalid_argument);
  }
}

TEST_CASE("own/swapped/convex-combination comparison") {
  SUBCASE("reference instance at beta = 1/2") {
    ConvexCombinationReport rep = problem123(baseline_spec(), 0.5);
    CHECK(rep.j1 == doctest::Approx(-56.0 / 31).epsilon(1e-12));
    CHECK(rep.j2 == doctest::Approx(-0.1129032258).epsilon(1e-8));
    CHECK(rep.j3 == doctest::Approx(-3.125).epsilon(1e-12));
    CHECK(rep.bound_holds);
    // S has distinct columns, so the swapped problem is genuinely different
    CHECK_FALSE(rep.symmetric_case);
  }
  SUBCASE("beta outside the open interval is rejected") {
    CHECK_THROWS_AS(problem123(baseline_spec(), 1.0), std::invalid_argument);
    CHECK_THROWS_AS(problem123(baseline_spec(), 0.0), std::invalid_argument);
  }
  SUBCASE("symmetric instances have equal own/swapped optima") {
    for (int trial = 0; trial < 50; ++trial) {
      MatrixXd g(2, 2);
      for (int i = 0; i < 4; ++i)
        g(i / 2, i % 2) = 2.0 * counter_uniform(53, trial, i) - 1.0;
      MatrixXd b = g * g.transpose() + 0.3 * MatrixXd::Identity(2, 2);
      double v = 0.5 + counter_uniform(53, trial, 10);
      double c = (2.0 * counter_uniform(53, trial, 11) - 1.0) * v * 0.9;
      MatrixXd sigma(2, 2);
      sigma << v, c, c, v;  // swap-invariant
      MatrixXd s(2, 2);
      double s0 = 2.0 * counter_uniform(53, trial, 12) - 1.0;
      double s1 = 2.0 * counter_uniform(53, trial, 13) - 1.0;
      s << s0, s0, s1, s1;  // equal columns
      double beta = 0.1 + 0.8 * counter_uniform(53, trial, 14);
      ConvexCombinationReport rep =
          problem123(LqgTeamSpec::diagonal(b, s, sigma), beta);
      CHECK(rep.symmetric_case);
      CHECK(rep.j1_equals_j2);
      CHECK(std::abs(rep.j1 - rep.j2) <= 1e-9);
      CHECK(rep.bound_holds);
      CHECK(rep.j3 <= rep.j1 + 1e-9);
    }
  }
  SUBCASE("the convexity bound is not a theorem for asymmetric instances") {
    // Frozen counterexample (verified against an independent solve and a
    // grid oracle): the bound needs the own/swapped objectives to share a
    // minimizer, which asymmetric S and Sigma do not guarantee.
    MatrixXd b(2, 2), s(2, 2), sigma(2, 2);
    b << 0.46577416260926185, 0.29214158992522565,
         0.29214158992522565, 0.90190621315678432;
    s << -0.3745383292279868, -0.82203969705096769,
         -0.62800448870937775, 0.62404643807773263;
    sigma << 1.1150285392965678, -0.46610192763899738,
             -0.46610192763899738, 0.61669383639431818;
    ConvexCombinationReport rep =
        problem123(LqgTeamSpec::diagonal(b, s, sigma), 0.90262726538432514);
    CHECK(rep.j1 == doctest::Approx(-0.860931514445).epsilon(1e-9));
    CHECK(rep.j2 == doctest::Approx(-1.786635277721).epsilon(1e-9));
    CHECK(rep.j3 == doctest::Approx(-0.684214064302).epsilon(1e-9));
    CHECK_FALSE(rep.bound_holds);
    CHECK_FALSE(rep.symmetric_case);
  }
}

TEST_CASE("stationary points are local minima under perturbation") {
  LqgTeamSpec spec = baseline_spec();
  Quadratic q = assemble_quadratic(spec);
  TeamSolution sol = solve_team(spec);
  for (int t = 0; t < 1000; ++t) {
    VectorXd perturbed = sol.policy.theta;
    for (Eigen::Index i = 0; i < perturbed.size(); ++i)
      perturbed(i) += 1e-2 * (2.0 * counter_uniform(61, t, i) - 1.0);
    CHECK(evaluate_cost(q, perturbed) >= sol.value - 1e-12);
  }
}

TEST_CASE("information monotonicity: extra feeds never hurt") {
  for (int trial = 0; trial < 60; ++trial) {
    LqgTeamSpec spec = random_pd_spec(67, trial);
    double base = solve_team(spec).value;
    LqgTeamSpec richer = spec;
    int dm = static_cast<int>(counter_bits(67, trial, 900) % 2);
    richer.feeds[dm].push_back(VectorXd::Unit(2, 1 - dm));
    CHECK(solve_team(richer).value <= base + 1e-9);
  }
}

TEST_CASE("solve agrees with the grid-refinement oracle") {
  LqgTeamSpec spec = baseline_spec();
  Quadratic q = assemble_quadratic(spec);
  TeamSolution sol = solve_team(spec);
  GridRefineResult grid = grid_refine(
      [&](const VectorXd& th) { return evaluate_cost(q, th); },
      VectorXd::Constant(2, -5.0), VectorXd::Constant(2, 5.0), 6);
  CHECK(std::abs(grid.value - sol.value) <= 1e-4);
  CHECK_FALSE(grid.on_boundary);
}

TEST_CASE("MC estimate agrees with the analytic optimum") {
  LqgTeamSpec spec = baseline_spec();
  Quadratic q = assemble_quadratic(spec);
  TeamSolution sol = solve_team(spec);
  McEstimate mc = mc_team_cost(spec, q, sol.policy.theta, 200000, 7);
  CHECK(std::abs(mc.mean - sol.value) <= 4.0 * mc.stderr_);
}
