#include "randteam/lqg_team.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace randteam {

LqgRandomness LqgRandomness::none() { return LqgRandomness{}; }

LqgRandomness LqgRandomness::private_indep(MatrixXd sigma1) {
  LqgRandomness r;
  r.kind = Kind::PrivateIndep;
  r.cov = std::move(sigma1);
  return r;
}

LqgRandomness LqgRandomness::common_indep(MatrixXd sigma2) {
  LqgRandomness r;
  r.kind = Kind::CommonIndep;
  r.cov = std::move(sigma2);
  return r;
}

LqgRandomness LqgRandomness::dependent(MatrixXd phi, std::vector<bool> access) {
  LqgRandomness r;
  r.kind = Kind::Dependent;
  r.phi = std::move(phi);
  r.access = std::move(access);
  return r;
}

void LqgTeamSpec::validate() const {
  const int m = decisions();
  if (B.rows() != m || B.cols() != m)
    throw std::invalid_argument("LqgTeamSpec: B must be square");
  if (!is_symmetric(B))
    throw std::invalid_argument("LqgTeamSpec: B must be symmetric");
  if (min_eigenvalue(B) <= 1e-10)
    throw std::invalid_argument("LqgTeamSpec: B must be positive definite");
  if (S.rows() != m) throw std::invalid_argument("LqgTeamSpec: S row count != decisions");
  if (Sigma.rows() != S.cols())
    throw std::invalid_argument("LqgTeamSpec: Sigma dimension != S column count");
  require_covariance(Sigma, "LqgTeamSpec Sigma");
  if (static_cast<int>(feeds.size()) != m)
    throw std::invalid_argument("LqgTeamSpec: one feed list per decision required");
  for (const auto& fs : feeds)
    for (const auto& w : fs)
      if (w.size() != Sigma.rows())
        throw std::invalid_argument("LqgTeamSpec: feed dimension mismatch");
  switch (randomness.kind) {
    case LqgRandomness::Kind::None:
      break;
    case LqgRandomness::Kind::PrivateIndep: {
      if (randomness.cov.rows() != m || randomness.cov.cols() != m)
        throw std::invalid_argument("Sigma_1 must be decisions x decisions");
      MatrixXd off = randomness.cov;
      off.diagonal().setZero();
      if (off.cwiseAbs().maxCoeff() > 1e-12)
        throw std::invalid_argument("Sigma_1 must be diagonal for private randomness");
      break;
    }
    case LqgRandomness::Kind::CommonIndep:
      if (randomness.cov.rows() != m || randomness.cov.cols() != m)
        throw std::invalid_argument("Sigma_2 must be decisions x decisions");
      break;
    case LqgRandomness::Kind::Dependent:
      if (randomness.phi.rows() != m || randomness.phi.cols() != Sigma.rows())
        throw std::invalid_argument("Phi must be decisions x env-dim");
      if (!randomness.access.empty() &&
          static_cast<int>(randomness.access.size()) != m)
        throw std::invalid_argument("Dependent access mask length mismatch");
      break;
  }
}

LqgTeamSpec LqgTeamSpec::diagonal(MatrixXd b, MatrixXd s, MatrixXd sigma) {
  LqgTeamSpec spec;
  spec.B = std::move(b);
  spec.S = std::move(s);
  spec.Sigma = std::move(sigma);
  const int m = spec.decisions();
  spec.feeds.resize(m);
  for (int i = 0; i < m; ++i)
    spec.feeds[i].push_back(VectorXd::Unit(spec.Sigma.rows(), i));
  return spec;
}

Quadratic assemble_quadratic(const LqgTeamSpec& spec) {
  spec.validate();
  const int m = spec.decisions();
  const auto& rnd = spec.randomness;

  Quadratic q;
  std::vector<int> key_decision;

  for (int i = 0; i < m; ++i)
    for (int f = 0; f < static_cast<int>(spec.feeds[i].size()); ++f) {
      q.keys.push_back({i, CoeffKey::Source::Feed, f});
      q.dep_row.push_back(spec.feeds[i][f]);
      q.indep_component.push_back(-1);
    }

  if (rnd.kind == LqgRandomness::Kind::PrivateIndep ||
      rnd.kind == LqgRandomness::Kind::CommonIndep) {
    require_covariance(rnd.cov, "randomness covariance");
    for (int i = 0; i < m; ++i) {
      q.keys.push_back({i, CoeffKey::Source::Omega, i});
      q.dep_row.push_back(VectorXd());
      q.indep_component.push_back(i);
    }
  } else if (rnd.kind == LqgRandomness::Kind::Dependent) {
    for (int i = 0; i < m; ++i) {
      if (!rnd.access.empty() && !rnd.access[i]) continue;
      q.keys.push_back({i, CoeffKey::Source::Omega, i});
      q.dep_row.push_back(rnd.phi.row(i).transpose());
      q.indep_component.push_back(-1);
    }
  }

  const int total = static_cast<int>(q.keys.size());
  q.free_index.assign(total, -1);

  // pin zero-variance components (their gain cannot matter)
  const double var_floor = 1e-14 * std::max(1.0, spec.Sigma.cwiseAbs().maxCoeff());
  std::vector<int> free_keys;
  for (int k = 0; k < total; ++k) {
    double var;
    if (q.indep_component[k] >= 0)
      var = rnd.cov(q.indep_component[k], q.indep_component[k]);
    else
      var = q.dep_row[k].dot(spec.Sigma * q.dep_row[k]);
    if (q.keys[k].source == CoeffKey::Source::Omega && var <= var_floor) continue;
    q.free_index[k] = static_cast<int>(free_keys.size());
    free_keys.push_back(k);
  }

  const int nf = static_cast<int>(free_keys.size());
  q.H.setZero(nf, nf);
  q.g.setZero(nf);
  for (int a = 0; a < nf; ++a) {
    const int ka = free_keys[a];
    const int ia = q.keys[ka].decision;
    for (int b = 0; b < nf; ++b) {
      const int kb = free_keys[b];
      const int ib = q.keys[kb].decision;
      double second;
      if (q.indep_component[ka] >= 0 && q.indep_component[kb] >= 0)
        second = rnd.cov(q.indep_component[ka], q.indep_component[kb]);
      else if (q.indep_component[ka] < 0 && q.indep_component[kb] < 0)
        second = q.dep_row[ka].dot(spec.Sigma * q.dep_row[kb]);
      else
        second = 0.0;  // independent randomness is uncorrelated with xi
      q.H(a, b) = spec.B(ia, ib) * second;
    }
    if (q.indep_component[ka] < 0)
      q.g(a) = (spec.S * (spec.Sigma * q.dep_row[ka]))(ia);
  }
  q.c = 0.0;
  return q;
}

double evaluate_cost(const Quadratic& q, const VectorXd& theta_full) {
  if (theta_full.size() != static_cast<Eigen::Index>(q.keys.size()))
    throw std::invalid_argument("evaluate_cost: coefficient count mismatch");
  VectorXd free(q.free_count());
  for (std::size_t k = 0; k < q.keys.size(); ++k)
    if (q.free_index[k] >= 0) free(q.free_index[k]) = theta_full(k);
  return free.dot(q.H * free) + 2.0 * q.g.dot(free) + q.c;
}

namespace {

TeamSolution solve_from_quadratic(const Quadratic& q, TeamSolution::Mode mode) {
  if (q.free_count() > 0) {
    double lo = min_eigenvalue(0.5 * (q.H + q.H.transpose()));
    if (lo <= 1e-10)
      throw NumericalError(
          "solve_team: H is not positive definite on the free subspace "
          "(offending eigenvalue " + std::to_string(lo) + ")");
  }
  VectorXd theta_free =
      q.free_count() > 0 ? solve_linear(q.H, (-q.g).eval()) : VectorXd();
  // one refinement step keeps the stationarity residual at roundoff level
  if (q.free_count() > 0) {
    VectorXd r = q.H * theta_free + q.g;
    if (r.norm() > 1e-12 * (1.0 + q.g.norm()))
      theta_free -= solve_linear(q.H, r);
  }
  TeamSolution sol;
  sol.mode = mode;
  sol.policy.keys = q.keys;
  sol.policy.theta.setZero(static_cast<Eigen::Index>(q.keys.size()));
  for (std::size_t k = 0; k < q.keys.size(); ++k)
    if (q.free_index[k] >= 0) sol.policy.theta(k) = theta_free(q.free_index[k]);
  sol.residual = q.free_count() > 0 ? (q.H * theta_free + q.g).norm() : 0.0;
  if (sol.residual > 1e-9 * (1.0 + q.g.norm()))
    throw NumericalError("solve_team: stationarity residual " +
                         std::to_string(sol.residual));
  sol.value = (q.free_count() > 0
                   ? theta_free.dot(q.H * theta_free) + 2.0 * q.g.dot(theta_free)
                   : 0.0) + q.c;
  return sol;
}

}  // namespace

TeamSolution solve_team(const LqgTeamSpec& spec) {
  return solve_from_quadratic(assemble_quadratic(spec), TeamSolution::Mode::Corrected);
}

IndependentRandomnessReport independent_randomness_report(const LqgTeamSpec& spec) {
  if (spec.randomness.kind != LqgRandomness::Kind::PrivateIndep &&
      spec.randomness.kind != LqgRandomness::Kind::CommonIndep)
    throw std::invalid_argument(
        "independent_randomness_report: requires PrivateIndep or CommonIndep");
  double lo = min_eigenvalue(spec.randomness.cov);
  if (lo < -1e-8)
    throw std::invalid_argument("randomness covariance is indefinite (min eigenvalue " +
                                std::to_string(lo) + ")");
  TeamSolution joint = solve_team(spec);

  LqgTeamSpec base = spec;
  base.randomness = LqgRandomness::none();
  TeamSolution base_sol = solve_team(base);

  IndependentRandomnessReport rep;
  rep.j_base = base_sol.value;
  rep.j_total = joint.value;
  rep.c_star.setZero(spec.decisions());
  for (Eigen::Index k = 0; k < joint.policy.theta.size(); ++k)
    if (joint.policy.keys[k].source == CoeffKey::Source::Omega)
      rep.c_star(joint.policy.keys[k].decision) = joint.policy.theta(k);
  return rep;
}

TeamSolution dependent_randomness_solve(const LqgTeamSpec& spec) {
  if (spec.randomness.kind != LqgRandomness::Kind::Dependent)
    throw std::invalid_argument("dependent_randomness_solve: requires Dependent randomness");
  return solve_team(spec);
}

TeamSolution paper_faithful_table1(const std::array<double, 4>& phi,
                                   const MatrixXd& sigma, const MatrixXd& b,
                                   const MatrixXd& s) {
  if (b.rows() != 2 || b.cols() != 2 || std::abs(b(0, 0) - 2) > 1e-12 ||
      std::abs(b(0, 1) + 1) > 1e-12 || std::abs(b(1, 0) + 1) > 1e-12 ||
      std::abs(b(1, 1) - 1) > 1e-12)
    throw std::invalid_argument(
        "paper_faithful_table1: the as-printed system embeds B = [[2,-1],[-1,1]]");
  if (s.rows() != 2 || s.cols() != 2 ||
      (s - MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument("paper_faithful_table1: the as-printed system embeds S = I");
  require_covariance(sigma, "Sigma");
  if (sigma.rows() != 2)
    throw std::invalid_argument("paper_faithful_table1: Sigma must be 2x2");

  const double s11 = sigma(0, 0), s22 = sigma(1, 1), s12 = sigma(0, 1);
  const auto [p11, p12, p21, p22] = phi;

  // the delta moments exactly as typeset (sigma_mu1 in d3/d4; no factor 2 on
  // the d5/d6 cross terms)
  const double d1 = p11 * s11 + p12 * s12;
  const double d2 = p21 * s11 + p22 * s12;
  const double d3 = p11 * s12 + p12 * s11;
  const double d4 = p21 * s12 + p22 * s11;
  const double d5 = p11 * p11 * s11 + p12 * p12 * s22 + p11 * p12 * s12;
  const double d6 = p21 * p21 * s11 + p22 * p22 * s22 + p21 * p22 * s12;
  const double d7 = p11 * p21 * s11 + (p22 * p11 + p12 * p21) * s12 + p22 * p12 * s22;
  const double d8 = d1;
  const double d9 = p21 * s12 + p22 * s22;

  MatrixXd full(4, 4);
  full << 4 * s11, -2 * s12, 2 * d1, -d3,
          -2 * s12, 2 * s11, -d2, d4,   // (2,2) entry uses sigma_y1^2 as typeset
          2 * d1, -d2, 4 * d5, -2 * d7,
          -d3, d4, -2 * d7, 2 * d6;
  VectorXd rhs(4);
  rhs << -2 * s11, -2 * s22, -2 * d8, -2 * d9;

  // drop randomness coefficients whose signal has zero variance
  std::vector<int> keep = {0, 1};
  if (d5 > 1e-14) keep.push_back(2);
  if (d6 > 1e-14) keep.push_back(3);
  const int k = static_cast<int>(keep.size());
  MatrixXd sub(k, k);
  VectorXd sub_rhs(k);
  for (int i = 0; i < k; ++i) {
    sub_rhs(i) = rhs(keep[i]);
    for (int j = 0; j < k; ++j) sub(i, j) = full(keep[i], keep[j]);
  }
  VectorXd theta_sub;
  try {
    theta_sub = solve_linear(sub, sub_rhs);
  } catch (const NumericalError&) {
    throw NumericalError("paper_faithful_table1: singular as-printed system");
  }
  VectorXd theta = VectorXd::Zero(4);
  for (int i = 0; i < k; ++i) theta(keep[i]) = theta_sub(i);

  const double a11 = theta(0), a21 = theta(1), a12 = theta(2), a22 = theta(3);
  // the cost expression exactly as typeset
  const double j =
      2 * a11 * a11 * s11 - 2 * a11 * a21 * s12 + a21 * a21 * s22 +
      2 * a11 * a12 * d1 - a21 * a12 * d2 - a11 * a22 * d3 + a22 * a21 * d4 +
      2 * a12 * a12 * d5 - 2 * a12 * a22 * d7 + a22 * a22 * d6 +
      2 * (a11 * s11 + a21 * s22) + 2 * (a12 * d8 + a22 * d9);

  TeamSolution sol;
  sol.mode = TeamSolution::Mode::PaperFaithful;
  sol.policy.theta = theta;
  sol.policy.keys = {{0, CoeffKey::Source::Feed, 0},
                     {1, CoeffKey::Source::Feed, 0},
                     {0, CoeffKey::Source::Omega, 0},
                     {1, CoeffKey::Source::Omega, 1}};
  sol.value = j;
  sol.residual = (sub * theta_sub - sub_rhs).norm();
  return sol;
}

ConvexCombinationReport problem123(const LqgTeamSpec& base, double beta) {
  if (!(beta > 0.0 && beta < 1.0))
    throw std::invalid_argument("problem123: beta must lie in the open interval (0,1)");
  if (base.decisions() != 2 || base.Sigma.rows() != 2)
    throw std::invalid_argument("problem123: two-decision instance required");
  if (base.randomness.kind != LqgRandomness::Kind::None)
    throw std::invalid_argument("problem123: base spec must have no randomness");

  const VectorXd e0 = VectorXd::Unit(2, 0), e1 = VectorXd::Unit(2, 1);

  LqgTeamSpec own = base;
  own.feeds = {{e0}, {e1}};
  LqgTeamSpec swapped = base;
  swapped.feeds = {{e1}, {e0}};
  LqgTeamSpec mixed = base;
  mixed.feeds = {{beta * e0 + (1 - beta) * e1}, {(1 - beta) * e0 + beta * e1}};

  ConvexCombinationReport rep;
  rep.j1 = solve_team(own).value;
  rep.j2 = solve_team(swapped).value;
  rep.j3 = solve_team(mixed).value;
  rep.bound_holds = rep.j3 <= beta * rep.j1 + (1 - beta) * rep.j2 + 1e-9;

  MatrixXd swap(2, 2);
  swap << 0, 1, 1, 0;
  MatrixXd sigma_tilde = swap * base.Sigma * swap;
  MatrixXd s_tilde = base.S * swap;
  rep.symmetric_case =
      (sigma_tilde - base.Sigma).cwiseAbs().maxCoeff() <= 1e-12 &&
      (s_tilde - base.S).cwiseAbs().maxCoeff() <= 1e-12;
  if (rep.symmetric_case) rep.j1_equals_j2 = std::abs(rep.j1 - rep.j2) <= 1e-9;
  return rep;
}

}  // namespace randteam
