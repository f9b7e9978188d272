#pragma once

#include <array>
#include <vector>

#include "randteam/linalg.hpp"

namespace randteam {

/// External randomness configuration for the quadratic team problem.
struct LqgRandomness {
  enum class Kind { None, PrivateIndep, CommonIndep, Dependent };
  Kind kind = Kind::None;
  MatrixXd cov;               // Sigma_1 (diagonal) or Sigma_2
  MatrixXd phi;               // Dependent: row i defines w_i = phi.row(i) . xi
  std::vector<bool> access;   // Dependent: which decisions see their w_i

  static LqgRandomness none();
  static LqgRandomness private_indep(MatrixXd sigma1);
  static LqgRandomness common_indep(MatrixXd sigma2);
  static LqgRandomness dependent(MatrixXd phi, std::vector<bool> access = {});
};

/// Static quadratic team problem: cost u^T B u + 2 u^T S xi over linear
/// policies with an information-structure mask. Each decision u_i is a linear
/// combination of its feeds (linear functionals of xi) plus its randomness
/// component when configured.
struct LqgTeamSpec {
  MatrixXd B;       // m x m, symmetric positive definite
  MatrixXd S;       // m x n
  MatrixXd Sigma;   // n x n covariance of xi
  std::vector<std::vector<VectorXd>> feeds;  // per decision: observation functionals
  LqgRandomness randomness;

  int decisions() const { return static_cast<int>(B.rows()); }
  void validate() const;

  /// The classical structure u_i = alpha_i * xi_i (decision i observes
  /// coordinate i).
  static LqgTeamSpec diagonal(MatrixXd b, MatrixXd s, MatrixXd sigma);
};

/// Identifies one gain coefficient of a linear policy.
struct CoeffKey {
  enum class Source { Feed, Omega };
  int decision = 0;
  Source source = Source::Feed;
  int index = 0;  // feed position within the decision, or omega component
};

struct LinearPolicy {
  VectorXd theta;               // all coefficients, pinned ones included as 0
  std::vector<CoeffKey> keys;   // theta(i) <-> keys[i]
};

struct Quadratic {
  MatrixXd H;                  // over free coefficients
  VectorXd g;
  double c = 0.0;
  std::vector<CoeffKey> keys;       // all coefficients (canonical order)
  std::vector<int> free_index;      // key position -> index into H, or -1 if pinned
  std::vector<VectorXd> dep_row;    // per key: functional of xi (empty for indep)
  std::vector<int> indep_component; // per key: omega component, or -1

  int free_count() const { return static_cast<int>(H.rows()); }
};

struct TeamSolution {
  enum class Mode { Corrected, PaperFaithful };
  LinearPolicy policy;
  double value = 0.0;
  double residual = 0.0;
  Mode mode = Mode::Corrected;
};

/// Expands E[u^T B u + 2 u^T S xi] over the free gain coefficients into
/// J(theta) = theta^T H theta + 2 g^T theta + c. Randomness components with
/// zero variance are pinned to zero (excluded from the free set).
Quadratic assemble_quadratic(const LqgTeamSpec& spec);

/// J(theta) for any coefficient vector in the Quadratic's full key order.
double evaluate_cost(const Quadratic& q, const VectorXd& theta_full);

/// Stationary solve H theta = -g (partial-pivot elimination) after checking H
/// is PD on the free subspace (min eigenvalue > 1e-10).
TeamSolution solve_team(const LqgTeamSpec& spec);

struct IndependentRandomnessReport {
  double j_base = 0.0;      // optimum without the randomness block
  VectorXd c_star;          // optimal randomness gains (exactly zero)
  double j_total = 0.0;     // optimum of the joint problem
};

/// Props on independence: the randomness block separates and its optimum is
/// C* = 0, so the joint optimum equals the base optimum.
IndependentRandomnessReport independent_randomness_report(const LqgTeamSpec& spec);

/// Corrected-mode solve for environment-dependent randomness w = Phi xi; all
/// moments derived from Sigma and Phi.
TeamSolution dependent_randomness_solve(const LqgTeamSpec& spec);

/// Solves the as-printed 4x4 stationarity system of the reference two-DM
/// example (B = [[2,-1],[-1,1]], S = I) with the as-printed delta moment
/// formulas, and evaluates the as-printed cost expression. Reproduces the
/// reference table rather than the first-principles optimum; see
/// dependent_randomness_solve for the corrected mode. Zero-variance
/// randomness components are dropped before solving.
TeamSolution paper_faithful_table1(const std::array<double, 4>& phi,
                                   const MatrixXd& sigma, const MatrixXd& b,
                                   const MatrixXd& s);

struct ConvexCombinationReport {
  double j1 = 0.0;          // each decision sees its own coordinate
  double j2 = 0.0;          // observations swapped across the two decisions
  double j3 = 0.0;          // each sees the beta-mix of both
  bool bound_holds = false;       // j3 <= beta j1 + (1-beta) j2 + 1e-9
  bool symmetric_case = false;    // Sigma swap-invariant and S column-equal
  bool j1_equals_j2 = false;      // checked when symmetric_case
};

/// Two-decision comparison of own / swapped / convex-combined observations
/// (beta in the open interval (0,1)).
ConvexCombinationReport problem123(const LqgTeamSpec& base, double beta);

}  // namespace randteam
