#pragma once

#include <optional>
#include <string>
#include <vector>

#include "randteam/env.hpp"

namespace randteam {

inline constexpr int kDefaultProfileCap = 4096;

/// Payoff kernel over joint actions, optionally depending on the environment
/// outcome. `table` is dense: every action profile (x outcome, when
/// outcome-dependent) is present by construction.
struct PayoffKernel {
  std::vector<int> action_counts;  // per decision maker, global DM order
  std::vector<double> table;       // row-major over action profiles
  bool outcome_dependent = false;  // table then has one block per outcome
  std::size_t outcome_count = 0;

  std::size_t profile_count() const;
  double at(const std::vector<int>& actions, std::size_t outcome_idx = 0) const;

  static PayoffKernel constant_kernel(std::vector<int> action_counts,
                                      std::vector<double> table);
  static PayoffKernel outcome_kernel(std::vector<int> action_counts,
                                     std::vector<double> table,
                                     std::size_t outcome_count);
};

/// A pure decision rule: observation alphabet index -> action index.
struct PureRule {
  int dm = 0;
  std::vector<int> table;
};

/// All m^k rules for a k-symbol alphabet and m actions, tables in
/// lexicographic order. Errors when m^k exceeds `cap`.
std::vector<std::vector<int>> enumerate_rules(int alphabet_size, int action_count,
                                              int cap = kDefaultProfileCap);

/// One pure rule per decision maker (global DM order).
struct RuleProfile {
  std::vector<std::vector<int>> tables;
};

/// Finite team-vs-team game. Rows of the induced payoff matrix are the
/// minimizing team, columns the maximizing team.
struct TeamGame {
  FiniteEnv env;
  ObservationMap maps;
  std::vector<int> min_team;  // DM indices
  std::vector<int> max_team;
  PayoffKernel kernel;

  // derived at construction
  std::vector<std::vector<int>> obs_index;  // per DM: outcome -> alphabet index
  std::vector<int> alphabet_sizes;          // per DM

  int dm_count() const { return static_cast<int>(kernel.action_counts.size()); }

  static TeamGame make(FiniteEnv env, ObservationMap maps,
                       std::vector<int> min_team, std::vector<int> max_team,
                       PayoffKernel kernel);
};

/// Coarsens DM `dm`'s information by identifying alphabet symbols a and b
/// (a garbling of its observation map).
TeamGame merge_symbols(const TeamGame& game, int dm, int sym_a, int sym_b);

double expected_payoff(const TeamGame& game, const RuleProfile& profile);
/// Exact path; requires an exact env and dyadic-representable payoffs.
Rational expected_payoff_exact(const TeamGame& game, const RuleProfile& profile);

struct PayoffMatrix {
  std::vector<std::vector<int>> row_profiles;  // per row: rule index per team DM
  std::vector<std::vector<int>> col_profiles;
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  MatrixXd values;               // rows minimize, columns maximize
  std::vector<Rational> exact;   // row-major; empty when not exact

  Eigen::Index rows() const { return values.rows(); }
  Eigen::Index cols() const { return values.cols(); }
  bool is_exact() const { return !exact.empty(); }
  const Rational& exact_at(Eigen::Index r, Eigen::Index c) const {
    return exact[static_cast<std::size_t>(r) * cols() + c];
  }
};

/// Expected payoff over every pure rule-profile pair. Per-team profile count
/// is capped (`cap`, default 4096).
PayoffMatrix payoff_matrix(const TeamGame& game, int cap = kDefaultProfileCap);

/// (lower, upper) security levels: lower = max_j min_i a_ij (maximizer's
/// guarantee), upper = min_i max_j a_ij (minimizer's exposure).
std::pair<double, double> security_levels(const PayoffMatrix& m);

struct SaddleCell {
  Eigen::Index row = 0;
  Eigen::Index col = 0;
  double value = 0.0;
};

/// The lowest-index cell that is simultaneously a row maximum and a column
/// minimum, present iff lower == upper within 1e-12.
std::optional<SaddleCell> pure_saddle(const PayoffMatrix& m);

struct MixedTeamStrategy {
  enum class Side { Minimizer, Maximizer };
  enum class Kind { Product, Joint };
  Side side = Side::Minimizer;
  Kind kind = Kind::Joint;
  std::vector<std::vector<double>> per_dm;  // Product: one distribution per team DM
  std::vector<double> joint;                // Joint: over team rule profiles

  static MixedTeamStrategy product(Side side, std::vector<std::vector<double>> per_dm);
  static MixedTeamStrategy joint_dist(Side side, std::vector<double> dist);
  static MixedTeamStrategy point_mass(Side side, std::size_t profile_index,
                                      std::size_t profile_count);
};

/// Expands a strategy to a distribution over the matrix's profile axis
/// (product strategies by independence).
std::vector<double> profile_distribution(const MixedTeamStrategy& s,
                                         const PayoffMatrix& m);

/// Bilinear form x^T M y of the two teams' profile distributions.
double mixed_payoff(const PayoffMatrix& m, const MixedTeamStrategy& minimizer,
                    const MixedTeamStrategy& maximizer);

struct BestResponse {
  Eigen::Index profile_index = 0;
  std::string label;
  double value = 0.0;
};

/// Pure best response of the free team against `fixed` (min for the
/// minimizer, max for the maximizer); ties to the lowest index.
BestResponse best_response(const PayoffMatrix& m, const MixedTeamStrategy& fixed);

struct MatrixGameSolution {
  double value = 0.0;
  VectorXd row_strategy;
  VectorXd col_strategy;
};

/// Mixed-strategy value and eps-optimal strategies (eps <= 1e-9 scaled) of the
/// matrix game, by LP (dense simplex). Matrices up to 64x64.
MatrixGameSolution minimax_joint(const PayoffMatrix& m);
MatrixGameSolution solve_matrix_game(const MatrixXd& m);

struct TeamOptimum {
  RuleProfile profile;
  std::vector<int> rule_indices;  // per team DM
  double value = 0.0;
};

/// Exhaustive minimum over all pure rule profiles of a single minimizing team
/// (the maximizer side must be empty). Ties to the lowest index.
TeamOptimum team_optimum_pure(const TeamGame& game, int cap = kDefaultProfileCap);

}  // namespace randteam
