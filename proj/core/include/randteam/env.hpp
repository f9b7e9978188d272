#pragma once

#include <optional>
#include <vector>

#include "randteam/linalg.hpp"
#include "randteam/rational.hpp"

namespace randteam {

/// Discrete environment: an explicit distribution over symbol vectors.
/// Probabilities carry an exact-rational mirror when constructed from exact
/// inputs, so downstream expected payoffs can avoid float drift.
struct FiniteEnv {
  int arity = 0;
  std::vector<std::vector<int>> outcomes;
  std::vector<double> probs;
  std::vector<Rational> exact;  // empty unless exact

  bool is_exact() const { return !exact.empty(); }
  std::size_t size() const { return outcomes.size(); }

  static FiniteEnv from_outcomes(int arity,
                                 std::vector<std::vector<int>> outcomes,
                                 std::vector<double> probs);
  static FiniteEnv from_exact(int arity,
                              std::vector<std::vector<int>> outcomes,
                              std::vector<Rational> probs);
};

/// Zero-mean Gaussian environment given by its covariance.
struct GaussianEnv {
  int dim = 0;
  MatrixXd covariance;

  static GaussianEnv from_covariance(MatrixXd cov);
};

/// One decision maker's information function.
struct ObsEntry {
  enum class Kind { CoordinateSelect, LinearMix, Null };
  Kind kind = Kind::Null;
  std::vector<int> coords;   // CoordinateSelect
  VectorXd weights;          // LinearMix (over environment coordinates)

  static ObsEntry coordinate_select(std::vector<int> coords);
  static ObsEntry linear_mix(VectorXd weights);
  static ObsEntry null();
};

struct ObservationMap {
  std::vector<ObsEntry> entries;  // one per decision maker
};

/// The (mu1, s1, s2) chain of binary experiments: s1 copies mu1 with prob p
/// (else 0), s2 flips mu1 with prob q (else copies s1). Returns the full
/// 8-outcome distribution over {0,1}^3; three entries are structurally zero.
/// The exact-rational overload keeps probabilities exact.
FiniteEnv binary_chain_env(const Rational& p1, const Rational& p, const Rational& q);
FiniteEnv binary_chain_env(double p1, double p, double q);

/// Discrete observation: CoordinateSelect / Null only (a LinearMix of symbols
/// is not a symbol).
std::vector<int> observe(const std::vector<int>& outcome,
                         const ObservationMap& map, int dm);
/// Real-vector observation: all three kinds (LinearMix yields one component).
VectorXd observe(const VectorXd& outcome, const ObservationMap& map, int dm);

/// Second moments induced by a scalar linear signal w = phi^T xi under cov
/// Sigma: var(w) = phi^T Sigma phi and cross(i) = E[xi_i w] = (Sigma phi)_i.
struct InducedMoments {
  double variance = 0.0;
  VectorXd cross;
};
InducedMoments induced_moments(const VectorXd& phi, const MatrixXd& sigma);

}  // namespace randteam
