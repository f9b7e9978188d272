#pragma once

#include <cstdint>
#include <functional>

#include "randteam/discrete_game.hpp"
#include "randteam/lqg_team.hpp"

namespace randteam {

/// Stateless counter-based randomness: the value at (seed, counter, dim) never
/// depends on call order or partitioning, so parallel schedules cannot change
/// results.
std::uint64_t counter_bits(std::uint64_t seed, std::uint64_t counter,
                           std::uint64_t dim);
/// Uniform on (0, 1).
double counter_uniform(std::uint64_t seed, std::uint64_t counter,
                       std::uint64_t dim);
/// Standard normal (Box-Muller on dims 2*dim, 2*dim+1).
double counter_gaussian(std::uint64_t seed, std::uint64_t counter,
                        std::uint64_t dim);

struct McEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;
  std::uint64_t n = 0;
  std::uint64_t seed = 0;
};

/// Streaming mean/variance with an order-insensitive (weighted) merge, so
/// chunked or partitioned accumulation reduces identically.
class McAccumulator {
 public:
  void add(double x);
  void merge(const McAccumulator& other);
  McEstimate estimate(std::uint64_t seed) const;

 private:
  std::uint64_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

/// MC estimate of the expected payoff of a pure rule profile.
McEstimate mc_expected_payoff(const TeamGame& game, const RuleProfile& profile,
                              std::uint64_t n, std::uint64_t seed);

/// MC estimate under mixed team strategies (profiles resampled each draw).
McEstimate mc_mixed_payoff(const TeamGame& game, const PayoffMatrix& matrix,
                           const MixedTeamStrategy& minimizer,
                           const MixedTeamStrategy& maximizer, std::uint64_t n,
                           std::uint64_t seed);

/// MC estimate of the quadratic team cost at a fixed linear policy; xi (and
/// any independent randomness) sampled through the symmetric PSD square root.
McEstimate mc_team_cost(const LqgTeamSpec& spec, const Quadratic& quadratic,
                        const VectorXd& theta_full, std::uint64_t n,
                        std::uint64_t seed);

/// Exhaustive minimum of a single minimizing team's expected cost; an
/// independent enumeration path (no shared evaluation code).
double brute_force_optimum(const TeamGame& game,
                           std::size_t profile_cap = 1000000);

struct GridRefineResult {
  VectorXd theta;
  double value = 0.0;
  bool on_boundary = false;  // incumbent ended on the original box boundary
};

/// Nested grid minimization: evaluates an 11^k grid per level, shrinking the
/// box 5x around the incumbent each level (clamped to the original box).
GridRefineResult grid_refine(const std::function<double(const VectorXd&)>& cost,
                             VectorXd lo, VectorXd hi, int levels,
                             int points_per_dim = 11);

}  // namespace randteam
