#include "randteam/oracle.hpp"

#include <cmath>
#include <numbers>

namespace randteam {

namespace {

inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::size_t kChunk = 65536;  // fixed partitioning for determinism

}  // namespace

std::uint64_t counter_bits(std::uint64_t seed, std::uint64_t counter,
                           std::uint64_t dim) {
  std::uint64_t h = mix64(seed ^ 0x5bf0f7858c3a8e4dULL);
  h = mix64(h ^ counter);
  return mix64(h ^ (dim * 0xd1b54a32d192ed03ULL));
}

double counter_uniform(std::uint64_t seed, std::uint64_t counter,
                       std::uint64_t dim) {
  // 53 random bits, offset into the open interval
  return (static_cast<double>(counter_bits(seed, counter, dim) >> 11) + 0.5) *
         0x1.0p-53;
}

double counter_gaussian(std::uint64_t seed, std::uint64_t counter,
                        std::uint64_t dim) {
  double u1 = counter_uniform(seed, counter, 2 * dim);
  double u2 = counter_uniform(seed, counter, 2 * dim + 1);
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

void McAccumulator::add(double x) {
  ++n_;
  double d = x - mean_;
  mean_ += d / static_cast<double>(n_);
  m2_ += d * (x - mean_);
}

void McAccumulator::merge(const McAccumulator& other) {
  if (other.n_ == 0) return;
  if (n_ == 0) {
    *this = other;
    return;
  }
  double na = static_cast<double>(n_), nb = static_cast<double>(other.n_);
  double d = other.mean_ - mean_;
  double n = na + nb;
  mean_ += d * nb / n;
  m2_ += other.m2_ + d * d * na * nb / n;
  n_ += other.n_;
}

McEstimate McAccumulator::estimate(std::uint64_t seed) const {
  if (n_ == 0) throw std::invalid_argument("MC estimate over zero samples");
  McEstimate e;
  e.n = n_;
  e.seed = seed;
  e.mean = mean_;
  e.stderr_ = n_ > 1 ? std::sqrt(m2_ / static_cast<double>(n_ - 1) /
                                 static_cast<double>(n_))
                     : 0.0;
  return e;
}

namespace {

template <typename SampleFn>
McEstimate run_chunks(std::uint64_t n, std::uint64_t seed, SampleFn&& sample) {
  if (n < 1) throw std::invalid_argument("mc_estimate: n >= 1 required");
  McAccumulator total;
  for (std::uint64_t start = 0; start < n; start += kChunk) {
    McAccumulator chunk;
    std::uint64_t end = std::min<std::uint64_t>(n, start + kChunk);
    for (std::uint64_t i = start; i < end; ++i) chunk.add(sample(i));
    total.merge(chunk);
  }
  return total.estimate(seed);
}

std::size_t sample_index(const std::vector<double>& cumulative, double u) {
  // cumulative is nondecreasing, back() == 1 (up to rounding)
  std::size_t lo = 0, hi = cumulative.size() - 1;
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (u <= cumulative[mid]) hi = mid;
    else lo = mid + 1;
  }
  return lo;
}

std::vector<double> cumulative_probs(const std::vector<double>& probs) {
  std::vector<double> c(probs.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    acc += probs[i];
    c[i] = acc;
  }
  c.back() = std::max(c.back(), 1.0);
  return c;
}

}  // namespace

McEstimate mc_expected_payoff(const TeamGame& game, const RuleProfile& profile,
                              std::uint64_t n, std::uint64_t seed) {
  if (profile.tables.size() != static_cast<std::size_t>(game.dm_count()))
    throw std::invalid_argument("mc_expected_payoff: bad profile");
  std::vector<double> cum = cumulative_probs(game.env.probs);
  const int dms = game.dm_count();
  std::vector<int> actions(dms);
  return run_chunks(n, seed, [&](std::uint64_t i) {
    std::size_t o = sample_index(cum, counter_uniform(seed, i, 0));
    for (int dm = 0; dm < dms; ++dm)
      actions[dm] = profile.tables[dm][game.obs_index[dm][o]];
    return game.kernel.at(actions, o);
  });
}

McEstimate mc_mixed_payoff(const TeamGame& game, const PayoffMatrix& matrix,
                           const MixedTeamStrategy& minimizer,
                           const MixedTeamStrategy& maximizer, std::uint64_t n,
                           std::uint64_t seed) {
  std::vector<double> x = profile_distribution(minimizer, matrix);
  std::vector<double> y = profile_distribution(maximizer, matrix);
  std::vector<double> cum_env = cumulative_probs(game.env.probs);
  std::vector<double> cum_x = cumulative_probs(x);
  std::vector<double> cum_y = cumulative_probs(y);

  // per-team rule tables (same enumeration the matrix used)
  std::vector<std::vector<std::vector<int>>> min_rules, max_rules;
  for (int dm : game.min_team)
    min_rules.push_back(enumerate_rules(game.alphabet_sizes[dm],
                                        game.kernel.action_counts[dm]));
  for (int dm : game.max_team)
    max_rules.push_back(enumerate_rules(game.alphabet_sizes[dm],
                                        game.kernel.action_counts[dm]));

  const int dms = game.dm_count();
  std::vector<int> actions(dms);
  return run_chunks(n, seed, [&](std::uint64_t i) {
    std::size_t o = sample_index(cum_env, counter_uniform(seed, i, 0));
    std::size_t r = sample_index(cum_x, counter_uniform(seed, i, 1));
    std::size_t c = sample_index(cum_y, counter_uniform(seed, i, 2));
    for (std::size_t t = 0; t < game.min_team.size(); ++t) {
      int dm = game.min_team[t];
      actions[dm] = min_rules[t][matrix.row_profiles[r][t]][game.obs_index[dm][o]];
    }
    for (std::size_t t = 0; t < game.max_team.size(); ++t) {
      int dm = game.max_team[t];
      actions[dm] = max_rules[t][matrix.col_profiles[c][t]][game.obs_index[dm][o]];
    }
    return game.kernel.at(actions, o);
  });
}

McEstimate mc_team_cost(const LqgTeamSpec& spec, const Quadratic& quadratic,
                        const VectorXd& theta_full, std::uint64_t n,
                        std::uint64_t seed) {
  if (theta_full.size() != static_cast<Eigen::Index>(quadratic.keys.size()))
    throw std::invalid_argument("mc_team_cost: coefficient count mismatch");
  const int env_dim = static_cast<int>(spec.Sigma.rows());
  const bool indep = spec.randomness.kind == LqgRandomness::Kind::PrivateIndep ||
                     spec.randomness.kind == LqgRandomness::Kind::CommonIndep;
  const int omega_dim = indep ? spec.decisions() : 0;
  const int dim = env_dim + omega_dim;

  MatrixXd cov = MatrixXd::Zero(dim, dim);
  cov.topLeftCorner(env_dim, env_dim) = spec.Sigma;
  if (indep) cov.bottomRightCorner(omega_dim, omega_dim) = spec.randomness.cov;
  MatrixXd root = sym_sqrt_psd(cov);

  const int m = spec.decisions();
  VectorXd z(dim), zeta(dim), u(m);
  return run_chunks(n, seed, [&](std::uint64_t i) {
    for (int d = 0; d < dim; ++d) z(d) = counter_gaussian(seed, i, d);
    zeta = root * z;
    VectorXd xi = zeta.head(env_dim);
    u.setZero();
    for (std::size_t k = 0; k < quadratic.keys.size(); ++k) {
      double th = theta_full(static_cast<Eigen::Index>(k));
      if (th == 0.0) continue;
      const CoeffKey& key = quadratic.keys[k];
      double signal;
      if (quadratic.indep_component[k] >= 0)
        signal = zeta(env_dim + quadratic.indep_component[k]);
      else
        signal = quadratic.dep_row[k].dot(xi);
      u(key.decision) += th * signal;
    }
    return u.dot(spec.B * u) + 2.0 * u.dot(spec.S * xi);
  });
}

double brute_force_optimum(const TeamGame& game, std::size_t profile_cap) {
  if (!game.max_team.empty())
    throw std::invalid_argument("brute_force_optimum: single-team game required");
  // independent enumeration: odometer over per-DM rule tables, expectation by
  // direct summation over the support
  const auto& team = game.min_team;
  std::vector<std::size_t> rule_counts;
  std::size_t total = 1;
  for (int dm : team) {
    std::size_t cnt = 1;
    for (int s = 0; s < game.alphabet_sizes[dm]; ++s)
      cnt *= static_cast<std::size_t>(game.kernel.action_counts[dm]);
    rule_counts.push_back(cnt);
    total *= cnt;
    if (total > profile_cap)
      throw std::invalid_argument("brute_force_optimum: profile count exceeds cap");
  }

  const int dms = game.dm_count();
  std::vector<int> actions(dms, 0);
  double best = 0.0;
  for (std::size_t p = 0; p < total; ++p) {
    double value = 0.0;
    for (std::size_t o = 0; o < game.env.size(); ++o) {
      if (game.env.probs[o] == 0.0) continue;
      std::size_t rem = p;
      for (int t = static_cast<int>(team.size()) - 1; t >= 0; --t) {
        std::size_t rule_id = rem % rule_counts[t];
        rem /= rule_counts[t];
        // decode this DM's action at its observed symbol from the rule id
        int dm = team[t];
        int sym = game.obs_index[dm][o];
        std::size_t div = 1;
        for (int s = game.alphabet_sizes[dm] - 1; s > sym; --s)
          div *= static_cast<std::size_t>(game.kernel.action_counts[dm]);
        actions[dm] =
            static_cast<int>((rule_id / div) %
                             static_cast<std::size_t>(game.kernel.action_counts[dm]));
      }
      value += game.env.probs[o] * game.kernel.at(actions, o);
    }
    if (p == 0 || value < best) best = value;
  }
  return best;
}

GridRefineResult grid_refine(const std::function<double(const VectorXd&)>& cost,
                             VectorXd lo, VectorXd hi, int levels,
                             int points_per_dim) {
  const int k = static_cast<int>(lo.size());
  if (hi.size() != k || k < 1 || k > 5)
    throw std::invalid_argument("grid_refine: 1..5 dimensions required");
  if (levels < 1) throw std::invalid_argument("grid_refine: levels >= 1");
  if (points_per_dim < 3) throw std::invalid_argument("grid_refine: need >= 3 points");
  for (int d = 0; d < k; ++d)
    if (!(lo(d) < hi(d))) throw std::invalid_argument("grid_refine: empty box");

  const VectorXd orig_lo = lo, orig_hi = hi;
  VectorXd incumbent = 0.5 * (lo + hi);
  double best = cost(incumbent);

  std::vector<int> idx(k);
  for (int level = 0; level < levels; ++level) {
    std::fill(idx.begin(), idx.end(), 0);
    std::size_t total = 1;
    for (int d = 0; d < k; ++d) total *= static_cast<std::size_t>(points_per_dim);
    VectorXd point(k);
    for (std::size_t step = 0; step < total; ++step) {
      for (int d = 0; d < k; ++d)
        point(d) = lo(d) + (hi(d) - lo(d)) * idx[d] / (points_per_dim - 1);
      double v = cost(point);
      if (v < best) {
        best = v;
        incumbent = point;
      }
      for (int d = k - 1; d >= 0; --d) {
        if (++idx[d] < points_per_dim) break;
        idx[d] = 0;
      }
    }
    VectorXd half = (hi - lo) / 10.0;  // new box = old width / 5
    lo = (incumbent - half).cwiseMax(orig_lo);
    hi = (incumbent + half).cwiseMin(orig_hi);
  }

  GridRefineResult res;
  res.theta = incumbent;
  res.value = best;
  double final_step = (hi - lo).maxCoeff() / (points_per_dim - 1);
  for (int d = 0; d < k; ++d)
    if (incumbent(d) <= orig_lo(d) + 0.5 * final_step ||
        incumbent(d) >= orig_hi(d) - 0.5 * final_step)
      res.on_boundary = true;
  return res;
}

}  // namespace randteam
