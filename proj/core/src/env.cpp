#include "randteam/env.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace randteam {

namespace {

void check_outcomes(int arity, const std::vector<std::vector<int>>& outcomes) {
  std::set<std::vector<int>> seen;
  for (const auto& o : outcomes) {
    if (static_cast<int>(o.size()) != arity)
      throw std::invalid_argument("FiniteEnv: symbol vector length != arity");
    if (!seen.insert(o).second)
      throw std::invalid_argument("FiniteEnv: duplicate symbol vector");
  }
}

}  // namespace

FiniteEnv FiniteEnv::from_outcomes(int arity,
                                   std::vector<std::vector<int>> outcomes,
                                   std::vector<double> probs) {
  if (outcomes.size() != probs.size())
    throw std::invalid_argument("FiniteEnv: outcome/probability count mismatch");
  check_outcomes(arity, outcomes);
  double total = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0)) throw std::invalid_argument("FiniteEnv: negative probability");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw std::invalid_argument("FiniteEnv: probabilities sum to " + std::to_string(total));
  FiniteEnv env;
  env.arity = arity;
  env.outcomes = std::move(outcomes);
  env.probs = std::move(probs);
  return env;
}

FiniteEnv FiniteEnv::from_exact(int arity,
                                std::vector<std::vector<int>> outcomes,
                                std::vector<Rational> probs) {
  if (outcomes.size() != probs.size())
    throw std::invalid_argument("FiniteEnv: outcome/probability count mismatch");
  check_outcomes(arity, outcomes);
  Rational total(0);
  for (const auto& p : probs) {
    if (p < Rational(0)) throw std::invalid_argument("FiniteEnv: negative probability");
    total += p;
  }
  if (total != Rational(1))
    throw std::invalid_argument("FiniteEnv: exact probabilities sum to " + total.to_string());
  FiniteEnv env;
  env.arity = arity;
  env.outcomes = std::move(outcomes);
  env.probs.reserve(probs.size());
  for (const auto& p : probs) env.probs.push_back(p.to_double());
  env.exact = std::move(probs);
  return env;
}

GaussianEnv GaussianEnv::from_covariance(MatrixXd cov) {
  if (cov.rows() != cov.cols() || cov.rows() < 1)
    throw std::invalid_argument("GaussianEnv: covariance must be square, dim >= 1");
  require_covariance(cov, "GaussianEnv covariance");
  GaussianEnv env;
  env.dim = static_cast<int>(cov.rows());
  env.covariance = std::move(cov);
  return env;
}

ObsEntry ObsEntry::coordinate_select(std::vector<int> coords) {
  ObsEntry e;
  e.kind = Kind::CoordinateSelect;
  e.coords = std::move(coords);
  return e;
}

ObsEntry ObsEntry::linear_mix(VectorXd weights) {
  for (Eigen::Index i = 0; i < weights.size(); ++i)
    if (!std::isfinite(weights(i)))
      throw std::invalid_argument("LinearMix: non-finite weight");
  ObsEntry e;
  e.kind = Kind::LinearMix;
  e.weights = std::move(weights);
  return e;
}

ObsEntry ObsEntry::null() { return ObsEntry{}; }

namespace {

template <typename Rat>
FiniteEnv chain_impl(const Rat& p1, const Rat& p, const Rat& q, bool exact) {
  auto in01 = [](const Rat& v) { return !(v < Rat(0)) && !(Rat(1) < v); };
  if (!in01(p1) || !in01(p) || !in01(q))
    throw std::invalid_argument("binary_chain_env: parameters must lie in [0,1]");
  const Rat one(1);
  std::vector<std::vector<int>> outcomes = {
      {0, 0, 0}, {0, 0, 1}, {0, 1, 0}, {0, 1, 1},
      {1, 0, 0}, {1, 0, 1}, {1, 1, 0}, {1, 1, 1}};
  std::vector<Rat> probs = {
      (one - p1) * (one - q),  // 000
      (one - p1) * q,          // 001
      Rat(0),                  // 010
      Rat(0),                  // 011
      p1 * (one - p),          // 100
      Rat(0),                  // 101
      p1 * p * q,              // 110
      p1 * p * (one - q)};     // 111
  if (exact) {
    if constexpr (std::is_same_v<Rat, Rational>)
      return FiniteEnv::from_exact(3, std::move(outcomes), std::move(probs));
  }
  std::vector<double> d;
  d.reserve(probs.size());
  for (const auto& v : probs) {
    if constexpr (std::is_same_v<Rat, Rational>) d.push_back(v.to_double());
    else d.push_back(v);
  }
  return FiniteEnv::from_outcomes(3, std::move(outcomes), std::move(d));
}

}  // namespace

FiniteEnv binary_chain_env(const Rational& p1, const Rational& p, const Rational& q) {
  return chain_impl<Rational>(p1, p, q, /*exact=*/true);
}

FiniteEnv binary_chain_env(double p1, double p, double q) {
  return chain_impl<double>(p1, p, q, /*exact=*/false);
}

namespace {

const ObsEntry& entry_for(const ObservationMap& map, int dm) {
  if (dm < 0 || dm >= static_cast<int>(map.entries.size()))
    throw std::invalid_argument("observe: no map entry for decision maker " +
                                std::to_string(dm));
  return map.entries[dm];
}

}  // namespace

std::vector<int> observe(const std::vector<int>& outcome,
                         const ObservationMap& map, int dm) {
  const ObsEntry& e = entry_for(map, dm);
  switch (e.kind) {
    case ObsEntry::Kind::Null:
      return {};
    case ObsEntry::Kind::CoordinateSelect: {
      std::vector<int> out;
      out.reserve(e.coords.size());
      for (int c : e.coords) {
        if (c < 0 || c >= static_cast<int>(outcome.size()))
          throw std::invalid_argument("observe: coordinate index out of bounds");
        out.push_back(outcome[c]);
      }
      return out;
    }
    case ObsEntry::Kind::LinearMix:
      throw std::invalid_argument(
          "observe: LinearMix requires a real-vector (Gaussian) outcome");
  }
  throw std::logic_error("unreachable");
}

VectorXd observe(const VectorXd& outcome, const ObservationMap& map, int dm) {
  const ObsEntry& e = entry_for(map, dm);
  switch (e.kind) {
    case ObsEntry::Kind::Null:
      return VectorXd();
    case ObsEntry::Kind::CoordinateSelect: {
      VectorXd out(static_cast<Eigen::Index>(e.coords.size()));
      Eigen::Index k = 0;
      for (int c : e.coords) {
        if (c < 0 || c >= outcome.size())
          throw std::invalid_argument("observe: coordinate index out of bounds");
        out(k++) = outcome(c);
      }
      return out;
    }
    case ObsEntry::Kind::LinearMix: {
      if (e.weights.size() != outcome.size())
        throw std::invalid_argument("observe: LinearMix dimension mismatch");
      VectorXd out(1);
      out(0) = e.weights.dot(outcome);
      return out;
    }
  }
  throw std::logic_error("unreachable");
}

InducedMoments induced_moments(const VectorXd& phi, const MatrixXd& sigma) {
  if (sigma.rows() != sigma.cols() || phi.size() != sigma.rows())
    throw std::invalid_argument("induced_moments: dimension mismatch");
  InducedMoments m;
  m.variance = phi.dot(sigma * phi);
  m.cross = sigma * phi;
  return m;
}

}  // namespace randteam
