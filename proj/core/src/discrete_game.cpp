#include "randteam/discrete_game.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace randteam {

namespace {

std::size_t product_checked(const std::vector<int>& counts) {
  std::size_t n = 1;
  for (int c : counts) {
    if (c < 1) throw std::invalid_argument("action/rule count must be >= 1");
    n *= static_cast<std::size_t>(c);
  }
  return n;
}

void check_finite(const std::vector<double>& v) {
  for (double x : v)
    if (!std::isfinite(x)) throw std::invalid_argument("non-finite payoff");
}

}  // namespace

std::size_t PayoffKernel::profile_count() const {
  return product_checked(action_counts);
}

double PayoffKernel::at(const std::vector<int>& actions, std::size_t outcome_idx) const {
  if (actions.size() != action_counts.size())
    throw std::invalid_argument("kernel lookup: wrong action-profile length");
  std::size_t idx = 0;
  for (std::size_t i = 0; i < actions.size(); ++i) {
    if (actions[i] < 0 || actions[i] >= action_counts[i])
      throw std::invalid_argument("kernel lookup: action index out of range");
    idx = idx * static_cast<std::size_t>(action_counts[i]) +
          static_cast<std::size_t>(actions[i]);
  }
  if (outcome_dependent) {
    if (outcome_idx >= outcome_count)
      throw std::invalid_argument("kernel lookup: outcome index out of range");
    idx += outcome_idx * profile_count();
  }
  return table[idx];
}

PayoffKernel PayoffKernel::constant_kernel(std::vector<int> action_counts,
                                           std::vector<double> table) {
  PayoffKernel k;
  k.action_counts = std::move(action_counts);
  if (table.size() != product_checked(k.action_counts))
    throw std::invalid_argument("kernel table size mismatch");
  check_finite(table);
  k.table = std::move(table);
  return k;
}

PayoffKernel PayoffKernel::outcome_kernel(std::vector<int> action_counts,
                                          std::vector<double> table,
                                          std::size_t outcome_count) {
  PayoffKernel k;
  k.action_counts = std::move(action_counts);
  if (table.size() != product_checked(k.action_counts) * outcome_count)
    throw std::invalid_argument("kernel table size mismatch");
  check_finite(table);
  k.table = std::move(table);
  k.outcome_dependent = true;
  k.outcome_count = outcome_count;
  return k;
}

std::vector<std::vector<int>> enumerate_rules(int alphabet_size, int action_count,
                                              int cap) {
  if (alphabet_size < 1 || action_count < 1)
    throw std::invalid_argument("enumerate_rules: sizes must be >= 1");
  double approx = std::pow(action_count, alphabet_size);
  if (approx > static_cast<double>(cap))
    throw std::invalid_argument("enumerate_rules: rule count exceeds cap " +
                                std::to_string(cap));
  std::size_t total = 1;
  for (int i = 0; i < alphabet_size; ++i) total *= static_cast<std::size_t>(action_count);
  std::vector<std::vector<int>> rules;
  rules.reserve(total);
  std::vector<int> cur(alphabet_size, 0);
  for (std::size_t r = 0; r < total; ++r) {
    rules.push_back(cur);
    for (int pos = alphabet_size - 1; pos >= 0; --pos) {
      if (++cur[pos] < action_count) break;
      cur[pos] = 0;
    }
  }
  return rules;
}

TeamGame TeamGame::make(FiniteEnv env, ObservationMap maps,
                        std::vector<int> min_team, std::vector<int> max_team,
                        PayoffKernel kernel) {
  const int n = static_cast<int>(kernel.action_counts.size());
  if (static_cast<int>(maps.entries.size()) != n)
    throw std::invalid_argument("TeamGame: one observation map entry per DM required");
  std::vector<int> seen(n, 0);
  for (int d : min_team) {
    if (d < 0 || d >= n) throw std::invalid_argument("TeamGame: bad DM index in partition");
    ++seen[d];
  }
  for (int d : max_team) {
    if (d < 0 || d >= n) throw std::invalid_argument("TeamGame: bad DM index in partition");
    ++seen[d];
  }
  for (int d = 0; d < n; ++d)
    if (seen[d] != 1)
      throw std::invalid_argument("TeamGame: partition must cover all DMs disjointly");
  if (kernel.outcome_dependent && kernel.outcome_count != env.size())
    throw std::invalid_argument("TeamGame: outcome-dependent kernel size mismatch");

  TeamGame g;
  g.env = std::move(env);
  g.maps = std::move(maps);
  g.min_team = std::move(min_team);
  g.max_team = std::move(max_team);
  g.kernel = std::move(kernel);

  g.obs_index.resize(n);
  g.alphabet_sizes.resize(n);
  for (int dm = 0; dm < n; ++dm) {
    std::map<std::vector<int>, int> alphabet;
    g.obs_index[dm].resize(g.env.size());
    // first pass: collect distinct observations in sorted order
    for (const auto& outcome : g.env.outcomes) alphabet.emplace(observe(outcome, g.maps, dm), 0);
    int next = 0;
    for (auto& kv : alphabet) kv.second = next++;
    for (std::size_t o = 0; o < g.env.size(); ++o)
      g.obs_index[dm][o] = alphabet.at(observe(g.env.outcomes[o], g.maps, dm));
    g.alphabet_sizes[dm] = next;
  }
  return g;
}

TeamGame merge_symbols(const TeamGame& game, int dm, int sym_a, int sym_b) {
  if (dm < 0 || dm >= game.dm_count())
    throw std::invalid_argument("merge_symbols: bad DM index");
  int k = game.alphabet_sizes[dm];
  if (sym_a < 0 || sym_a >= k || sym_b < 0 || sym_b >= k || sym_a == sym_b)
    throw std::invalid_argument("merge_symbols: bad symbol pair");
  if (sym_a > sym_b) std::swap(sym_a, sym_b);
  TeamGame g = game;
  for (auto& idx : g.obs_index[dm]) {
    if (idx == sym_b) idx = sym_a;
    else if (idx > sym_b) --idx;
  }
  g.alphabet_sizes[dm] = k - 1;
  return g;
}

namespace {

std::vector<int> actions_for(const TeamGame& game, const RuleProfile& profile,
                             std::size_t outcome_idx) {
  const int n = game.dm_count();
  std::vector<int> actions(n);
  for (int dm = 0; dm < n; ++dm) {
    const auto& table = profile.tables[dm];
    int sym = game.obs_index[dm][outcome_idx];
    if (sym >= static_cast<int>(table.size()))
      throw std::invalid_argument("rule table does not cover DM " +
                                  std::to_string(dm) + "'s alphabet");
    actions[dm] = table[sym];
  }
  return actions;
}

void check_profile(const TeamGame& game, const RuleProfile& profile) {
  if (static_cast<int>(profile.tables.size()) != game.dm_count())
    throw std::invalid_argument("profile must assign a rule to every DM");
}

}  // namespace

double expected_payoff(const TeamGame& game, const RuleProfile& profile) {
  check_profile(game, profile);
  double total = 0.0;
  for (std::size_t o = 0; o < game.env.size(); ++o) {
    if (game.env.probs[o] == 0.0) continue;
    total += game.env.probs[o] * game.kernel.at(actions_for(game, profile, o), o);
  }
  return total;
}

Rational expected_payoff_exact(const TeamGame& game, const RuleProfile& profile) {
  check_profile(game, profile);
  if (!game.env.is_exact())
    throw std::invalid_argument("expected_payoff_exact: environment is not exact");
  Rational total(0);
  for (std::size_t o = 0; o < game.env.size(); ++o) {
    if (game.env.exact[o] == Rational(0)) continue;
    Rational payoff = Rational::from_double(game.kernel.at(actions_for(game, profile, o), o));
    total += game.env.exact[o] * payoff;
  }
  return total;
}

namespace {

struct TeamRuleSets {
  std::vector<std::vector<std::vector<int>>> rules_per_dm;  // per team DM
  std::size_t profile_count = 1;
};

TeamRuleSets team_rules(const TeamGame& game, const std::vector<int>& team, int cap) {
  TeamRuleSets out;
  for (int dm : team) {
    out.rules_per_dm.push_back(
        enumerate_rules(game.alphabet_sizes[dm], game.kernel.action_counts[dm], cap));
    out.profile_count *= out.rules_per_dm.back().size();
    if (out.profile_count > static_cast<std::size_t>(cap))
      throw std::invalid_argument("team profile count exceeds cap " + std::to_string(cap));
  }
  return out;
}

// profile index decomposed with the last team DM varying fastest
std::vector<int> unrank(std::size_t index, const TeamRuleSets& rs) {
  std::vector<int> ids(rs.rules_per_dm.size());
  for (int i = static_cast<int>(rs.rules_per_dm.size()) - 1; i >= 0; --i) {
    std::size_t n = rs.rules_per_dm[i].size();
    ids[i] = static_cast<int>(index % n);
    index /= n;
  }
  return ids;
}

std::string profile_label(const std::vector<int>& team, const std::vector<int>& ids) {
  std::string s;
  for (std::size_t i = 0; i < team.size(); ++i) {
    if (i) s += '+';  // comma-free: labels appear in CSV case ids
    s += "dm" + std::to_string(team[i]) + ":r" + std::to_string(ids[i]);
  }
  return s.empty() ? "-" : s;
}

}  // namespace

PayoffMatrix payoff_matrix(const TeamGame& game, int cap) {
  TeamRuleSets min_rs = team_rules(game, game.min_team, cap);
  TeamRuleSets max_rs = team_rules(game, game.max_team, cap);

  PayoffMatrix m;
  m.values.resize(static_cast<Eigen::Index>(min_rs.profile_count),
                  static_cast<Eigen::Index>(max_rs.profile_count));

  bool exact = game.env.is_exact();
  if (exact) m.exact.reserve(min_rs.profile_count * max_rs.profile_count);

  for (std::size_t r = 0; r < min_rs.profile_count; ++r) {
    m.row_profiles.push_back(unrank(r, min_rs));
    m.row_labels.push_back(profile_label(game.min_team, m.row_profiles.back()));
  }
  for (std::size_t c = 0; c < max_rs.profile_count; ++c) {
    m.col_profiles.push_back(unrank(c, max_rs));
    m.col_labels.push_back(profile_label(game.max_team, m.col_profiles.back()));
  }

  RuleProfile profile;
  profile.tables.resize(game.dm_count());
  for (std::size_t r = 0; r < min_rs.profile_count; ++r) {
    for (std::size_t i = 0; i < game.min_team.size(); ++i)
      profile.tables[game.min_team[i]] = min_rs.rules_per_dm[i][m.row_profiles[r][i]];
    for (std::size_t c = 0; c < max_rs.profile_count; ++c) {
      for (std::size_t i = 0; i < game.max_team.size(); ++i)
        profile.tables[game.max_team[i]] = max_rs.rules_per_dm[i][m.col_profiles[c][i]];
      if (exact) {
        try {
          Rational v = expected_payoff_exact(game, profile);
          m.exact.push_back(v);
          m.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v.to_double();
          continue;
        } catch (const RationalOverflow&) {
          exact = false;  // fall back to doubles for the whole matrix
          m.exact.clear();
        }
      }
      m.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          expected_payoff(game, profile);
    }
  }
  return m;
}

std::pair<double, double> security_levels(const PayoffMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0)
    throw std::invalid_argument("security_levels: empty matrix");
  if (m.is_exact()) {
    Rational lower = m.exact_at(0, 0), upper = m.exact_at(0, 0);
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      Rational cmin = m.exact_at(0, j);
      for (Eigen::Index i = 1; i < m.rows(); ++i)
        if (m.exact_at(i, j) < cmin) cmin = m.exact_at(i, j);
      if (j == 0 || lower < cmin) lower = cmin;
    }
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      Rational rmax = m.exact_at(i, 0);
      for (Eigen::Index j = 1; j < m.cols(); ++j)
        if (rmax < m.exact_at(i, j)) rmax = m.exact_at(i, j);
      if (i == 0 || rmax < upper) upper = rmax;
    }
    return {lower.to_double(), upper.to_double()};
  }
  double lower = m.values.colwise().minCoeff().maxCoeff();
  double upper = m.values.rowwise().maxCoeff().minCoeff();
  return {lower, upper};
}

std::optional<SaddleCell> pure_saddle(const PayoffMatrix& m) {
  auto [lower, upper] = security_levels(m);
  if (std::abs(upper - lower) > 1e-12) return std::nullopt;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      double v = m.values(i, j);
      if (v < m.values.row(i).maxCoeff() - 1e-12) continue;   // must be row max
      if (v > m.values.col(j).minCoeff() + 1e-12) continue;   // and column min
      return SaddleCell{i, j, v};
    }
  }
  return std::nullopt;
}

namespace {

void check_distribution(const std::vector<double>& d) {
  double total = 0.0;
  for (double p : d) {
    if (!(p >= 0.0)) throw std::invalid_argument("strategy weight must be >= 0");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw std::invalid_argument("strategy weights sum to " + std::to_string(total));
}

}  // namespace

MixedTeamStrategy MixedTeamStrategy::product(Side side,
                                             std::vector<std::vector<double>> per_dm) {
  for (const auto& d : per_dm) check_distribution(d);
  MixedTeamStrategy s;
  s.side = side;
  s.kind = Kind::Product;
  s.per_dm = std::move(per_dm);
  return s;
}

MixedTeamStrategy MixedTeamStrategy::joint_dist(Side side, std::vector<double> dist) {
  check_distribution(dist);
  MixedTeamStrategy s;
  s.side = side;
  s.kind = Kind::Joint;
  s.joint = std::move(dist);
  return s;
}

MixedTeamStrategy MixedTeamStrategy::point_mass(Side side, std::size_t profile_index,
                                                std::size_t profile_count) {
  if (profile_index >= profile_count)
    throw std::invalid_argument("point_mass: index out of range");
  std::vector<double> d(profile_count, 0.0);
  d[profile_index] = 1.0;
  return joint_dist(side, std::move(d));
}

std::vector<double> profile_distribution(const MixedTeamStrategy& s,
                                         const PayoffMatrix& m) {
  const auto& profiles = s.side == MixedTeamStrategy::Side::Minimizer
                             ? m.row_profiles
                             : m.col_profiles;
  std::size_t n = profiles.size();
  if (s.kind == MixedTeamStrategy::Kind::Joint) {
    if (s.joint.size() != n)
      throw std::invalid_argument("joint strategy length != profile count");
    return s.joint;
  }
  if (n == 0) throw std::invalid_argument("empty profile axis");
  if (s.per_dm.size() != profiles[0].size())
    throw std::invalid_argument("product strategy: one distribution per team DM required");
  std::vector<double> out(n);
  for (std::size_t p = 0; p < n; ++p) {
    double w = 1.0;
    for (std::size_t i = 0; i < s.per_dm.size(); ++i) {
      int rule = profiles[p][i];
      if (rule >= static_cast<int>(s.per_dm[i].size()))
        throw std::invalid_argument("product strategy support exceeds rule count");
      w *= s.per_dm[i][rule];
    }
    out[p] = w;
  }
  return out;
}

double mixed_payoff(const PayoffMatrix& m, const MixedTeamStrategy& minimizer,
                    const MixedTeamStrategy& maximizer) {
  if (minimizer.side != MixedTeamStrategy::Side::Minimizer ||
      maximizer.side != MixedTeamStrategy::Side::Maximizer)
    throw std::invalid_argument("mixed_payoff: strategies on wrong sides");
  std::vector<double> x = profile_distribution(minimizer, m);
  std::vector<double> y = profile_distribution(maximizer, m);
  double total = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (x[i] == 0.0) continue;
    double row = 0.0;
    for (Eigen::Index j = 0; j < m.cols(); ++j) row += m.values(i, j) * y[j];
    total += x[i] * row;
  }
  return total;
}

BestResponse best_response(const PayoffMatrix& m, const MixedTeamStrategy& fixed) {
  std::vector<double> dist = profile_distribution(fixed, m);
  BestResponse br;
  if (fixed.side == MixedTeamStrategy::Side::Maximizer) {
    // free team = minimizer: argmin over rows of (M y)_i
    double best = 0.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      double v = 0.0;
      for (Eigen::Index j = 0; j < m.cols(); ++j) v += m.values(i, j) * dist[j];
      if (i == 0 || v < best) { best = v; br.profile_index = i; }
    }
    br.value = best;
    br.label = m.row_labels[br.profile_index];
  } else {
    double best = 0.0;
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      double v = 0.0;
      for (Eigen::Index i = 0; i < m.rows(); ++i) v += m.values(i, j) * dist[i];
      if (j == 0 || v > best) { best = v; br.profile_index = j; }
    }
    br.value = best;
    br.label = m.col_labels[br.profile_index];
  }
  return br;
}

MatrixGameSolution minimax_joint(const PayoffMatrix& m) {
  if (m.rows() > 64 || m.cols() > 64)
    throw std::invalid_argument("minimax_joint: matrix exceeds the 64x64 cap");
  MatrixGameSolution sol = solve_matrix_game(m.values);
  auto [lower, upper] = security_levels(m);
  double scale = 1.0 + m.values.cwiseAbs().maxCoeff();
  if (sol.value < lower - 1e-9 * scale || sol.value > upper + 1e-9 * scale)
    throw NumericalError("minimax_joint: value escapes the security sandwich");
  return sol;
}

TeamOptimum team_optimum_pure(const TeamGame& game, int cap) {
  if (!game.max_team.empty())
    throw std::invalid_argument("team_optimum_pure: maximizer side must be empty");
  if (game.min_team.empty())
    throw std::invalid_argument("team_optimum_pure: minimizer team is empty");
  TeamRuleSets rs = team_rules(game, game.min_team, cap);
  RuleProfile profile;
  profile.tables.resize(game.dm_count());
  TeamOptimum best;
  bool exact = game.env.is_exact();
  Rational best_exact;
  for (std::size_t p = 0; p < rs.profile_count; ++p) {
    std::vector<int> ids = unrank(p, rs);
    for (std::size_t i = 0; i < game.min_team.size(); ++i)
      profile.tables[game.min_team[i]] = rs.rules_per_dm[i][ids[i]];
    if (exact) {
      try {
        Rational v = expected_payoff_exact(game, profile);
        if (p == 0 || v < best_exact) {
          best_exact = v;
          best.profile = profile;
          best.rule_indices = ids;
          best.value = v.to_double();
        }
        continue;
      } catch (const RationalOverflow&) {
        exact = false;
      }
    }
    double v = expected_payoff(game, profile);
    if (p == 0 || v < best.value) {
      best.profile = profile;
      best.rule_indices = ids;
      best.value = v;
    }
  }
  return best;
}

}  // namespace randteam
