#include "randteam/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "randteam/oracle.hpp"

namespace randteam {

namespace {

using nlohmann::json;

// --- published reference values ---

struct Table1Row {
  const char* name;
  std::array<double, 4> phi;
  std::array<double, 4> theta;
  double j;
};

const std::array<Table1Row, 5> kTable1 = {{
    {"row1", {0, 0, 0, 0}, {-0.6452, -1.1613, 0, 0}, -1.806},
    {"row2", {0.25, 0.75, 0, 0}, {0, -1, -0.3024, 2.7513}, -0.477},
    {"row3", {0.5, 0.5, 0.5, 0.5}, {-0.3434, -0.7046, -2.7862, -4.0062}, -5.2974},
    {"row4", {2.0 / 3, 1.0 / 3, 0.75, 0.25}, {-0.5122, -1.4833, -2.6067, -3.2171}, -4.5211},
    {"row5", {1.0 / 3, 2.0 / 3, 0.25, 0.75}, {-0.7045, -0.7058, -0.6765, -1.522}, -3.6923},
}};

// rows: (d1^j, d2^k) with j fastest, k outer; columns g^1..g^4
const double kTable3[16][4] = {
    {9.16, 22.3, 7.54, 9.66},   {16.39, 26.18, 16.45, 16.13},
    {7.80, 8.27, 7.77, 8.30},   {16.08, 15.72, 16.30, 15.83},
    {11.91, 11.94, 11.69, 12.08}, {13.61, 11.38, 13.55, 13.11},
    {10.77, 10.80, 11.11, 11.02}, {14.69, 14.19, 14.69, 14.16},
    {18.33, 18.41, 18.41, 18.33}, {2.41, 1.83, 1.83, 1.66},
    {20, 20, 20, 20},           {0.75, 0.25, 1, 0},
    {2.66, 2.41, 2.5, 3.41},    {5.08, 27.5, 27.5, 27.58},
    {0.25, 0.75, 0, 1},         {30, 30, 30, 30}};

const double kTable4[16] = {16.33, 21.81, 8.10, 15.87, 11.92, 12.32,
                            10.83, 14.36, 18.38, 1.97,  20,    0.43,
                            2.57,  21.27, 0.57,  30};

struct ZsReference {
  double j_none, j_mole, j_consultant;
  std::array<double, 5> mole_coeffs;
  std::array<double, 5> consultant_coeffs;
};

const ZsReference kZsRef[2] = {
    {0.598, 0.4012, 0.1616,
     {0.9615, 0.8052, 0.8052, -0.7103, -0.7103},
     {1.0381, 2, 2, -1.391, -1.391}},
    {1.8991, 0.2037, 0.2435,
     {0.85, 0.8052, 0.8052, -0.0693, -1.7693},
     {1.0515, 2, 2, -1.3333, -1.5086}}};

constexpr double kZsNominalMolePhi = 0.5;
// The reference mole rows were computed with the square of the tabled mixing
// weight (the signal's scale is not identifiable from the policy, so the
// value is unaffected; the printed gain coefficients are not).
constexpr double kZsEffectiveMolePhi = kZsNominalMolePhi * kZsNominalMolePhi;

const char* kCoeffNames[5] = {"a11", "a21", "a22", "b21", "b22"};

}  // namespace

const std::map<std::string, std::string>& known_discrepancies() {
  static const std::map<std::string, std::string> kLedger = {
      // Table 3 cells whose printed values disagree with the exact expected
      // payoffs (all re-verified by direct summation over the 5-outcome
      // support; several printed per-profile polynomials are internally
      // inconsistent with the kernel).
      {"table3/d1^1d2^1/g^1", "printed 9.16 vs exact 55/6"},
      {"table3/d1^1d2^1/g^2", "printed 22.3 vs exact 175/18"},
      {"table3/d1^1d2^1/g^3", "printed 7.54 vs exact 83/9"},
      {"table3/d1^1d2^1/g^4", "printed 9.66 vs exact 29/3"},
      {"table3/d1^2d2^1/g^2", "printed 26.18 vs exact 293/18"},
      {"table3/d1^2d2^1/g^3", "printed 16.45 vs exact 595/36"},
      {"table3/d1^2d2^1/g^4", "printed 16.13 vs exact 581/36"},
      {"table3/d1^3d2^1/g^1", "printed 7.8 vs exact 341/36"},
      {"table3/d1^3d2^1/g^2", "printed 8.27 vs exact 179/18"},
      {"table3/d1^3d2^1/g^3", "printed 7.77 vs exact 85/9"},
      {"table3/d1^3d2^1/g^4", "printed 8.3 vs exact 359/36"},
      {"table3/d1^4d2^1/g^2", "printed 15.72 vs exact 289/18"},
      {"table3/d1^4d2^1/g^3", "printed 16.3 vs exact 587/36"},
      {"table3/d1^1d2^2/g^1", "printed 11.91 vs exact 71/6"},
      {"table3/d1^2d2^2/g^2", "printed 11.38 vs exact 235/18"},
      {"table3/d1^2d2^2/g^3", "printed 13.55 vs exact 122/9"},
      {"table3/d1^3d2^2/g^1", "printed 10.77 vs exact 97/9"},
      {"table3/d1^3d2^2/g^2", "printed 10.8 vs exact 389/36"},
      {"table3/d1^3d2^2/g^3", "printed 11.11 vs exact 95/9"},
      {"table3/d1^3d2^2/g^4", "printed 11.02 vs exact 397/36"},
      {"table3/d1^4d2^2/g^1", "printed 14.69 vs exact 44/3"},
      {"table3/d1^4d2^2/g^4", "printed 14.16 vs exact 85/6"},
      {"table3/d1^1d2^3/g^2", "printed 18.41 vs exact 221/12"},
      {"table3/d1^1d2^3/g^3", "printed 18.41 vs exact 221/12"},
      {"table3/d1^2d2^3/g^1", "printed 2.41 vs exact 29/12"},
      {"table3/d1^2d2^3/g^3", "printed 1.83 vs exact 31/12"},
      {"table3/d1^2d2^3/g^4", "printed 1.66 vs exact 5/3"},
      {"table3/d1^1d2^4/g^1", "printed 2.66 vs exact 8/3"},
      {"table3/d1^1d2^4/g^2", "printed 2.41 vs exact 13/4"},
      {"table3/d1^1d2^4/g^4", "printed 3.41 vs exact 41/12"},
      {"table3/d1^2d2^4/g^1", "printed 5.08 vs exact 331/12"},
      // Table 4 rows that inherit the affected Table 3 cells.
      {"table4/d1^1d2^1", "printed 16.33 vs exact 3085/324"},
      {"table4/d1^2d2^1", "printed 21.81 vs exact 5287/324"},
      {"table4/d1^3d2^1", "printed 8.1 vs exact 12667/1296"},
      {"table4/d1^4d2^1", "printed 15.87 vs exact 20821/1296"},
      {"table4/d1^1d2^2", "printed 11.92 vs exact 3857/324"},
      {"table4/d1^2d2^2", "printed 12.32 vs exact 4295/324"},
      {"table4/d1^3d2^2", "printed 10.83 vs exact 13991/1296"},
      {"table4/d1^1d2^3", "printed 18.38 vs exact 7943/432"},
      {"table4/d1^2d2^3", "printed 1.97 vs exact 883/432"},
      {"table4/d1^1d2^4", "printed 2.57 vs exact 1313/432"},
      {"table4/d1^2d2^4", "printed 21.27 vs exact 11893/432"},
      {"table4/b-mixture",
       "printed 0.815 combines truncated table entries; exact value is "
       "1441/1728 = 0.8339"},
      // Table 1: the corrected (first-principles) optima differ from the
      // printed rows; rows 3-5 print values below the centralized bound -3.5
      // and row 2 prints four coefficients for a three-coefficient problem.
      {"table1/corrected/row2", "corrected optimum -3.03125 vs printed -0.477"},
      {"table1/corrected/row3", "corrected optimum -3.5 vs printed -5.2974"},
      {"table1/corrected/row4", "corrected optimum -3.5 vs printed -4.5211"},
      {"table1/corrected/row5", "corrected optimum -3.5 vs printed -3.6923"},
      // Table 1 as-printed rows that the printed system itself cannot
      // reproduce.
      {"table1/paper-faithful/row2",
       "printed system is singular (omega_2 has zero variance); reduced "
       "solve gives J=-1.8258, printed row reports -0.477"},
      {"table1/paper-faithful/row4",
       "printed system at the tabled weights solves to J=-4.9414, not the "
       "printed -4.5211; no delta-formula variant reproduces the printed row"},
      {"table1/paper-faithful/row5",
       "printed system at the tabled weights solves to J=-5.1591, not the "
       "printed -3.6923; the printed coefficients match only a half-delta7 "
       "slip whose cost then evaluates to -2.984"},
      // Zero-sum case-2 reference values that are errata.
      {"zs/case2/none/J",
       "stationary solve gives 0.6921; the printed 1.8991 matches no "
       "consistent computation from the stated game"},
      {"zs/case2/consultant/J",
       "cost at the printed coefficients evaluates to 0.2345; the printed "
       "0.2435 transposes the digits"},
  };
  return kLedger;
}

CompatRecord make_record(std::string case_id, std::string param_set,
                         double value, std::optional<double> paper_value,
                         double tol) {
  CompatRecord rec;
  rec.case_id = std::move(case_id);
  rec.param_set = std::move(param_set);
  rec.value = value;
  rec.paper_value = paper_value;
  rec.abs_diff = paper_value ? std::abs(value - *paper_value) : 0.0;
  if (!paper_value || rec.abs_diff <= tol) {
    rec.status = CompatRecord::Status::Match;
  } else if (known_discrepancies().count(rec.case_id)) {
    rec.status = CompatRecord::Status::KnownDiscrepancy;
  } else {
    rec.status = CompatRecord::Status::Mismatch;
  }
  return rec;
}

bool has_mismatch(const Report& report) {
  for (const auto& r : report.records)
    if (r.status == CompatRecord::Status::Mismatch) return true;
  return false;
}

PayoffKernel chain_kernel() {
  // index = u*4 + v1*2 + v2 with L=0, R=1
  return PayoffKernel::constant_kernel({2, 2, 2},
                                       {20, 0, 1, 30, 20, 1, 0, 30});
}

TeamGame chain_game(const Rational& p1, const Rational& p, const Rational& q) {
  FiniteEnv env = binary_chain_env(p1, p, q);
  ObservationMap maps;
  maps.entries = {ObsEntry::coordinate_select({0}),
                  ObsEntry::coordinate_select({1}),
                  ObsEntry::coordinate_select({2})};
  return TeamGame::make(std::move(env), std::move(maps), {1, 2}, {0},
                        chain_kernel());
}

int paper_rule_to_lex(int label_1based) {
  static const int kMap[4] = {1, 2, 0, 3};  // identity, swap, const-L, const-R
  if (label_1based < 1 || label_1based > 4)
    throw std::invalid_argument("rule label must be 1..4");
  return kMap[label_1based - 1];
}

Eigen::Index paper_row_index(int j, int k) {
  return paper_rule_to_lex(j) * 4 + paper_rule_to_lex(k);
}

namespace {

LqgTeamSpec table1_spec(const std::array<double, 4>& phi) {
  MatrixXd b(2, 2), sigma(2, 2);
  b << 2, -1, -1, 1;
  sigma << 1, 0.25, 0.25, 1;
  LqgTeamSpec spec = LqgTeamSpec::diagonal(b, MatrixXd::Identity(2, 2), sigma);
  MatrixXd phim(2, 2);
  phim << phi[0], phi[1], phi[2], phi[3];
  spec.randomness = LqgRandomness::dependent(phim, {true, true});
  return spec;
}

std::string table1_params(const std::array<double, 4>& phi) {
  return "phi=" + format_double(phi[0]) + ";" + format_double(phi[1]) + ";" +
         format_double(phi[2]) + ";" + format_double(phi[3]);
}

}  // namespace

Report reproduce_table1(SolveMode mode, double tol) {
  Report report;
  report.title = mode == SolveMode::PaperFaithful
                     ? "table1 (as-printed system)"
                     : "table1 (corrected first-principles solve)";
  const char* mode_id =
      mode == SolveMode::PaperFaithful ? "paper-faithful" : "corrected";
  MatrixXd b(2, 2), sigma(2, 2);
  b << 2, -1, -1, 1;
  sigma << 1, 0.25, 0.25, 1;

  for (const auto& row : kTable1) {
    std::string params = table1_params(row.phi);
    TeamSolution sol =
        mode == SolveMode::PaperFaithful
            ? paper_faithful_table1(row.phi, sigma, b, MatrixXd::Identity(2, 2))
            : solve_team(table1_spec(row.phi));
    std::string base = std::string("table1/") + mode_id + "/" + row.name;
    report.records.push_back(make_record(base, params, sol.value, row.j, tol));
    // coefficient records for the rows the reference prints exactly
    bool theta_checked = (std::string(row.name) == "row1") ||
                         (mode == SolveMode::PaperFaithful &&
                          std::string(row.name) == "row3");
    if (theta_checked) {
      for (int i = 0; i < 4; ++i)
        report.records.push_back(make_record(
            base + "/theta" + std::to_string(i + 1), params,
            sol.policy.theta(i), row.theta[i], tol));
    }
  }
  return report;
}

Report reproduce_table3(const Rational& p1, const Rational& p,
                        const Rational& q, double tol) {
  Report report;
  report.title = "table3 (expected payoffs over all pure rule profiles)";
  const std::string params =
      "p1=" + p1.to_string() + ";p=" + p.to_string() + ";q=" + q.to_string();
  TeamGame game = chain_game(p1, p, q);
  PayoffMatrix m = payoff_matrix(game);

  const bool reference_point = p1 == Rational(1, 4) && p == Rational(1, 3) &&
                               q == Rational(2, 3);
  for (int k = 1; k <= 4; ++k) {
    for (int j = 1; j <= 4; ++j) {
      Eigen::Index row = paper_row_index(j, k);
      for (int i = 1; i <= 4; ++i) {
        Eigen::Index col = paper_rule_to_lex(i);
        double value = m.values(row, col);
        std::optional<double> paper;
        if (reference_point) paper = kTable3[(k - 1) * 4 + (j - 1)][i - 1];
        std::string id = "table3/d1^" + std::to_string(j) + "d2^" +
                         std::to_string(k) + "/g^" + std::to_string(i);
        CompatRecord rec = make_record(id, params, value, paper, tol);
        if (rec.status == CompatRecord::Status::KnownDiscrepancy) {
          // cross-check the computed value against an independent direct sum
          RuleProfile profile;
          profile.tables = {enumerate_rules(2, 2)[paper_rule_to_lex(i)],
                            enumerate_rules(2, 2)[paper_rule_to_lex(j)],
                            enumerate_rules(2, 2)[paper_rule_to_lex(k)]};
          double direct = 0.0;
          for (std::size_t o = 0; o < game.env.size(); ++o) {
            if (game.env.probs[o] == 0.0) continue;
            std::vector<int> actions = {
                profile.tables[0][game.env.outcomes[o][0]],
                profile.tables[1][game.env.outcomes[o][1]],
                profile.tables[2][game.env.outcomes[o][2]]};
            direct += game.env.probs[o] * game.kernel.at(actions, o);
          }
          if (std::abs(direct - value) > 1e-9)
            rec.status = CompatRecord::Status::Mismatch;
        }
        report.records.push_back(std::move(rec));
      }
    }
  }
  return report;
}

Report reproduce_security(const Rational& p1, const Rational& p,
                          const Rational& q, double tol) {
  Report report;
  report.title = "security levels of the reference game";
  const std::string params =
      "p1=" + p1.to_string() + ";p=" + p.to_string() + ";q=" + q.to_string();
  TeamGame game = chain_game(p1, p, q);
  PayoffMatrix m = payoff_matrix(game);
  auto [lower, upper] = security_levels(m);
  const bool reference_point = p1 == Rational(1, 4) && p == Rational(1, 3) &&
                               q == Rational(2, 3);
  std::optional<double> plower, pupper, psaddle;
  if (reference_point) {
    plower = 0.25;
    pupper = 1.0;
    psaddle = 0.0;  // no pure saddle
  }
  report.records.push_back(
      make_record("security/lower", params, lower, plower, tol));
  report.records.push_back(
      make_record("security/upper", params, upper, pupper, tol));
  report.records.push_back(make_record("security/pure-saddle-count", params,
                                       pure_saddle(m) ? 1.0 : 0.0, psaddle,
                                       tol));
  return report;
}

Report reproduce_table4(double tol) {
  Report report;
  report.title = "table4 (maximizer private randomization)";
  const Rational p1(1, 4), p(1, 3), q(2, 3);
  TeamGame game = chain_game(p1, p, q);
  PayoffMatrix m = payoff_matrix(game);

  // a = (5/18, 10/18, 1/12, 1/12) over g^1..g^4, mapped to lex order
  std::vector<double> a_lex(4);
  const double a_paper[4] = {5.0 / 18, 10.0 / 18, 1.0 / 12, 1.0 / 12};
  for (int i = 0; i < 4; ++i) a_lex[paper_rule_to_lex(i + 1)] = a_paper[i];
  auto a_mix = MixedTeamStrategy::joint_dist(
      MixedTeamStrategy::Side::Maximizer, a_lex);
  const std::string params = "a=5/18;10/18;1/12;1/12";

  for (int k = 1; k <= 4; ++k) {
    for (int j = 1; j <= 4; ++j) {
      auto point = MixedTeamStrategy::point_mass(
          MixedTeamStrategy::Side::Minimizer,
          static_cast<std::size_t>(paper_row_index(j, k)), 16);
      double v = mixed_payoff(m, point, a_mix);
      std::string id =
          "table4/d1^" + std::to_string(j) + "d2^" + std::to_string(k);
      report.records.push_back(make_record(
          id, params, v, kTable4[(k - 1) * 4 + (j - 1)], tol));
    }
  }

  BestResponse br = best_response(m, a_mix);
  report.records.push_back(
      make_record("table4/best-response/value", params, br.value, 0.43, tol));
  report.records.push_back(make_record(
      "table4/best-response/is-d1^4d2^3", params,
      br.profile_index == paper_row_index(4, 3) ? 1.0 : 0.0, 1.0, tol));

  // equal-weight variant: a = (5/12, 5/12, 1/12, 1/12) -> value 1/2
  std::vector<double> a2_lex(4);
  const double a2_paper[4] = {5.0 / 12, 5.0 / 12, 1.0 / 12, 1.0 / 12};
  for (int i = 0; i < 4; ++i) a2_lex[paper_rule_to_lex(i + 1)] = a2_paper[i];
  auto a2_mix = MixedTeamStrategy::joint_dist(
      MixedTeamStrategy::Side::Maximizer, a2_lex);
  BestResponse br2 = best_response(m, a2_mix);
  report.records.push_back(make_record("table4/equal-weights/value",
                                       "a=5/12;5/12;1/12;1/12", br2.value, 0.5,
                                       tol));

  // b-mixture on the first minimizer DM (b = (0, 1/4, 0, 3/4)), second DM
  // best-responding in pure strategies
  std::vector<double> b_lex(4);
  const double b_paper[4] = {0, 0.25, 0, 0.75};
  for (int i = 0; i < 4; ++i) b_lex[paper_rule_to_lex(i + 1)] = b_paper[i];
  double best_k = 0.0;
  for (int k = 1; k <= 4; ++k) {
    std::vector<double> d2_point(4, 0.0);
    d2_point[paper_rule_to_lex(k)] = 1.0;
    auto b_mix = MixedTeamStrategy::product(MixedTeamStrategy::Side::Minimizer,
                                            {b_lex, d2_point});
    double v = mixed_payoff(m, b_mix, a_mix);
    if (k == 1 || v < best_k) best_k = v;
  }
  report.records.push_back(make_record(
      "table4/b-mixture", "b=0;1/4;0;3/4", best_k, 0.815, tol));
  return report;
}

MatrixXd zs_reference_sigma() {
  MatrixXd sigma(3, 3);
  sigma << 2, 0.25, 0.25, 0.25, 1, 0.5, 0.25, 0.5, 1;
  return sigma;
}

ZsLqgSpec zs_reference_spec(int zs_case, const std::string& rand) {
  if (zs_case != 1 && zs_case != 2)
    throw ConfigError("zs case must be 1 or 2");
  ZsLqgSpec spec;
  spec.r11 = 0.25;
  spec.r12 = zs_case == 1 ? 0.25 : 0.5;
  spec.q12 = 0.5;
  spec.Sigma = zs_reference_sigma();
  if (rand == "none") spec.randomness = ZsRandomness::none();
  else if (rand == "mole") spec.randomness = ZsRandomness::mole(kZsEffectiveMolePhi);
  else if (rand == "consultant") spec.randomness = ZsRandomness::consultant(0.5, 0.5);
  else if (rand == "indep") spec.randomness = ZsRandomness::independent_common(1.0);
  else throw ConfigError("zs randomness must be none|mole|consultant|indep");
  return spec;
}

Report reproduce_zs(int zs_case, const std::string& rand, double tol) {
  Report report;
  report.title = "zero-sum saddle values (case " + std::to_string(zs_case) +
                 ", randomness " + rand + ")";
  ZsLqgSpec spec = zs_reference_spec(zs_case, rand);
  const ZsReference& ref = kZsRef[zs_case - 1];
  std::string params = "r11=" + format_double(spec.r11) +
                       ";r12=" + format_double(spec.r12) +
                       ";q12=" + format_double(spec.q12);
  SaddleSolution sol = solve_saddle(spec);
  std::string base = "zs/case" + std::to_string(zs_case) + "/" + rand;

  std::optional<double> paper_j;
  const std::array<double, 5>* paper_coeffs = nullptr;
  if (rand == "none") paper_j = ref.j_none;
  else if (rand == "mole") {
    paper_j = ref.j_mole;
    paper_coeffs = &ref.mole_coeffs;
    params += ";phi11=1/2(effective 1/4)";
  } else if (rand == "consultant") {
    paper_j = ref.j_consultant;
    paper_coeffs = &ref.consultant_coeffs;
    params += ";phi21=1/2;phi22=1/2";
  } else if (rand == "indep") {
    // independent common randomness is value-neutral: the reference is the
    // computed no-randomness saddle value
    ZsLqgSpec none_spec = zs_reference_spec(zs_case, "none");
    paper_j = solve_saddle(none_spec).value;
    params += ";sigma_omega2=1";
  }
  report.records.push_back(make_record(base + "/J", params, sol.value, paper_j, tol));
  if (paper_coeffs) {
    VectorXd v = sol.as_vector();
    for (int c = 0; c < 5; ++c)
      report.records.push_back(make_record(base + "/" + kCoeffNames[c], params,
                                           v(c), (*paper_coeffs)[c], tol));
  }
  if (rand == "indep") {
    report.records.push_back(make_record(base + "/b21", params,
                                         sol.beta21.value_or(0.0), 0.0, tol));
    report.records.push_back(make_record(base + "/b22", params,
                                         sol.beta22.value_or(0.0), 0.0, tol));
  }
  return report;
}

// --- config-driven runs ---

namespace {

Rational json_rational(const json& v) {
  if (v.is_string()) return Rational::from_string(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long long>());
  if (v.is_number()) return Rational::from_double(v.get<double>());
  throw ConfigError("expected a number or fraction string");
}

MatrixXd json_matrix(const json& v) {
  if (!v.is_array() || v.empty() || !v[0].is_array())
    throw ConfigError("expected a matrix (array of row arrays)");
  const Eigen::Index rows = static_cast<Eigen::Index>(v.size());
  const Eigen::Index cols = static_cast<Eigen::Index>(v[0].size());
  MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    if (static_cast<Eigen::Index>(v[r].size()) != cols)
      throw ConfigError("ragged matrix rows");
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = v[r][c].get<double>();
  }
  return m;
}

Report run_discrete(const json& j, const ExperimentConfig& config);
Report run_lqg_team(const json& j, const ExperimentConfig& config);
Report run_lqg_zerosum(const json& j, const ExperimentConfig& config);
Report run_mc_check(const json& j, const ExperimentConfig& config);

}  // namespace

ExperimentConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  if (!j.is_object() || !j.contains("kind"))
    throw ConfigError("config must be an object with a \"kind\" field");
  ExperimentConfig config;
  config.kind = j["kind"].get<std::string>();
  if (config.kind != "discrete" && config.kind != "lqg-team" &&
      config.kind != "lqg-zerosum" && config.kind != "mc-check")
    throw ConfigError("unknown kind: " + config.kind);
  config.raw_json = j.dump();
  if (j.contains("seed")) config.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("samples")) config.samples = j["samples"].get<std::uint64_t>();
  if (j.contains("tol")) config.tol = j["tol"].get<double>();
  if (j.contains("mode")) {
    config.mode = j["mode"].get<std::string>();
    if (config.mode != "corrected" && config.mode != "paper-faithful")
      throw ConfigError("mode must be corrected or paper-faithful");
    if (config.mode == "paper-faithful" && config.kind != "lqg-team")
      throw ConfigError("paper-faithful mode applies to kind lqg-team only");
  }
  return config;
}

namespace {

Report run_discrete(const json& j, const ExperimentConfig& config) {
  Rational p1 = j.contains("p1") ? json_rational(j["p1"]) : Rational(1, 4);
  Rational p = j.contains("p") ? json_rational(j["p"]) : Rational(1, 3);
  Rational q = j.contains("q") ? json_rational(j["q"]) : Rational(2, 3);
  std::string op = j.value("op", std::string("security"));
  if (op == "security") return reproduce_security(p1, p, q, config.tol);
  if (op == "matrix") return reproduce_table3(p1, p, q, config.tol);
  if (op == "minimax") {
    TeamGame game = chain_game(p1, p, q);
    PayoffMatrix m = payoff_matrix(game);
    MatrixGameSolution sol = minimax_joint(m);
    Report report;
    report.title = "mixed-strategy value (joint randomization both teams)";
    std::string params = "p1=" + p1.to_string() + ";p=" + p.to_string() +
                         ";q=" + q.to_string();
    report.records.push_back(
        make_record("minimax/value", params, sol.value, std::nullopt, config.tol));
    for (Eigen::Index i = 0; i < sol.row_strategy.size(); ++i)
      if (sol.row_strategy(i) > 1e-12)
        report.records.push_back(make_record(
            "minimax/min-weight/" + m.row_labels[i], params,
            sol.row_strategy(i), std::nullopt, config.tol));
    for (Eigen::Index i = 0; i < sol.col_strategy.size(); ++i)
      if (sol.col_strategy(i) > 1e-12)
        report.records.push_back(make_record(
            "minimax/max-weight/" + m.col_labels[i], params,
            sol.col_strategy(i), std::nullopt, config.tol));
    return report;
  }
  throw ConfigError("discrete op must be security|matrix|minimax");
}

LqgTeamSpec lqg_spec_from_json(const json& j) {
  if (!j.contains("B") || !j.contains("S") || !j.contains("Sigma"))
    throw ConfigError("lqg-team config requires B, S, Sigma");
  LqgTeamSpec spec =
      LqgTeamSpec::diagonal(json_matrix(j["B"]), json_matrix(j["S"]),
                            json_matrix(j["Sigma"]));
  if (j.contains("randomness")) {
    const json& r = j["randomness"];
    std::string kind = r.value("kind", std::string("none"));
    if (kind == "none") spec.randomness = LqgRandomness::none();
    else if (kind == "private")
      spec.randomness = LqgRandomness::private_indep(json_matrix(r.at("cov")));
    else if (kind == "common")
      spec.randomness = LqgRandomness::common_indep(json_matrix(r.at("cov")));
    else if (kind == "dependent")
      spec.randomness = LqgRandomness::dependent(json_matrix(r.at("phi")));
    else throw ConfigError("randomness kind must be none|private|common|dependent");
  }
  return spec;
}

Report run_lqg_team(const json& j, const ExperimentConfig& config) {
  Report report;
  if (config.mode == "paper-faithful") {
    if (!j.contains("phi") || !j["phi"].is_array() || j["phi"].size() != 4)
      throw ConfigError("paper-faithful mode requires \"phi\" with 4 weights");
    std::array<double, 4> phi{};
    for (int i = 0; i < 4; ++i) phi[i] = j["phi"][i].get<double>();
    MatrixXd sigma = j.contains("Sigma")
                         ? json_matrix(j["Sigma"])
                         : (MatrixXd(2, 2) << 1, 0.25, 0.25, 1).finished();
    MatrixXd b = (MatrixXd(2, 2) << 2, -1, -1, 1).finished();
    TeamSolution sol =
        paper_faithful_table1(phi, sigma, b, MatrixXd::Identity(2, 2));
    report.title = "lqg-team solve (as-printed system)";
    std::string params = "phi=" + format_double(phi[0]) + ";" +
                         format_double(phi[1]) + ";" + format_double(phi[2]) +
                         ";" + format_double(phi[3]);
    for (int i = 0; i < 4; ++i)
      report.records.push_back(make_record("solve/theta" + std::to_string(i + 1),
                                           params, sol.policy.theta(i),
                                           std::nullopt, config.tol));
    report.records.push_back(
        make_record("solve/J", params, sol.value, std::nullopt, config.tol));
    return report;
  }
  LqgTeamSpec spec = lqg_spec_from_json(j);
  TeamSolution sol = solve_team(spec);
  report.title = "lqg-team solve (corrected)";
  for (Eigen::Index i = 0; i < sol.policy.theta.size(); ++i) {
    const CoeffKey& key = sol.policy.keys[i];
    std::string id = "solve/u" + std::to_string(key.decision + 1) +
                     (key.source == CoeffKey::Source::Feed ? "/feed" : "/omega") +
                     std::to_string(key.index);
    report.records.push_back(make_record(id, "", sol.policy.theta(i),
                                         std::nullopt, config.tol));
  }
  report.records.push_back(
      make_record("solve/J", "", sol.value, std::nullopt, config.tol));
  report.records.push_back(
      make_record("solve/residual", "", sol.residual, std::nullopt, config.tol));
  return report;
}

ZsLqgSpec zs_spec_from_json(const json& j) {
  ZsLqgSpec spec;
  spec.r11 = j.value("r11", 0.25);
  spec.r12 = j.value("r12", 0.25);
  spec.q12 = j.value("q12", 0.5);
  spec.Sigma = j.contains("Sigma") ? json_matrix(j["Sigma"]) : zs_reference_sigma();
  if (j.contains("randomness")) {
    const json& r = j["randomness"];
    std::string kind = r.value("kind", std::string("none"));
    if (kind == "none") spec.randomness = ZsRandomness::none();
    else if (kind == "mole") spec.randomness = ZsRandomness::mole(r.at("phi11").get<double>());
    else if (kind == "consultant")
      spec.randomness = ZsRandomness::consultant(r.at("phi21").get<double>(),
                                                 r.at("phi22").get<double>());
    else if (kind == "independent")
      spec.randomness =
          ZsRandomness::independent_common(r.at("sigma_omega2").get<double>());
    else throw ConfigError("zs randomness kind must be none|mole|consultant|independent");
  }
  return spec;
}

Report run_lqg_zerosum(const json& j, const ExperimentConfig& config) {
  ZsLqgSpec spec = zs_spec_from_json(j);
  SaddleSolution sol = solve_saddle(spec);
  Report report;
  report.title = "lqg-zerosum saddle solve";
  std::string params = "r11=" + format_double(spec.r11) +
                       ";r12=" + format_double(spec.r12) +
                       ";q12=" + format_double(spec.q12);
  VectorXd v = sol.as_vector();
  for (int c = 0; c < 5; ++c)
    report.records.push_back(make_record(std::string("saddle/") + kCoeffNames[c],
                                         params, v(c), std::nullopt, config.tol));
  report.records.push_back(
      make_record("saddle/J", params, sol.value, std::nullopt, config.tol));
  report.records.push_back(make_record("saddle/min-block-eig", params,
                                       sol.min_block_eig, std::nullopt,
                                       config.tol));
  return report;
}

Report run_mc_check(const json& j, const ExperimentConfig& config) {
  if (!j.contains("problem") || !j["problem"].is_object())
    throw ConfigError("mc-check requires a \"problem\" object");
  const json& p = j["problem"];
  std::string kind = p.value("kind", std::string(""));
  Report report;
  report.title = "mc-check (analytic vs Monte-Carlo, 4-sigma gate)";
  auto push = [&](const std::string& id, const std::string& params,
                  const McEstimate& mc, double analytic) {
    CompatRecord rec;
    rec.case_id = id;
    rec.param_set = params;
    rec.value = mc.mean;
    rec.paper_value = analytic;
    rec.abs_diff = std::abs(mc.mean - analytic);
    rec.status = rec.abs_diff <= 4.0 * mc.stderr_ + 1e-12
                     ? CompatRecord::Status::Match
                     : CompatRecord::Status::Mismatch;
    report.records.push_back(rec);
  };

  if (kind == "discrete") {
    Rational p1 = p.contains("p1") ? json_rational(p["p1"]) : Rational(1, 4);
    Rational pp = p.contains("p") ? json_rational(p["p"]) : Rational(1, 3);
    Rational q = p.contains("q") ? json_rational(p["q"]) : Rational(2, 3);
    int gi = p.value("g", 1), d1 = p.value("d1", 1), d2 = p.value("d2", 1);
    TeamGame game = chain_game(p1, pp, q);
    RuleProfile profile;
    profile.tables = {enumerate_rules(2, 2)[paper_rule_to_lex(gi)],
                      enumerate_rules(2, 2)[paper_rule_to_lex(d1)],
                      enumerate_rules(2, 2)[paper_rule_to_lex(d2)]};
    double exact = expected_payoff(game, profile);
    McEstimate mc = mc_expected_payoff(game, profile, config.samples, config.seed);
    push("mc/discrete/g^" + std::to_string(gi) + "d1^" + std::to_string(d1) +
             "d2^" + std::to_string(d2),
         "p1=" + p1.to_string() + ";p=" + pp.to_string() + ";q=" + q.to_string(),
         mc, exact);
  } else if (kind == "lqg-team") {
    LqgTeamSpec spec = lqg_spec_from_json(p);
    Quadratic quad = assemble_quadratic(spec);
    TeamSolution sol = solve_team(spec);
    McEstimate mc =
        mc_team_cost(spec, quad, sol.policy.theta, config.samples, config.seed);
    push("mc/lqg-team/J", "", mc, sol.value);
  } else if (kind == "lqg-zerosum") {
    ZsLqgSpec spec = zs_spec_from_json(p);
    SaddleSolution sol = solve_saddle(spec);
    McEstimate mc = mc_zs_cost(spec, sol.as_vector(), config.samples, config.seed);
    push("mc/lqg-zerosum/J",
         "r11=" + format_double(spec.r11) + ";r12=" + format_double(spec.r12) +
             ";q12=" + format_double(spec.q12),
         mc, sol.value);
  } else {
    throw ConfigError("mc-check problem kind must be discrete|lqg-team|lqg-zerosum");
  }
  return report;
}

}  // namespace

Report run_config(const ExperimentConfig& config) {
  json j = json::parse(config.raw_json);
  if (config.kind == "discrete") return run_discrete(j, config);
  if (config.kind == "lqg-team") return run_lqg_team(j, config);
  if (config.kind == "lqg-zerosum") return run_lqg_zerosum(j, config);
  return run_mc_check(j, config);
}

// --- serialization ---

std::string format_double(double v) {
  if (v == 0.0) v = 0.0;  // normalize -0
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

namespace {

const char* status_name(CompatRecord::Status s) {
  switch (s) {
    case CompatRecord::Status::Match: return "match";
    case CompatRecord::Status::KnownDiscrepancy: return "known-discrepancy";
    case CompatRecord::Status::Mismatch: return "mismatch";
  }
  return "?";
}

CompatRecord::Status status_from_name(const std::string& s) {
  if (s == "match") return CompatRecord::Status::Match;
  if (s == "known-discrepancy") return CompatRecord::Status::KnownDiscrepancy;
  if (s == "mismatch") return CompatRecord::Status::Mismatch;
  throw ConfigError("unknown status: " + s);
}

}  // namespace

std::string emit_csv(const Report& report) {
  std::string out = "case,param_set,value,paper_value,abs_diff,status\n";
  for (const auto& r : report.records) {
    out += r.case_id;
    out += ',';
    out += r.param_set;
    out += ',';
    out += format_double(r.value);
    out += ',';
    if (r.paper_value) out += format_double(*r.paper_value);
    out += ',';
    out += format_double(r.abs_diff);
    out += ',';
    out += status_name(r.status);
    out += '\n';
  }
  return out;
}

namespace {

// table3 renders in the reference layout: 16 profile rows x 4 rule columns,
// a trailing * marking ledgered cells
bool emit_table3_grid(const Report& report, std::string& out) {
  if (report.records.size() != 64) return false;
  for (const auto& r : report.records)
    if (r.case_id.rfind("table3/", 0) != 0) return false;
  out += "| profile | g^1 | g^2 | g^3 | g^4 |\n|---|---|---|---|---|\n";
  for (int k = 1; k <= 4; ++k)
    for (int j = 1; j <= 4; ++j) {
      out += "| d1^" + std::to_string(j) + " d2^" + std::to_string(k) + " |";
      for (int i = 1; i <= 4; ++i) {
        const CompatRecord& r =
            report.records[static_cast<std::size_t>((k - 1) * 16 + (j - 1) * 4) + i - 1];
        out += " " + format_double(r.value);
        if (r.status == CompatRecord::Status::KnownDiscrepancy) out += "*";
        if (r.status == CompatRecord::Status::Mismatch) out += " (!)";
        out += " |";
      }
      out += "\n";
    }
  out += "\n(*) printed reference value differs; see the discrepancy ledger\n";
  return true;
}

}  // namespace

std::string emit_markdown(const Report& report) {
  std::string out = "## " + report.title + "\n\n";
  if (emit_table3_grid(report, out)) return out;
  out += "| case | params | value | reference | diff | status |\n";
  out += "|---|---|---|---|---|---|\n";
  for (const auto& r : report.records) {
    out += "| " + r.case_id + " | " + r.param_set + " | " +
           format_double(r.value) + " | " +
           (r.paper_value ? format_double(*r.paper_value) : std::string("-")) +
           " | " + format_double(r.abs_diff) + " | " + status_name(r.status) +
           " |\n";
  }
  return out;
}

std::string emit_json(const Report& report) {
  json j;
  j["title"] = report.title;
  j["records"] = json::array();
  for (const auto& r : report.records) {
    json rec;
    rec["case"] = r.case_id;
    rec["param_set"] = r.param_set;
    rec["value"] = r.value;
    if (r.paper_value) rec["paper_value"] = *r.paper_value;
    else rec["paper_value"] = nullptr;
    rec["abs_diff"] = r.abs_diff;
    rec["status"] = status_name(r.status);
    j["records"].push_back(rec);
  }
  return j.dump(2) + "\n";
}

Report parse_report_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("report parse error: ") + e.what());
  }
  Report report;
  report.title = j.at("title").get<std::string>();
  for (const auto& rec : j.at("records")) {
    CompatRecord r;
    r.case_id = rec.at("case").get<std::string>();
    r.param_set = rec.at("param_set").get<std::string>();
    r.value = rec.at("value").get<double>();
    if (!rec.at("paper_value").is_null())
      r.paper_value = rec.at("paper_value").get<double>();
    r.abs_diff = rec.at("abs_diff").get<double>();
    r.status = status_from_name(rec.at("status").get<std::string>());
    report.records.push_back(std::move(r));
  }
  return report;
}

}  // namespace randteam
