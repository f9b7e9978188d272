#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "randteam/discrete_game.hpp"
#include "randteam/lqg_team.hpp"
#include "randteam/lqg_zero_sum.hpp"

namespace randteam {

/// One comparison against a published reference value.
struct CompatRecord {
  enum class Status { Match, KnownDiscrepancy, Mismatch };
  std::string case_id;
  std::string param_set;
  double value = 0.0;
  std::optional<double> paper_value;
  double abs_diff = 0.0;
  Status status = Status::Match;

  bool operator==(const CompatRecord&) const = default;
};

struct Report {
  std::string title;
  std::vector<CompatRecord> records;

  bool operator==(const Report&) const = default;
};

/// Reference-value disagreements that are understood and documented; only
/// these may carry status known-discrepancy. Mirrored in
/// data/known_discrepancies.json.
const std::map<std::string, std::string>& known_discrepancies();

/// Classifies a computed-vs-reference pair under `tol`.
CompatRecord make_record(std::string case_id, std::string param_set,
                         double value, std::optional<double> paper_value,
                         double tol);

bool has_mismatch(const Report& report);

// --- the finite reference game (one maximizer DM observing mu1 against two
// minimizer DMs observing s1, s2; the fixed 2x4 payoff kernel) ---

/// Payoff kernel of the reference game: rows u in {L,R}, columns (v1,v2) in
/// {LL, LR, RL, RR} with values {{20,0,1,30},{20,1,0,30}}.
PayoffKernel chain_kernel();

/// The full game over the binary chain environment.
TeamGame chain_game(const Rational& p1, const Rational& p, const Rational& q);

/// Reference rule labels g^1..g^4 (identity, swap, const-L, const-R) to the
/// lexicographic enumeration index.
int paper_rule_to_lex(int label_1based);

/// Matrix row index of the minimizer profile (d1^j, d2^k), paper labels.
Eigen::Index paper_row_index(int j, int k);

// --- reproduction of the published tables ---

enum class SolveMode { Corrected, PaperFaithful };

Report reproduce_table1(SolveMode mode, double tol);
Report reproduce_table3(const Rational& p1, const Rational& p,
                        const Rational& q, double tol);
Report reproduce_table4(double tol);
Report reproduce_security(const Rational& p1, const Rational& p,
                          const Rational& q, double tol);
/// zs_case: 1 or 2; rand: "none" | "mole" | "consultant" | "indep".
Report reproduce_zs(int zs_case, const std::string& rand, double tol);

/// The reference 3x3 environment covariance and couplings.
MatrixXd zs_reference_sigma();
ZsLqgSpec zs_reference_spec(int zs_case, const std::string& rand);

// --- config-driven runs ---

struct ExperimentConfig {
  std::string kind;  // discrete | lqg-team | lqg-zerosum | mc-check
  std::string raw_json;
  std::uint64_t seed = 0;
  std::uint64_t samples = 100000;
  double tol = 5e-3;
  std::string mode = "corrected";
};

ExperimentConfig parse_config(const std::string& json_text);
Report run_config(const ExperimentConfig& config);

// --- serialization ---

std::string emit_csv(const Report& report);
std::string emit_markdown(const Report& report);
std::string emit_json(const Report& report);
Report parse_report_json(const std::string& text);

/// Fixed-format double used by every emitter (byte-reproducible output).
std::string format_double(double v);

}  // namespace randteam
