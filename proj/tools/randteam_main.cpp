// randteam: solves static stochastic team problems and team-vs-team zero-sum
// games, quantifies externally provided randomness, and reproduces the
// published reference tables with a compatibility report.
//
// Exit codes: 0 success, 1 invalid configuration, 2 numerical failure,
// 3 at least one non-ledgered mismatch under --check.

#include <cstdlib>
#include <optional>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "randteam/report.hpp"

namespace {

using randteam::ConfigError;
using randteam::NumericalError;
using randteam::Rational;
using randteam::Report;

struct CommonOpts {
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::uint64_t samples = 100000;
  bool samples_given = false;
  double tol = 5e-3;
  bool tol_given = false;
  std::string format = "md";
  std::string mode = "corrected";
  bool check = false;
};

std::optional<std::uint64_t> env_seed() {
  if (const char* env = std::getenv("RANDTEAM_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw ConfigError("RANDTEAM_SEED must be an unsigned integer");
    }
  }
  return std::nullopt;
}

int emit_and_status(const Report& report, const CommonOpts& opts) {
  if (opts.format == "csv") std::cout << randteam::emit_csv(report);
  else if (opts.format == "json") std::cout << randteam::emit_json(report);
  else if (opts.format == "md") std::cout << randteam::emit_markdown(report);
  else throw ConfigError("format must be md|csv|json");
  if (opts.check && randteam::has_mismatch(report)) return 3;
  return 0;
}

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--seed", opts.seed, "RNG seed (fallback: RANDTEAM_SEED, then 0)")
      ->each([&](const std::string&) { opts.seed_given = true; });
  cmd->add_option("--samples", opts.samples, "Monte-Carlo sample count")
      ->each([&](const std::string&) { opts.samples_given = true; });
  cmd->add_option("--tol", opts.tol, "reference-value tolerance")
      ->each([&](const std::string&) { opts.tol_given = true; });
  cmd->add_option("--format", opts.format, "output format: md|csv|json");
  cmd->add_flag("--check", opts.check,
                "exit 3 when any non-ledgered mismatch is present");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "randteam: team decision problems, team-vs-team zero-sum games, and the "
      "value of externally provided randomness"};
  app.require_subcommand(1);

  CommonOpts opts;

  // reproduce <target>
  auto* reproduce = app.add_subcommand(
      "reproduce", "re-derive a published reference table and report matches");
  std::string target;
  reproduce->add_option("target", target, "table1|table3|table4|security|zs")
      ->required();
  std::string p1 = "1/4", p = "1/3", q = "2/3";
  reproduce->add_option("--p1", p1, "chain parameter p1 (fraction or decimal)");
  reproduce->add_option("--p", p, "chain parameter p");
  reproduce->add_option("--q", q, "chain parameter q");
  int zs_case = 1;
  std::string zs_rand = "none";
  reproduce->add_option("--case", zs_case, "zero-sum case: 1 or 2");
  reproduce->add_option("--rand", zs_rand, "none|mole|consultant|indep");
  reproduce->add_option("--mode", opts.mode, "corrected|paper-faithful");
  add_common(reproduce, opts);

  // solve --config FILE
  auto* solve = app.add_subcommand("solve", "run a config-driven solve");
  std::string config_path;
  solve->add_option("--config", config_path, "JSON experiment config")->required();
  add_common(solve, opts);

  // mc-check --config FILE
  auto* mc = app.add_subcommand(
      "mc-check", "compare a config's analytic value against Monte Carlo");
  std::string mc_config_path;
  mc->add_option("--config", mc_config_path, "JSON experiment config")->required();
  add_common(mc, opts);

  CLI11_PARSE(app, argc, argv);

  try {
    if (reproduce->parsed()) {
      if (opts.mode != "corrected" && opts.mode != "paper-faithful")
        throw ConfigError("mode must be corrected or paper-faithful");
      Report report;
      if (target == "table1") {
        report = randteam::reproduce_table1(
            opts.mode == "paper-faithful" ? randteam::SolveMode::PaperFaithful
                                          : randteam::SolveMode::Corrected,
            opts.tol);
      } else if (target == "table3") {
        report = randteam::reproduce_table3(Rational::from_string(p1),
                                            Rational::from_string(p),
                                            Rational::from_string(q), opts.tol);
      } else if (target == "table4") {
        report = randteam::reproduce_table4(opts.tol);
      } else if (target == "security") {
        report = randteam::reproduce_security(Rational::from_string(p1),
                                              Rational::from_string(p),
                                              Rational::from_string(q), opts.tol);
      } else if (target == "zs") {
        report = randteam::reproduce_zs(zs_case, zs_rand, opts.tol);
      } else {
        throw ConfigError("unknown reproduce target: " + target);
      }
      return emit_and_status(report, opts);
    }

    const std::string& path = solve->parsed() ? config_path : mc_config_path;
    randteam::ExperimentConfig config = randteam::parse_config(read_file(path));
    if (mc->parsed() && config.kind != "mc-check")
      throw ConfigError("mc-check expects a config with kind \"mc-check\"");
    if (solve->parsed() && config.kind == "mc-check")
      throw ConfigError("solve cannot run a mc-check config");
    // explicit command-line values override the config; RANDTEAM_SEED fills in
    // when neither gives a seed
    if (opts.seed_given) config.seed = opts.seed;
    else if (auto s = env_seed()) config.seed = *s;
    if (opts.samples_given) config.samples = opts.samples;
    if (opts.tol_given) config.tol = opts.tol;
    Report report = randteam::run_config(config);
    return emit_and_status(report, opts);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 1;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
