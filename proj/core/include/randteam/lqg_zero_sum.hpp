#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "randteam/env.hpp"
#include "randteam/oracle.hpp"

namespace randteam {

/// Randomness feeding the minimizing pair (v1, v2) of the 3-player quadratic
/// zero-sum game. Mole reveals phi11*mu1; Consultant provides
/// phi21*s1 + phi22*s2; IndependentCommon is a signal uncorrelated with xi.
struct ZsRandomness {
  enum class Kind { None, IndependentCommon, Mole, Consultant };
  Kind kind = Kind::None;
  double sigma_omega2 = 0.0;  // IndependentCommon
  double phi11 = 0.0;         // Mole
  double phi21 = 0.0, phi22 = 0.0;  // Consultant

  static ZsRandomness none();
  static ZsRandomness independent_common(double sigma_omega2);
  static ZsRandomness mole(double phi11);
  static ZsRandomness consultant(double phi21, double phi22);
};

/// Maximizer u1 (curvature -1) against the cooperating minimizers (v1, v2);
/// cost theta^T B theta + 2 theta^T S xi with theta = (u1, v1, v2),
/// B = [[-1, r11, r12], [r11, 1, q12], [r12, q12, 1]], S = diag(1, -1, -1),
/// xi = (mu1, s1, s2) ~ N(0, Sigma). u1 observes mu1, v_j observes s_j.
struct ZsLqgSpec {
  double r11 = 0.0, r12 = 0.0, q12 = 0.0;
  MatrixXd Sigma;  // 3x3
  ZsRandomness randomness;
  std::array<bool, 3> info = {true, true, true};  // observation access per decision

  MatrixXd B() const;
  static MatrixXd S();
  /// Signal weights over xi for dependent randomness; zero vector otherwise.
  VectorXd phi_vector() const;
};

struct ZsDiagnostics {
  bool valid = true;
  std::vector<std::string> violations;
  std::vector<std::string> warnings;
};

/// Concavity/convexity and coupling checks (structured, not throwing).
ZsDiagnostics validate_game(const ZsLqgSpec& spec);

struct SaddleSystem {
  MatrixXd M;      // k x k, k in {3, 5}; equals the half-Hessian of J
  VectorXd rhs;
  std::vector<int> coeff_ids;  // subset of {0:a11, 1:a21, 2:a22, 3:b21, 4:b22}
};

/// Joint stationarity system of the expected cost; k = 3 without randomness,
/// 5 with a randomness block. Moments always derived from Sigma and the
/// signal weights (induced_moments), never hand-entered.
SaddleSystem assemble_saddle_system(const ZsLqgSpec& spec);

struct SaddleSolution {
  double alpha11 = 0.0, alpha21 = 0.0, alpha22 = 0.0;
  std::optional<double> beta21, beta22;  // absent when randomness = None
  double value = 0.0;
  double residual = 0.0;
  bool max_curvature_negative = false;
  double min_block_eig = 0.0;

  VectorXd as_vector() const;  // (a11, a21, a22, b21-or-0, b22-or-0)
};

/// Stationary point with verified second-order saddle certificates (concave
/// in the maximizer direction, convex in the minimizer/randomness block).
SaddleSolution solve_saddle(const ZsLqgSpec& spec);

/// Expected cost at arbitrary coefficients (the dashboard for perturbation
/// checks and MC agreement).
double zs_cost(const ZsLqgSpec& spec, const VectorXd& coeffs);

/// MC estimate of the cost at fixed coefficients: xi sampled through the PSD
/// square root; dependent omega computed from xi, independent omega sampled.
McEstimate mc_zs_cost(const ZsLqgSpec& spec, const VectorXd& coeffs,
                      std::uint64_t n, std::uint64_t seed);

struct SaddleCheck {
  bool ok = true;
  VectorXd counterexample;  // perturbed coefficient vector when !ok
  double violation = 0.0;
};

/// Random-perturbation saddle verification: J must not increase along the
/// maximizer coordinate nor decrease along the minimizer block.
SaddleCheck verify_saddle(const ZsLqgSpec& spec, const SaddleSolution& sol,
                          int trials, std::uint64_t seed = 0,
                          double scale = 0.25);

enum class GainingTeam { Maximizer, Minimizer };

struct ValueOfInformation {
  double v1_a = 0.0;  // saddle value of variant A (null-info baseline is 0)
  double v1_b = 0.0;
  bool monotone = false;
};

/// Compares two information variants where B enlarges `gained`'s information;
/// with zero-mean xi the null-information optimum is the zero policy, so the
/// value of information of a variant is its saddle value.
ValueOfInformation value_of_information(const ZsLqgSpec& variant_a,
                                        const ZsLqgSpec& variant_b,
                                        GainingTeam gained);

}  // namespace randteam
