#include "randteam/lqg_zero_sum.hpp"

#include <cmath>

#include "randteam/oracle.hpp"

namespace randteam {

ZsRandomness ZsRandomness::none() { return ZsRandomness{}; }

ZsRandomness ZsRandomness::independent_common(double sigma_omega2) {
  ZsRandomness r;
  r.kind = Kind::IndependentCommon;
  r.sigma_omega2 = sigma_omega2;
  return r;
}

ZsRandomness ZsRandomness::mole(double phi11) {
  ZsRandomness r;
  r.kind = Kind::Mole;
  r.phi11 = phi11;
  return r;
}

ZsRandomness ZsRandomness::consultant(double phi21, double phi22) {
  ZsRandomness r;
  r.kind = Kind::Consultant;
  r.phi21 = phi21;
  r.phi22 = phi22;
  return r;
}

MatrixXd ZsLqgSpec::B() const {
  MatrixXd b(3, 3);
  b << -1, r11, r12,
       r11, 1, q12,
       r12, q12, 1;
  return b;
}

MatrixXd ZsLqgSpec::S() {
  MatrixXd s = MatrixXd::Zero(3, 3);
  s(0, 0) = 1;
  s(1, 1) = -1;
  s(2, 2) = -1;
  return s;
}

VectorXd ZsLqgSpec::phi_vector() const {
  VectorXd phi = VectorXd::Zero(3);
  if (randomness.kind == ZsRandomness::Kind::Mole) phi(0) = randomness.phi11;
  if (randomness.kind == ZsRandomness::Kind::Consultant) {
    phi(1) = randomness.phi21;
    phi(2) = randomness.phi22;
  }
  return phi;
}

ZsDiagnostics validate_game(const ZsLqgSpec& spec) {
  ZsDiagnostics d;
  auto violation = [&](const std::string& s) {
    d.valid = false;
    d.violations.push_back(s);
  };
  if (spec.Sigma.rows() != 3 || spec.Sigma.cols() != 3)
    violation("Sigma must be 3x3");
  else {
    if (!is_symmetric(spec.Sigma)) violation("Sigma must be symmetric");
    else if (min_eigenvalue(spec.Sigma) < -1e-8) violation("Sigma must be PSD");
  }
  if (!(spec.B()(0, 0) < 0)) violation("B(0,0) < 0 required (maximizer concavity)");
  if (!(1.0 - spec.q12 * spec.q12 > 0)) violation("1 - q12^2 > 0 violated");
  if (spec.r11 == 0.0 && spec.r12 == 0.0)
    d.warnings.push_back("r11 = r12 = 0: teams decouple into a team decision problem");
  else if (spec.r11 == 0.0 || spec.r12 == 0.0 || spec.q12 == 0.0)
    d.warnings.push_back("a zero coupling makes the game partially degenerate");
  return d;
}

namespace {

struct Moments {
  double smu, ss1, ss2, sm1, sm2, s12;  // variances and covariances of xi
  double sw = 0.0;                      // var(omega)
  double smuw = 0.0, s1w = 0.0, s2w = 0.0;
  bool has_omega = false;
};

Moments moments_for(const ZsLqgSpec& spec) {
  Moments m{};
  m.smu = spec.Sigma(0, 0);
  m.ss1 = spec.Sigma(1, 1);
  m.ss2 = spec.Sigma(2, 2);
  m.sm1 = spec.Sigma(0, 1);
  m.sm2 = spec.Sigma(0, 2);
  m.s12 = spec.Sigma(1, 2);
  switch (spec.randomness.kind) {
    case ZsRandomness::Kind::None:
      break;
    case ZsRandomness::Kind::IndependentCommon:
      m.has_omega = true;
      m.sw = spec.randomness.sigma_omega2;
      break;
    case ZsRandomness::Kind::Mole:
    case ZsRandomness::Kind::Consultant: {
      m.has_omega = true;
      InducedMoments im = induced_moments(spec.phi_vector(), spec.Sigma);
      m.sw = im.variance;
      m.smuw = im.cross(0);
      m.s1w = im.cross(1);
      m.s2w = im.cross(2);
      break;
    }
  }
  return m;
}

}  // namespace

SaddleSystem assemble_saddle_system(const ZsLqgSpec& spec) {
  ZsDiagnostics diag = validate_game(spec);
  if (!diag.valid) {
    std::string msg = "assemble_saddle_system:";
    for (const auto& v : diag.violations) msg += " " + v + ";";
    throw std::invalid_argument(msg);
  }
  Moments m = moments_for(spec);
  const double r11 = spec.r11, r12 = spec.r12, q12 = spec.q12;

  MatrixXd full(5, 5);
  full << -m.smu, r11 * m.sm1, r12 * m.sm2, r11 * m.smuw, r12 * m.smuw,
      r11 * m.sm1, m.ss1, q12 * m.s12, m.s1w, q12 * m.s1w,
      r12 * m.sm2, q12 * m.s12, m.ss2, q12 * m.s2w, m.s2w,
      r11 * m.smuw, m.s1w, q12 * m.s2w, m.sw, q12 * m.sw,
      r12 * m.smuw, q12 * m.s1w, m.s2w, q12 * m.sw, m.sw;
  VectorXd rhs(5);
  rhs << -m.smu, m.ss1, m.ss2, m.s1w, m.s2w;

  std::vector<int> ids;
  for (int i = 0; i < 3; ++i)
    if (spec.info[i]) ids.push_back(i);
  if (m.has_omega) {
    if (m.sw <= 1e-14)
      throw NumericalError(
          "assemble_saddle_system: randomness block with zero signal variance "
          "(singular)");
    ids.push_back(3);
    ids.push_back(4);
  }

  SaddleSystem sys;
  sys.coeff_ids = ids;
  const int k = static_cast<int>(ids.size());
  sys.M.resize(k, k);
  sys.rhs.resize(k);
  for (int a = 0; a < k; ++a) {
    sys.rhs(a) = rhs(ids[a]);
    for (int b = 0; b < k; ++b) sys.M(a, b) = full(ids[a], ids[b]);
  }
  return sys;
}

double zs_cost(const ZsLqgSpec& spec, const VectorXd& coeffs) {
  if (coeffs.size() != 5)
    throw std::invalid_argument("zs_cost: expected 5 coefficients");
  Moments m = moments_for(spec);
  const double a11 = coeffs(0), a21 = coeffs(1), a22 = coeffs(2);
  const double b21 = coeffs(3), b22 = coeffs(4);
  const double r11 = spec.r11, r12 = spec.r12, q12 = spec.q12;
  return -a11 * a11 * m.smu + a21 * a21 * m.ss1 + a22 * a22 * m.ss2 +
         2 * r11 * a11 * a21 * m.sm1 + 2 * r12 * a11 * a22 * m.sm2 +
         2 * q12 * a21 * a22 * m.s12 +
         2 * (r11 * a11 * b21 + r12 * a11 * b22) * m.smuw +
         2 * (a21 * b21 + q12 * a21 * b22) * m.s1w +
         2 * (q12 * a22 * b21 + a22 * b22) * m.s2w +
         (b21 * b21 + 2 * q12 * b21 * b22 + b22 * b22) * m.sw +
         2 * a11 * m.smu - 2 * a21 * m.ss1 - 2 * a22 * m.ss2 -
         2 * b21 * m.s1w - 2 * b22 * m.s2w;
}

VectorXd SaddleSolution::as_vector() const {
  VectorXd v(5);
  v << alpha11, alpha21, alpha22, beta21.value_or(0.0), beta22.value_or(0.0);
  return v;
}

SaddleSolution solve_saddle(const ZsLqgSpec& spec) {
  SaddleSystem sys = assemble_saddle_system(spec);
  VectorXd theta = sys.coeff_ids.empty() ? VectorXd() : solve_linear(sys.M, sys.rhs);

  SaddleSolution sol;
  VectorXd full = VectorXd::Zero(5);
  for (std::size_t i = 0; i < sys.coeff_ids.size(); ++i)
    full(sys.coeff_ids[i]) = theta(static_cast<Eigen::Index>(i));
  sol.alpha11 = full(0);
  sol.alpha21 = full(1);
  sol.alpha22 = full(2);
  if (spec.randomness.kind != ZsRandomness::Kind::None) {
    sol.beta21 = full(3);
    sol.beta22 = full(4);
  }
  sol.residual = sys.coeff_ids.empty() ? 0.0 : (sys.M * theta - sys.rhs).norm();
  if (sol.residual > 1e-9 * (1.0 + sys.rhs.norm()))
    throw NumericalError("solve_saddle: stationarity residual " +
                         std::to_string(sol.residual));

  // second-order certificates: M is the half-Hessian of J in the active
  // coefficients; the maximizer needs negative curvature, the minimizer
  // block (including any randomness gains) positive definiteness
  bool has_max = !sys.coeff_ids.empty() && sys.coeff_ids[0] == 0;
  sol.max_curvature_negative = !has_max || sys.M(0, 0) < 0;
  int min_begin = has_max ? 1 : 0;
  int min_count = static_cast<int>(sys.coeff_ids.size()) - min_begin;
  if (min_count > 0) {
    MatrixXd block = sys.M.block(min_begin, min_begin, min_count, min_count);
    sol.min_block_eig = min_eigenvalue(block);
  } else {
    sol.min_block_eig = 1.0;  // vacuous
  }
  if (!sol.max_curvature_negative || !(sol.min_block_eig > 0))
    throw NumericalError(
        "solve_saddle: second-order saddle certificates failed (max curvature " +
        std::to_string(has_max ? sys.M(0, 0) : 0.0) + ", min-block eigenvalue " +
        std::to_string(sol.min_block_eig) + ")");
  sol.value = zs_cost(spec, full);
  return sol;
}

SaddleCheck verify_saddle(const ZsLqgSpec& spec, const SaddleSolution& sol,
                          int trials, std::uint64_t seed, double scale) {
  const VectorXd at = sol.as_vector();
  const double j_star = zs_cost(spec, at);
  const bool has_omega = spec.randomness.kind != ZsRandomness::Kind::None;
  SaddleCheck check;
  for (int t = 0; t < trials; ++t) {
    // maximizer deviation: J(a11 + e) <= J* + tol
    if (spec.info[0]) {
      VectorXd up = at;
      up(0) += scale * (2.0 * counter_uniform(seed, t, 0) - 1.0);
      double j = zs_cost(spec, up);
      if (j > j_star + 1e-9) {
        check.ok = false;
        check.counterexample = up;
        check.violation = j - j_star;
        return check;
      }
    }
    // minimizer-block deviation: J(rest + e) >= J* - tol
    VectorXd down = at;
    for (int c = 1; c < 5; ++c) {
      if (c < 3 && !spec.info[c]) continue;
      if (c >= 3 && !has_omega) continue;
      down(c) += scale * (2.0 * counter_uniform(seed, t, c) - 1.0);
    }
    double j = zs_cost(spec, down);
    if (j < j_star - 1e-9) {
      check.ok = false;
      check.counterexample = down;
      check.violation = j_star - j;
      return check;
    }
  }
  return check;
}

McEstimate mc_zs_cost(const ZsLqgSpec& spec, const VectorXd& coeffs,
                      std::uint64_t n, std::uint64_t seed) {
  if (coeffs.size() != 5)
    throw std::invalid_argument("mc_zs_cost: expected 5 coefficients");
  if (n < 1) throw std::invalid_argument("mc_zs_cost: n >= 1 required");
  const MatrixXd root = sym_sqrt_psd(spec.Sigma);
  const MatrixXd b = spec.B();
  const bool indep = spec.randomness.kind == ZsRandomness::Kind::IndependentCommon;
  const VectorXd phi = spec.phi_vector();
  const double omega_sd = indep ? std::sqrt(spec.randomness.sigma_omega2) : 0.0;
  const bool has_omega = spec.randomness.kind != ZsRandomness::Kind::None;

  McAccumulator total;
  McAccumulator chunk;
  std::uint64_t in_chunk = 0;
  VectorXd z(3), xi(3), u(3);
  for (std::uint64_t i = 0; i < n; ++i) {
    for (int d = 0; d < 3; ++d) z(d) = counter_gaussian(seed, i, d);
    xi = root * z;
    double omega = 0.0;
    if (has_omega)
      omega = indep ? omega_sd * counter_gaussian(seed, i, 3) : phi.dot(xi);
    u(0) = coeffs(0) * xi(0);
    u(1) = coeffs(1) * xi(1) + coeffs(3) * omega;
    u(2) = coeffs(2) * xi(2) + coeffs(4) * omega;
    double cost = u.dot(b * u) + 2.0 * (u(0) * xi(0) - u(1) * xi(1) - u(2) * xi(2));
    chunk.add(cost);
    if (++in_chunk == 65536) {
      total.merge(chunk);
      chunk = McAccumulator();
      in_chunk = 0;
    }
  }
  total.merge(chunk);
  return total.estimate(seed);
}

ValueOfInformation value_of_information(const ZsLqgSpec& variant_a,
                                        const ZsLqgSpec& variant_b,
                                        GainingTeam gained) {
  ValueOfInformation voi;
  voi.v1_a = solve_saddle(variant_a).value;
  voi.v1_b = solve_saddle(variant_b).value;
  voi.monotone = gained == GainingTeam::Maximizer
                     ? voi.v1_b >= voi.v1_a - 1e-9
                     : voi.v1_b <= voi.v1_a + 1e-9;
  return voi;
}

}  // namespace randteam
