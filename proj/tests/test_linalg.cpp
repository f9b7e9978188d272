#include <doctest.h>

#include "randteam/linalg.hpp"
#include "randteam/oracle.hpp"

using namespace randteam;

TEST_CASE("partial-pivot solve recovers known solutions") {
  MatrixXd a(2, 2);
  a << 2, -0.25, -0.25, 1;
  VectorXd b(2);
  b << -1, -1;
  VectorXd x = solve_linear(a, b);
  CHECK(x(0) == doctest::Approx(-20.0 / 31).epsilon(1e-12));
  CHECK(x(1) == doctest::Approx(-36.0 / 31).epsilon(1e-12));
}

TEST_CASE("solve works when the natural first pivot is zero") {
  MatrixXd a(2, 2);
  a << 0, 1, 1, 0;
  VectorXd b(2);
  b << 3, 4;
  VectorXd x = solve_linear(a, b);
  CHECK(x(0) == doctest::Approx(4));
  CHECK(x(1) == doctest::Approx(3));
}

TEST_CASE("singular systems raise a numerical error naming the pivot") {
  MatrixXd a(2, 2);
  a << 1, 2, 2, 4;
  VectorXd b(2);
  b << 1, 2;
  CHECK_THROWS_AS(solve_linear(a, b), NumericalError);
}

TEST_CASE("random PD systems solve to tiny residuals") {
  for (int trial = 0; trial < 50; ++trial) {
    int n = 2 + static_cast<int>(counter_bits(7, trial, 0) % 7);
    MatrixXd g(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        g(i, j) = 2.0 * counter_uniform(7, trial, 1 + i * n + j) - 1.0;
    MatrixXd a = g * g.transpose() + MatrixXd::Identity(n, n);
    VectorXd b(n);
    for (int i = 0; i < n; ++i) b(i) = counter_uniform(7, trial, 100 + i);
    VectorXd x = solve_linear(a, b);
    CHECK((a * x - b).norm() <= 1e-9 * (1 + b.norm()));
  }
}

TEST_CASE("symmetric square root handles PSD-singular matrices") {
  MatrixXd rank1(2, 2);
  rank1 << 1, 1, 1, 1;  // perfect correlation
  MatrixXd l = sym_sqrt_psd(rank1);
  CHECK((l * l.transpose() - rank1).cwiseAbs().maxCoeff() <= 1e-9);

  MatrixXd negdef(2, 2);
  negdef << -1, 0, 0, 1;
  CHECK_THROWS_AS(sym_sqrt_psd(negdef), NumericalError);
}

TEST_CASE("covariance validation") {
  MatrixXd ok(2, 2);
  ok << 1, 0.25, 0.25, 1;
  CHECK_NOTHROW(require_covariance(ok, "ok"));
  MatrixXd asym(2, 2);
  asym << 1, 0.3, 0.1, 1;
  CHECK_THROWS_AS(require_covariance(asym, "asym"), std::invalid_argument);
  MatrixXd indef(2, 2);
  indef << 1, 2, 2, 1;
  CHECK_THROWS_AS(require_covariance(indef, "indef"), std::invalid_argument);
}
