#include <cmath>
#include <vector>

#include "randteam/discrete_game.hpp"

namespace randteam {

namespace {

constexpr double kEps = 1e-11;
constexpr int kMaxPivots = 20000;

// max c^T x  s.t.  A x <= b, x >= 0, with b >= 0 (the all-slack basis is
// feasible). Dense tableau simplex, Bland's rule. Returns the optimum x.
struct SimplexResult {
  std::vector<double> x;
  double objective = 0.0;
};

SimplexResult simplex_max(const std::vector<std::vector<double>>& a,
                          const std::vector<double>& b,
                          const std::vector<double>& c) {
  const int m = static_cast<int>(b.size());
  const int n = static_cast<int>(c.size());
  std::vector<std::vector<double>> t(m + 1, std::vector<double>(n + m + 1, 0.0));
  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) t[i][j] = a[i][j];
    t[i][n + i] = 1.0;
    t[i][n + m] = b[i];
    basis[i] = n + i;
  }
  for (int j = 0; j < n; ++j) t[m][j] = -c[j];

  for (int iter = 0; iter < kMaxPivots; ++iter) {
    int enter = -1;
    for (int j = 0; j < n + m; ++j)
      if (t[m][j] < -kEps) { enter = j; break; }  // Bland: lowest index
    if (enter < 0) break;
    int leave = -1;
    double best_ratio = 0.0;
    for (int i = 0; i < m; ++i) {
      if (t[i][enter] <= kEps) continue;
      double ratio = t[i][n + m] / t[i][enter];
      if (leave < 0 || ratio < best_ratio - kEps ||
          (ratio < best_ratio + kEps && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave < 0) throw NumericalError("matrix game LP: unbounded");
    double piv = t[leave][enter];
    for (double& v : t[leave]) v /= piv;
    for (int i = 0; i <= m; ++i) {
      if (i == leave) continue;
      double f = t[i][enter];
      if (f == 0.0) continue;
      for (int j = 0; j <= n + m; ++j) t[i][j] -= f * t[leave][j];
    }
    basis[leave] = enter;
    if (iter + 1 == kMaxPivots)
      throw NumericalError("matrix game LP: pivot limit exceeded");
  }

  SimplexResult res;
  res.x.assign(n, 0.0);
  for (int i = 0; i < m; ++i)
    if (basis[i] < n) res.x[basis[i]] = t[i][n + m];
  res.objective = 0.0;
  for (int j = 0; j < n; ++j) res.objective += c[j] * res.x[j];
  return res;
}

// Optimal strategy of the minimizing (row) player of M, plus the game value.
std::pair<VectorXd, double> row_player_lp(const MatrixXd& m) {
  const int rows = static_cast<int>(m.rows());
  const int cols = static_cast<int>(m.cols());
  const double shift = 1.0 - m.minCoeff();
  // max sum(u) s.t. sum_i u_i (M_ij + shift) <= 1 for every column j
  std::vector<std::vector<double>> a(cols, std::vector<double>(rows));
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) a[j][i] = m(i, j) + shift;
  SimplexResult lp = simplex_max(a, std::vector<double>(cols, 1.0),
                                 std::vector<double>(rows, 1.0));
  if (lp.objective <= 0)
    throw NumericalError("matrix game LP: degenerate objective");
  VectorXd x(rows);
  for (int i = 0; i < rows; ++i) x(i) = lp.x[i] / lp.objective;
  return {x, 1.0 / lp.objective - shift};
}

}  // namespace

MatrixGameSolution solve_matrix_game(const MatrixXd& m) {
  if (m.rows() == 0 || m.cols() == 0)
    throw std::invalid_argument("solve_matrix_game: empty matrix");
  auto [x, v_row] = row_player_lp(m);
  // the maximizer is the row-minimizer of -M^T
  auto [y, v_col] = row_player_lp((-m.transpose()).eval());

  const double scale = 1.0 + m.cwiseAbs().maxCoeff();
  const double eps = 1e-9 * scale;
  if (std::abs(v_row + v_col) > eps)
    throw NumericalError("matrix game LP: primal/dual value mismatch");

  // eps-optimality of both strategies
  double worst_row = (x.transpose() * m).maxCoeff();   // minimizer's exposure
  double worst_col = (m * y).minCoeff();               // maximizer's guarantee
  if (worst_row > v_row + eps || worst_col < v_row - eps)
    throw NumericalError("matrix game LP: strategies fail eps-optimality");

  MatrixGameSolution sol;
  sol.value = v_row;
  sol.row_strategy = x;
  sol.col_strategy = y;
  return sol;
}

}  // namespace randteam
