#include "randteam/linalg.hpp"

#include <cmath>
#include <string>

namespace randteam {

VectorXd solve_linear(MatrixXd a, VectorXd b) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n || b.size() != n)
    throw std::invalid_argument("solve_linear: dimension mismatch");
  if (n == 0) return VectorXd();
  const double scale = a.cwiseAbs().maxCoeff();
  const double tiny = 1e-12 * (scale > 0 ? scale : 1.0);
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index piv = col;
    for (Eigen::Index r = col + 1; r < n; ++r)
      if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
    if (std::abs(a(piv, col)) <= tiny)
      throw NumericalError("solve_linear: singular system (pivot " +
                           std::to_string(a(piv, col)) + " at column " +
                           std::to_string(col) + ")");
    if (piv != col) {
      a.row(piv).swap(a.row(col));
      std::swap(b(piv), b(col));
    }
    for (Eigen::Index r = col + 1; r < n; ++r) {
      double f = a(r, col) / a(col, col);
      if (f == 0.0) continue;
      a.row(r).tail(n - col) -= f * a.row(col).tail(n - col);
      b(r) -= f * b(col);
    }
  }
  VectorXd x(n);
  for (Eigen::Index r = n - 1; r >= 0; --r) {
    double s = b(r);
    for (Eigen::Index c = r + 1; c < n; ++c) s -= a(r, c) * x(c);
    x(r) = s / a(r, r);
  }
  return x;
}

bool is_symmetric(const MatrixXd& a, double tol) {
  if (a.rows() != a.cols()) return false;
  return (a - a.transpose()).cwiseAbs().maxCoeff() <= tol * std::max(1.0, a.cwiseAbs().maxCoeff());
}

VectorXd sym_eigenvalues(const MatrixXd& a) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(a, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw NumericalError("symmetric eigendecomposition failed");
  return es.eigenvalues();
}

double min_eigenvalue(const MatrixXd& a) {
  if (a.rows() == 0) return 0.0;
  return sym_eigenvalues(a)(0);
}

MatrixXd sym_sqrt_psd(const MatrixXd& a) {
  MatrixXd m = 0.5 * (a + a.transpose());
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(m);
  if (es.info() != Eigen::Success)
    throw NumericalError("symmetric eigendecomposition failed");
  VectorXd vals = es.eigenvalues();
  if (vals.size() > 0 && vals(0) < 0) {
    if (vals(0) < -1e-8)
      throw NumericalError("matrix is not PSD (min eigenvalue " +
                           std::to_string(vals(0)) + ")");
    m.diagonal().array() += 1e-12;
    es.compute(m);
    vals = es.eigenvalues();
  }
  VectorXd roots = vals.cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * roots.asDiagonal() * es.eigenvectors().transpose();
}

void require_covariance(const MatrixXd& a, const char* name, double sym_tol,
                        double psd_tol) {
  if (a.rows() != a.cols())
    throw std::invalid_argument(std::string(name) + " must be square");
  if (!is_symmetric(a, sym_tol))
    throw std::invalid_argument(std::string(name) + " must be symmetric");
  double lo = min_eigenvalue(a);
  if (lo < -psd_tol)
    throw std::invalid_argument(std::string(name) +
                                " must be PSD (min eigenvalue " +
                                std::to_string(lo) + ")");
}

}  // namespace randteam
