#include "core/linalg.hpp"

#include <cmath>

namespace levykit {

double min_eigenvalue(const Eigen::MatrixXd& sym) {
  if (sym.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

Eigen::MatrixXd psd_project(const Eigen::MatrixXd& sym) {
  if (sym.rows() == 0) return sym;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
  if (es.eigenvalues().minCoeff() >= 0.0) return sym;
  Eigen::VectorXd clipped = es.eigenvalues().cwiseMax(0.0);
  return es.eigenvectors() * clipped.asDiagonal() * es.eigenvectors().transpose();
}

Eigen::MatrixXd spectral_factor(const Eigen::MatrixXd& q) {
  const Eigen::Index d = q.rows();
  if (d == 0) return Eigen::MatrixXd(0, 0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(q);
  const Eigen::VectorXd& lam = es.eigenvalues();  // ascending
  const double cutoff = 1e-12 * std::max(1.0, lam.cwiseAbs().maxCoeff());
  int rank = 0;
  for (Eigen::Index i = 0; i < d; ++i) {
    if (lam(i) > cutoff) ++rank;
  }
  Eigen::MatrixXd r(d, rank);
  int col = 0;
  for (Eigen::Index i = d - 1; i >= 0; --i) {  // descending eigenvalue order
    if (lam(i) <= cutoff) continue;
    Eigen::VectorXd v = es.eigenvectors().col(i);
    // Fix the sign so the largest-magnitude component is positive.
    Eigen::Index imax = 0;
    v.cwiseAbs().maxCoeff(&imax);
    if (v(imax) < 0.0) v = -v;
    r.col(col++) = std::sqrt(lam(i)) * v;
  }
  return r;
}

Eigen::MatrixXd pseudo_inverse(const Eigen::MatrixXd& a) {
  if (a.rows() == 0 || a.cols() == 0) return Eigen::MatrixXd(a.cols(), a.rows());
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& s = svd.singularValues();
  const double cutoff = 1e-13 * std::max(1.0, s.maxCoeff());
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(s.size());
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > cutoff) inv(i) = 1.0 / s(i);
  }
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

double operator_norm(const Eigen::MatrixXd& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  return svd.singularValues().maxCoeff();
}

}  // namespace levykit
