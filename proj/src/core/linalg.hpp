#pragma once

#include <Eigen/Dense>

namespace levykit {

inline constexpr double kSymTol = 1e-12;     // symmetry check on covariances
inline constexpr double kPsdTol = 1e-10;     // eigenvalue floor for PSD tests
inline constexpr double kWeightTol = 1e-12;  // jump-weight floor / snap radius
inline constexpr double kSnapTol = 1e-12;    // atom-coordinate merge radius
inline constexpr double kNormSlack = 1e-10;  // contraction-norm slack

double min_eigenvalue(const Eigen::MatrixXd& sym);

// Projection onto the PSD cone by zeroing negative eigenvalues. Returns the
// input unchanged when it is already PSD.
Eigen::MatrixXd psd_project(const Eigen::MatrixXd& sym);

// Deterministic spectral factor R with Q = R R^T, one column per eigenvalue
// above the rank cutoff, ordered by descending eigenvalue with a fixed sign
// convention. The columns are orthonormal in the inner product induced by
// the pseudo-inverse of Q.
Eigen::MatrixXd spectral_factor(const Eigen::MatrixXd& q);

// Moore-Penrose pseudo-inverse via SVD.
Eigen::MatrixXd pseudo_inverse(const Eigen::MatrixXd& a);

double operator_norm(const Eigen::MatrixXd& a);

}  // namespace levykit
