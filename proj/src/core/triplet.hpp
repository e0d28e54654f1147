#pragma once

// Levy-Khintchine triplet (xi, Q, nu) with a finite atomic Levy measure:
// characteristic exponents, convolution, pushforward under linear maps,
// directional cumulants and the skew-factor solver.

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "core/errors.hpp"
#include "core/linalg.hpp"

namespace levykit {

struct Atom {
  Eigen::VectorXd point;
  double weight = 0.0;
};

// Finite atomic measure on R^d minus the origin: strictly positive weights,
// pairwise distinct points. Construction canonicalises: atoms within the
// snap radius merge (weights add), and the atom list is sorted
// lexicographically by coordinates so equal measures compare equal.
class AtomicMeasure {
 public:
  explicit AtomicMeasure(int dim = 0) : dim_(dim) {}
  AtomicMeasure(int dim, std::vector<Atom> atoms);

  int dim() const { return dim_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  bool empty() const { return atoms_.empty(); }
  double total_intensity() const;

  // Index of the atom whose point lies within the snap radius, if any.
  std::optional<std::size_t> find(const Eigen::VectorXd& point) const;

 private:
  int dim_ = 0;
  std::vector<Atom> atoms_;
};

class LevyTriplet {
 public:
  // Validates: dimensions agree, Q symmetric within kSymTol (then exactly
  // symmetrised), min eigenvalue >= -kPsdTol (negative eigenvalues are then
  // zeroed).
  LevyTriplet(Eigen::VectorXd drift, Eigen::MatrixXd gaussian_cov, AtomicMeasure jumps);

  static LevyTriplet dirac(const Eigen::VectorXd& point);
  static LevyTriplet gaussian(const Eigen::MatrixXd& cov);
  static LevyTriplet zero(int dim);

  int dim() const { return static_cast<int>(drift_.size()); }
  const Eigen::VectorXd& drift() const { return drift_; }
  const Eigen::MatrixXd& gaussian_cov() const { return gaussian_cov_; }
  const AtomicMeasure& jumps() const { return jumps_; }

  LevyTriplet gaussian_part() const;  // (0, Q, 0)
  LevyTriplet jump_part() const;      // (xi, 0, nu)

 private:
  Eigen::VectorXd drift_;
  Eigen::MatrixXd gaussian_cov_;
  AtomicMeasure jumps_;
};

// psi(u) = i<xi,u> - <Qu,u>/2 + sum_atoms w (e^{i<x,u>} - 1 - i<x,u> [|x|<=1]);
// the law's Fourier transform is exp(psi(u)). Jumps with |x| <= 1
// (Euclidean norm, ties count as small) are compensated.
std::complex<double> char_exponent(const LevyTriplet& t, const Eigen::VectorXd& u);

// Triplet components add; coincident jump atoms merge with weight addition.
LevyTriplet convolve(const LevyTriplet& a, const LevyTriplet& b);

// Triplet of the image law T(lambda). Atoms map to (Tx, w) with collisions
// merged and images at the origin dropped; the drift picks up the
// truncation-recentring term w Tx ([|Tx|<=1] - [|x|<=1]) per atom so that
// psi_{T lambda}(u) = psi_lambda(T^t u) exactly.
LevyTriplet pushforward(const Eigen::MatrixXd& t_map, const LevyTriplet& t);

// Cumulants of <X, u> for X distributed by the triplet's law:
// kappa_1 = <xi,u> + sum w <x,u> [|x|>1], kappa_2 = <Qu,u> + sum w <x,u>^2,
// kappa_n = sum w <x,u>^n for n >= 3.
std::vector<double> cumulants(const LevyTriplet& t, const Eigen::VectorXd& u, int n_max);

struct SkewDiagnostics {
  double min_gap_eigenvalue = 0.0;   // smallest eigenvalue of Q2 - T Q1 T^t
  double most_negative_weight = 0.0; // most negative residual jump weight
};

struct SkewSolution {
  LevyTriplet rho;           // full skew factor
  LevyTriplet rho_gaussian;  // (0, Q_rho, 0)
  LevyTriplet rho_jump;      // (xi_rho, 0, nu_rho)
  SkewDiagnostics diagnostics;
};

struct SkewFailure {
  ErrorCode code = ErrorCode::not_skew_gaussian;
  SkewDiagnostics diagnostics;
  double witness_value = 0.0;                    // eigenvalue or weight
  std::optional<Eigen::VectorXd> witness_point;  // offending atom (jump case)
  std::string message;
};

struct SkewResult {
  std::optional<SkewSolution> solution;
  std::optional<SkewFailure> failure;

  bool ok() const { return solution.has_value(); }
  const SkewDiagnostics& diagnostics() const {
    return solution ? solution->diagnostics : failure->diagnostics;
  }
};

// Solves T(lambda1) * rho = lambda2 for an infinitely divisible rho by
// componentwise subtraction. Succeeds iff Q2 - T Q1 T^t stays PSD within
// kPsdTol and every residual jump weight stays above -kWeightTol.
SkewResult skew_solve(const Eigen::MatrixXd& t_map, const LevyTriplet& t1,
                      const LevyTriplet& t2);

struct SkewEquivalenceReport {
  SkewResult combined;  // on (lambda1, lambda2)
  SkewResult gaussian;  // on (gamma1, gamma2)
  SkewResult jump;      // on (pi1, pi2)
  bool equivalence_holds = false;    // ok(combined) == ok(gaussian) && ok(jump)
  bool factorisation_holds = false;  // rho == rho_gamma * rho_pi on success
  bool pass() const { return equivalence_holds && factorisation_holds; }
};

SkewEquivalenceReport skew_equivalence_check(const Eigen::MatrixXd& t_map,
                                             const LevyTriplet& t1, const LevyTriplet& t2);

// Largest componentwise deviation between two triplets: drift, covariance,
// and jump atoms matched within the snap radius (unmatched atoms count with
// their full weight).
double triplet_distance(const LevyTriplet& a, const LevyTriplet& b);

}  // namespace levykit
