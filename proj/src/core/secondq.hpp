#pragma once

// Second quantisation over truncated Fock spaces: the contraction pair
// induced by a skew map T, its graded (levelwise tensor-power) action on
// chaos coefficients, the transition operator P_T on polynomials, and the
// cylindrical lift realising f(x) as a polynomial in the chaos coordinates.

#include <Eigen/Dense>

#include <cstdint>

#include "core/chaos.hpp"
#include "core/polynomial.hpp"
#include "core/triplet.hpp"

namespace levykit {

// The two contraction blocks mapping side-2 coordinates to side-1
// coordinates; both have operator norm <= 1 on valid skew scenarios.
struct ContractionPair {
  Eigen::MatrixXd gaussian_block;  // r1 x r2
  Eigen::MatrixXd poisson_block;   // m1 x m2
};

// Adjoint of the restriction of T to H_{gamma,1} -> H_{gamma,2}, expressed
// in the orthonormal column bases of the factors Q_i = R_i R_i^T: computes
// B = R_2^+ T R_1 (pseudo-inverse factor, so rank-deficient covariances are
// handled) and returns B^T. Requires the Gaussian skew condition
// Q2 - T Q1 T^t >= 0; the norm |B| <= 1 is asserted.
Eigen::MatrixXd restriction_contraction(const Eigen::MatrixXd& t_map,
                                        const Eigen::MatrixXd& q1,
                                        const Eigen::MatrixXd& q2);

// The map g -> g o T from L2(nu2) to L2(nu1) in the normalised indicator
// bases: entry (k, l) = sqrt(nu1_k / nu2_l) when T x_k = y_l, zero rows for
// atoms T kills. Requires every surviving image atom to be matched by a
// nu2 atom whose intensity dominates the aggregated pushed intensity.
Eigen::MatrixXd poisson_composition(const Eigen::MatrixXd& t_map, const GroundSpace& g1,
                                    const GroundSpace& g2);

// B_gamma^{(x)j} (x) B_pi^{(x)k} applied to one (j,k) block in multiset
// coordinates.
SymTensor apply_pair_block(const ContractionPair& pair, const SymTensor& block);

// The graded action on every block. The grading is preserved and the
// isometric norm cannot increase for contraction blocks. target_intensities,
// when given, are the Poisson intensities of the side the result lives on
// (needed only to evaluate the result).
ChaosCoefficients gamma_apply(const ContractionPair& pair, const ChaosCoefficients& coeffs,
                              std::span<const double> target_intensities = {});

// P_T f(x) = int f(Tx + y) drho(y) for polynomial f, exactly: the image is
// again a polynomial whose coefficients involve joint moments of rho up to
// deg f, supplied by the cumulant-to-moment conversion. Degrees above the
// IdMoments cap are rejected.
SpatialPoly apply_pt_exact(const SpatialPoly& f, const Eigen::MatrixXd& t_map,
                           const LevyTriplet& rho);

struct ApplyPtMc {
  SpatialPoly value;
  double max_coeff_se = 0.0;
  std::size_t n = 0;
};

// Monte-Carlo variant: averages the coefficient vector of x -> f(Tx + Y_i)
// over sampler draws of Y ~ rho; each output coefficient carries a sample
// standard error (the reported figure is the largest).
ApplyPtMc apply_pt_mc(const SpatialPoly& f, const Eigen::MatrixXd& t_map,
                      const LevyTriplet& rho, std::uint64_t seed, std::size_t n,
                      int workers = 1);

// Cylindrical realisation of f in the chaos coordinates of the law:
// substitutes x = xi + R g + sum_k (N_k - [|x_k|<=1] nu_k) x_k.
TestFunction lift(const SpatialPoly& f, const LevyTriplet& t, const OrthoBasis& basis);

}  // namespace levykit
