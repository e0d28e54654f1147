#pragma once

// Combined Gaussian-Poisson chaos calculus on a desk-scale law: Hermite and
// Charlier polynomial systems, derivative-operator coefficient tensors, the
// graded blocks of H_n = sum_{j+k=n} H_gamma^{(.j)} (x) L2(nu)^{(.k)}, n-fold
// stochastic integrals and the chaos expansion of polynomial functionals.

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <tuple>
#include <vector>

#include "core/moments.hpp"
#include "core/polynomial.hpp"
#include "core/sampling.hpp"
#include "core/triplet.hpp"

namespace levykit {

// Monic probabilists' Hermite: He_0 = 1, He_1 = x,
// He_{n+1} = x He_n - n He_{n-1}.
double hermite(int n, double x);

// Monic Charlier: C_0 = 1, C_1 = x - a,
// C_{n+1} = (x - a - n) C_n - n a C_{n-1}.
double charlier(int n, double x, double a);

// The same polynomials as Poly objects in the variable `var` of an
// `nvars`-variable context.
Poly hermite_poly(int n, int nvars, int var);
Poly charlier_poly(int n, double a, int nvars, int var);

// Orthonormal coordinates for one law: a factor R with Q = R R^T whose
// columns are orthonormal in H_gamma, and the jump atoms carrying the
// normalised indicator basis e_k = 1_{y_k}/sqrt(nu_k) of L2(nu).
struct OrthoBasis {
  Eigen::MatrixXd gaussian_factor;  // d x r
  GroundSpace ground;

  int rank() const { return static_cast<int>(gaussian_factor.cols()); }
  int atom_count() const { return static_cast<int>(ground.size()); }
  std::vector<double> intensities() const;
};

OrthoBasis make_basis(const LevyTriplet& t);

// One draw of the chaos coordinates: g ~ N(0, I_r), counts_k ~ Poisson(nu_k).
struct ChaosSample {
  std::vector<double> g;
  std::vector<std::uint64_t> counts;
};

ChaosSample draw_chaos_sample(int r, std::span<const double> intensities, RngStream& rng);

// One graded block (j,k) of H_n in multiset coordinates.
//
// Conventions (used consistently everywhere):
//  * A key is the pair of exponent vectors (alpha over 1..r, beta over
//    1..m) with |alpha| = j, |beta| = k; the tensor is
//      sum c_{alpha,beta} sym(h^alpha) (x) sym(e^beta)
//    over the orthonormal systems h_i of H_gamma and e_k of L2(nu).
//  * The H_n norm carries the multinomial symmetry weights,
//      |block|^2 = sum c^2 alpha! beta! / n!,
//    so that E I_n(f)^2 = n! |f|^2 holds verbatim.
//  * The n-fold integral of a basis key evaluates to
//      prod_i He_{alpha_i}(g_i) * prod_k C_{beta_k}(N_k; nu_k) / nu_k^{beta_k/2}.
//  * Reconstruction weights blocks by 1/n!; the isometric (Fock) grading
//    weights them by 1/sqrt(n!), i.e. squared norms by 1/n!.
struct SymTensor {
  int gaussian_deg = 0;  // j
  int poisson_deg = 0;   // k
  int r = 0;
  int m = 0;
  std::map<std::pair<Exponents, Exponents>, double> coeffs;

  int level() const { return gaussian_deg + poisson_deg; }
  double norm_squared() const;
  double max_abs_coefficient() const;
  SymTensor& operator*=(double c);
};

// Largest absolute coefficient difference between two blocks.
double tensor_distance(const SymTensor& a, const SymTensor& b);

// Evaluates I_n(tensor) at a sample.
double multiple_integral(const SymTensor& tensor, const ChaosSample& sample,
                         std::span<const double> intensities);

// E[D_gamma^j Dtilde^k f] in multiset coordinates:
// c_{alpha,beta} = (j!/alpha!) (k!/beta!) E[d^alpha Delta^beta f] prod nu^{beta/2},
// with d the formal g-derivative and Delta the add-point forward difference
// in the counts. Expectations are exact (Gaussian product moments and
// Poisson factorial moments), never tail-truncated.
SymTensor derivative_tensor(const TestFunction& f, int j, int k,
                            std::span<const double> intensities);

// E D_gamma^n f as the (n,0) block.
SymTensor gaussian_derivative_coeff(const TestFunction& f, int n,
                                    std::span<const double> intensities);

// E Dtilde^n f as the (0,n) block.
SymTensor poisson_derivative_coeff(const TestFunction& f, int n,
                                   std::span<const double> intensities);

// All H_n blocks of E D^n f; block (j,k) carries the Leibniz weight
// binom(n,j) relative to derivative_tensor.
std::vector<SymTensor> joint_coeff(const TestFunction& f, int n,
                                   std::span<const double> intensities);

struct ChaosCoefficients {
  int max_level = 0;
  int r = 0;
  int m = 0;
  std::vector<double> intensities;
  std::map<std::tuple<int, int, int>, SymTensor> blocks;  // (n, j, k); zero blocks absent

  const SymTensor* block(int n, int j, int k) const;
  // sum_n (1/n!) |block_n|^2, the squared Fock-grading norm; equals E f^2
  // for a full expansion (Parseval).
  double isometric_norm_squared() const;
  double max_abs_coefficient() const;
};

// Chaos coefficients of f up to level max_level. Exact and terminating:
// blocks vanish for n > deg f.
ChaosCoefficients expand(const TestFunction& f, int max_level,
                         std::span<const double> intensities);

// sum_n (1/n!) I_n(block_n) evaluated at a sample.
double reconstruct(const ChaosCoefficients& coeffs, const ChaosSample& sample);

// The same sum as a polynomial in (g, N).
TestFunction reconstruct_polynomial(const ChaosCoefficients& coeffs);

struct L2Error {
  double residual = 0.0;     // sqrt E (f - reconstruction)^2
  double mean_square = 0.0;  // E (f - reconstruction)^2
  double se = 0.0;           // standard error of mean_square (MC path only)
  std::size_t n = 0;         // sample count (0 on the exact path)
};

L2Error l2_error_exact(const TestFunction& f, const ChaosCoefficients& coeffs);
L2Error l2_error_mc(const TestFunction& f, const ChaosCoefficients& coeffs,
                    std::uint64_t seed, std::size_t n, int workers = 1);

// sqrt E f^2 under the chaos-coordinate laws.
double l2_norm(const TestFunction& f, std::span<const double> intensities);

// Enumerates exponent vectors with |e| = size over nvars slots.
void for_each_multiset(int nvars, int size, const std::function<void(const Exponents&)>& fn);

double factorial(int n);
double multiset_factorial(const Exponents& e);  // prod e_i!

}  // namespace levykit
