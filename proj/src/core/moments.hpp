#pragma once

// Exact moment engines: Gaussian product moments, Poisson moments via
// Stirling numbers, and joint moments of an infinitely divisible vector
// obtained from its cumulant tensors by the set-partition (Bell polynomial)
// moment-cumulant conversion.

#include <map>
#include <span>

#include "core/polynomial.hpp"
#include "core/triplet.hpp"

namespace levykit {

// E Z^k for Z standard normal: (k-1)!! for even k, 0 otherwise.
double gaussian_moment(int k);

// E N^k for N ~ Poisson(rate), via sum_j S(k,j) rate^j.
double poisson_moment(int k, double rate);

struct VarLaw {
  enum class Kind { gaussian, poisson } kind = Kind::gaussian;
  double rate = 0.0;  // Poisson intensity; ignored for Gaussian
};

// Expectation of a polynomial in independent variables with the given laws.
double expectation(const Poly& p, std::span<const VarLaw> laws);

// Laws of the chaos coordinates (r standard Gaussians, then m Poisson
// counts with the given intensities).
std::vector<VarLaw> chaos_laws(int r, std::span<const double> intensities);

// Joint moments E prod_i Y_i^{alpha_i} of an ID vector Y from its triplet.
// Cumulant tensors: kappa(i) = xi_i + sum w x_i [|x|>1],
// kappa(i,j) = Q_ij + sum w x_i x_j, kappa(i_1..i_n) = sum w x_{i_1}..x_{i_n}
// for n >= 3; moments follow by the recursive moment-cumulant relation.
// Orders above max_order are rejected (factorial growth).
class IdMoments {
 public:
  explicit IdMoments(const LevyTriplet& t, int max_order = 12);

  double moment(const Exponents& alpha);
  double cumulant(const Exponents& alpha) const;
  int max_order() const { return max_order_; }

 private:
  LevyTriplet triplet_;
  int max_order_;
  std::map<Exponents, double> memo_;
};

}  // namespace levykit
