#pragma once

// Exact algebra of finitely supported signed measures on the nonnegative
// integers: convolution powers, the compound-Poisson exponential e(nu),
// the Levy-measure recovery recursion and the infinite-divisibility test.
//
// Everything here is computed in arbitrary-precision rationals. "Up to N"
// results are exact on sites 0..N: when nu(0) = 0 the n-fold convolution
// power is supported on [n, infinity), so truncated sums below N+1 lose
// nothing.

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "core/errors.hpp"
#include "core/rational.hpp"

namespace levykit {

// Finitely supported signed measure on Z_+. Canonical form: no stored zero
// weights, iteration in ascending site order.
class LatticeMeasure {
 public:
  LatticeMeasure() = default;

  static LatticeMeasure dirac(std::size_t site, const Rational& w = Rational(1));

  // Weight at a site, zero if absent.
  const Rational& at(std::size_t site) const;
  void set(std::size_t site, const Rational& w);
  void add(std::size_t site, const Rational& w);

  bool empty() const { return coeffs_.empty(); }
  std::size_t min_site() const;
  std::size_t max_site() const;
  Rational total_mass() const;
  bool is_nonnegative() const;
  std::optional<std::pair<std::size_t, Rational>> first_negative() const;

  LatticeMeasure truncated(std::size_t horizon) const;

  const std::map<std::size_t, Rational>& coeffs() const { return coeffs_; }

  bool operator==(const LatticeMeasure&) const = default;

  LatticeMeasure& operator+=(const LatticeMeasure& other);
  LatticeMeasure& operator-=(const LatticeMeasure& other);
  LatticeMeasure& operator*=(const Rational& c);

  friend LatticeMeasure operator+(LatticeMeasure a, const LatticeMeasure& b) {
    a += b;
    return a;
  }
  friend LatticeMeasure operator-(LatticeMeasure a, const LatticeMeasure& b) {
    a -= b;
    return a;
  }
  friend LatticeMeasure operator*(LatticeMeasure a, const Rational& c) {
    a *= c;
    return a;
  }

 private:
  std::map<std::size_t, Rational> coeffs_;
};

LatticeMeasure lconvolve(const LatticeMeasure& a, const LatticeMeasure& b);
LatticeMeasure lconvolve_truncated(const LatticeMeasure& a, const LatticeMeasure& b,
                                   std::size_t horizon);
LatticeMeasure lpower(const LatticeMeasure& a, unsigned k);
LatticeMeasure lpower_truncated(const LatticeMeasure& a, unsigned k, std::size_t horizon);

// Coefficients of e(nu) = sum_n nu^{*n}/n! on 0..horizon, exact.
// Requires nu(0) = 0.
LatticeMeasure exp_measure(const LatticeMeasure& nu, std::size_t horizon);

// Solves n r(n) = sum_{k=1..n} k q(k) r(n-k) for q on 1..horizon.
// r may be unnormalised (a positive r(0) is required; scaling cancels).
LatticeMeasure levy_from_distribution(const LatticeMeasure& r, std::size_t horizon);

struct IDVerdict {
  enum class Status { id_up_to_horizon, not_id };
  Status status = Status::id_up_to_horizon;
  LatticeMeasure recovered_levy;  // the q-sequence on 1..horizon
  std::optional<std::pair<std::size_t, Rational>> witness;
  std::size_t horizon = 0;

  bool is_id() const { return status == Status::id_up_to_horizon; }
};

// A lattice law with mass at 0 is infinitely divisible iff the recovered
// q-sequence is nonnegative; the first negative entry is the witness.
IDVerdict is_infinitely_divisible(const LatticeMeasure& r, std::size_t horizon);

struct PositivityReport {
  bool square_nonnegative = false;       // nu^{*2} >= 0
  bool eighth_combination = false;       // nu + nu^{*2}/8 >= 0
  bool third_combination = false;        // nu + nu^{*2}/3 >= 0 (used by the grouping)
  bool family_at_zero = false;           // nu^{*2} + c nu^{*3} >= 0 at c = 0
  bool family_at_one = false;            // ... and at c = 1; linear in c sitewise
  std::optional<std::pair<std::size_t, Rational>> first_failure;

  bool all() const {
    return square_nonnegative && eighth_combination && third_combination &&
           family_at_zero && family_at_one;
  }
};

PositivityReport positivity_inequalities(const LatticeMeasure& nu);

struct GroupingReport {
  bool identity_exact = false;    // regrouped series == e(nu) on 0..horizon
  bool groups_nonnegative = false;
  std::size_t horizon = 0;
  std::size_t group_count = 0;    // number of tail groups that contribute below horizon
};

// Verifies the regrouping
//   e(nu) = delta_0 + (nu + nu^{*2}/3) + (nu^{*2} + nu^{*3})/6
//           + sum_{n>=2} nu^{*2(n-1)}/(2n)! * (nu^{*2} + nu^{*3}/(2n+1))
// coefficientwise on 0..horizon and checks each group term for sitewise
// nonnegativity. Requires nu(0) = 0.
GroupingReport grouping_identity_check(const LatticeMeasure& nu, std::size_t horizon);

// 2d1 + 2d2 - d3 + 2d4 + 2d5, the signed measure of the non-ID example.
LatticeMeasure rosinski_measure();

}  // namespace levykit
