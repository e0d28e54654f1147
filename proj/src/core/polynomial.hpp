#pragma once

// Sparse multivariate polynomials with double coefficients, keyed by
// exponent vectors. Used for the cylindrical test-function class: all chaos
// coefficients, derivative operators and transition-operator images are
// polynomial manipulations at desk scale.

#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace levykit {

using Exponents = std::vector<std::uint8_t>;

class Poly {
 public:
  explicit Poly(int nvars = 0) : nvars_(nvars) {}

  static Poly constant(int nvars, double c);
  static Poly variable(int nvars, int index, int power = 1);

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  int total_degree() const;
  int degree_in(int var) const;
  double coefficient(const Exponents& e) const;
  double max_abs_coefficient() const;

  void add_term(const Exponents& e, double c);

  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  Poly& operator*=(double c);
  friend Poly operator+(Poly a, const Poly& b) { a += b; return a; }
  friend Poly operator-(Poly a, const Poly& b) { a -= b; return a; }
  friend Poly operator*(Poly a, double c) { a *= c; return a; }
  friend Poly operator*(double c, Poly a) { a *= c; return a; }
  friend Poly operator*(const Poly& a, const Poly& b);

  // Formal partial derivative.
  Poly derivative(int var) const;
  // Substitute x_var -> x_var + delta.
  Poly shift(int var, double delta) const;
  // Substitute every variable by a polynomial over a common new context.
  Poly compose(const std::vector<Poly>& images) const;

  double evaluate(std::span<const double> point) const;

  // Drops coefficients with |c| <= eps (exact zeros by default).
  void prune(double eps = 0.0);

  const std::map<Exponents, double>& terms() const { return terms_; }

  bool operator==(const Poly&) const = default;

 private:
  int nvars_ = 0;
  std::map<Exponents, double> terms_;
};

// Polynomial in the chaos coordinates of one law: r Gaussian coordinates
// g_1..g_r followed by m atom counts N_1..N_m.
struct TestFunction {
  int r = 0;
  int m = 0;
  Poly poly;  // nvars == r + m

  TestFunction() = default;
  TestFunction(int r_, int m_) : r(r_), m(m_), poly(r_ + m_) {}
  TestFunction(int r_, int m_, Poly p) : r(r_), m(m_), poly(std::move(p)) {}

  int degree() const { return poly.total_degree(); }
  double evaluate(std::span<const double> g, std::span<const std::uint64_t> counts) const;
};

// Polynomial in the ambient coordinates of R^dim.
struct SpatialPoly {
  int dim = 0;
  Poly poly;

  SpatialPoly() = default;
  explicit SpatialPoly(int d) : dim(d), poly(d) {}
  SpatialPoly(int d, Poly p) : dim(d), poly(std::move(p)) {}

  int degree() const { return poly.total_degree(); }
};

}  // namespace levykit
