#pragma once

// Independent expectation oracles for the chaos tests: Gauss-Hermite
// quadrature on the Gaussian coordinates (exact for polynomials up to
// degree 2Q-1) tensored with tail-capped Poisson enumeration on the counts.
// Deliberately separate from the moment formulas used by the library.

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

namespace levykit::testing {

struct Quadrature {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Probabilists' Gauss-Hermite rule via the Jacobi matrix (Golub-Welsch):
// integrates polynomials of degree <= 2q - 1 exactly against N(0,1).
inline Quadrature gauss_hermite(int q) {
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(q, q);
  for (int i = 0; i + 1 < q; ++i) {
    const double b = std::sqrt(static_cast<double>(i + 1));
    jacobi(i, i + 1) = b;
    jacobi(i + 1, i) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jacobi);
  Quadrature rule;
  rule.nodes.resize(static_cast<std::size_t>(q));
  rule.weights.resize(static_cast<std::size_t>(q));
  for (int i = 0; i < q; ++i) {
    rule.nodes[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
    const double w0 = es.eigenvectors()(0, i);
    rule.weights[static_cast<std::size_t>(i)] = w0 * w0;
  }
  return rule;
}

inline int poisson_cap(double rate) {
  return static_cast<int>(rate + 12.0 * std::sqrt(rate) + 40.0);
}

// E fn(g, counts) with g ~ N(0, I_r) and counts ~ independent Poisson.
inline double enum_expectation(
    int r, const std::vector<double>& intensities, int quad_points,
    const std::function<double(const std::vector<double>&,
                               const std::vector<std::uint64_t>&)>& fn) {
  const Quadrature rule = gauss_hermite(quad_points);
  const int m = static_cast<int>(intensities.size());

  std::vector<double> g(static_cast<std::size_t>(r), 0.0);
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(m), 0);

  std::function<double(int)> over_counts = [&](int k) -> double {
    if (k == m) return fn(g, counts);
    const double rate = intensities[static_cast<std::size_t>(k)];
    const int cap = poisson_cap(rate);
    double pmf = std::exp(-rate);
    double sum = 0.0;
    for (int c = 0; c <= cap; ++c) {
      if (c > 0) pmf *= rate / c;
      counts[static_cast<std::size_t>(k)] = static_cast<std::uint64_t>(c);
      sum += pmf * over_counts(k + 1);
    }
    return sum;
  };

  std::function<double(int)> over_gauss = [&](int i) -> double {
    if (i == r) return over_counts(0);
    double sum = 0.0;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      g[static_cast<std::size_t>(i)] = rule.nodes[q];
      sum += rule.weights[q] * over_gauss(i + 1);
    }
    return sum;
  };

  return over_gauss(0);
}

}  // namespace levykit::testing
