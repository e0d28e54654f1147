#pragma once

// Seeded sampling of infinitely divisible laws via the drift + Gaussian +
// compensated-Poisson split, and of Poisson random measures on finite
// ground spaces. Supplies the Monte-Carlo oracles used by the other
// modules.

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <vector>

#include "core/rng.hpp"
#include "core/triplet.hpp"

namespace levykit {

// Finite set of jump atoms with positive intensities; shares the atomic
// measure invariants (distinct points, no origin atom, weights > 0).
using GroundSpace = AtomicMeasure;

struct PoissonConfiguration {
  std::vector<std::uint64_t> counts;  // one count per ground-space atom
};

struct SampleBatch {
  int dim = 0;
  std::size_t count = 0;
  std::vector<double> data;  // row-major, count x dim

  Eigen::Map<const Eigen::VectorXd> row(std::size_t i) const {
    return Eigen::Map<const Eigen::VectorXd>(data.data() + i * static_cast<std::size_t>(dim),
                                             dim);
  }
};

// Every Monte-Carlo figure travels with its standard error and sample size.
struct McEstimate {
  double value = 0.0;
  double se = 0.0;
  std::size_t n = 0;
};

McEstimate mean_se(const std::vector<double>& values);

// Samples X = xi + G + sum_k (count_k - [|x_k|<=1] w_k) x_k with G ~ N(0,Q)
// and count_k ~ Poisson(w_k) independent. Worker i draws rows
// [i n/W, (i+1) n/W) from its own substream, so a run is bit-identical for
// fixed (seed, n, workers) whether executed serially or in parallel.
SampleBatch sample_id(const LevyTriplet& t, std::uint64_t seed, std::size_t n,
                      int workers = 1);

PoissonConfiguration sample_prm(const GroundSpace& g, std::uint64_t seed);
PoissonConfiguration sample_prm(const GroundSpace& g, RngStream& rng);

struct EmpiricalChar {
  std::complex<double> value;
  double se = 0.0;  // sqrt((var Re + var Im) / n)
  std::size_t n = 0;
};

EmpiricalChar empirical_char(const SampleBatch& batch, const Eigen::VectorXd& u);

}  // namespace levykit
