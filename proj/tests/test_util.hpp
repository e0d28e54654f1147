#pragma once

// Shared generators and oracles for the test suites.

#include <Eigen/Dense>

#include <vector>

#include "core/rng.hpp"
#include "core/triplet.hpp"

namespace levykit::testing {

inline double uniform(RngStream& rng, double lo, double hi) {
  return lo + (hi - lo) * rng.uniform01();
}

inline Eigen::VectorXd random_vector(RngStream& rng, int d, double scale = 1.0) {
  Eigen::VectorXd v(d);
  for (int i = 0; i < d; ++i) v(i) = uniform(rng, -scale, scale);
  return v;
}

inline Eigen::MatrixXd random_matrix(RngStream& rng, int rows, int cols,
                                     double scale = 1.0) {
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int k = 0; k < cols; ++k) m(i, k) = uniform(rng, -scale, scale);
  }
  return m;
}

// Random PSD matrix A A^t; with rank_drop > 0 some directions are removed.
inline Eigen::MatrixXd random_psd(RngStream& rng, int d, int rank_drop = 0) {
  const int rank = std::max(0, d - rank_drop);
  if (rank == 0) return Eigen::MatrixXd::Zero(d, d);
  const Eigen::MatrixXd a = random_matrix(rng, d, rank, 0.8);
  return a * a.transpose();
}

// Atoms kept away from the origin and from each other so snap-merging does
// not fire accidentally.
inline AtomicMeasure random_atoms(RngStream& rng, int d, int count) {
  std::vector<Atom> atoms;
  int guard = 0;
  while (static_cast<int>(atoms.size()) < count && guard < 200) {
    ++guard;
    Eigen::VectorXd p = random_vector(rng, d, 2.5);
    if (p.lpNorm<Eigen::Infinity>() < 0.05) continue;
    bool separated = true;
    for (const auto& a : atoms) {
      if ((a.point - p).lpNorm<Eigen::Infinity>() < 0.05) separated = false;
    }
    if (!separated) continue;
    atoms.push_back(Atom{std::move(p), uniform(rng, 0.1, 1.5)});
  }
  return AtomicMeasure(d, std::move(atoms));
}

inline LevyTriplet random_triplet(RngStream& rng, int d, int max_atoms,
                                  int rank_drop = 0) {
  const int count = max_atoms == 0 ? 0 : static_cast<int>(uniform(rng, 0, max_atoms + 1));
  return LevyTriplet(random_vector(rng, d), random_psd(rng, d, rank_drop),
                     random_atoms(rng, d, count));
}

struct ForwardScenario {
  Eigen::MatrixXd t_map;
  LevyTriplet t1;
  LevyTriplet rho;
  LevyTriplet t2;
};

// Forward-constructed skew data: t2 := T(t1) * rho is skew by construction.
inline ForwardScenario random_forward_scenario(RngStream& rng, int d1, int d2,
                                               int max_atoms) {
  ForwardScenario fs{random_matrix(rng, d2, d1, 0.9),
                     random_triplet(rng, d1, max_atoms),
                     random_triplet(rng, d2, max_atoms),
                     LevyTriplet::zero(1)};
  fs.t2 = convolve(pushforward(fs.t_map, fs.t1), fs.rho);
  return fs;
}

}  // namespace levykit::testing
