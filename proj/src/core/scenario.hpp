#pragma once

// Forward-constructed skew scenarios: a pair of infinitely divisible laws
// with a linear map T, the solved skew factors, orthonormal bases for both
// sides and the induced contraction pair.

#include <Eigen/Dense>

#include "core/chaos.hpp"
#include "core/secondq.hpp"
#include "core/triplet.hpp"

namespace levykit {

struct Scenario {
  Eigen::MatrixXd t_map;  // d2 x d1
  LevyTriplet t1;
  LevyTriplet t2;  // convolve(pushforward(T, t1), rho) by construction
  SkewSolution solution;
  OrthoBasis basis1;
  OrthoBasis basis2;
  ContractionPair pair;

  int dim1() const { return t1.dim(); }
  int dim2() const { return t2.dim(); }
};

// Builds lambda2 := T(lambda1) * rho, re-solves the skew factor and
// assembles bases and contraction blocks. The solve is guaranteed to
// succeed by construction; its failure modes propagate for incompatible
// inputs.
Scenario make_scenario(const Eigen::MatrixXd& t_map, const LevyTriplet& t1,
                       const LevyTriplet& rho);

// Canonical library: identity (T = I, rho = delta_0), Mehler
// (T = 0.5 I in d = 1, the stationary OU setting), and a rank-deficient T
// exercising the pseudo-inverse and atom-collision paths.
Scenario scenario_identity();
Scenario scenario_mehler();
Scenario scenario_rank_deficient();

}  // namespace levykit
