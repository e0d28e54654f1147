#include "core/scenario.hpp"

namespace levykit {

Scenario make_scenario(const Eigen::MatrixXd& t_map, const LevyTriplet& t1,
                       const LevyTriplet& rho) {
  require(t_map.cols() == t1.dim(), ErrorCode::dimension_mismatch,
          "make_scenario: T columns do not match lambda1 dimension");
  require(t_map.rows() == rho.dim(), ErrorCode::dimension_mismatch,
          "make_scenario: rho dimension does not match T rows");
  const LevyTriplet t2 = convolve(pushforward(t_map, t1), rho);
  SkewResult solved = skew_solve(t_map, t1, t2);
  if (!solved.ok()) fail(solved.failure->code, solved.failure->message);

  Scenario sc{t_map, t1, t2, std::move(*solved.solution), make_basis(t1), make_basis(t2),
              ContractionPair{}};
  sc.pair.gaussian_block =
      restriction_contraction(t_map, t1.gaussian_cov(), t2.gaussian_cov());
  sc.pair.poisson_block = poisson_composition(t_map, sc.basis1.ground, sc.basis2.ground);
  return sc;
}

Scenario scenario_identity() {
  const int d = 1;
  Eigen::VectorXd xi(d);
  xi << 0.25;
  Eigen::MatrixXd q(d, d);
  q << 1.0;
  Eigen::VectorXd p1(d), p2(d);
  p1 << 2.0;
  p2 << -0.5;
  AtomicMeasure nu(d, {Atom{p1, 1.0}, Atom{p2, 0.5}});
  const LevyTriplet t1(xi, q, nu);
  return make_scenario(Eigen::MatrixXd::Identity(d, d), t1, LevyTriplet::zero(d));
}

Scenario scenario_mehler() {
  const int d = 1;
  Eigen::VectorXd xi(d);
  xi << 0.5;
  Eigen::MatrixXd q1(d, d);
  q1 << 1.0;
  Eigen::VectorXd p1(d);
  p1 << 2.0;
  const LevyTriplet t1(xi, q1, AtomicMeasure(d, {Atom{p1, 1.0}}));

  // rho with Q_rho = 0.75 = 1 - 0.5^2 (so Q2 = 1: a stationary OU step)
  // and one jump atom of its own.
  Eigen::VectorXd xr(d);
  xr << -0.125;
  Eigen::MatrixXd qr(d, d);
  qr << 0.75;
  Eigen::VectorXd pr(d);
  pr << 3.0;
  const LevyTriplet rho(xr, qr, AtomicMeasure(d, {Atom{pr, 0.5}}));

  Eigen::MatrixXd t_map(d, d);
  t_map << 0.5;
  return make_scenario(t_map, t1, rho);
}

Scenario scenario_rank_deficient() {
  const int d = 2;
  Eigen::VectorXd xi(d);
  xi << 0.1, -0.2;
  Eigen::MatrixXd q1(d, d);
  q1 << 1.0, 0.0, 0.0, 1.0;
  Eigen::VectorXd p1(d), p2(d);
  p1 << 2.0, 0.0;
  p2 << 0.0, 3.0;
  const LevyTriplet t1(xi, q1, AtomicMeasure(d, {Atom{p1, 1.0}, Atom{p2, 0.5}}));

  // T kills the second coordinate: the (0,3) atom maps to the origin and is
  // dropped, T Q1 T^t is rank one.
  Eigen::MatrixXd t_map(d, d);
  t_map << 1.0, 0.0, 0.0, 0.0;

  // rho restores full covariance rank and collides with the surviving image
  // atom at (2,0), exercising intensity aggregation.
  Eigen::VectorXd xr(d);
  xr << 0.0, 0.3;
  Eigen::MatrixXd qr(d, d);
  qr << 0.0, 0.0, 0.0, 1.0;
  Eigen::VectorXd pr1(d), pr2(d);
  pr1 << 2.0, 0.0;
  pr2 << 1.0, 1.0;
  const LevyTriplet rho(xr, qr, AtomicMeasure(d, {Atom{pr1, 0.5}, Atom{pr2, 0.25}}));
  return make_scenario(t_map, t1, rho);
}

}  // namespace levykit
