#include <doctest.h>

#include <cmath>
#include <numeric>

#include <boost/math/special_functions/gamma.hpp>

#include "core/sampling.hpp"
#include "test_util.hpp"

using namespace levykit;
using namespace levykit::testing;

namespace {

Eigen::VectorXd vec1(double x) {
  Eigen::VectorXd v(1);
  v << x;
  return v;
}

}  // namespace

TEST_CASE("rng determinism and distribution sanity") {
  SUBCASE("streams are reproducible and distinct") {
    RngStream a(123, 0), b(123, 0), c(123, 1);
    bool all_equal = true;
    bool any_equal_cross = false;
    for (int i = 0; i < 100; ++i) {
      const double ua = a.uniform01();
      all_equal = all_equal && (ua == b.uniform01());
      any_equal_cross = any_equal_cross || (ua == c.uniform01());
    }
    CHECK(all_equal);
    CHECK_FALSE(any_equal_cross);
  }
  SUBCASE("poisson inversion and rejection agree with the mean/variance") {
    for (double mean : {0.5, 4.0, 25.0, 80.0}) {
      RngStream rng(7, 0);
      const int n = 20000;
      double sum = 0.0, sumsq = 0.0;
      for (int i = 0; i < n; ++i) {
        const double k = static_cast<double>(rng.poisson(mean));
        sum += k;
        sumsq += k * k;
      }
      const double m = sum / n;
      const double var = sumsq / n - m * m;
      const double se = std::sqrt(mean / n);
      CHECK(std::abs(m - mean) < 5 * se);
      CHECK(std::abs(var - mean) < 0.1 * mean + 6 * se * std::sqrt(mean));
    }
  }
}

TEST_CASE("sample_id basics") {
  SUBCASE("pure drift law is deterministic at the point") {
    const LevyTriplet t = LevyTriplet::dirac(vec1(2.5));
    const SampleBatch batch = sample_id(t, 99, 50);
    for (std::size_t i = 0; i < batch.count; ++i) {
      CHECK(batch.row(i)(0) == doctest::Approx(2.5));
    }
  }
  SUBCASE("bit-identical for fixed (seed, n, workers)") {
    RngStream rng(23, 0);
    const LevyTriplet t = random_triplet(rng, 3, 4);
    const SampleBatch a = sample_id(t, 77, 501, 3);
    const SampleBatch b = sample_id(t, 77, 501, 3);
    CHECK(a.data == b.data);
    const SampleBatch c = sample_id(t, 78, 501, 3);
    CHECK(a.data != c.data);
  }
  SUBCASE("worker count changes the partition but not determinism") {
    RngStream rng(24, 0);
    const LevyTriplet t = random_triplet(rng, 2, 3);
    const SampleBatch a = sample_id(t, 5, 1000, 4);
    const SampleBatch b = sample_id(t, 5, 1000, 4);
    CHECK(a.data == b.data);
  }
  SUBCASE("sample mean matches kappa_1 within 4 standard errors") {
    RngStream rng(25, 0);
    for (int trial = 0; trial < 5; ++trial) {
      const int d = 1 + static_cast<int>(uniform(rng, 0, 3));
      const LevyTriplet t = random_triplet(rng, d, 5);
      const std::size_t n = 100000;
      const SampleBatch batch = sample_id(t, 1000 + trial, n, 2);
      for (int j = 0; j < d; ++j) {
        Eigen::VectorXd e = Eigen::VectorXd::Zero(d);
        e(j) = 1.0;
        const auto kappa = cumulants(t, e, 2);
        std::vector<double> coord(n);
        for (std::size_t i = 0; i < n; ++i) coord[i] = batch.row(i)(j);
        const McEstimate est = mean_se(coord);
        CHECK(std::abs(est.value - kappa[0]) <= 4.0 * est.se + 1e-9);
      }
    }
  }
  SUBCASE("small jumps are compensated: zero-drift small-jump law has mean zero") {
    const LevyTriplet t(vec1(0.0), Eigen::MatrixXd::Zero(1, 1),
                        AtomicMeasure(1, {Atom{vec1(0.5), 2.0}, Atom{vec1(-0.75), 1.0}}));
    const std::size_t n = 200000;
    const SampleBatch batch = sample_id(t, 4242, n);
    std::vector<double> coord(n);
    for (std::size_t i = 0; i < n; ++i) coord[i] = batch.row(i)(0);
    const McEstimate est = mean_se(coord);
    CHECK(std::abs(est.value) <= 4.0 * est.se);
  }
}

TEST_CASE("empirical characteristic function") {
  SUBCASE("trivial batches") {
    SampleBatch zero{1, 1, {0.0}};
    const auto ec0 = empirical_char(zero, vec1(3.0));
    CHECK(ec0.value.real() == doctest::Approx(1.0));
    CHECK(ec0.value.imag() == doctest::Approx(0.0));

    SampleBatch point{1, 1, {0.7}};
    const auto ec1 = empirical_char(point, vec1(2.0));
    CHECK(ec1.value.real() == doctest::Approx(std::cos(1.4)));
    CHECK(ec1.value.imag() == doctest::Approx(std::sin(1.4)));

    SampleBatch empty{1, 0, {}};
    CHECK_THROWS_AS(empirical_char(empty, vec1(0.0)), Error);
  }
  SUBCASE("large n agreement with exp(psi) on a u-grid") {
    RngStream rng(26, 0);
    const LevyTriplet t = random_triplet(rng, 2, 3);
    const std::size_t n = 200000;
    const SampleBatch batch = sample_id(t, 31337, n, 2);
    double sup = 0.0;
    for (int i = 0; i < 21; ++i) {
      Eigen::VectorXd u(2);
      const double s = -2.0 + 4.0 * i / 20.0;
      u << s, 0.6 * s;
      const auto ec = empirical_char(batch, u);
      const auto target = std::exp(char_exponent(t, u));
      sup = std::max(sup, std::abs(ec.value - target));
    }
    CHECK(sup <= 0.015);
  }
}

TEST_CASE("convolution law versus sums of independent samples") {
  RngStream rng(27, 0);
  const LevyTriplet a = random_triplet(rng, 1, 3);
  const LevyTriplet b = random_triplet(rng, 1, 3);
  const LevyTriplet c = convolve(a, b);
  const std::size_t n = 200000;
  const SampleBatch sa = sample_id(a, 1, n, 2);
  const SampleBatch sb = sample_id(b, 2, n, 2);
  SampleBatch sum{1, n, std::vector<double>(n)};
  for (std::size_t i = 0; i < n; ++i) sum.data[i] = sa.data[i] + sb.data[i];
  const SampleBatch sc = sample_id(c, 3, n, 2);
  double sup = 0.0;
  for (int i = 0; i < 21; ++i) {
    const Eigen::VectorXd u = vec1(-2.0 + 4.0 * i / 20.0);
    sup = std::max(sup,
                   std::abs(empirical_char(sum, u).value - empirical_char(sc, u).value));
  }
  CHECK(sup <= 0.015);
}

TEST_CASE("Poisson random measure sampling") {
  SUBCASE("empty ground space") {
    const PoissonConfiguration cfg = sample_prm(GroundSpace(2), 5);
    CHECK(cfg.counts.empty());
  }
  SUBCASE("per-atom empirical means match the intensities") {
    RngStream rng(28, 0);
    const GroundSpace g = random_atoms(rng, 2, 4);
    const std::size_t n = 50000;
    std::vector<std::vector<double>> counts(g.size());
    RngStream draw(29, 0);
    for (std::size_t i = 0; i < n; ++i) {
      const PoissonConfiguration cfg = sample_prm(g, draw);
      for (std::size_t k = 0; k < g.size(); ++k) {
        counts[k].push_back(static_cast<double>(cfg.counts[k]));
      }
    }
    for (std::size_t k = 0; k < g.size(); ++k) {
      const McEstimate est = mean_se(counts[k]);
      CHECK(std::abs(est.value - g.atoms()[k].weight) <= 4.0 * est.se);
    }
  }
  SUBCASE("total counts are Poisson with the total intensity (chi-square)") {
    RngStream rng(30, 0);
    const GroundSpace g = random_atoms(rng, 1, 3);
    const double total = g.total_intensity();
    const std::size_t n = 100000;

    std::vector<std::size_t> observed;
    RngStream draw(31, 0);
    for (std::size_t i = 0; i < n; ++i) {
      const PoissonConfiguration cfg = sample_prm(g, draw);
      const std::uint64_t sum = std::accumulate(cfg.counts.begin(), cfg.counts.end(),
                                                std::uint64_t{0});
      if (observed.size() <= sum) observed.resize(sum + 1, 0);
      ++observed[sum];
    }

    // Bin k = 0..K-1 plus a tail bin, expected counts from the Poisson pmf.
    const int cap = static_cast<int>(total + 6.0 * std::sqrt(total) + 5.0);
    std::vector<double> expected(static_cast<std::size_t>(cap) + 1, 0.0);
    double p = std::exp(-total);
    double cum = 0.0;
    for (int k = 0; k < cap; ++k) {
      if (k > 0) p *= total / k;
      expected[static_cast<std::size_t>(k)] = n * p;
      cum += p;
    }
    expected[static_cast<std::size_t>(cap)] = n * std::max(0.0, 1.0 - cum);

    double chi2 = 0.0;
    int dof = -1;
    for (std::size_t k = 0; k < expected.size(); ++k) {
      if (expected[k] < 5.0) continue;  // merge sparse cells into the skip set
      const double obs = k < observed.size() ? static_cast<double>(observed[k]) : 0.0;
      chi2 += (obs - expected[k]) * (obs - expected[k]) / expected[k];
      ++dof;
    }
    REQUIRE(dof > 1);
    const double p_value = boost::math::gamma_q(0.5 * dof, 0.5 * chi2);
    CHECK(p_value > 0.001);
  }
}
