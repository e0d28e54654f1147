#include <doctest.h>

#include "core/commands.hpp"
#include "core/io.hpp"
#include "core/secondq.hpp"
#include "test_util.hpp"

using namespace levykit;
using namespace levykit::testing;

namespace {

const char* kTripletJson = R"({
  "dim": 2,
  "drift": [0.5, -1.0],
  "cov": [[1.0, 0.25], [0.25, 2.0]],
  "atoms": [{"x": [2.0, 0.0], "w": 1.5}, {"x": [0.0, 0.5], "w": 0.75}]
})";

}  // namespace

TEST_CASE("triplet wire format") {
  const LevyTriplet t = triplet_from_json(parse_json(kTripletJson));
  CHECK(t.dim() == 2);
  CHECK(t.drift()(0) == 0.5);
  CHECK(t.jumps().size() == 2);

  const LevyTriplet back = triplet_from_json(triplet_to_json(t));
  CHECK(triplet_distance(t, back) == 0.0);

  SUBCASE("field diagnostics point at the offender") {
    auto expect_message = [](const char* json, const char* needle) {
      try {
        triplet_from_json(parse_json(json));
        FAIL_CHECK("expected a parse error for ", json);
      } catch (const Error& e) {
        CHECK(std::string(e.what()).find(needle) != std::string::npos);
      }
    };
    expect_message(R"({"drift": [0]})", "dim");
    expect_message(R"({"dim": 1, "drift": [0, 1], "cov": [[1]], "atoms": []})",
                   "triplet.drift");
    expect_message(R"({"dim": 1, "drift": [0], "cov": [[1, 0]], "atoms": []})",
                   "triplet.cov");
    expect_message(
        R"({"dim": 1, "drift": [0], "cov": [[1]], "atoms": [{"x": [1], "w": -2}]})",
        "atoms[0].w");
    expect_message(
        R"({"dim": 1, "drift": [0], "cov": [[1]], "atoms": [{"x": [0], "w": 1}]})",
        "origin");
    expect_message(R"({"dim": 1, "drift": [0], "cov": [[-1]], "atoms": []})",
                   "semidefinite");
  }
}

TEST_CASE("lattice wire format") {
  LatticeMeasure m;
  m.set(1, Rational(2));
  m.set(3, Rational(-1, 3));
  const Json j = lattice_to_json(m);
  CHECK(j["coeffs"]["1"] == "2/1");
  CHECK(j["coeffs"]["3"] == "-1/3");
  CHECK(lattice_from_json(j) == m);

  CHECK_THROWS_AS(lattice_from_json(parse_json(R"({"coeffs": {"x": "1/2"}})")), Error);
  CHECK_THROWS_AS(lattice_from_json(parse_json(R"({"coeffs": {"1": 0.5}})")), Error);
}

TEST_CASE("polynomial wire formats") {
  SpatialPoly f(2);
  f.poly.add_term(Exponents{2, 1}, -0.75);
  f.poly.add_term(Exponents{0, 0}, 1.0);
  const SpatialPoly f2 = spatial_poly_from_json(spatial_poly_to_json(f));
  CHECK(f2.dim == 2);
  CHECK((f2.poly - f.poly).is_zero());

  TestFunction g(1, 2);
  g.poly.add_term(Exponents{1, 0, 2}, 0.5);
  const TestFunction g2 = test_function_from_json(test_function_to_json(g));
  CHECK(g2.r == 1);
  CHECK(g2.m == 2);
  CHECK((g2.poly - g.poly).is_zero());
}

TEST_CASE("chaos coefficient serialization uses sorted index keys") {
  RngStream rng(80, 0);
  const std::vector<double> nu = {1.0, 0.5};
  TestFunction f(2, 2);
  f.poly.add_term(Exponents{1, 1, 0, 1}, 0.8);
  f.poly.add_term(Exponents{0, 2, 1, 0}, -0.4);
  const ChaosCoefficients coeffs = expand(f, f.degree(), nu);
  const Json j = chaos_to_json(coeffs);

  // Every block key is "n/j/k" and every multiset key is "g-part|N-part".
  for (const auto& [bkey, entries] : j["blocks"].items()) {
    int n, jj, kk;
    REQUIRE(std::sscanf(bkey.c_str(), "%d/%d/%d", &n, &jj, &kk) == 3);
    CHECK(jj + kk == n);
    for (const auto& [mkey, value] : entries.items()) {
      CHECK(mkey.find('|') != std::string::npos);
    }
  }

  const ChaosCoefficients back = chaos_from_json(j);
  REQUIRE(back.blocks.size() == coeffs.blocks.size());
  for (const auto& [key, block] : coeffs.blocks) {
    CHECK(tensor_distance(block, back.blocks.at(key)) == 0.0);
  }
}

TEST_CASE("scenario files build the derived law") {
  const Json j = parse_json(R"({
    "T": [[0.5]],
    "lambda1": {"dim": 1, "drift": [0.5], "cov": [[1.0]],
                "atoms": [{"x": [2.0], "w": 1.0}]},
    "rho": {"dim": 1, "drift": [-0.125], "cov": [[0.75]],
            "atoms": [{"x": [3.0], "w": 0.5}]}
  })");
  const Scenario sc = scenario_from_json(j);
  CHECK(sc.t2.gaussian_cov()(0, 0) == doctest::Approx(1.0));
  CHECK(sc.t2.jumps().size() == 2);
  // Round trip through scenario_to_json rebuilds the same data.
  const Scenario back = scenario_from_json(scenario_to_json(sc));
  CHECK(triplet_distance(back.t2, sc.t2) < 1e-12);
}

TEST_CASE("reports carry the schema version and reproduce bit-identically") {
  RunConfig cfg;
  cfg.horizon = 40;
  const Json a = cmd_rosinski(cfg);
  const Json b = cmd_rosinski(cfg);
  CHECK(a.at("schema") == 1);
  CHECK(a.at("pass") == true);
  CHECK(a.dump() == b.dump());

  const Json skew = cmd_skew(Eigen::MatrixXd::Identity(1, 1),
                             LevyTriplet::gaussian(Eigen::MatrixXd::Constant(1, 1, 2.0)),
                             LevyTriplet::gaussian(Eigen::MatrixXd::Constant(1, 1, 1.0)),
                             cfg);
  CHECK(skew.at("pass") == false);
  CHECK(skew.at("solve").at("error") == "NotSkewGaussian");
}

TEST_CASE("csv batches have one row per sample") {
  SampleBatch batch{2, 2, {1.0, -2.0, 0.5, 0.25}};
  const std::string csv = batch_to_csv(batch);
  CHECK(csv == "1,-2\n0.5,0.25\n");
}
