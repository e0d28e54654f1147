#pragma once

// Wire formats. Triplets, lattice measures, scenarios and test functions
// are JSON; reports are schema-versioned JSON; sample batches are CSV.
// Readers validate every invariant and point at the offending field.

#include <json.hpp>

#include <string>

#include "core/chaos.hpp"
#include "core/config.hpp"
#include "core/lattice.hpp"
#include "core/polynomial.hpp"
#include "core/sampling.hpp"
#include "core/scenario.hpp"
#include "core/triplet.hpp"
#include "core/verify.hpp"

namespace levykit {

using Json = nlohmann::json;

Json triplet_to_json(const LevyTriplet& t);
LevyTriplet triplet_from_json(const Json& j);

Json lattice_to_json(const LatticeMeasure& m);
LatticeMeasure lattice_from_json(const Json& j);

Json matrix_to_json(const Eigen::MatrixXd& m);
Eigen::MatrixXd matrix_from_json(const Json& j);

// Polynomial test functions. kind "spatial": terms [{"exp": [...], "c": c}]
// over dim ambient coordinates. kind "chaos": terms
// [{"g": [...], "N": [...], "c": c}] over (r, m) chaos coordinates.
Json spatial_poly_to_json(const SpatialPoly& f);
SpatialPoly spatial_poly_from_json(const Json& j);
Json test_function_to_json(const TestFunction& f);
TestFunction test_function_from_json(const Json& j);

// Scenario file {"T": [[...]], "lambda1": <triplet>, "rho": <triplet>};
// lambda2 is derived.
Scenario scenario_from_json(const Json& j);
Json scenario_to_json(const Scenario& sc);

// Chaos coefficients, blocks keyed "n/j/k", multiset keys as sorted
// one-based index strings "g-indices|N-indices" (e.g. "1,1,3|2").
Json chaos_to_json(const ChaosCoefficients& c);
ChaosCoefficients chaos_from_json(const Json& j);

Json verdict_to_json(const IDVerdict& v);
Json check_to_json(const CheckResult& c);
Json verify_report_to_json(const VerifyReport& rep);
Json config_to_json(const RunConfig& cfg);

// Report skeleton: {"schema": 1, "command": ..., "config": ..., ...}.
Json make_report(const std::string& command, const RunConfig& cfg);

Json parse_json(const std::string& text);
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

std::string batch_to_csv(const SampleBatch& batch);

}  // namespace levykit
