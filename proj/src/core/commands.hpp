#pragma once

// Command implementations behind the CLI subcommands and the C API: each
// one runs a battery of checks and emits a schema-versioned JSON report
// whose "pass" field drives the process exit code.

#include "core/io.hpp"

namespace levykit {

// Convolution-power tables, e(nu) positivity and mass, the grouping
// identity, positivity inequalities, and the ID verdicts for the law of Z
// and of X + Z.
Json cmd_rosinski(const RunConfig& cfg);

// ID test for a lattice law given by (possibly unnormalised) coefficients.
Json cmd_idtest(const LatticeMeasure& law, const RunConfig& cfg);

// Skew solve plus the equivalence check for (T, lambda1, lambda2).
Json cmd_skew(const Eigen::MatrixXd& t_map, const LevyTriplet& t1, const LevyTriplet& t2,
              const RunConfig& cfg);

// Full verification battery on a scenario: chaos expansion on both sides,
// derivative commutation (n <= 3) and both diagrams.
Json cmd_verify(const Scenario& sc, const SpatialPoly& f, int max_level, EvalMode mode,
                const RunConfig& cfg);

// Diagram checks only.
Json cmd_diagram_check(const Scenario& sc, const SpatialPoly& f, int max_level,
                       EvalMode mode, const RunConfig& cfg);

bool report_pass(const Json& report);

}  // namespace levykit
