#pragma once

// Numerical verification of the chaos-expansion identity, the derivative
// commutation identity and the second-quantisation diagrams on concrete
// scenarios.

#include <string>
#include <vector>

#include "core/config.hpp"
#include "core/scenario.hpp"
#include "core/secondq.hpp"

namespace levykit {

struct CheckResult {
  std::string name;
  bool pass = false;
  double value = 0.0;      // measured deviation or statistic
  double tolerance = 0.0;  // allowed bound
  std::string detail;
};

struct VerifyReport {
  std::string title;
  std::vector<CheckResult> checks;

  bool pass() const;
  void add(std::string name, bool ok, double value, double tolerance,
           std::string detail = {});
};

// Chaos-expansion identity on one side: L2 residual of
// f - sum_{n<=N} (1/n!) I_n(E D^n f), relative to |f|. The exact path must
// sit below 1e-6 whenever N >= deg f.
VerifyReport verify_slp(const OrthoBasis& basis, const TestFunction& f, int max_level,
                        EvalMode mode, const RunConfig& cfg);

// Derivative commutation: for each level n <= n_max the coefficient blocks
// of E D^n F_{P_T f} (side 1) must equal the contraction-pair pullback of
// E D^n F_f (side 2), blockwise within cfg.exact_tol, together with
// directional contractions against concrete (h; atom) tuples.
VerifyReport verify_commute(const Scenario& sc, const SpatialPoly& f, int n_max,
                            const RunConfig& cfg);

// The two second-quantisation diagrams:
//  (a) coefficients of P_T f on side 1 against the graded pair action on
//      the coefficients of f on side 2, blockwise;
//  (b) per side, Parseval for the Fock grading, agreement of direct and
//      reconstructed evaluations in L2, moment matching up to order 4
//      within cfg.mc_sigma standard errors, and a characteristic-function
//      sup-distance <= 0.01 over a 21-point grid.
VerifyReport verify_diagram(const Scenario& sc, const SpatialPoly& f, int max_level,
                            EvalMode mode, const RunConfig& cfg);

}  // namespace levykit
