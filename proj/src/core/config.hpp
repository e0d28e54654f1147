#pragma once

#include <cstdint>

#include "core/errors.hpp"

namespace levykit {

struct RunConfig {
  std::uint64_t seed = 20240718ULL;
  std::size_t mc_samples = 100000;
  int horizon = 60;          // lattice horizon N
  double exact_tol = 1e-8;   // exact-path comparisons
  double mc_sigma = 4.0;     // Monte-Carlo acceptance band in standard errors
  int workers = 1;

  void validate() const {
    require(mc_samples >= 1, ErrorCode::invalid_argument, "config: mc_samples must be >= 1");
    require(horizon >= 0, ErrorCode::invalid_argument, "config: N must be >= 0");
    require(exact_tol > 0.0 && mc_sigma > 0.0, ErrorCode::invalid_argument,
            "config: tolerances must be positive");
    require(workers >= 1, ErrorCode::invalid_argument, "config: workers must be >= 1");
  }
};

enum class EvalMode { exact, mc };

}  // namespace levykit
