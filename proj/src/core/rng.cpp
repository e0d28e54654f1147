#include "core/rng.hpp"

#include <cmath>

#include "core/errors.hpp"

namespace levykit {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream)
    : engine_(splitmix64(splitmix64(seed) ^ splitmix64(~stream))) {}

double RngStream::uniform01() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RngStream::normal() {
  const double u1 = uniform01();
  const double u2 = uniform01();
  const double r = std::sqrt(-2.0 * std::log1p(-u1));
  return r * std::cos(2.0 * M_PI * u2);
}

namespace {

// Hoermann's PTRS transformed-rejection sampler, valid for mean >= 10.
std::uint64_t poisson_ptrs(RngStream& rng, double mean) {
  const double slam = std::sqrt(mean);
  const double loglam = std::log(mean);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double v_r = 0.9277 - 3.6224 / (b - 2.0);
  for (;;) {
    const double u = rng.uniform01() - 0.5;
    const double v = rng.uniform01();
    const double us = 0.5 - std::abs(u);
    const double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= v_r) return static_cast<std::uint64_t>(kf);
    if (kf < 0.0 || (us < 0.013 && v > us)) continue;
    const double k = kf;
    if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
        k * loglam - mean - std::lgamma(k + 1.0)) {
      return static_cast<std::uint64_t>(kf);
    }
  }
}

}  // namespace

std::uint64_t RngStream::poisson(double mean) {
  require(mean >= 0.0, ErrorCode::invalid_argument, "poisson mean must be >= 0");
  if (mean == 0.0) return 0;
  if (mean < 30.0) {
    // Inversion by sequential search; exact at desk-scale intensities.
    const double target = uniform01();
    double p = std::exp(-mean);
    double cdf = p;
    std::uint64_t k = 0;
    while (target > cdf && k < 10000) {
      ++k;
      p *= mean / static_cast<double>(k);
      cdf += p;
    }
    return k;
  }
  return poisson_ptrs(*this, mean);
}

}  // namespace levykit
