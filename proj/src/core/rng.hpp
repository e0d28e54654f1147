#pragma once

#include <cstdint>
#include <random>

namespace levykit {

std::uint64_t splitmix64(std::uint64_t x);

// One substream per (seed, stream) pair. Built on mt19937_64, whose output
// sequence is fixed by the standard, with hand-rolled variate generators on
// top, so batches are reproducible bit-for-bit across runs and platforms.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream);

  double uniform01();  // [0, 1), 53-bit resolution
  double normal();     // standard normal, Box-Muller
  std::uint64_t poisson(double mean);

 private:
  std::mt19937_64 engine_;
};

}  // namespace levykit
