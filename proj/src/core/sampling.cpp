#include "core/sampling.hpp"

#include <cmath>
#include <thread>

#include "core/linalg.hpp"

namespace levykit {

McEstimate mean_se(const std::vector<double>& values) {
  McEstimate e;
  e.n = values.size();
  if (e.n == 0) return e;
  double sum = 0.0;
  for (double v : values) sum += v;
  e.value = sum / static_cast<double>(e.n);
  if (e.n > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - e.value) * (v - e.value);
    e.se = std::sqrt(ss / (static_cast<double>(e.n) * static_cast<double>(e.n - 1)));
  }
  return e;
}

SampleBatch sample_id(const LevyTriplet& t, std::uint64_t seed, std::size_t n,
                      int workers) {
  require(n >= 1, ErrorCode::invalid_argument, "sample_id: n must be >= 1");
  require(workers >= 1, ErrorCode::invalid_argument, "sample_id: workers must be >= 1");
  const int d = t.dim();
  SampleBatch batch;
  batch.dim = d;
  batch.count = n;
  batch.data.assign(n * static_cast<std::size_t>(d), 0.0);

  const Eigen::MatrixXd factor = spectral_factor(t.gaussian_cov());
  const int r = static_cast<int>(factor.cols());
  const auto& atoms = t.jumps().atoms();

  // Drift plus the small-jump compensator, shared by every sample.
  Eigen::VectorXd base = t.drift();
  for (const auto& a : atoms) {
    if (a.point.norm() <= 1.0) base -= a.weight * a.point;
  }

  const std::size_t w_count = static_cast<std::size_t>(workers);
  auto run_worker = [&](std::size_t w) {
    const std::size_t lo = n * w / w_count;
    const std::size_t hi = n * (w + 1) / w_count;
    if (lo >= hi) return;
    RngStream rng(seed, w);
    Eigen::VectorXd x(d);
    for (std::size_t i = lo; i < hi; ++i) {
      x = base;
      for (int j = 0; j < r; ++j) x += rng.normal() * factor.col(j);
      for (const auto& a : atoms) {
        const auto c = rng.poisson(a.weight);
        if (c > 0) x += static_cast<double>(c) * a.point;
      }
      for (int j = 0; j < d; ++j) batch.data[i * static_cast<std::size_t>(d) + j] = x(j);
    }
  };

  if (workers == 1) {
    run_worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(w_count);
    for (std::size_t w = 0; w < w_count; ++w) pool.emplace_back(run_worker, w);
    for (auto& th : pool) th.join();
  }
  return batch;
}

PoissonConfiguration sample_prm(const GroundSpace& g, std::uint64_t seed) {
  RngStream rng(seed, 0);
  return sample_prm(g, rng);
}

PoissonConfiguration sample_prm(const GroundSpace& g, RngStream& rng) {
  PoissonConfiguration cfg;
  cfg.counts.reserve(g.size());
  for (const auto& a : g.atoms()) cfg.counts.push_back(rng.poisson(a.weight));
  return cfg;
}

EmpiricalChar empirical_char(const SampleBatch& batch, const Eigen::VectorXd& u) {
  require(batch.count > 0, ErrorCode::precondition, "empirical_char: empty batch");
  require(u.size() == batch.dim, ErrorCode::dimension_mismatch,
          "empirical_char: u dimension mismatch");
  double sum_re = 0.0, sum_im = 0.0;
  for (std::size_t i = 0; i < batch.count; ++i) {
    const double phase = batch.row(i).dot(u);
    sum_re += std::cos(phase);
    sum_im += std::sin(phase);
  }
  const double n = static_cast<double>(batch.count);
  EmpiricalChar ec;
  ec.n = batch.count;
  ec.value = {sum_re / n, sum_im / n};
  if (batch.count > 1) {
    double ss = 0.0;
    for (std::size_t i = 0; i < batch.count; ++i) {
      const double phase = batch.row(i).dot(u);
      const double dre = std::cos(phase) - ec.value.real();
      const double dim_ = std::sin(phase) - ec.value.imag();
      ss += dre * dre + dim_ * dim_;
    }
    ec.se = std::sqrt(ss / (n * (n - 1.0)));
  }
  return ec;
}

}  // namespace levykit
