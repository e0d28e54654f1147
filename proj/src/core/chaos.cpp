#include "core/chaos.hpp"

#include <cmath>
#include <functional>

namespace levykit {

double hermite(int n, double x) {
  require(n >= 0, ErrorCode::invalid_argument, "hermite: negative degree");
  double prev = 1.0;
  if (n == 0) return prev;
  double cur = x;
  for (int k = 1; k < n; ++k) {
    const double next = x * cur - k * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double charlier(int n, double x, double a) {
  require(n >= 0, ErrorCode::invalid_argument, "charlier: negative degree");
  double prev = 1.0;
  if (n == 0) return prev;
  double cur = x - a;
  for (int k = 1; k < n; ++k) {
    const double next = (x - a - k) * cur - k * a * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

Poly hermite_poly(int n, int nvars, int var) {
  Poly prev = Poly::constant(nvars, 1.0);
  if (n == 0) return prev;
  const Poly x = Poly::variable(nvars, var);
  Poly cur = x;
  for (int k = 1; k < n; ++k) {
    Poly next = x * cur - prev * static_cast<double>(k);
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

Poly charlier_poly(int n, double a, int nvars, int var) {
  Poly prev = Poly::constant(nvars, 1.0);
  if (n == 0) return prev;
  const Poly x = Poly::variable(nvars, var);
  Poly cur = x - Poly::constant(nvars, a);
  for (int k = 1; k < n; ++k) {
    Poly next = (x - Poly::constant(nvars, a + k)) * cur - prev * (k * a);
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

std::vector<double> OrthoBasis::intensities() const {
  std::vector<double> v;
  v.reserve(ground.size());
  for (const auto& a : ground.atoms()) v.push_back(a.weight);
  return v;
}

OrthoBasis make_basis(const LevyTriplet& t) {
  return OrthoBasis{spectral_factor(t.gaussian_cov()), t.jumps()};
}

ChaosSample draw_chaos_sample(int r, std::span<const double> intensities, RngStream& rng) {
  ChaosSample s;
  s.g.reserve(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i) s.g.push_back(rng.normal());
  s.counts.reserve(intensities.size());
  for (double nu : intensities) s.counts.push_back(rng.poisson(nu));
  return s;
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

double multiset_factorial(const Exponents& e) {
  double f = 1.0;
  for (auto x : e) f *= factorial(x);
  return f;
}

void for_each_multiset(int nvars, int size,
                       const std::function<void(const Exponents&)>& fn) {
  Exponents e(static_cast<std::size_t>(nvars), 0);
  if (size == 0) {
    fn(e);
    return;
  }
  if (nvars == 0) return;
  // Odometer over exponent vectors summing to `size`.
  std::function<void(int, int)> rec = [&](int var, int remaining) {
    if (var == nvars - 1) {
      e[static_cast<std::size_t>(var)] = static_cast<std::uint8_t>(remaining);
      fn(e);
      e[static_cast<std::size_t>(var)] = 0;
      return;
    }
    for (int v = 0; v <= remaining; ++v) {
      e[static_cast<std::size_t>(var)] = static_cast<std::uint8_t>(v);
      rec(var + 1, remaining - v);
    }
    e[static_cast<std::size_t>(var)] = 0;
  };
  rec(0, size);
}

double SymTensor::norm_squared() const {
  const double nf = factorial(level());
  double s = 0.0;
  for (const auto& [key, c] : coeffs) {
    s += c * c * multiset_factorial(key.first) * multiset_factorial(key.second) / nf;
  }
  return s;
}

double SymTensor::max_abs_coefficient() const {
  double m = 0.0;
  for (const auto& [key, c] : coeffs) m = std::max(m, std::abs(c));
  return m;
}

SymTensor& SymTensor::operator*=(double c) {
  if (c == 0.0) {
    coeffs.clear();
    return *this;
  }
  for (auto& [key, v] : coeffs) v *= c;
  return *this;
}

double tensor_distance(const SymTensor& a, const SymTensor& b) {
  double d = 0.0;
  for (const auto& [key, c] : a.coeffs) {
    auto it = b.coeffs.find(key);
    const double other = it == b.coeffs.end() ? 0.0 : it->second;
    d = std::max(d, std::abs(c - other));
  }
  for (const auto& [key, c] : b.coeffs) {
    if (a.coeffs.find(key) == a.coeffs.end()) d = std::max(d, std::abs(c));
  }
  return d;
}

double multiple_integral(const SymTensor& tensor, const ChaosSample& sample,
                         std::span<const double> intensities) {
  require(sample.g.size() == static_cast<std::size_t>(tensor.r) &&
              sample.counts.size() == static_cast<std::size_t>(tensor.m) &&
              intensities.size() == static_cast<std::size_t>(tensor.m),
          ErrorCode::dimension_mismatch, "multiple_integral: sample shape mismatch");
  double sum = 0.0;
  for (const auto& [key, c] : tensor.coeffs) {
    double t = c;
    const auto& [alpha, beta] = key;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
      if (alpha[i] > 0) t *= hermite(alpha[i], sample.g[i]);
    }
    for (std::size_t k = 0; k < beta.size(); ++k) {
      if (beta[k] > 0) {
        t *= charlier(beta[k], static_cast<double>(sample.counts[k]), intensities[k]) /
             std::pow(intensities[k], 0.5 * beta[k]);
      }
    }
    sum += t;
  }
  return sum;
}

SymTensor derivative_tensor(const TestFunction& f, int j, int k,
                            std::span<const double> intensities) {
  require(intensities.size() == static_cast<std::size_t>(f.m), ErrorCode::dimension_mismatch,
          "derivative_tensor: intensity count mismatch");
  SymTensor out;
  out.gaussian_deg = j;
  out.poisson_deg = k;
  out.r = f.r;
  out.m = f.m;

  const auto laws = chaos_laws(f.r, intensities);
  const double jf = factorial(j);
  const double kf = factorial(k);

  for_each_multiset(f.m, k, [&](const Exponents& beta) {
    // Delta^beta f via iterated add-point differences.
    Poly diffed = f.poly;
    for (std::size_t v = 0; v < beta.size() && !diffed.is_zero(); ++v) {
      for (int rep = 0; rep < beta[v]; ++rep) {
        diffed = diffed.shift(f.r + static_cast<int>(v), 1.0) - diffed;
      }
    }
    if (diffed.is_zero() && k > 0) return;
    double nu_scale = 1.0;
    for (std::size_t v = 0; v < beta.size(); ++v) {
      nu_scale *= std::pow(intensities[v], 0.5 * beta[v]);
    }
    for_each_multiset(f.r, j, [&](const Exponents& alpha) {
      Poly d = diffed;
      for (std::size_t v = 0; v < alpha.size() && !d.is_zero(); ++v) {
        for (int rep = 0; rep < alpha[v]; ++rep) d = d.derivative(static_cast<int>(v));
      }
      if (d.is_zero()) return;
      const double val = expectation(d, laws);
      if (val == 0.0) return;
      const double c = (jf / multiset_factorial(alpha)) * (kf / multiset_factorial(beta)) *
                       val * nu_scale;
      out.coeffs.emplace(std::make_pair(alpha, beta), c);
    });
  });
  return out;
}

SymTensor gaussian_derivative_coeff(const TestFunction& f, int n,
                                    std::span<const double> intensities) {
  return derivative_tensor(f, n, 0, intensities);
}

SymTensor poisson_derivative_coeff(const TestFunction& f, int n,
                                   std::span<const double> intensities) {
  return derivative_tensor(f, 0, n, intensities);
}

std::vector<SymTensor> joint_coeff(const TestFunction& f, int n,
                                   std::span<const double> intensities) {
  std::vector<SymTensor> blocks;
  blocks.reserve(static_cast<std::size_t>(n) + 1);
  double binom = 1.0;
  for (int j = 0; j <= n; ++j) {
    SymTensor block = derivative_tensor(f, j, n - j, intensities);
    block *= binom;
    blocks.push_back(std::move(block));
    binom = binom * (n - j) / static_cast<double>(j + 1);
  }
  return blocks;
}

const SymTensor* ChaosCoefficients::block(int n, int j, int k) const {
  auto it = blocks.find(std::make_tuple(n, j, k));
  return it == blocks.end() ? nullptr : &it->second;
}

double ChaosCoefficients::isometric_norm_squared() const {
  double s = 0.0;
  for (const auto& [key, block] : blocks) {
    s += block.norm_squared() / factorial(std::get<0>(key));
  }
  return s;
}

double ChaosCoefficients::max_abs_coefficient() const {
  double m = 0.0;
  for (const auto& [key, block] : blocks) m = std::max(m, block.max_abs_coefficient());
  return m;
}

ChaosCoefficients expand(const TestFunction& f, int max_level,
                         std::span<const double> intensities) {
  ChaosCoefficients out;
  out.max_level = max_level;
  out.r = f.r;
  out.m = f.m;
  out.intensities.assign(intensities.begin(), intensities.end());
  for (int n = 0; n <= max_level; ++n) {
    auto blocks = joint_coeff(f, n, intensities);
    for (int j = 0; j <= n; ++j) {
      if (!blocks[static_cast<std::size_t>(j)].coeffs.empty()) {
        out.blocks.emplace(std::make_tuple(n, j, n - j),
                           std::move(blocks[static_cast<std::size_t>(j)]));
      }
    }
  }
  return out;
}

double reconstruct(const ChaosCoefficients& coeffs, const ChaosSample& sample) {
  double sum = 0.0;
  for (const auto& [key, block] : coeffs.blocks) {
    sum += multiple_integral(block, sample, coeffs.intensities) /
           factorial(std::get<0>(key));
  }
  return sum;
}

TestFunction reconstruct_polynomial(const ChaosCoefficients& coeffs) {
  TestFunction out(coeffs.r, coeffs.m);
  const int nvars = coeffs.r + coeffs.m;
  for (const auto& [key, block] : coeffs.blocks) {
    const double nf = factorial(std::get<0>(key));
    for (const auto& [mkey, c] : block.coeffs) {
      const auto& [alpha, beta] = mkey;
      double scale = c / nf;
      Poly term = Poly::constant(nvars, 1.0);
      for (std::size_t i = 0; i < alpha.size(); ++i) {
        if (alpha[i] > 0) term = term * hermite_poly(alpha[i], nvars, static_cast<int>(i));
      }
      for (std::size_t v = 0; v < beta.size(); ++v) {
        if (beta[v] > 0) {
          term = term * charlier_poly(beta[v], coeffs.intensities[v], nvars,
                                      coeffs.r + static_cast<int>(v));
          scale /= std::pow(coeffs.intensities[v], 0.5 * beta[v]);
        }
      }
      out.poly += term * scale;
    }
  }
  return out;
}

double l2_norm(const TestFunction& f, std::span<const double> intensities) {
  const auto laws = chaos_laws(f.r, intensities);
  return std::sqrt(std::max(0.0, expectation(f.poly * f.poly, laws)));
}

L2Error l2_error_exact(const TestFunction& f, const ChaosCoefficients& coeffs) {
  require(f.r == coeffs.r && f.m == coeffs.m, ErrorCode::dimension_mismatch,
          "l2_error_exact: context mismatch");
  const TestFunction rec = reconstruct_polynomial(coeffs);
  Poly diff = f.poly - rec.poly;
  const auto laws = chaos_laws(f.r, coeffs.intensities);
  L2Error err;
  err.mean_square = std::max(0.0, expectation(diff * diff, laws));
  err.residual = std::sqrt(err.mean_square);
  return err;
}

L2Error l2_error_mc(const TestFunction& f, const ChaosCoefficients& coeffs,
                    std::uint64_t seed, std::size_t n, int workers) {
  require(f.r == coeffs.r && f.m == coeffs.m, ErrorCode::dimension_mismatch,
          "l2_error_mc: context mismatch");
  require(workers >= 1 && n >= 1, ErrorCode::invalid_argument, "l2_error_mc: bad sizes");
  std::vector<double> sq(n, 0.0);
  const std::size_t w_count = static_cast<std::size_t>(workers);
  for (std::size_t w = 0; w < w_count; ++w) {
    const std::size_t lo = n * w / w_count;
    const std::size_t hi = n * (w + 1) / w_count;
    RngStream rng(seed, w);
    for (std::size_t i = lo; i < hi; ++i) {
      const ChaosSample s = draw_chaos_sample(f.r, coeffs.intensities, rng);
      const double v = f.evaluate(s.g, s.counts) - reconstruct(coeffs, s);
      sq[i] = v * v;
    }
  }
  const McEstimate est = mean_se(sq);
  L2Error err;
  err.mean_square = est.value;
  err.se = est.se;
  err.n = est.n;
  err.residual = std::sqrt(std::max(0.0, est.value));
  return err;
}

}  // namespace levykit
