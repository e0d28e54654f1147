#include "core/moments.hpp"

#include <cmath>

namespace levykit {

namespace {

constexpr int kMaxMomentOrder = 40;

// Stirling numbers of the second kind, S[k][j].
const std::vector<std::vector<double>>& stirling2_table() {
  static const std::vector<std::vector<double>> table = [] {
    std::vector<std::vector<double>> s(kMaxMomentOrder + 1);
    s[0] = {1.0};
    for (int k = 1; k <= kMaxMomentOrder; ++k) {
      s[k].assign(static_cast<std::size_t>(k) + 1, 0.0);
      for (int j = 1; j <= k; ++j) {
        const double carry = (j <= k - 1) ? s[k - 1][j] : 0.0;
        s[k][j] = j * carry + s[k - 1][j - 1];
      }
    }
    return s;
  }();
  return table;
}

}  // namespace

double gaussian_moment(int k) {
  require(k >= 0 && k <= kMaxMomentOrder, ErrorCode::unsupported,
          "gaussian_moment: order out of range");
  if (k % 2 == 1) return 0.0;
  double m = 1.0;
  for (int i = k - 1; i > 1; i -= 2) m *= i;
  return m;
}

double poisson_moment(int k, double rate) {
  require(k >= 0 && k <= kMaxMomentOrder, ErrorCode::unsupported,
          "poisson_moment: order out of range");
  const auto& s = stirling2_table();
  double sum = 0.0;
  double rpow = 1.0;
  for (int j = 0; j <= k; ++j) {
    if (j > 0) rpow *= rate;
    sum += s[k][j] * rpow;
  }
  return sum;
}

double expectation(const Poly& p, std::span<const VarLaw> laws) {
  require(static_cast<std::size_t>(p.nvars()) == laws.size(), ErrorCode::dimension_mismatch,
          "expectation: law count does not match variable count");
  double sum = 0.0;
  for (const auto& [e, c] : p.terms()) {
    double t = c;
    for (std::size_t i = 0; i < e.size() && t != 0.0; ++i) {
      if (e[i] == 0) continue;
      t *= laws[i].kind == VarLaw::Kind::gaussian ? gaussian_moment(e[i])
                                                  : poisson_moment(e[i], laws[i].rate);
    }
    sum += t;
  }
  return sum;
}

std::vector<VarLaw> chaos_laws(int r, std::span<const double> intensities) {
  std::vector<VarLaw> laws;
  laws.reserve(static_cast<std::size_t>(r) + intensities.size());
  for (int i = 0; i < r; ++i) laws.push_back({VarLaw::Kind::gaussian, 0.0});
  for (double v : intensities) laws.push_back({VarLaw::Kind::poisson, v});
  return laws;
}

IdMoments::IdMoments(const LevyTriplet& t, int max_order)
    : triplet_(t), max_order_(max_order) {}

double IdMoments::cumulant(const Exponents& alpha) const {
  int order = 0;
  for (auto a : alpha) order += a;
  if (order == 0) return 0.0;

  if (order == 1) {
    int i = 0;
    while (alpha[i] == 0) ++i;
    double k1 = triplet_.drift()(i);
    for (const auto& a : triplet_.jumps().atoms()) {
      if (a.point.norm() > 1.0) k1 += a.weight * a.point(i);
    }
    return k1;
  }

  double jump_part = 0.0;
  for (const auto& a : triplet_.jumps().atoms()) {
    double t = a.weight;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
      for (int k = 0; k < alpha[i]; ++k) t *= a.point(static_cast<Eigen::Index>(i));
    }
    jump_part += t;
  }
  if (order == 2) {
    int i = -1, j = -1;
    for (std::size_t v = 0; v < alpha.size(); ++v) {
      for (int k = 0; k < alpha[v]; ++k) {
        (i < 0 ? i : j) = static_cast<int>(v);
      }
    }
    return triplet_.gaussian_cov()(i, j) + jump_part;
  }
  return jump_part;
}

double IdMoments::moment(const Exponents& alpha) {
  require(alpha.size() == static_cast<std::size_t>(triplet_.dim()),
          ErrorCode::dimension_mismatch, "IdMoments: exponent arity mismatch");
  int order = 0;
  for (auto a : alpha) order += a;
  if (order == 0) return 1.0;
  require(order <= max_order_, ErrorCode::unsupported,
          "IdMoments: moment order " + std::to_string(order) + " exceeds cap " +
              std::to_string(max_order_));

  auto it = memo_.find(alpha);
  if (it != memo_.end()) return it->second;

  // m(alpha) = sum over the cumulant block containing one fixed unit of the
  // first active variable: m = sum_{beta <= sigma} prod binom(sigma, beta)
  // kappa(beta + e_i0) m(sigma - beta), with sigma = alpha - e_i0.
  std::size_t i0 = 0;
  while (alpha[i0] == 0) ++i0;
  Exponents sigma = alpha;
  --sigma[i0];

  double sum = 0.0;
  Exponents beta(alpha.size(), 0);
  // Iterate beta over the sub-multisets of sigma (odometer enumeration).
  for (;;) {
    double weight = 1.0;
    for (std::size_t v = 0; v < beta.size(); ++v) {
      // binom(sigma_v, beta_v)
      double b = 1.0;
      for (int x = 0; x < beta[v]; ++x) {
        b = b * (sigma[v] - x) / static_cast<double>(x + 1);
      }
      weight *= b;
    }
    Exponents kappa_idx = beta;
    ++kappa_idx[i0];
    Exponents rest(alpha.size());
    for (std::size_t v = 0; v < rest.size(); ++v) {
      rest[v] = static_cast<std::uint8_t>(sigma[v] - beta[v]);
    }
    sum += weight * cumulant(kappa_idx) * moment(rest);

    std::size_t v = 0;
    while (v < beta.size() && beta[v] == sigma[v]) {
      beta[v] = 0;
      ++v;
    }
    if (v == beta.size()) break;
    ++beta[v];
  }

  memo_[alpha] = sum;
  return sum;
}

}  // namespace levykit
