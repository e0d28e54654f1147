#include "core/secondq.hpp"

#include <cmath>

#include "core/linalg.hpp"
#include "core/sampling.hpp"

namespace levykit {

Eigen::MatrixXd restriction_contraction(const Eigen::MatrixXd& t_map,
                                        const Eigen::MatrixXd& q1,
                                        const Eigen::MatrixXd& q2) {
  require(t_map.cols() == q1.rows() && t_map.rows() == q2.rows(),
          ErrorCode::dimension_mismatch, "restriction_contraction: dimension mismatch");
  Eigen::MatrixXd gap = q2 - t_map * q1 * t_map.transpose();
  gap = 0.5 * (gap + gap.transpose());
  const double lam = min_eigenvalue(gap);
  if (lam < -kPsdTol) {
    fail(ErrorCode::not_skew_gaussian,
         "Gaussian skew condition fails: Q2 - T Q1 T^t has eigenvalue " +
             std::to_string(lam));
  }
  const Eigen::MatrixXd r1 = spectral_factor(q1);
  const Eigen::MatrixXd r2 = spectral_factor(q2);
  const Eigen::MatrixXd b = pseudo_inverse(r2) * t_map * r1;  // r2 x r1
  const double norm = operator_norm(b);
  require(norm <= 1.0 + kNormSlack, ErrorCode::not_skew_gaussian,
          "restriction block has operator norm " + std::to_string(norm));
  return b.transpose();
}

Eigen::MatrixXd poisson_composition(const Eigen::MatrixXd& t_map, const GroundSpace& g1,
                                    const GroundSpace& g2) {
  require(t_map.cols() == g1.dim() && t_map.rows() == g2.dim(),
          ErrorCode::dimension_mismatch, "poisson_composition: dimension mismatch");
  const int m1 = static_cast<int>(g1.size());
  const int m2 = static_cast<int>(g2.size());
  Eigen::MatrixXd block = Eigen::MatrixXd::Zero(m1, m2);
  Eigen::VectorXd pushed = Eigen::VectorXd::Zero(m2);  // aggregated image intensity
  for (int k = 0; k < m1; ++k) {
    const auto& atom = g1.atoms()[static_cast<std::size_t>(k)];
    Eigen::VectorXd y = t_map * atom.point;
    if (y.lpNorm<Eigen::Infinity>() <= kSnapTol) continue;  // atom killed by T
    const auto l = g2.find(y);
    if (!l) {
      fail(ErrorCode::not_skew_jump,
           "image atom of intensity " + std::to_string(atom.weight) +
               " has no matching atom in nu2");
    }
    const double nu2 = g2.atoms()[*l].weight;
    block(k, static_cast<Eigen::Index>(*l)) = std::sqrt(atom.weight / nu2);
    pushed(static_cast<Eigen::Index>(*l)) += atom.weight;
  }
  for (int l = 0; l < m2; ++l) {
    const double nu2 = g2.atoms()[static_cast<std::size_t>(l)].weight;
    require(pushed(l) <= nu2 + kWeightTol, ErrorCode::not_skew_jump,
            "pushed intensity " + std::to_string(pushed(l)) +
                " exceeds nu2 intensity " + std::to_string(nu2));
  }
  const double norm = operator_norm(block);
  require(norm <= 1.0 + kNormSlack, ErrorCode::not_skew_jump,
          "composition block has operator norm " + std::to_string(norm));
  return block;
}

namespace {

// Linear images of the source coordinates under a block matrix, as
// polynomials over the joint target context (r1 g-vars then m1 N-vars).
std::vector<Poly> coordinate_images(const Eigen::MatrixXd& block, int out_vars,
                                    int offset) {
  std::vector<Poly> images;
  images.reserve(static_cast<std::size_t>(block.cols()));
  for (Eigen::Index w = 0; w < block.cols(); ++w) {
    Poly img(out_vars);
    for (Eigen::Index v = 0; v < block.rows(); ++v) {
      if (block(v, w) != 0.0) {
        img += Poly::variable(out_vars, offset + static_cast<int>(v)) * block(v, w);
      }
    }
    images.push_back(std::move(img));
  }
  return images;
}

}  // namespace

SymTensor apply_pair_block(const ContractionPair& pair, const SymTensor& block) {
  require(static_cast<int>(pair.gaussian_block.cols()) == block.r &&
              static_cast<int>(pair.poisson_block.cols()) == block.m,
          ErrorCode::dimension_mismatch, "apply_pair_block: dimensions incompatible");
  const int r1 = static_cast<int>(pair.gaussian_block.rows());
  const int m1 = static_cast<int>(pair.poisson_block.rows());
  const int out_vars = r1 + m1;

  // A block in multiset coordinates is the polarisation polynomial
  // q(z) = sum c_{alpha,beta} z_g^alpha z_N^beta; the tensor-power action of
  // the pair is the substitution z_w <- sum_v B[v,w] z'_v on each family.
  std::vector<Poly> images = coordinate_images(pair.gaussian_block, out_vars, 0);
  {
    auto poisson_images = coordinate_images(pair.poisson_block, out_vars, r1);
    images.insert(images.end(), poisson_images.begin(), poisson_images.end());
  }

  Poly q(block.r + block.m);
  for (const auto& [mkey, c] : block.coeffs) {
    Exponents e(static_cast<std::size_t>(block.r + block.m), 0);
    for (std::size_t i = 0; i < mkey.first.size(); ++i) e[i] = mkey.first[i];
    for (std::size_t v = 0; v < mkey.second.size(); ++v) {
      e[static_cast<std::size_t>(block.r) + v] = mkey.second[v];
    }
    q.add_term(e, c);
  }
  Poly mapped = q.compose(images);

  SymTensor dst;
  dst.gaussian_deg = block.gaussian_deg;
  dst.poisson_deg = block.poisson_deg;
  dst.r = r1;
  dst.m = m1;
  for (const auto& [e, c] : mapped.terms()) {
    Exponents alpha(e.begin(), e.begin() + r1);
    Exponents beta(e.begin() + r1, e.end());
    dst.coeffs.emplace(std::make_pair(std::move(alpha), std::move(beta)), c);
  }
  return dst;
}

ChaosCoefficients gamma_apply(const ContractionPair& pair, const ChaosCoefficients& coeffs,
                              std::span<const double> target_intensities) {
  require(static_cast<int>(pair.gaussian_block.cols()) == coeffs.r &&
              static_cast<int>(pair.poisson_block.cols()) == coeffs.m,
          ErrorCode::dimension_mismatch, "gamma_apply: block dimensions incompatible");
  const int r1 = static_cast<int>(pair.gaussian_block.rows());
  const int m1 = static_cast<int>(pair.poisson_block.rows());
  require(target_intensities.empty() ||
              target_intensities.size() == static_cast<std::size_t>(m1),
          ErrorCode::dimension_mismatch, "gamma_apply: target intensity count mismatch");

  ChaosCoefficients out;
  out.max_level = coeffs.max_level;
  out.r = r1;
  out.m = m1;
  out.intensities.assign(target_intensities.begin(), target_intensities.end());

  for (const auto& [key, block] : coeffs.blocks) {
    SymTensor dst = apply_pair_block(pair, block);
    if (!dst.coeffs.empty()) out.blocks.emplace(key, std::move(dst));
  }
  return out;
}

namespace {

// f(Tx + Y) expanded over the joint context of d1 x-variables followed by
// d2 Y-variables.
Poly substitute_shifted(const SpatialPoly& f, const Eigen::MatrixXd& t_map) {
  const int d1 = static_cast<int>(t_map.cols());
  const int d2 = static_cast<int>(t_map.rows());
  require(f.dim == d2, ErrorCode::dimension_mismatch,
          "apply_PT: f dimension does not match T rows");
  std::vector<Poly> images;
  images.reserve(static_cast<std::size_t>(d2));
  for (int j = 0; j < d2; ++j) {
    Poly img(d1 + d2);
    for (int i = 0; i < d1; ++i) {
      if (t_map(j, i) != 0.0) img += Poly::variable(d1 + d2, i) * t_map(j, i);
    }
    img += Poly::variable(d1 + d2, d1 + j);
    images.push_back(std::move(img));
  }
  return f.poly.compose(images);
}

}  // namespace

SpatialPoly apply_pt_exact(const SpatialPoly& f, const Eigen::MatrixXd& t_map,
                           const LevyTriplet& rho) {
  const int d1 = static_cast<int>(t_map.cols());
  const int d2 = static_cast<int>(t_map.rows());
  require(rho.dim() == d2, ErrorCode::dimension_mismatch,
          "apply_PT: rho dimension does not match T rows");
  const Poly joint = substitute_shifted(f, t_map);
  IdMoments moments(rho);

  SpatialPoly out(d1);
  for (const auto& [e, c] : joint.terms()) {
    Exponents xpart(e.begin(), e.begin() + d1);
    Exponents ypart(e.begin() + d1, e.end());
    out.poly.add_term(xpart, c * moments.moment(ypart));
  }
  return out;
}

ApplyPtMc apply_pt_mc(const SpatialPoly& f, const Eigen::MatrixXd& t_map,
                      const LevyTriplet& rho, std::uint64_t seed, std::size_t n,
                      int workers) {
  const int d1 = static_cast<int>(t_map.cols());
  const int d2 = static_cast<int>(t_map.rows());
  require(rho.dim() == d2, ErrorCode::dimension_mismatch,
          "apply_PT: rho dimension does not match T rows");
  const Poly joint = substitute_shifted(f, t_map);
  const SampleBatch batch = sample_id(rho, seed, n, workers);

  // Per draw, collapse the Y-part of every term numerically and accumulate
  // the coefficient vector of the resulting polynomial in x.
  std::map<Exponents, std::pair<double, double>> acc;  // sum, sum of squares
  for (std::size_t s = 0; s < n; ++s) {
    const auto y = batch.row(s);
    std::map<Exponents, double> draw;
    for (const auto& [e, c] : joint.terms()) {
      double v = c;
      for (int j = 0; j < d2; ++j) {
        for (int rep = 0; rep < e[static_cast<std::size_t>(d1 + j)]; ++rep) v *= y(j);
      }
      Exponents xpart(e.begin(), e.begin() + d1);
      draw[xpart] += v;
    }
    for (const auto& [e, v] : draw) {
      auto& slot = acc[e];
      slot.first += v;
      slot.second += v * v;
    }
  }

  ApplyPtMc result;
  result.n = n;
  result.value = SpatialPoly(d1);
  const double dn = static_cast<double>(n);
  for (const auto& [e, sums] : acc) {
    const double mean = sums.first / dn;
    result.value.poly.add_term(e, mean);
    if (n > 1) {
      const double var = std::max(0.0, (sums.second - dn * mean * mean) / (dn - 1.0));
      result.max_coeff_se = std::max(result.max_coeff_se, std::sqrt(var / dn));
    }
  }
  return result;
}

TestFunction lift(const SpatialPoly& f, const LevyTriplet& t, const OrthoBasis& basis) {
  require(f.dim == t.dim(), ErrorCode::dimension_mismatch,
          "lift: f dimension does not match law dimension");
  const int r = basis.rank();
  const int m = basis.atom_count();
  const int nvars = r + m;

  // x_j = xi_j + sum_i R[j,i] g_i + sum_k (N_k - c_k) y_k[j]
  std::vector<Poly> images;
  images.reserve(static_cast<std::size_t>(f.dim));
  for (int j = 0; j < f.dim; ++j) {
    double constant = t.drift()(j);
    Poly img(nvars);
    for (int i = 0; i < r; ++i) {
      if (basis.gaussian_factor(j, i) != 0.0) {
        img += Poly::variable(nvars, i) * basis.gaussian_factor(j, i);
      }
    }
    for (int k = 0; k < m; ++k) {
      const auto& atom = basis.ground.atoms()[static_cast<std::size_t>(k)];
      if (atom.point(j) != 0.0) {
        img += Poly::variable(nvars, r + k) * atom.point(j);
        if (atom.point.norm() <= 1.0) constant -= atom.weight * atom.point(j);
      }
    }
    img += Poly::constant(nvars, constant);
    images.push_back(std::move(img));
  }
  return TestFunction(r, m, f.poly.compose(images));
}

}  // namespace levykit
