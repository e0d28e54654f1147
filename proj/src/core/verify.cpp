#include "core/verify.hpp"

#include <cmath>
#include <complex>
#include <sstream>

namespace levykit {

namespace {

constexpr double kSlpRelTol = 1e-6;   // chaos-expansion relative residual
constexpr double kCfSupTol = 0.01;    // characteristic-function sup distance
constexpr int kCfGridPoints = 21;
constexpr double kCfGridHalfWidth = 2.0;

double scale_of(double a, double b) { return std::max({1.0, std::abs(a), std::abs(b)}); }

double block_scale(const SymTensor& a, const SymTensor& b) {
  return std::max({1.0, a.max_abs_coefficient(), b.max_abs_coefficient()});
}

std::string block_name(int n, int j, int k) {
  std::ostringstream os;
  os << "level " << n << " block (" << j << "," << k << ")";
  return os.str();
}

// sum over blocks at one level of the polarisation polynomial evaluated at
// (a, eps): the directional contraction against a^{(x)j} (x) eps^{(x)k}.
double directional_value(const std::vector<SymTensor>& blocks, const Eigen::VectorXd& a,
                         const Eigen::VectorXd& eps) {
  double sum = 0.0;
  for (const auto& block : blocks) {
    for (const auto& [key, c] : block.coeffs) {
      double t = c;
      const auto& [alpha, beta] = key;
      for (std::size_t i = 0; i < alpha.size(); ++i) {
        for (int rep = 0; rep < alpha[i]; ++rep) t *= a(static_cast<Eigen::Index>(i));
      }
      for (std::size_t v = 0; v < beta.size(); ++v) {
        for (int rep = 0; rep < beta[v]; ++rep) t *= eps(static_cast<Eigen::Index>(v));
      }
      sum += t;
    }
  }
  return sum;
}

struct PairedSamples {
  std::vector<double> direct;
  std::vector<double> reconstructed;
};

PairedSamples draw_paired(const TestFunction& f, const ChaosCoefficients& coeffs,
                          std::span<const double> intensities, std::uint64_t seed,
                          std::size_t n, int workers) {
  PairedSamples out;
  out.direct.resize(n);
  out.reconstructed.resize(n);
  const std::size_t w_count = static_cast<std::size_t>(workers);
  for (std::size_t w = 0; w < w_count; ++w) {
    const std::size_t lo = n * w / w_count;
    const std::size_t hi = n * (w + 1) / w_count;
    RngStream rng(seed, w);
    for (std::size_t i = lo; i < hi; ++i) {
      const ChaosSample s = draw_chaos_sample(f.r, intensities, rng);
      out.direct[i] = f.evaluate(s.g, s.counts);
      out.reconstructed[i] = reconstruct(coeffs, s);
    }
  }
  return out;
}

void check_moment_match(VerifyReport& rep, const std::string& prefix,
                        const PairedSamples& ps, const RunConfig& cfg) {
  for (int p = 1; p <= 4; ++p) {
    std::vector<double> diffs(ps.direct.size());
    double moment_scale = 0.0;
    for (std::size_t i = 0; i < ps.direct.size(); ++i) {
      const double md = std::pow(ps.direct[i], p);
      diffs[i] = md - std::pow(ps.reconstructed[i], p);
      moment_scale += std::abs(md);
    }
    moment_scale /= static_cast<double>(ps.direct.size());
    const McEstimate est = mean_se(diffs);
    // The floor absorbs systematic roundoff when the two evaluations agree
    // pointwise and the paired standard error collapses.
    const double tol = cfg.mc_sigma * est.se + 1e-9 * std::max(1.0, moment_scale);
    rep.add(prefix + " moment " + std::to_string(p), std::abs(est.value) <= tol,
            std::abs(est.value), tol,
            "paired moment difference at n = " + std::to_string(est.n));
  }
}

void check_cf_match(VerifyReport& rep, const std::string& prefix, const PairedSamples& ps) {
  double sup = 0.0;
  for (int i = 0; i < kCfGridPoints; ++i) {
    const double u = -kCfGridHalfWidth +
                     2.0 * kCfGridHalfWidth * i / static_cast<double>(kCfGridPoints - 1);
    std::complex<double> fd(0.0, 0.0), fr(0.0, 0.0);
    for (std::size_t s = 0; s < ps.direct.size(); ++s) {
      fd += std::complex<double>(std::cos(u * ps.direct[s]), std::sin(u * ps.direct[s]));
      fr += std::complex<double>(std::cos(u * ps.reconstructed[s]),
                                 std::sin(u * ps.reconstructed[s]));
    }
    const double n = static_cast<double>(ps.direct.size());
    sup = std::max(sup, std::abs(fd / n - fr / n));
  }
  rep.add(prefix + " characteristic function", sup <= kCfSupTol, sup, kCfSupTol,
          "sup distance over the 21-point grid");
}

}  // namespace

bool VerifyReport::pass() const {
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

void VerifyReport::add(std::string name, bool ok, double value, double tolerance,
                       std::string detail) {
  checks.push_back(CheckResult{std::move(name), ok, value, tolerance, std::move(detail)});
}

VerifyReport verify_slp(const OrthoBasis& basis, const TestFunction& f, int max_level,
                        EvalMode mode, const RunConfig& cfg) {
  VerifyReport rep;
  rep.title = "chaos expansion";
  const auto intensities = basis.intensities();
  require(f.r == basis.rank() && f.m == basis.atom_count(), ErrorCode::dimension_mismatch,
          "verify_slp: test function does not match basis");
  const ChaosCoefficients coeffs = expand(f, max_level, intensities);
  const double norm = l2_norm(f, intensities);

  if (mode == EvalMode::exact) {
    const L2Error err = l2_error_exact(f, coeffs);
    const double rel = err.residual / std::max(norm, 1e-300);
    rep.add("reconstruction residual", rel <= kSlpRelTol, rel, kSlpRelTol,
            "relative L2 residual, exact moment evaluation");
    const double parseval =
        std::abs(coeffs.isometric_norm_squared() - norm * norm);
    const double tol = cfg.exact_tol * scale_of(norm * norm, 0.0);
    if (max_level >= f.degree()) {
      rep.add("Parseval", parseval <= tol, parseval, tol,
              "sum (1/n!) |block_n|^2 against E f^2");
    }
  } else {
    const L2Error err = l2_error_mc(f, coeffs, cfg.seed, cfg.mc_samples, cfg.workers);
    const double tol =
        cfg.mc_sigma * err.se + kSlpRelTol * kSlpRelTol * norm * norm + 1e-12;
    rep.add("reconstruction residual (mc)", err.mean_square <= tol, err.mean_square, tol,
            "mean squared residual at n = " + std::to_string(err.n));
  }
  return rep;
}

VerifyReport verify_commute(const Scenario& sc, const SpatialPoly& f, int n_max,
                            const RunConfig& cfg) {
  VerifyReport rep;
  rep.title = "derivative commutation";
  const auto i1 = sc.basis1.intensities();
  const auto i2 = sc.basis2.intensities();

  const SpatialPoly ptf = apply_pt_exact(f, sc.t_map, sc.solution.rho);
  const TestFunction f1 = lift(ptf, sc.t1, sc.basis1);
  const TestFunction f2 = lift(f, sc.t2, sc.basis2);

  for (int n = 0; n <= n_max; ++n) {
    const auto blocks1 = joint_coeff(f1, n, i1);
    const auto blocks2 = joint_coeff(f2, n, i2);
    std::vector<SymTensor> pulled;
    pulled.reserve(blocks2.size());
    for (const auto& b : blocks2) pulled.push_back(apply_pair_block(sc.pair, b));
    for (int j = 0; j <= n; ++j) {
      const auto& lhs = blocks1[static_cast<std::size_t>(j)];
      const auto& rhs = pulled[static_cast<std::size_t>(j)];
      const double dist = tensor_distance(lhs, rhs);
      const double tol = cfg.exact_tol * block_scale(lhs, rhs);
      rep.add(block_name(n, j, n - j), dist <= tol, dist, tol,
              "side-1 coefficients against the pair pullback of side 2");
    }

    if (n == 0) continue;
    // Directional spot checks: repeated direction (h; y) with h random in
    // H_1 and y running over the side-1 atoms.
    RngStream rng(cfg.seed, 0xD1A6ULL + static_cast<std::uint64_t>(n));
    const int r1 = sc.basis1.rank();
    const int m1 = sc.basis1.atom_count();
    Eigen::VectorXd a(r1);
    for (int i = 0; i < r1; ++i) a(i) = rng.normal();
    const Eigen::MatrixXd b_gauss = sc.pair.gaussian_block.transpose();  // r2 x r1
    const Eigen::VectorXd a2 = b_gauss * a;
    for (int k = 0; k < std::max(m1, 1); ++k) {
      Eigen::VectorXd eps1 = Eigen::VectorXd::Zero(m1);
      Eigen::VectorXd eps2 = Eigen::VectorXd::Zero(sc.basis2.atom_count());
      std::string label = "no atom";
      if (m1 > 0) {
        eps1(k) = 1.0 / std::sqrt(i1[static_cast<std::size_t>(k)]);
        eps2 = sc.pair.poisson_block.row(k).transpose() /
               std::sqrt(i1[static_cast<std::size_t>(k)]);
        label = "atom " + std::to_string(k);
      }
      const double v1 = directional_value(joint_coeff(f1, n, i1), a, eps1);
      const double v2 = directional_value(joint_coeff(f2, n, i2), a2, eps2);
      const double tol = cfg.exact_tol * scale_of(v1, v2);
      rep.add("directional n=" + std::to_string(n) + ", " + label,
              std::abs(v1 - v2) <= tol, std::abs(v1 - v2), tol,
              "repeated-direction contraction of both sides");
      if (m1 == 0) break;
    }
  }
  return rep;
}

VerifyReport verify_diagram(const Scenario& sc, const SpatialPoly& f, int max_level,
                            EvalMode mode, const RunConfig& cfg) {
  VerifyReport rep;
  rep.title = "second-quantisation diagrams";
  const auto i1 = sc.basis1.intensities();
  const auto i2 = sc.basis2.intensities();

  // Side 2 route: expand f, pull the coefficients through the pair.
  const TestFunction f2 = lift(f, sc.t2, sc.basis2);
  const ChaosCoefficients c2 = expand(f2, max_level, i2);
  const ChaosCoefficients pulled = gamma_apply(sc.pair, c2, i1);

  // Side 1 route: transition operator first, then expand.
  double pt_se = 0.0;
  SpatialPoly ptf;
  if (mode == EvalMode::exact) {
    ptf = apply_pt_exact(f, sc.t_map, sc.solution.rho);
  } else {
    ApplyPtMc mc = apply_pt_mc(f, sc.t_map, sc.solution.rho, cfg.seed ^ 0x9E37ULL,
                               cfg.mc_samples, cfg.workers);
    ptf = std::move(mc.value);
    pt_se = mc.max_coeff_se;
  }
  const TestFunction f1 = lift(ptf, sc.t1, sc.basis1);
  const ChaosCoefficients c1 = expand(f1, max_level, i1);

  // (a) first diagram, blockwise over the union of keys.
  {
    double dist = 0.0;
    double scale = std::max({1.0, c1.max_abs_coefficient(), pulled.max_abs_coefficient()});
    const SymTensor empty1{0, 0, c1.r, c1.m, {}};
    for (const auto& [key, block] : c1.blocks) {
      const SymTensor* other = pulled.block(std::get<0>(key), std::get<1>(key),
                                            std::get<2>(key));
      dist = std::max(dist, tensor_distance(block, other ? *other : empty1));
    }
    for (const auto& [key, block] : pulled.blocks) {
      if (!c1.block(std::get<0>(key), std::get<1>(key), std::get<2>(key))) {
        dist = std::max(dist, block.max_abs_coefficient());
      }
    }
    double tol = cfg.exact_tol * scale;
    std::string detail = "coefficients of P_T f against the graded pair action";
    if (mode == EvalMode::mc) {
      // Lifting mixes the MC coefficient noise across blocks; the degree-
      // bounded amplification is covered by a generous constant.
      tol += cfg.mc_sigma * pt_se * 32.0;
      detail += " (MC transition operator, se-widened tolerance)";
    }
    rep.add("first diagram blocks", dist <= tol, dist, tol, detail);
  }

  // (b) second diagram, per side: Fock-grading Parseval, reconstruction in
  // L2, moment matching and characteristic functions on sampled data.
  struct Side {
    std::string name;
    const TestFunction* fn;
    const ChaosCoefficients* coeffs;
    const std::vector<double>* intensities;
    std::uint64_t stream;
  };
  const Side sides[2] = {{"side 2", &f2, &c2, &i2, 2}, {"side 1", &f1, &c1, &i1, 1}};
  for (const auto& side : sides) {
    const double norm = l2_norm(*side.fn, *side.intensities);
    if (mode == EvalMode::exact && max_level >= side.fn->degree()) {
      const double parseval =
          std::abs(side.coeffs->isometric_norm_squared() - norm * norm);
      const double tol = cfg.exact_tol * scale_of(norm * norm, 0.0);
      rep.add(side.name + " Parseval", parseval <= tol, parseval, tol,
              "Fock grading norm against E f^2");
      const L2Error err = l2_error_exact(*side.fn, *side.coeffs);
      const double rel = err.residual / std::max(norm, 1e-300);
      rep.add(side.name + " reconstruction", rel <= kSlpRelTol, rel, kSlpRelTol,
              "relative L2 residual of the reconstruction");
    }
    const PairedSamples ps =
        draw_paired(*side.fn, *side.coeffs, *side.intensities,
                    cfg.seed + side.stream, cfg.mc_samples, cfg.workers);
    check_moment_match(rep, side.name, ps, cfg);
    check_cf_match(rep, side.name, ps);
  }
  return rep;
}

}  // namespace levykit
