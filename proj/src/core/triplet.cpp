#include "core/triplet.hpp"

#include <algorithm>
#include <cmath>

namespace levykit {

namespace {

bool lex_less(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a(i) < b(i)) return true;
    if (a(i) > b(i)) return false;
  }
  return false;
}

bool snapped_equal(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return (a - b).lpNorm<Eigen::Infinity>() <= kSnapTol;
}

bool is_small_jump(const Eigen::VectorXd& x) { return x.norm() <= 1.0; }

}  // namespace

AtomicMeasure::AtomicMeasure(int dim, std::vector<Atom> atoms) : dim_(dim) {
  std::vector<Atom> merged;
  for (auto& a : atoms) {
    require(a.point.size() == dim_, ErrorCode::dimension_mismatch,
            "atom dimension does not match measure dimension");
    require(a.weight > 0.0, ErrorCode::invalid_argument,
            "atom weights must be strictly positive");
    require(a.point.lpNorm<Eigen::Infinity>() > kSnapTol, ErrorCode::invalid_argument,
            "Levy measures carry no atom at the origin");
    bool absorbed = false;
    for (auto& rep : merged) {
      if (snapped_equal(rep.point, a.point)) {
        rep.weight += a.weight;
        absorbed = true;
        break;
      }
    }
    if (!absorbed) merged.push_back(std::move(a));
  }
  std::sort(merged.begin(), merged.end(),
            [](const Atom& a, const Atom& b) { return lex_less(a.point, b.point); });
  atoms_ = std::move(merged);
}

double AtomicMeasure::total_intensity() const {
  double s = 0.0;
  for (const auto& a : atoms_) s += a.weight;
  return s;
}

std::optional<std::size_t> AtomicMeasure::find(const Eigen::VectorXd& point) const {
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (snapped_equal(atoms_[i].point, point)) return i;
  }
  return std::nullopt;
}

LevyTriplet::LevyTriplet(Eigen::VectorXd drift, Eigen::MatrixXd gaussian_cov,
                         AtomicMeasure jumps)
    : drift_(std::move(drift)), gaussian_cov_(std::move(gaussian_cov)),
      jumps_(std::move(jumps)) {
  const auto d = drift_.size();
  require(gaussian_cov_.rows() == d && gaussian_cov_.cols() == d,
          ErrorCode::dimension_mismatch, "gaussian_cov must be d x d");
  require(jumps_.dim() == d, ErrorCode::dimension_mismatch,
          "jump measure dimension does not match drift");
  require((gaussian_cov_ - gaussian_cov_.transpose()).lpNorm<Eigen::Infinity>() <= kSymTol,
          ErrorCode::invalid_argument, "gaussian_cov must be symmetric");
  gaussian_cov_ = 0.5 * (gaussian_cov_ + gaussian_cov_.transpose());
  const double lam = min_eigenvalue(gaussian_cov_);
  require(lam >= -kPsdTol, ErrorCode::invalid_argument,
          "gaussian_cov must be positive semidefinite (min eigenvalue " +
              std::to_string(lam) + ")");
  if (lam < 0.0) gaussian_cov_ = psd_project(gaussian_cov_);
}

LevyTriplet LevyTriplet::dirac(const Eigen::VectorXd& point) {
  const int d = static_cast<int>(point.size());
  return LevyTriplet(point, Eigen::MatrixXd::Zero(d, d), AtomicMeasure(d));
}

LevyTriplet LevyTriplet::gaussian(const Eigen::MatrixXd& cov) {
  const int d = static_cast<int>(cov.rows());
  return LevyTriplet(Eigen::VectorXd::Zero(d), cov, AtomicMeasure(d));
}

LevyTriplet LevyTriplet::zero(int dim) {
  return LevyTriplet(Eigen::VectorXd::Zero(dim), Eigen::MatrixXd::Zero(dim, dim),
                     AtomicMeasure(dim));
}

LevyTriplet LevyTriplet::gaussian_part() const {
  return LevyTriplet(Eigen::VectorXd::Zero(dim()), gaussian_cov_, AtomicMeasure(dim()));
}

LevyTriplet LevyTriplet::jump_part() const {
  return LevyTriplet(drift_, Eigen::MatrixXd::Zero(dim(), dim()), jumps_);
}

std::complex<double> char_exponent(const LevyTriplet& t, const Eigen::VectorXd& u) {
  require(u.size() == t.dim(), ErrorCode::dimension_mismatch,
          "char_exponent: u dimension mismatch");
  std::complex<double> psi(0.0, t.drift().dot(u));
  psi -= 0.5 * u.dot(t.gaussian_cov() * u);
  for (const auto& a : t.jumps().atoms()) {
    const double xu = a.point.dot(u);
    std::complex<double> term = std::exp(std::complex<double>(0.0, xu)) - 1.0;
    if (is_small_jump(a.point)) term -= std::complex<double>(0.0, xu);
    psi += a.weight * term;
  }
  return psi;
}

LevyTriplet convolve(const LevyTriplet& a, const LevyTriplet& b) {
  require(a.dim() == b.dim(), ErrorCode::dimension_mismatch,
          "convolve: dimension mismatch");
  std::vector<Atom> atoms = a.jumps().atoms();
  const auto& more = b.jumps().atoms();
  atoms.insert(atoms.end(), more.begin(), more.end());
  return LevyTriplet(a.drift() + b.drift(), a.gaussian_cov() + b.gaussian_cov(),
                     AtomicMeasure(a.dim(), std::move(atoms)));
}

LevyTriplet pushforward(const Eigen::MatrixXd& t_map, const LevyTriplet& t) {
  require(t_map.cols() == t.dim(), ErrorCode::dimension_mismatch,
          "pushforward: matrix has " + std::to_string(t_map.cols()) +
              " columns, triplet dimension is " + std::to_string(t.dim()));
  const int d2 = static_cast<int>(t_map.rows());

  Eigen::VectorXd drift = t_map * t.drift();
  std::vector<Atom> images;
  for (const auto& a : t.jumps().atoms()) {
    Eigen::VectorXd y = t_map * a.point;
    const double small_before = is_small_jump(a.point) ? 1.0 : 0.0;
    const double small_after = is_small_jump(y) ? 1.0 : 0.0;
    drift += a.weight * (small_after - small_before) * y;
    if (y.lpNorm<Eigen::Infinity>() <= kSnapTol) continue;  // image at the origin
    images.push_back(Atom{std::move(y), a.weight});
  }
  Eigen::MatrixXd cov = t_map * t.gaussian_cov() * t_map.transpose();
  cov = 0.5 * (cov + cov.transpose());
  return LevyTriplet(std::move(drift), std::move(cov), AtomicMeasure(d2, std::move(images)));
}

std::vector<double> cumulants(const LevyTriplet& t, const Eigen::VectorXd& u, int n_max) {
  require(n_max >= 1, ErrorCode::invalid_argument, "cumulants: n_max must be >= 1");
  require(u.size() == t.dim(), ErrorCode::dimension_mismatch,
          "cumulants: u dimension mismatch");
  std::vector<double> kappa(static_cast<std::size_t>(n_max), 0.0);
  kappa[0] = t.drift().dot(u);
  if (n_max >= 2) kappa[1] = u.dot(t.gaussian_cov() * u);
  for (const auto& a : t.jumps().atoms()) {
    const double xu = a.point.dot(u);
    if (!is_small_jump(a.point)) kappa[0] += a.weight * xu;
    double p = xu;
    for (int n = 2; n <= n_max; ++n) {
      p *= xu;
      kappa[static_cast<std::size_t>(n - 1)] += a.weight * p;
    }
  }
  return kappa;
}

SkewResult skew_solve(const Eigen::MatrixXd& t_map, const LevyTriplet& t1,
                      const LevyTriplet& t2) {
  require(t_map.cols() == t1.dim() && t_map.rows() == t2.dim(),
          ErrorCode::dimension_mismatch, "skew_solve: incompatible dimensions");

  const LevyTriplet pushed = pushforward(t_map, t1);

  Eigen::MatrixXd gap = t2.gaussian_cov() - pushed.gaussian_cov();
  gap = 0.5 * (gap + gap.transpose());

  SkewDiagnostics diag;
  diag.min_gap_eigenvalue = min_eigenvalue(gap);

  // Residual jump measure nu2 - T(nu1), atomwise.
  struct Residual {
    Eigen::VectorXd point;
    double weight;
  };
  std::vector<Residual> residual;
  residual.reserve(t2.jumps().size());
  for (const auto& a : t2.jumps().atoms()) residual.push_back({a.point, a.weight});
  for (const auto& img : pushed.jumps().atoms()) {
    bool matched = false;
    for (auto& r : residual) {
      if ((r.point - img.point).lpNorm<Eigen::Infinity>() <= kSnapTol) {
        r.weight -= img.weight;
        matched = true;
        break;
      }
    }
    if (!matched) residual.push_back({img.point, -img.weight});
  }

  diag.most_negative_weight = 0.0;
  const Residual* worst = nullptr;
  for (const auto& r : residual) {
    if (r.weight < diag.most_negative_weight) {
      diag.most_negative_weight = r.weight;
      worst = &r;
    }
  }

  if (diag.min_gap_eigenvalue < -kPsdTol) {
    SkewFailure f;
    f.code = ErrorCode::not_skew_gaussian;
    f.diagnostics = diag;
    f.witness_value = diag.min_gap_eigenvalue;
    f.message = "covariance gap is indefinite (min eigenvalue " +
                std::to_string(diag.min_gap_eigenvalue) + ")";
    return SkewResult{std::nullopt, std::move(f)};
  }
  if (diag.most_negative_weight < -kWeightTol) {
    SkewFailure f;
    f.code = ErrorCode::not_skew_jump;
    f.diagnostics = diag;
    f.witness_value = diag.most_negative_weight;
    f.witness_point = worst->point;
    f.message = "residual jump measure has a negative atom of weight " +
                std::to_string(diag.most_negative_weight);
    return SkewResult{std::nullopt, std::move(f)};
  }

  std::vector<Atom> atoms;
  for (auto& r : residual) {
    if (r.weight > kWeightTol) atoms.push_back(Atom{std::move(r.point), r.weight});
  }
  AtomicMeasure nu_rho(t2.dim(), std::move(atoms));
  Eigen::VectorXd xi_rho = t2.drift() - pushed.drift();
  Eigen::MatrixXd q_rho = psd_project(gap);

  SkewSolution sol{
      LevyTriplet(xi_rho, q_rho, nu_rho),
      LevyTriplet::gaussian(q_rho),
      LevyTriplet(xi_rho, Eigen::MatrixXd::Zero(t2.dim(), t2.dim()), nu_rho),
      diag,
  };
  return SkewResult{std::move(sol), std::nullopt};
}

SkewEquivalenceReport skew_equivalence_check(const Eigen::MatrixXd& t_map,
                                             const LevyTriplet& t1,
                                             const LevyTriplet& t2) {
  SkewEquivalenceReport rep;
  rep.combined = skew_solve(t_map, t1, t2);
  rep.gaussian = skew_solve(t_map, t1.gaussian_part(), t2.gaussian_part());
  rep.jump = skew_solve(t_map, t1.jump_part(), t2.jump_part());
  rep.equivalence_holds = rep.combined.ok() == (rep.gaussian.ok() && rep.jump.ok());
  rep.factorisation_holds = true;
  if (rep.combined.ok() && rep.gaussian.ok() && rep.jump.ok()) {
    const LevyTriplet product =
        convolve(rep.gaussian.solution->rho, rep.jump.solution->rho);
    rep.factorisation_holds = triplet_distance(product, rep.combined.solution->rho) <= 1e-12;
  }
  return rep;
}

double triplet_distance(const LevyTriplet& a, const LevyTriplet& b) {
  if (a.dim() != b.dim()) return std::numeric_limits<double>::infinity();
  double d = (a.drift() - b.drift()).lpNorm<Eigen::Infinity>();
  d = std::max(d, (a.gaussian_cov() - b.gaussian_cov()).lpNorm<Eigen::Infinity>());
  std::vector<bool> used(b.jumps().size(), false);
  for (const auto& atom : a.jumps().atoms()) {
    auto j = b.jumps().find(atom.point);
    if (j && !used[*j]) {
      used[*j] = true;
      const auto& other = b.jumps().atoms()[*j];
      d = std::max(d, std::abs(atom.weight - other.weight));
      d = std::max(d, (atom.point - other.point).lpNorm<Eigen::Infinity>());
    } else {
      d = std::max(d, std::abs(atom.weight));
    }
  }
  for (std::size_t j = 0; j < used.size(); ++j) {
    if (!used[j]) d = std::max(d, std::abs(b.jumps().atoms()[j].weight));
  }
  return d;
}

}  // namespace levykit
