#include "core/lattice.hpp"

#include "core/errors.hpp"

namespace levykit {

namespace {
const Rational kZero(0);
}

LatticeMeasure LatticeMeasure::dirac(std::size_t site, const Rational& w) {
  LatticeMeasure m;
  m.set(site, w);
  return m;
}

const Rational& LatticeMeasure::at(std::size_t site) const {
  auto it = coeffs_.find(site);
  return it == coeffs_.end() ? kZero : it->second;
}

void LatticeMeasure::set(std::size_t site, const Rational& w) {
  if (w == 0) {
    coeffs_.erase(site);
  } else {
    coeffs_[site] = w;
  }
}

void LatticeMeasure::add(std::size_t site, const Rational& w) {
  auto it = coeffs_.find(site);
  if (it == coeffs_.end()) {
    if (w != 0) coeffs_.emplace(site, w);
    return;
  }
  it->second += w;
  if (it->second == 0) coeffs_.erase(it);
}

std::size_t LatticeMeasure::min_site() const {
  require(!coeffs_.empty(), ErrorCode::precondition, "min_site of empty measure");
  return coeffs_.begin()->first;
}

std::size_t LatticeMeasure::max_site() const {
  require(!coeffs_.empty(), ErrorCode::precondition, "max_site of empty measure");
  return coeffs_.rbegin()->first;
}

Rational LatticeMeasure::total_mass() const {
  Rational m(0);
  for (const auto& [site, w] : coeffs_) m += w;
  return m;
}

bool LatticeMeasure::is_nonnegative() const { return !first_negative().has_value(); }

std::optional<std::pair<std::size_t, Rational>> LatticeMeasure::first_negative() const {
  for (const auto& [site, w] : coeffs_) {
    if (w < 0) return std::make_pair(site, w);
  }
  return std::nullopt;
}

LatticeMeasure LatticeMeasure::truncated(std::size_t horizon) const {
  LatticeMeasure out;
  for (const auto& [site, w] : coeffs_) {
    if (site > horizon) break;
    out.coeffs_.emplace(site, w);
  }
  return out;
}

LatticeMeasure& LatticeMeasure::operator+=(const LatticeMeasure& other) {
  for (const auto& [site, w] : other.coeffs_) add(site, w);
  return *this;
}

LatticeMeasure& LatticeMeasure::operator-=(const LatticeMeasure& other) {
  for (const auto& [site, w] : other.coeffs_) add(site, -w);
  return *this;
}

LatticeMeasure& LatticeMeasure::operator*=(const Rational& c) {
  if (c == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& [site, w] : coeffs_) w *= c;
  return *this;
}

LatticeMeasure lconvolve(const LatticeMeasure& a, const LatticeMeasure& b) {
  LatticeMeasure out;
  for (const auto& [sa, wa] : a.coeffs()) {
    for (const auto& [sb, wb] : b.coeffs()) {
      out.add(sa + sb, wa * wb);
    }
  }
  return out;
}

LatticeMeasure lconvolve_truncated(const LatticeMeasure& a, const LatticeMeasure& b,
                                   std::size_t horizon) {
  LatticeMeasure out;
  for (const auto& [sa, wa] : a.coeffs()) {
    if (sa > horizon) break;
    for (const auto& [sb, wb] : b.coeffs()) {
      if (sa + sb > horizon) break;
      out.add(sa + sb, wa * wb);
    }
  }
  return out;
}

LatticeMeasure lpower(const LatticeMeasure& a, unsigned k) {
  LatticeMeasure result = LatticeMeasure::dirac(0);
  LatticeMeasure base = a;
  while (k > 0) {
    if (k & 1u) result = lconvolve(result, base);
    k >>= 1u;
    if (k > 0) base = lconvolve(base, base);
  }
  return result;
}

LatticeMeasure lpower_truncated(const LatticeMeasure& a, unsigned k, std::size_t horizon) {
  LatticeMeasure result = LatticeMeasure::dirac(0);
  LatticeMeasure base = a.truncated(horizon);
  while (k > 0) {
    if (k & 1u) result = lconvolve_truncated(result, base, horizon);
    k >>= 1u;
    if (k > 0) base = lconvolve_truncated(base, base, horizon);
  }
  return result;
}

LatticeMeasure exp_measure(const LatticeMeasure& nu, std::size_t horizon) {
  require(nu.at(0) == 0, ErrorCode::precondition,
          "exp_measure requires nu(0) = 0 so that truncation is exact");
  LatticeMeasure acc = LatticeMeasure::dirac(0);
  LatticeMeasure term = LatticeMeasure::dirac(0);  // nu^{*n}/n!
  for (std::size_t n = 1; n <= horizon; ++n) {
    term = lconvolve_truncated(term, nu, horizon);
    if (term.empty()) break;  // support of nu^{*n} starts at n
    term *= Rational(1, n);
    acc += term;
  }
  return acc;
}

LatticeMeasure levy_from_distribution(const LatticeMeasure& r, std::size_t horizon) {
  require(r.at(0) > 0, ErrorCode::precondition,
          "levy_from_distribution requires r(0) > 0");
  const Rational& r0 = r.at(0);
  LatticeMeasure q;
  for (std::size_t n = 1; n <= horizon; ++n) {
    Rational rhs = Rational(n) * r.at(n);
    for (std::size_t k = 1; k < n; ++k) {
      const Rational& qk = q.at(k);
      if (qk == 0) continue;
      rhs -= Rational(k) * qk * r.at(n - k);
    }
    q.set(n, rhs / (Rational(n) * r0));
  }
  return q;
}

IDVerdict is_infinitely_divisible(const LatticeMeasure& r, std::size_t horizon) {
  IDVerdict v;
  v.horizon = horizon;
  v.recovered_levy = levy_from_distribution(r, horizon);
  v.witness = v.recovered_levy.first_negative();
  v.status = v.witness ? IDVerdict::Status::not_id : IDVerdict::Status::id_up_to_horizon;
  return v;
}

PositivityReport positivity_inequalities(const LatticeMeasure& nu) {
  PositivityReport rep;
  const LatticeMeasure nu2 = lpower(nu, 2);
  const LatticeMeasure nu3 = lpower(nu, 3);

  auto record = [&rep](bool ok, const LatticeMeasure& m) {
    if (!ok && !rep.first_failure) rep.first_failure = m.first_negative();
    return ok;
  };

  rep.square_nonnegative = record(nu2.is_nonnegative(), nu2);
  const LatticeMeasure eighth = nu + nu2 * Rational(1, 8);
  rep.eighth_combination = record(eighth.is_nonnegative(), eighth);
  const LatticeMeasure third = nu + nu2 * Rational(1, 3);
  rep.third_combination = record(third.is_nonnegative(), third);
  rep.family_at_zero = record(nu2.is_nonnegative(), nu2);
  const LatticeMeasure family1 = nu2 + nu3;
  rep.family_at_one = record(family1.is_nonnegative(), family1);
  return rep;
}

GroupingReport grouping_identity_check(const LatticeMeasure& nu, std::size_t horizon) {
  require(nu.at(0) == 0, ErrorCode::precondition,
          "grouping_identity_check requires nu(0) = 0");
  GroupingReport rep;
  rep.horizon = horizon;

  const LatticeMeasure nu2 = lpower_truncated(nu, 2, horizon);
  const LatticeMeasure nu3 = lpower_truncated(nu, 3, horizon);

  bool groups_ok = true;
  LatticeMeasure sum = LatticeMeasure::dirac(0);

  LatticeMeasure g1 = nu.truncated(horizon) + nu2 * Rational(1, 3);
  groups_ok = groups_ok && g1.is_nonnegative();
  sum += g1;

  LatticeMeasure g2 = (nu2 + nu3) * Rational(1, 6);
  groups_ok = groups_ok && g2.is_nonnegative();
  sum += g2;

  // Tail groups: nu^{*2(n-1)}/(2n)! * (nu^{*2} + nu^{*3}/(2n+1)).
  // The n-th group is supported on [2n, infinity); stop once that clears
  // the horizon.
  LatticeMeasure even_power = LatticeMeasure::dirac(0);  // nu^{*2(n-1)}
  for (std::size_t n = 2; 2 * n <= horizon; ++n) {
    even_power = lconvolve_truncated(even_power, nu2, horizon);
    if (even_power.empty()) break;
    LatticeMeasure bracket = nu2 + nu3 * Rational(1, 2 * n + 1);
    LatticeMeasure group = lconvolve_truncated(even_power, bracket, horizon);
    group *= Rational(1) / rational_factorial(static_cast<unsigned>(2 * n));
    groups_ok = groups_ok && group.is_nonnegative();
    sum += group;
    ++rep.group_count;
  }

  rep.identity_exact = (sum.truncated(horizon) == exp_measure(nu, horizon));
  rep.groups_nonnegative = groups_ok;
  return rep;
}

LatticeMeasure rosinski_measure() {
  LatticeMeasure nu;
  nu.set(1, Rational(2));
  nu.set(2, Rational(2));
  nu.set(3, Rational(-1));
  nu.set(4, Rational(2));
  nu.set(5, Rational(2));
  return nu;
}

}  // namespace levykit
