#include "core/polynomial.hpp"

#include <algorithm>
#include <cmath>

#include "core/errors.hpp"

namespace levykit {

Poly Poly::constant(int nvars, double c) {
  Poly p(nvars);
  p.add_term(Exponents(static_cast<std::size_t>(nvars), 0), c);
  return p;
}

Poly Poly::variable(int nvars, int index, int power) {
  require(index >= 0 && index < nvars, ErrorCode::invalid_argument,
          "Poly::variable: index out of range");
  Poly p(nvars);
  Exponents e(static_cast<std::size_t>(nvars), 0);
  e[static_cast<std::size_t>(index)] = static_cast<std::uint8_t>(power);
  p.add_term(e, 1.0);
  return p;
}

int Poly::total_degree() const {
  int deg = 0;
  for (const auto& [e, c] : terms_) {
    int d = 0;
    for (auto x : e) d += x;
    deg = std::max(deg, d);
  }
  return deg;
}

int Poly::degree_in(int var) const {
  int deg = 0;
  for (const auto& [e, c] : terms_) deg = std::max(deg, static_cast<int>(e[var]));
  return deg;
}

double Poly::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? 0.0 : it->second;
}

double Poly::max_abs_coefficient() const {
  double m = 0.0;
  for (const auto& [e, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

void Poly::add_term(const Exponents& e, double c) {
  require(e.size() == static_cast<std::size_t>(nvars_), ErrorCode::invalid_argument,
          "Poly::add_term: exponent arity mismatch");
  if (c == 0.0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0.0) terms_.erase(it);
  }
}

Poly& Poly::operator+=(const Poly& other) {
  require(nvars_ == other.nvars_, ErrorCode::dimension_mismatch, "Poly: context mismatch");
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& other) {
  require(nvars_ == other.nvars_, ErrorCode::dimension_mismatch, "Poly: context mismatch");
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

Poly& Poly::operator*=(double c) {
  if (c == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  require(a.nvars_ == b.nvars_, ErrorCode::dimension_mismatch, "Poly: context mismatch");
  Poly out(a.nvars_);
  Exponents e(static_cast<std::size_t>(a.nvars_), 0);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) {
        e[i] = static_cast<std::uint8_t>(ea[i] + eb[i]);
      }
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

Poly Poly::derivative(int var) const {
  Poly out(nvars_);
  for (const auto& [e, c] : terms_) {
    const int k = e[var];
    if (k == 0) continue;
    Exponents d = e;
    d[var] = static_cast<std::uint8_t>(k - 1);
    out.add_term(d, c * k);
  }
  return out;
}

Poly Poly::shift(int var, double delta) const {
  Poly out(nvars_);
  for (const auto& [e, c] : terms_) {
    const int k = e[var];
    // (x + delta)^k expanded binomially.
    double binom = 1.0;
    double dpow = 1.0;
    for (int j = k; j >= 0; --j) {
      Exponents d = e;
      d[var] = static_cast<std::uint8_t>(j);
      out.add_term(d, c * binom * dpow);
      if (j > 0) {
        binom = binom * j / static_cast<double>(k - j + 1);
        dpow *= delta;
      }
    }
  }
  return out;
}

Poly Poly::compose(const std::vector<Poly>& images) const {
  require(images.size() == static_cast<std::size_t>(nvars_), ErrorCode::invalid_argument,
          "Poly::compose: wrong number of images");
  const int out_vars = images.empty() ? 0 : images.front().nvars();
  for (const auto& img : images) {
    require(img.nvars() == out_vars, ErrorCode::dimension_mismatch,
            "Poly::compose: images live in different contexts");
  }
  // Memoised powers of each image.
  std::vector<std::vector<Poly>> powers(images.size());
  auto power_of = [&](std::size_t var, int k) -> const Poly& {
    auto& cache = powers[var];
    if (cache.empty()) cache.push_back(Poly::constant(out_vars, 1.0));
    while (static_cast<int>(cache.size()) <= k) {
      cache.push_back(cache.back() * images[var]);
    }
    return cache[static_cast<std::size_t>(k)];
  };

  Poly out(out_vars);
  for (const auto& [e, c] : terms_) {
    Poly term = Poly::constant(out_vars, c);
    for (std::size_t v = 0; v < e.size(); ++v) {
      if (e[v] > 0) term = term * power_of(v, e[v]);
    }
    out += term;
  }
  return out;
}

double Poly::evaluate(std::span<const double> point) const {
  require(point.size() == static_cast<std::size_t>(nvars_), ErrorCode::dimension_mismatch,
          "Poly::evaluate: point arity mismatch");
  double sum = 0.0;
  for (const auto& [e, c] : terms_) {
    double t = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      for (int k = 0; k < e[i]; ++k) t *= point[i];
    }
    sum += t;
  }
  return sum;
}

void Poly::prune(double eps) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (std::abs(it->second) <= eps) {
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
}

double TestFunction::evaluate(std::span<const double> g,
                              std::span<const std::uint64_t> counts) const {
  require(g.size() == static_cast<std::size_t>(r) &&
              counts.size() == static_cast<std::size_t>(m),
          ErrorCode::dimension_mismatch, "TestFunction::evaluate: sample shape mismatch");
  std::vector<double> point(static_cast<std::size_t>(r + m));
  for (int i = 0; i < r; ++i) point[i] = g[i];
  for (int k = 0; k < m; ++k) point[r + k] = static_cast<double>(counts[k]);
  return poly.evaluate(point);
}

}  // namespace levykit
