#include <doctest.h>

#include <cmath>

#include "chaos_oracle.hpp"
#include "core/chaos.hpp"
#include "test_util.hpp"

using namespace levykit;
using namespace levykit::testing;

namespace {

// Random symmetric-tensor block with coefficients in [-1, 1].
SymTensor random_tensor(RngStream& rng, int j, int k, int r, int m) {
  SymTensor t;
  t.gaussian_deg = j;
  t.poisson_deg = k;
  t.r = r;
  t.m = m;
  for_each_multiset(r, j, [&](const Exponents& alpha) {
    for_each_multiset(m, k, [&](const Exponents& beta) {
      t.coeffs.emplace(std::make_pair(alpha, beta), uniform(rng, -1.0, 1.0));
    });
  });
  return t;
}

double hn_inner(const SymTensor& a, const SymTensor& b) {
  const double nf = factorial(a.level());
  double s = 0.0;
  for (const auto& [key, c] : a.coeffs) {
    auto it = b.coeffs.find(key);
    if (it == b.coeffs.end()) continue;
    s += c * it->second * multiset_factorial(key.first) *
         multiset_factorial(key.second) / nf;
  }
  return s;
}

TestFunction function_of(int r, int m, const Poly& p) { return TestFunction(r, m, p); }

}  // namespace

TEST_CASE("hermite evaluation") {
  CHECK(hermite(0, 1.7) == 1.0);
  CHECK(hermite(2, 2.0) == doctest::Approx(3.0));  // x^2 - 1 at 2
  SUBCASE("three-term recurrence to machine precision") {
    for (double x : {-10.0, -2.5, 0.0, 0.3, 10.0}) {
      for (int n = 1; n < 20; ++n) {
        const double lhs = hermite(n + 1, x);
        const double rhs = x * hermite(n, x) - n * hermite(n - 1, x);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-13));
      }
    }
  }
  SUBCASE("E He_n^2 = n! against Gauss-Hermite quadrature") {
    const Quadrature rule = gauss_hermite(16);
    for (int n = 0; n <= 6; ++n) {
      double ex = 0.0;
      for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
        const double h = hermite(n, rule.nodes[q]);
        ex += rule.weights[q] * h * h;
      }
      CHECK(ex == doctest::Approx(factorial(n)).epsilon(1e-10));
    }
  }
  SUBCASE("polynomial form matches the evaluator") {
    for (int n = 0; n <= 8; ++n) {
      const Poly p = hermite_poly(n, 1, 0);
      for (double x : {-3.0, -1.0, 0.5, 2.0}) {
        const double v[] = {x};
        CHECK(p.evaluate(v) == doctest::Approx(hermite(n, x)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("charlier evaluation") {
  const double a = 1.7;
  CHECK(charlier(1, 4.0, a) == doctest::Approx(4.0 - a));  // C_1 = x - a
  SUBCASE("three-term recurrence to machine precision") {
    for (double rate : {0.3, 2.0, 10.0}) {
      for (double x : {0.0, 1.0, 5.0, 10.0}) {
        for (int n = 1; n < 20; ++n) {
          const double lhs = charlier(n + 1, x, rate);
          const double rhs =
              (x - rate - n) * charlier(n, x, rate) - n * rate * charlier(n - 1, x, rate);
          CHECK(lhs == doctest::Approx(rhs).epsilon(1e-13));
        }
      }
    }
  }
  SUBCASE("E C_2^2 = 2 a^2 and orthogonality, by Poisson enumeration") {
    double e22 = 0.0, e12 = 0.0, e11 = 0.0;
    const int cap = poisson_cap(a);
    double pmf = std::exp(-a);
    for (int n = 0; n <= cap; ++n) {
      if (n > 0) pmf *= a / n;
      const double x = static_cast<double>(n);
      e22 += pmf * charlier(2, x, a) * charlier(2, x, a);
      e12 += pmf * charlier(1, x, a) * charlier(2, x, a);
      e11 += pmf * charlier(1, x, a) * charlier(1, x, a);
    }
    CHECK(e22 == doctest::Approx(2.0 * a * a).epsilon(1e-10));
    CHECK(e12 == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(e11 == doctest::Approx(a).epsilon(1e-10));
  }
  SUBCASE("polynomial form matches the evaluator") {
    for (int n = 0; n <= 6; ++n) {
      const Poly p = charlier_poly(n, a, 1, 0);
      for (double x : {0.0, 1.0, 3.0, 7.0}) {
        const double v[] = {x};
        CHECK(p.evaluate(v) == doctest::Approx(charlier(n, x, a)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("multiple integrals") {
  const std::vector<double> nu = {1.3, 0.6};
  SUBCASE("level-1 Gaussian basis tensor evaluates to g_1") {
    SymTensor t;
    t.gaussian_deg = 1;
    t.poisson_deg = 0;
    t.r = 2;
    t.m = 2;
    t.coeffs.emplace(std::make_pair(Exponents{1, 0}, Exponents{0, 0}), 1.0);
    const ChaosSample s{{0.37, -1.2}, {3, 1}};
    CHECK(multiple_integral(t, s, nu) == doctest::Approx(0.37));
  }
  SUBCASE("level-1 Poisson basis tensor evaluates to the compensated count") {
    SymTensor t;
    t.gaussian_deg = 0;
    t.poisson_deg = 1;
    t.r = 2;
    t.m = 2;
    t.coeffs.emplace(std::make_pair(Exponents{0, 0}, Exponents{0, 1}), 1.0);
    const ChaosSample s{{0.0, 0.0}, {2, 4}};
    CHECK(multiple_integral(t, s, nu) ==
          doctest::Approx((4.0 - nu[1]) / std::sqrt(nu[1])));
  }
  SUBCASE("isometry E I_n(f)^2 = n! |f|^2 for random tensors") {
    RngStream rng(40, 0);
    const int r = 2, m = 2;
    for (int n = 0; n <= 4; ++n) {
      for (int j = 0; j <= n; ++j) {
        const SymTensor t = random_tensor(rng, j, n - j, r, m);
        const double ex = enum_expectation(
            r, nu, 12, [&](const std::vector<double>& g,
                           const std::vector<std::uint64_t>& counts) {
              const ChaosSample s{g, counts};
              const double v = multiple_integral(t, s, nu);
              return v * v;
            });
        CHECK(ex == doctest::Approx(factorial(n) * t.norm_squared()).epsilon(1e-9));
      }
    }
  }
  SUBCASE("orthogonality across levels and against inner products") {
    RngStream rng(41, 0);
    const int r = 1, m = 1;
    const std::vector<double> nu1 = {0.9};
    std::vector<SymTensor> tensors;
    for (int n = 0; n <= 3; ++n) {
      for (int j = 0; j <= n; ++j) tensors.push_back(random_tensor(rng, j, n - j, r, m));
    }
    for (const auto& ta : tensors) {
      for (const auto& tb : tensors) {
        const double ex = enum_expectation(
            r, nu1, 12, [&](const std::vector<double>& g,
                            const std::vector<std::uint64_t>& counts) {
              const ChaosSample s{g, counts};
              return multiple_integral(ta, s, nu1) * multiple_integral(tb, s, nu1);
            });
        if (ta.level() != tb.level() || ta.gaussian_deg != tb.gaussian_deg) {
          CHECK(std::abs(ex) < 1e-9);
        } else {
          CHECK(ex ==
                doctest::Approx(factorial(ta.level()) * hn_inner(ta, tb)).epsilon(1e-9));
        }
      }
    }
  }
}

TEST_CASE("gaussian derivative coefficients") {
  const std::vector<double> nu = {};
  const int r = 2, m = 0;
  SUBCASE("f = g_1 at n = 1 gives the basis vector h_1") {
    const TestFunction f = function_of(r, m, Poly::variable(r, 0));
    const SymTensor t = gaussian_derivative_coeff(f, 1, nu);
    REQUIRE(t.coeffs.size() == 1);
    CHECK(t.coeffs.begin()->second == doctest::Approx(1.0));
    CHECK(t.coeffs.begin()->first.first == Exponents{1, 0});
  }
  SUBCASE("f = He_2(g_1): level-2 coefficient 2, all other levels vanish") {
    const TestFunction f = function_of(r, m, hermite_poly(2, r, 0));
    const SymTensor t2 = gaussian_derivative_coeff(f, 2, nu);
    REQUIRE(t2.coeffs.size() == 1);
    CHECK(t2.coeffs.at(std::make_pair(Exponents{2, 0}, Exponents{})) ==
          doctest::Approx(2.0));
    CHECK(gaussian_derivative_coeff(f, 0, nu).coeffs.empty());
    CHECK(gaussian_derivative_coeff(f, 1, nu).coeffs.empty());
    CHECK(gaussian_derivative_coeff(f, 3, nu).coeffs.empty());
  }
  SUBCASE("constants have no derivative coefficients") {
    const TestFunction f = function_of(r, m, Poly::constant(r, 3.5));
    for (int n = 1; n <= 3; ++n) {
      CHECK(gaussian_derivative_coeff(f, n, nu).coeffs.empty());
    }
  }
  SUBCASE("projection oracle: c_alpha = (n!/alpha!) E[f prod He_{alpha_i}(g_i)]") {
    RngStream rng(42, 0);
    Poly p(r);
    for (int t = 0; t < 6; ++t) {
      Exponents e{static_cast<std::uint8_t>(uniform(rng, 0, 3)),
                  static_cast<std::uint8_t>(uniform(rng, 0, 3))};
      p.add_term(e, uniform(rng, -1.0, 1.0));
    }
    const TestFunction f = function_of(r, m, p);
    for (int n = 0; n <= 4; ++n) {
      const SymTensor t = gaussian_derivative_coeff(f, n, nu);
      for_each_multiset(r, n, [&](const Exponents& alpha) {
        const double projected = enum_expectation(
            r, {}, 12, [&](const std::vector<double>& g,
                           const std::vector<std::uint64_t>&) {
              double v = f.poly.evaluate(g);
              for (std::size_t i = 0; i < alpha.size(); ++i) {
                v *= hermite(alpha[i], g[i]);
              }
              return v;
            });
        const double expected = projected * factorial(n) / multiset_factorial(alpha);
        auto it = t.coeffs.find(std::make_pair(alpha, Exponents{}));
        const double actual = it == t.coeffs.end() ? 0.0 : it->second;
        CHECK(actual == doctest::Approx(expected).epsilon(1e-9));
      });
    }
  }
}

TEST_CASE("poisson derivative coefficients") {
  const std::vector<double> nu = {1.1, 0.7};
  const int r = 0, m = 2;
  SUBCASE("f = N_1 at n = 1 gives sqrt(nu_1) e_1, the indicator") {
    const TestFunction f = function_of(r, m, Poly::variable(m, 0));
    const SymTensor t = poisson_derivative_coeff(f, 1, nu);
    REQUIRE(t.coeffs.size() == 1);
    CHECK(t.coeffs.at(std::make_pair(Exponents{}, Exponents{1, 0})) ==
          doctest::Approx(std::sqrt(nu[0])));
  }
  SUBCASE("constants vanish for n >= 1") {
    const TestFunction f = function_of(r, m, Poly::constant(m, -2.0));
    CHECK(poisson_derivative_coeff(f, 1, nu).coeffs.empty());
    CHECK(poisson_derivative_coeff(f, 2, nu).coeffs.empty());
  }
  SUBCASE("iterated differences match brute-force add-point evaluation") {
    RngStream rng(43, 0);
    Poly p(m);
    for (int t = 0; t < 5; ++t) {
      Exponents e{static_cast<std::uint8_t>(uniform(rng, 0, 3)),
                  static_cast<std::uint8_t>(uniform(rng, 0, 3))};
      p.add_term(e, uniform(rng, -1.0, 1.0));
    }
    // Delta_1 Delta_2 f at a configuration equals the inclusion-exclusion
    // sum over added points.
    auto eval = [&](double n1, double n2) {
      const double v[] = {n1, n2};
      return p.evaluate(v);
    };
    const Poly d12 = (p.shift(0, 1.0) - p).shift(1, 1.0) - (p.shift(0, 1.0) - p);
    for (double n1 : {0.0, 2.0, 5.0}) {
      for (double n2 : {0.0, 1.0, 4.0}) {
        const double brute = eval(n1 + 1, n2 + 1) - eval(n1 + 1, n2) -
                             eval(n1, n2 + 1) + eval(n1, n2);
        const double v[] = {n1, n2};
        CHECK(d12.evaluate(v) == doctest::Approx(brute).epsilon(1e-12));
      }
    }
    // And the symmetric tensor is invariant under swapping the two atoms:
    // both orders of differencing produce the same (1,1) multiset entry.
    const SymTensor t2 = poisson_derivative_coeff(function_of(r, m, p), 2, nu);
    const Poly d21 = (p.shift(1, 1.0) - p).shift(0, 1.0) - (p.shift(1, 1.0) - p);
    const std::vector<VarLaw> laws = chaos_laws(0, nu);
    const double expected_12 = expectation(d12, laws);
    const double expected_21 = expectation(d21, laws);
    CHECK(expected_12 == doctest::Approx(expected_21).epsilon(1e-12));
    auto it = t2.coeffs.find(std::make_pair(Exponents{}, Exponents{1, 1}));
    const double actual = it == t2.coeffs.end() ? 0.0 : it->second;
    // c = (2!/1!1!) E[D^2 f] sqrt(nu_1 nu_2)
    CHECK(actual ==
          doctest::Approx(2.0 * expected_12 * std::sqrt(nu[0] * nu[1])).epsilon(1e-12));
  }
}

TEST_CASE("joint coefficients") {
  const std::vector<double> nu = {0.8, 1.4};
  const int r = 2, m = 2;
  SUBCASE("f = g_1 N_1 at n = 2 lives in block (1,1) only") {
    const Poly p = Poly::variable(r + m, 0) * Poly::variable(r + m, r);
    const TestFunction f = function_of(r, m, p);
    const auto blocks = joint_coeff(f, 2, nu);
    CHECK(blocks[0].coeffs.empty());  // (0,2)
    CHECK(blocks[2].coeffs.empty());  // (2,0)
    REQUIRE(blocks[1].coeffs.size() == 1);
    // binom(2,1) * E[d/dg Delta f] * sqrt(nu_1) = 2 sqrt(nu_1)
    CHECK(blocks[1].coeffs.at(std::make_pair(Exponents{1, 0}, Exponents{1, 0})) ==
          doctest::Approx(2.0 * std::sqrt(nu[0])));
  }
  SUBCASE("g-only functions put everything in blocks (n,0)") {
    const TestFunction f = function_of(r, m, Poly::variable(r + m, 1, 3));
    for (int n = 1; n <= 3; ++n) {
      const auto blocks = joint_coeff(f, n, nu);
      for (int j = 0; j < n; ++j) CHECK(blocks[static_cast<std::size_t>(j)].coeffs.empty());
      CHECK(tensor_distance(blocks[static_cast<std::size_t>(n)],
                            gaussian_derivative_coeff(f, n, nu)) == 0.0);
    }
  }
  SUBCASE("count-only functions put everything in blocks (0,n)") {
    const TestFunction f = function_of(r, m, Poly::variable(r + m, r + 1, 2));
    for (int n = 1; n <= 2; ++n) {
      const auto blocks = joint_coeff(f, n, nu);
      for (int j = 1; j <= n; ++j) CHECK(blocks[static_cast<std::size_t>(j)].coeffs.empty());
      CHECK(tensor_distance(blocks[0], poisson_derivative_coeff(f, n, nu)) == 0.0);
    }
  }
  SUBCASE("Leibniz: product of a g-only and a count-only factor") {
    RngStream rng(44, 0);
    Poly pg(r + m);
    Poly ph(r + m);
    for (int t = 0; t < 4; ++t) {
      Exponents eg(static_cast<std::size_t>(r + m), 0);
      eg[0] = static_cast<std::uint8_t>(uniform(rng, 0, 3));
      eg[1] = static_cast<std::uint8_t>(uniform(rng, 0, 3));
      pg.add_term(eg, uniform(rng, -1.0, 1.0));
      Exponents eh(static_cast<std::size_t>(r + m), 0);
      eh[r] = static_cast<std::uint8_t>(uniform(rng, 0, 3));
      eh[r + 1] = static_cast<std::uint8_t>(uniform(rng, 0, 3));
      ph.add_term(eh, uniform(rng, -1.0, 1.0));
    }
    const TestFunction f = function_of(r, m, pg);
    const TestFunction h = function_of(r, m, ph);
    const TestFunction fh = function_of(r, m, pg * ph);
    for (int n = 0; n <= 4; ++n) {
      const auto blocks = joint_coeff(fh, n, nu);
      double binom = 1.0;
      for (int j = 0; j <= n; ++j) {
        const int k = n - j;
        const SymTensor gf = gaussian_derivative_coeff(f, j, nu);
        const SymTensor ph_t = poisson_derivative_coeff(h, k, nu);
        SymTensor expected;
        expected.gaussian_deg = j;
        expected.poisson_deg = k;
        expected.r = r;
        expected.m = m;
        for (const auto& [ka, ca] : gf.coeffs) {
          for (const auto& [kb, cb] : ph_t.coeffs) {
            expected.coeffs.emplace(std::make_pair(ka.first, kb.second),
                                    binom * ca * cb);
          }
        }
        CHECK(tensor_distance(blocks[static_cast<std::size_t>(j)], expected) < 1e-12);
        binom = binom * (n - j) / static_cast<double>(j + 1);
      }
    }
  }
}

TEST_CASE("expansion and reconstruction") {
  const std::vector<double> nu = {1.2, 0.5};
  const int r = 1, m = 2;

  auto random_function = [&](RngStream& rng, int deg) {
    Poly p(r + m);
    for (int t = 0; t < 8; ++t) {
      Exponents e(static_cast<std::size_t>(r + m), 0);
      int budget = deg;
      for (std::size_t v = 0; v < e.size(); ++v) {
        e[v] = static_cast<std::uint8_t>(uniform(rng, 0, budget + 1));
        budget -= e[v];
      }
      p.add_term(e, uniform(rng, -1.0, 1.0));
    }
    return function_of(r, m, p);
  };

  SUBCASE("first-chaos functions reconstruct pointwise exactly") {
    Poly p = Poly::variable(r + m, 0) * 2.0;
    p += Poly::variable(r + m, r) * -1.5;
    p += Poly::constant(r + m, 0.75);
    const TestFunction f = function_of(r, m, p);
    const ChaosCoefficients coeffs = expand(f, 1, nu);
    RngStream rng(45, 0);
    for (int i = 0; i < 20; ++i) {
      const ChaosSample s = draw_chaos_sample(r, nu, rng);
      CHECK(reconstruct(coeffs, s) ==
            doctest::Approx(f.evaluate(s.g, s.counts)).epsilon(1e-12));
    }
  }

  SUBCASE("Parseval against the enumeration oracle") {
    RngStream rng(46, 0);
    for (int trial = 0; trial < 5; ++trial) {
      const TestFunction f = random_function(rng, 4);
      const ChaosCoefficients coeffs = expand(f, f.degree(), nu);
      const double oracle = enum_expectation(
          r, nu, 14, [&](const std::vector<double>& g,
                         const std::vector<std::uint64_t>& counts) {
            const double v = f.evaluate(g, counts);
            return v * v;
          });
      const double scale = std::max(1.0, std::abs(oracle));
      CHECK(std::abs(coeffs.isometric_norm_squared() - oracle) <= 1e-8 * scale);
    }
  }

  SUBCASE("exact reconstruction residual is zero; truncation is not") {
    RngStream rng(47, 0);
    const TestFunction f = random_function(rng, 3);
    const ChaosCoefficients full = expand(f, f.degree(), nu);
    const L2Error exact = l2_error_exact(f, full);
    CHECK(exact.residual <= 1e-6 * std::max(1.0, l2_norm(f, nu)));

    if (f.degree() >= 1) {
      const ChaosCoefficients truncated = expand(f, f.degree() - 1, nu);
      const L2Error err = l2_error_exact(f, truncated);
      CHECK(err.residual > 1e-8);
    }
  }

  SUBCASE("blocks vanish above the degree") {
    RngStream rng(48, 0);
    const TestFunction f = random_function(rng, 3);
    const ChaosCoefficients coeffs = expand(f, f.degree() + 3, nu);
    for (const auto& [key, block] : coeffs.blocks) {
      CHECK(std::get<0>(key) <= f.degree());
      CHECK_FALSE(block.coeffs.empty());
    }
  }

  SUBCASE("reconstruct_polynomial equals the original for a full expansion") {
    RngStream rng(49, 0);
    const TestFunction f = random_function(rng, 4);
    const TestFunction rec = reconstruct_polynomial(expand(f, f.degree(), nu));
    Poly diff = f.poly - rec.poly;
    diff.prune(1e-10 * std::max(1.0, f.poly.max_abs_coefficient()));
    CHECK(diff.is_zero());
  }
}

TEST_CASE("l2_error modes") {
  const std::vector<double> nu = {0.9};
  const int r = 1, m = 1;
  Poly p(r + m);
  p.add_term(Exponents{2, 1}, 0.8);
  p.add_term(Exponents{1, 0}, -0.4);
  const TestFunction f = function_of(r, m, p);

  SUBCASE("zero function has zero residual") {
    const TestFunction zero = function_of(r, m, Poly(r + m));
    const ChaosCoefficients coeffs = expand(zero, 2, nu);
    CHECK(l2_error_exact(zero, coeffs).residual == 0.0);
    const L2Error mc = l2_error_mc(zero, coeffs, 7, 2000);
    CHECK(mc.residual == 0.0);
  }
  SUBCASE("exact and MC residuals agree within 4 standard errors") {
    const ChaosCoefficients truncated = expand(f, f.degree() - 1, nu);
    const L2Error exact = l2_error_exact(f, truncated);
    const L2Error mc = l2_error_mc(f, truncated, 11, 60000, 2);
    CHECK(std::abs(mc.mean_square - exact.mean_square) <= 4.0 * mc.se);
    CHECK(mc.n == 60000);
  }
}
