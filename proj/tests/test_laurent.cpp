#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "rlab/corpus.hpp"
#include "rlab/laurent.hpp"

#include <cmath>
#include <random>

using namespace rlab;
using cd = std::complex<double>;

namespace {

Point<double> pt(std::initializer_list<cd> v) {
  Point<double> z(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (auto c : v) z[i++] = c;
  return z;
}

ExtractionOptions at_radii(std::vector<double> r) {
  ExtractionOptions o;
  o.radii = std::move(r);
  return o;
}

double factorial(int n) { return n <= 1 ? 1.0 : n * factorial(n - 1); }

// int_0^1 r^k dr < infinity  <=>  k > -1.
bool radial_finite(long long k) { return k > -1; }

// Iterated radial integral over 0 < r1 < r2 < 1 of r1^(2 a1 + 1) r2^(2 a2 + 1).
bool hartogs_triangle_oracle(int a1, int a2) {
  const long long k1 = 2LL * a1 + 1, k2 = 2LL * a2 + 1;
  if (!radial_finite(k1)) return false;
  return radial_finite(k2 + k1 + 1);
}

}  // namespace

TEST_CASE("laurent_coefficients: spec corpus") {
  SUBCASE("1/z on the annulus") {
    const auto s = laurent_coefficients<double>([](const Point<double>& z) { return 1.0 / z[0]; }, corpus::annulus(),
                                                8, 64);
    for (const auto& [a, c] : s.coefficients) CHECK(std::abs(c - (a[0] == -1 ? 1.0 : 0.0)) < 1e-12);
    CHECK(s.holomorphic);
    CHECK(std::abs(s.extraction_radii[0] - std::sqrt(0.5)) < 1e-9);
  }
  SUBCASE("geometric series at r = 0.5") {
    const auto s = laurent_coefficients<double>([](const Point<double>& z) { return 1.0 / (1.0 - z[0]); },
                                                corpus::unit_disc(), 16, 64, at_radii({0.5}));
    for (const auto& [a, c] : s.coefficients) CHECK(std::abs(c - (a[0] >= 0 ? 1.0 : 0.0)) < 1e-10);
    CHECK(s.zeroed_count == 16);
    CHECK(s.missing_monomial_residual < 1e-14);
    CHECK_FALSE(s.missing_monomial_violation);
  }
  SUBCASE("1/(1 - z1 z2) on the bidisc") {
    const auto s = laurent_coefficients<double>([](const Point<double>& z) { return 1.0 / (1.0 - z[0] * z[1]); },
                                                corpus::unit_bidisc(), 8, 32, at_radii({0.5, 0.5}));
    for (const auto& [a, c] : s.coefficients) CHECK(std::abs(c - (a[0] == a[1] && a[0] >= 0 ? 1.0 : 0.0)) < 1e-9);
  }
  SUBCASE("extraction off the domain is rejected") {
    CHECK_THROWS_AS(laurent_coefficients<double>([](const Point<double>& z) { return z[0]; }, corpus::unit_disc(), 4,
                                                 16, at_radii({1.5})),
                    PreconditionError);
    CHECK_THROWS_AS(laurent_coefficients<double>([](const Point<double>& z) { return z[0]; }, corpus::unit_disc(), 8,
                                                 16),
                    AliasingError);
  }
  SUBCASE("non-holomorphic input is flagged") {
    const auto s = laurent_coefficients<double>([](const Point<double>& z) { return std::conj(z[0]); },
                                                corpus::annulus(0.2, 1.0), 4, 32);
    CHECK_FALSE(s.holomorphic);
    CHECK(s.holomorphy_residual > 1e-3);
    CHECK(s.probe_radii.size() == 3);
  }
}

TEST_CASE("radius_independence_residual") {
  const auto disc = corpus::unit_disc();
  auto radii = [](std::initializer_list<double> rs) {
    std::vector<VectorX<double>> out;
    for (double r : rs) out.push_back(VectorX<double>::Constant(1, r));
    return out;
  };
  const ComplexFunction<double> e = [](const Point<double>& z) { return std::exp(z[0]); };
  CHECK(radius_independence_residual(e, disc, {2}, radii({0.3, 0.5, 0.7}), 64) <= 1e-11);
  const auto a2 = laurent_coefficients<double>(e, disc, 4, 64, at_radii({0.5}));
  CHECK(std::abs(a2.coefficient({2}) - 0.5) < 1e-14);
  const ComplexFunction<double> c = [](const Point<double>& z) { return std::conj(z[0]); };
  CHECK(std::abs(radius_independence_residual(c, disc, {-1}, radii({0.3, 0.6}), 64) - 0.27) < 1e-14);
  const ComplexFunction<double> lp = [](const Point<double>& z) { return 3.0 / (z[0] * z[0]) - z[0] + cd(0, 2) * ipow(z[0], 5); };
  // Dividing by r^alpha amplifies rounding in c_alpha by r^-alpha; small radii go through long double.
  for (int a = -6; a <= 6; ++a)
    CHECK(radius_independence_residual(lp, corpus::annulus(0.2, 1.0), {a}, radii({0.5, 0.7, 0.9}), 64) <= 1e-12);
  const ComplexFunction<long double> lpl = [](const Point<long double>& z) {
    return 3.0L / (z[0] * z[0]) - z[0] + std::complex<long double>(0, 2) * ipow(z[0], 5);
  };
  std::vector<VectorX<long double>> rl;
  for (long double r : {0.3L, 0.5L, 0.9L}) rl.push_back(VectorX<long double>::Constant(1, r));
  for (int a = -6; a <= 6; ++a)
    CHECK(radius_independence_residual(lpl, corpus::annulus(0.2, 1.0), {a}, rl, 64) <= 1e-12L);
  CHECK_THROWS_AS(radius_independence_residual(e, disc, {1}, radii({0.5, 1.2}), 64), PreconditionError);
}

TEST_CASE("evaluate_series") {
  SUBCASE("constant series") {
    LaurentSeries<double> s;
    s.dimension = 2;
    s.alpha_box = 3;
    s.coefficients[{0, 0}] = 7.0;
    const auto v = evaluate_series(s, pt({0.3, cd(0, 0.2)}), corpus::unit_bidisc());
    CHECK(v.value == cd(7.0));
    CHECK(v.tail_bound == 0.0);
    CHECK_FALSE(v.flagged);
  }
  SUBCASE("Hartogs figure extension") {
    const ComplexFunction<double> f = [](const Point<double>& z) { return 1.0 / (2.0 - z[0] - z[1]); };
    const auto fig = corpus::hartogs_figure();
    const auto s = laurent_coefficients(f, fig, 24, 64);
    CHECK(std::abs(s.extraction_radii[0] - 0.25) < 1e-9);
    CHECK(std::abs(s.extraction_radii[1] - 0.5) < 1e-9);
    // Coefficient oracle: binom(|a|, a1) / 2^(|a|+1).
    for (const auto& [a, c] : s.coefficients) {
      if (a[0] < 0 || a[1] < 0 || a.l1() > 10) continue;
      const double binom = factorial(a.l1()) / (factorial(a[0]) * factorial(a[1]));
      CHECK(std::abs(c - binom / std::ldexp(1.0, a.l1() + 1)) < 1e-10 * binom);
    }
    const auto z = pt({0.6, 0.3});
    CHECK_FALSE(contains(fig, z));
    CHECK_THROWS_AS(evaluate_series(s, z, fig), PreconditionError);
    const auto v = evaluate_series(s, z, envelope(fig));
    CHECK(std::abs(v.value - 1.0 / 1.1) <= 1e-6);
    CHECK_FALSE(v.divergent);
  }
  SUBCASE("slow geometric tail is flagged") {
    const auto s = laurent_coefficients<double>([](const Point<double>& z) { return 1.0 / (1.0 - z[0]); },
                                                corpus::unit_disc(), 16, 64, at_radii({0.5}));
    const auto v = evaluate_series(s, pt({0.99}), corpus::unit_disc());
    const double explicit_tail = std::pow(0.99, 17) / 0.01;
    CHECK(v.flagged);
    CHECK(v.tail_bound > 1e-8);
    CHECK(std::abs(v.tail_bound - explicit_tail) < 1e-6 * explicit_tail);
    const auto w = evaluate_series(s, pt({0.1}), corpus::unit_disc());
    CHECK_FALSE(w.flagged);
    CHECK(std::abs(w.value - 1.0 / 0.9) < 1e-15 + w.tail_bound);
  }
  SUBCASE("negative powers at a zero coordinate") {
    LaurentSeries<double> s;
    s.dimension = 1;
    s.alpha_box = 1;
    s.coefficients[{-1}] = 1.0;
    CHECK_THROWS_AS(evaluate_series(s, pt({0.0}), corpus::unit_disc()), DomainError);
  }
}

TEST_CASE("reconstruction inside the extraction polytorus") {
  struct Case {
    ComplexFunction<double> f;
    ReinhardtDomain d;
  };
  std::vector<Case> cases{
      {[](const Point<double>& z) { return 1.0 / (1.0 - z[0]); }, corpus::unit_disc()},
      {[](const Point<double>& z) { return std::exp(z[0]); }, corpus::unit_disc()},
      {[](const Point<double>& z) { return 1.0 / z[0]; }, corpus::annulus()},
      {[](const Point<double>& z) { return 1.0 / (1.0 - z[0] * z[1]); }, corpus::unit_bidisc()},
      {[](const Point<double>& z) { return 1.0 / (2.0 - z[0] - z[1]); }, corpus::hartogs_figure()},
  };
  std::mt19937_64 rng(23);
  for (const auto& c : cases) {
    const auto s = laurent_coefficients(c.f, c.d, 24, 256 / (c.d.dimension() == 2 ? 4 : 1));
    CHECK(s.holomorphic);
    for (int k = 0; k < 40; ++k) {
      Point<double> z(c.d.dimension());
      for (int j = 0; j < z.size(); ++j)
        z[j] = std::polar(s.extraction_radii[j] * (0.2 + 0.75 * unit_interval(rng())), 6.283 * unit_interval(rng()));
      if (c.d.axis_flags() == std::vector<bool>{false})
        z[0] = std::polar(s.extraction_radii[0] * (0.95 + 0.05 * unit_interval(rng())), 1.0);
      if (!contains(c.d, z)) continue;
      const auto v = evaluate_series(s, z, envelope(c.d));
      CHECK(std::abs(v.value - c.f(z)) <= v.tail_bound + 1e-9);
    }
  }
}

TEST_CASE("missing monomials and the Cauchy bound on extracted coefficients") {
  const auto tri = corpus::hartogs_triangle();
  const ComplexFunction<double> f = [](const Point<double>& z) { return std::exp(z[0]) * (1.0 + z[1]) * (1.0 + z[1]); };
  const auto s = laurent_coefficients(f, tri, 8, 32);
  CHECK(s.holomorphic);
  const auto allowed = missing_monomials_smooth_boundary(tri, 8).allowed;
  for (const auto& [a, c] : s.coefficients) {
    if (std::find(allowed.begin(), allowed.end(), a) == allowed.end()) CHECK(std::abs(c) <= 1e-9);
    CHECK(std::abs(c) * monomial_modulus(a, s.extraction_radii) <= s.sup_norm * (1 + 1e-12));
  }
}

TEST_CASE("coefficient_decay_report") {
  const auto disc = corpus::unit_disc();
  const auto poly = laurent_coefficients<double>([](const Point<double>& z) { return 1.0 + 2.0 * z[0] * z[0] * z[0]; },
                                                 disc, 12, 64, at_radii({0.5}));
  const auto rp = coefficient_decay_report(poly, VectorX<double>(VectorX<double>::Constant(1, 0.5)));
  CHECK(rp.finite_support);
  CHECK(rp.last_nonzero_order == 3);
  for (const auto& row : rp.rows)
    if (row.order > 3) CHECK(row.seminorm == 0.0);

  const auto geo = laurent_coefficients<double>([](const Point<double>& z) { return 1.0 / (1.0 - z[0]); }, disc, 16,
                                                64, at_radii({0.5}));
  const auto rg = coefficient_decay_report(geo, VectorX<double>(VectorX<double>::Constant(1, 0.5)));
  CHECK(std::abs(rg.decay_rate - std::log(2.0)) < 1e-9);
  CHECK_FALSE(rg.super_geometric);
  for (const auto& row : rg.rows)
    if (row.alpha[0] >= 0) CHECK(std::abs(row.seminorm - std::ldexp(1.0, -row.alpha[0])) < 1e-12);

  const auto ex = laurent_coefficients<long double>([](const Point<long double>& z) { return std::exp(z[0]); }, disc,
                                                    16, 64, at_radii({0.9}));
  const auto re = coefficient_decay_report(ex, VectorX<long double>(VectorX<long double>::Constant(1, 1.0L)));
  CHECK(re.super_geometric);
  for (const auto& row : re.rows)
    if (row.alpha[0] >= 0 && row.alpha[0] <= 12)
      CHECK(std::abs(static_cast<double>(row.seminorm) * factorial(row.alpha[0]) - 1.0) < 1e-9);
}

TEST_CASE("circle_average") {
  CHECK(std::abs(circle_average<double>({2}, pt({2.0}), VectorX<double>::Constant(1, 1.0), 64) - 4.0) < 1e-13);
  CHECK(std::abs(circle_average<double>({-1}, pt({2.0}), VectorX<double>::Constant(1, 1.0), 64) - 0.5) < 1e-13);
  CHECK(std::abs(circle_average<double>({1, -1}, pt({1.0, 2.0}), VectorX<double>::Constant(2, 0.5), 64) - 0.5) < 1e-13);
  CHECK_THROWS_AS(circle_average<double>({-1}, pt({2.0}), VectorX<double>::Constant(1, 2.0), 64), PreconditionError);
  // Beyond the precondition the mean of 1/w over a circle enclosing 0 vanishes.
  CHECK_THROWS_AS(circle_average<double>({-1}, pt({0.5}), VectorX<double>::Constant(1, 1.0), 64), PreconditionError);

  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 3);
    MultiIndex alpha(std::vector<int>(static_cast<std::size_t>(n)));
    Point<double> z(n);
    VectorX<double> rho(n);
    for (int j = 0; j < n; ++j) {
      alpha[static_cast<std::size_t>(j)] = static_cast<int>(rng() % 9) - 4;
      z[j] = std::polar(0.5 + 1.5 * unit_interval(rng()), 6.283 * unit_interval(rng()));
      rho[j] = 0.7 * std::abs(z[j]) * unit_interval(rng());
    }
    CHECK(std::abs(circle_average(alpha, z, rho, 256) - monomial(alpha, z)) <= 1e-10);
  }
}

TEST_CASE("missing_monomials_bergman") {
  SUBCASE("unit disc and punctured disc") {
    for (const auto& d : {corpus::unit_disc(), corpus::punctured_disc()}) {
      const auto v = missing_monomials_bergman(d, BergmanWeight::unweighted(2, 1), 6);
      CHECK(v.method == "exact");
      for (const auto& [a, verdict] : v.verdicts) {
        const bool oracle = radial_finite(2LL * a[0] + 1);
        CHECK((verdict == Integrability::Integrable) == oracle);
        CHECK((a[0] >= 0) == oracle);
      }
    }
  }
  SUBCASE("Hartogs triangle") {
    const auto v = missing_monomials_bergman(corpus::hartogs_triangle(), BergmanWeight::unweighted(2, 2), 6);
    CHECK(v.verdicts.size() == 169);
    for (const auto& [a, verdict] : v.verdicts) {
      CHECK((verdict == Integrability::Integrable) == hartogs_triangle_oracle(a[0], a[1]));
      CHECK((verdict == Integrability::Integrable) == (a[0] >= 0 && a[0] + a[1] >= -1));
    }
  }
  SUBCASE("annulus: everything integrable") {
    const auto v = missing_monomials_bergman(corpus::annulus(), BergmanWeight::unweighted(2, 1), 5);
    CHECK(v.integrable.size() == 11);
  }
  SUBCASE("weighted and non-integral exponents") {
    // lambda = r^2 on the disc: int r^(2n+3) dr finite iff n >= -1.
    const auto v = missing_monomials_bergman(corpus::unit_disc(), BergmanWeight::power_law(2, {2.0}), 4);
    for (const auto& [a, verdict] : v.verdicts) CHECK((verdict == Integrability::Integrable) == (a[0] >= -1));
    // p = 1.5: int r^(1.5 n + 1) dr finite iff 1.5 n + 2 > 0, i.e. n >= -1.
    const auto w = missing_monomials_bergman(corpus::unit_disc(), BergmanWeight::unweighted(1.5, 1), 4);
    for (const auto& [a, verdict] : w.verdicts) CHECK((verdict == Integrability::Integrable) == (a[0] >= -1));
  }
  SUBCASE("numeric fallback agrees with the exact test") {
    BergmanWeight w;
    w.p = 2;
    w.radial_weight = [](const Eigen::VectorXd&) { return 1.0; };
    for (const auto& d : {corpus::unit_disc(), corpus::hartogs_triangle()}) {
      const auto numeric = missing_monomials_bergman(d, w, 3);
      const auto exact = missing_monomials_bergman(d, BergmanWeight::unweighted(2, d.dimension()), 3);
      CHECK(numeric.method == "numeric");
      CHECK(numeric.indeterminate == 0);
      CHECK(numeric.integrable == exact.integrable);
    }
  }
  CHECK_THROWS_AS(missing_monomials_bergman(corpus::unit_disc(), BergmanWeight::unweighted(0.5, 1), 2),
                  PreconditionError);
}

TEST_CASE("missing_monomials_smooth_boundary") {
  const auto c = missing_monomials_smooth_boundary(corpus::hartogs_triangle(), 2);
  CHECK(c.nonnegative == std::vector<bool>{true, true});
  CHECK(c.allowed.size() == 9);
  for (const auto& a : c.allowed) CHECK((a[0] >= 0 && a[1] >= 0));
  const auto w = smooth_boundary_witness(c, {2, -1});
  CHECK_FALSE(w.allowed);
  CHECK(w.gamma == MultiIndex{0, 1});
  CHECK(w.beta == MultiIndex{2, 0});
  CHECK(missing_monomials_smooth_boundary(corpus::annulus(), 2).allowed.size() == 5);
  CHECK(missing_monomials_smooth_boundary(corpus::l_shape(), 1).allowed.size() == 9);
}
