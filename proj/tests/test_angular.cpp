#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "dmatel/angular.hpp"
#include "dmatel/errors.hpp"
#include "dmatel/numerics.hpp"
#include "dmatel/oracle.hpp"
#include "test_util.hpp"
#include <cmath>
#include <numbers>
#include <thread>

using namespace dmatel;
using namespace dmatel::angular;
using dmatel::test::rel_err;
constexpr double pi = std::numbers::pi;

TEST_CASE("sph_harm values") {
  CHECK(std::abs(sph_harm(0, 0, 0.4, 1.3) - 1.0 / std::sqrt(4 * pi)) < 1e-15);
  CHECK(std::abs(sph_harm(1, 0, 0.0, 0.0) - std::sqrt(3 / (4 * pi))) < 1e-15);
  // Y_11 = -sqrt(3/8pi) sin(theta) e^{i phi}
  const auto y = sph_harm(1, 1, 0.7, 0.3);
  CHECK(rel_err(y, -std::sqrt(3 / (8 * pi)) * std::sin(0.7) *
                       std::polar(1.0, 0.3)) < 1e-14);
  // Y_l,-m = (-1)^m conj(Y_lm)
  CHECK(rel_err(sph_harm(3, -2, 1.1, 2.0), std::conj(sph_harm(3, 2, 1.1, 2.0))) <
        1e-14);
  CHECK_THROWS_AS(sph_harm(2, 3, 0.1, 0.1), DomainError);
}

TEST_CASE("sph_harm orthonormality by sphere quadrature") {
  oracle::SphereRule rule(16, 32);
  const auto norm = oracle::quad_sphere(
      [](double t, double p) {
        return std::complex<double>(std::norm(sph_harm(3, 2, t, p)));
      },
      rule);
  CHECK(std::abs(norm - 1.0) < 1e-10);
  const auto cross = oracle::quad_sphere(
      [](double t, double p) {
        return std::conj(sph_harm(1, 0, t, p)) * sph_harm(2, 0, t, p);
      },
      rule);
  CHECK(std::abs(cross) < 1e-12);
}

TEST_CASE("wigner3j") {
  CHECK(std::abs(wigner3j(1, 1, 0, 1, -1, 0) - 1 / std::sqrt(3.0)) < 1e-15);
  CHECK(std::abs(wigner3j(2, 2, 2, 0, 0, 0) + std::sqrt(2.0 / 35.0)) < 1e-15);
  CHECK(wigner3j(1, 1, 3, 0, 0, 0) == 0.0);
  CHECK(wigner3j(1, 1, 1, 1, 0, 0) == 0.0);
}

TEST_CASE("gaunt_legendre examples and selection rules") {
  auto g = gaunt_legendre({0, 0, 0, 0, 0, 0});
  CHECK(g.value == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(g.vanishing_reason == VanishingReason::none);
  g = gaunt_legendre({1, 0, 0, 0, 0, 0});
  CHECK(g.value == 0.0);
  CHECK(g.vanishing_reason == VanishingReason::parity);
  g = gaunt_legendre({1, 0, 1, 0, 0, 0});
  CHECK(std::abs(g.value - 2.0 / 3.0) < 1e-15);
  g = gaunt_legendre({1, 1, 4, 0, 0, 0});
  CHECK(g.value == 0.0);
  CHECK(g.vanishing_reason == VanishingReason::triangle);
  // no sign combination of (1, 0, 0) vanishes
  CHECK_THROWS_AS(gaunt_legendre({1, 2, 1, 1, 0, 0}), UnsupportedM);
  CHECK_THROWS_AS(gaunt_legendre({1, 0, 0, 2, 0, 0}), DomainError);
}

TEST_CASE("gaunt_legendre against Gauss-Legendre quadrature") {
  std::vector<double> x, w;
  numerics::gauss_legendre(24, x, w);
  double worst = 0.0;
  for (int l1 = 0; l1 <= 5; ++l1)
    for (int l2 = 0; l2 <= 5; ++l2)
      for (int l3 = 0; l3 <= 5; ++l3)
        for (int m2 = -l2; m2 <= l2; ++m2)
          for (int m3 = -l3; m3 <= l3; ++m3) {
            const int m1 = m2 + m3;
            if (std::abs(m1) > l1)
              continue;
            double s = 0.0, scale = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) {
              const double p = numerics::assoc_legendre(l1, m1, x[i]) *
                               numerics::assoc_legendre(l2, m2, x[i]) *
                               numerics::assoc_legendre(l3, m3, x[i]);
              s += w[i] * p;
              scale += w[i] * std::abs(p);
            }
            const double g = gaunt_legendre({l1, l2, l3, m1, m2, m3}).value;
            worst = std::max(worst, std::abs(g - s) / std::max(scale, 1e-300));
          }
  CHECK(worst < 1e-13);
}

TEST_CASE("gaunt_legendre permutation symmetry") {
  for (int l1 = 0; l1 <= 4; ++l1)
    for (int l2 = 0; l2 <= 4; ++l2)
      for (int l3 = 0; l3 <= 4; ++l3)
        for (int m2 = -l2; m2 <= l2; ++m2)
          for (int m3 = -l3; m3 <= l3; ++m3) {
            const int m1 = m2 + m3;
            if (std::abs(m1) > l1)
              continue;
            const double a = gaunt_legendre({l1, l2, l3, m1, m2, m3}).value;
            CHECK(a == doctest::Approx(gaunt_legendre({l2, l1, l3, m2, m1, m3}).value)
                           .epsilon(1e-14));
            CHECK(a == doctest::Approx(gaunt_legendre({l3, l2, l1, m3, m2, m1}).value)
                           .epsilon(1e-14));
            if ((l1 + l2 + l3) % 2)
              CHECK(a == 0.0);
          }
}

TEST_CASE("gaunt_sph examples") {
  CHECK(std::abs(gaunt_sph(0, 0, 0, 0, 0, 0) - 1 / std::sqrt(4 * pi)) < 1e-15);
  auto v = gaunt_sph_value(1, 1, 0, 0, 0, 0);
  CHECK(v.value == 0.0);
  CHECK(v.vanishing_reason == VanishingReason::azimuthal);
  v = gaunt_sph_value(5, 0, 1, 0, 1, 0);
  CHECK(v.value == 0.0);
  CHECK(v.vanishing_reason == VanishingReason::parity);
  v = gaunt_sph_value(4, 0, 1, 0, 1, 0);
  CHECK(v.vanishing_reason == VanishingReason::triangle);
  // l=1,l1=1,l2=2 with m=mt1=0, mt2=0: sqrt(3*3*5/4pi) (1 1 2;000)^2
  const double want = std::sqrt(45 / (4 * pi)) * 2.0 / 15.0;
  CHECK(std::abs(gaunt_sph(1, 0, 1, 0, 2, 0) - want) < 1e-15);
}

TEST_CASE("gaunt_sph against sphere quadrature, l <= 4") {
  oracle::SphereRule rule(12, 24);
  double worst = 0.0;
  for (int l = 0; l <= 4; ++l)
    for (int l1 = 0; l1 <= 4; ++l1)
      for (int l2 = 0; l2 <= 4; ++l2)
        for (int mt1 = -l1; mt1 <= l1; ++mt1)
          for (int mt2 = -l2; mt2 <= l2; ++mt2)
            for (int m = -l; m <= l; ++m) {
              const auto q = oracle::quad_sphere(
                  [&](double t, double p) {
                    return std::conj(sph_harm(l, m, t, p)) *
                           std::conj(sph_harm(l1, mt1, t, p)) *
                           sph_harm(l2, mt2, t, p);
                  },
                  rule);
              worst = std::max(worst, std::abs(q - gaunt_sph(l, m, l1, mt1, l2, mt2)));
            }
  CHECK(worst < 1e-12);
}

TEST_CASE("memo table is transparent and thread safe") {
  gaunt_cache_clear();
  const double direct = gaunt_sph_uncached(3, 1, 2, -1, 3, 0).value;
  CHECK(gaunt_sph(3, 1, 2, -1, 3, 0) == direct);
  CHECK(gaunt_sph(3, 1, 2, -1, 3, 0) == direct);
  CHECK(gaunt_cache_size() == 1);

  std::vector<std::thread> pool;
  std::vector<int> bad(4, 0);
  for (int t = 0; t < 4; ++t)
    pool.emplace_back([t, &bad] {
      for (int l = 0; l <= 4; ++l)
        for (int l1 = 0; l1 <= 3; ++l1)
          for (int l2 = 0; l2 <= 3; ++l2)
            for (int mt1 = -l1; mt1 <= l1; ++mt1)
              for (int mt2 = -l2; mt2 <= l2; ++mt2) {
                const int m = mt2 - mt1;
                if (std::abs(m) > l)
                  continue;
                if (gaunt_sph(l, m, l1, mt1, l2, mt2) !=
                    gaunt_sph_uncached(l, m, l1, mt1, l2, mt2).value)
                  ++bad[t];
              }
    });
  for (auto &th : pool)
    th.join();
  for (int b : bad)
    CHECK(b == 0);
}
