#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "dmatel/errors.hpp"
#include "dmatel/matel.hpp"
#include "dmatel/oracle.hpp"
#include "dmatel/radial.hpp"
#include "oracle_compare.hpp"
#include "test_util.hpp"
#include <cmath>
#include <numbers>

using namespace dmatel;
using namespace dmatel::oracle;
using dmatel::test::rel_err;
constexpr auto ylm = dmatel::test::oracle_ylm;

namespace {

struct HankelCase {
  double mu, nu;
  cplx alpha;
  double beta;
};

//! (beta/2alpha)^nu Gamma(nu+mu) / (alpha^mu Gamma(nu+1)) 2F1(...; -beta^2/alpha^2)
cplx hankel_series(const HankelCase &h) {
  const cplx z = -h.beta * h.beta / (h.alpha * h.alpha);
  const auto f = series_hyp(HypKind::f21,
                            {0.5 * (h.nu + h.mu), 0.5 * (1.0 + h.mu + h.nu), h.nu + 1.0}, z);
  return std::pow(h.beta / (2.0 * h.alpha), h.nu) * std::tgamma(h.nu + h.mu) /
         (std::pow(h.alpha, h.mu) * std::tgamma(h.nu + 1.0)) * f.value;
}

cplx hankel_quad(const HankelCase &h) {
  OracleConfig cfg;
  cfg.oscillation_period_hint = 2.0 * std::numbers::pi / h.beta;
  return quad_radial(
             [&](double r) {
               return std::exp(-h.alpha * r) * std::pow(r, h.mu - 1.0) *
                      std::cyl_bessel_j(h.nu, h.beta * r);
             },
             cfg)
      .value;
}

} // namespace

TEST_CASE("series_hyp reference values") {
  const auto ln2 = series_hyp(HypKind::f21, {1.0, 1.0, 2.0}, -1.0);
  CHECK(rel_err(ln2.value, std::log(2.0)) < 2.5e-16);
  CHECK(ln2.tail_bound < 1e-35);
  const auto e1 = series_hyp(HypKind::f11, {1.0, 2.0}, 1.0);
  CHECK(rel_err(e1.value, std::expm1(1.0)) < 2.5e-16);
  CHECK(e1.tail_bound < 1e-35);
  CHECK(series_hyp(HypKind::f21, {0.3, cplx(1, 2), 1.7}, 0.0).value == cplx(1.0));
  CHECK(series_hyp(HypKind::f11, {cplx(0.2, 3), 0.5}, 0.0).value == cplx(1.0));
  // 1F1(a; a; z) = e^z
  CHECK(rel_err(series_hyp(HypKind::f11, {cplx(0.7, -1.2), cplx(0.7, -1.2)}, cplx(2, 1)).value,
                std::exp(cplx(2, 1))) < 1e-15);
  CHECK_THROWS_AS(series_hyp(HypKind::f21, {1.0, 1.0, 2.0}, 0.95), NoConvergence);
}

TEST_CASE("quad_radial elementary integrals") {
  CHECK(rel_err(quad_radial([](double r) { return cplx(std::exp(-r)); }).value, 1.0) < 1e-13);
  CHECK(rel_err(quad_radial([](double r) { return cplx(std::exp(-r) * std::sin(r)); }).value, 0.5) <
        1e-13);
  CHECK(rel_err(hankel_quad({1.0, 0.0, 3.0, 4.0}), 0.2) < 1e-12);
  CHECK(rel_err(quad_interval([](double r) { return cplx(r * r); }, 0.0, 3.0).value, 9.0) < 1e-14);
}

TEST_CASE("oracle self-consistency on Hankel-Laplace integrals") {
  const HankelCase cases[] = {
      {1.0, 0.0, 3.0, 4.0},  {2.0, 1.0, 1.0, 1.0},           {1.5, 0.5, 2.0, 1.0},
      {3.0, 2.0, 1.3, 0.7},  {2.5, 1.0, cplx(1.0, 0.5), 0.8}, {4.0, 3.0, 2.0, 2.5},
      {1.2, 0.0, 0.9, 0.3},  {5.0, 2.0, cplx(2.0, -1.0), 1.5},
  };
  for (const auto &h : cases) {
    const cplx want = hankel_series(h);
    CHECK(rel_err(hankel_quad(h), want) < 1e-12);
    const auto prod = radial::hankel_laplace({h.mu, h.nu, h.alpha, h.beta});
    CHECK(rel_err(prod.value, want) < 1e-12);
  }
}

TEST_CASE("sphere quadrature") {
  const SphereRule rule(12, 24);
  CHECK(rel_err(quad_sphere([](double t, double p) { return std::norm(ylm(0, 0, t, p)); }, rule),
                1.0) < 1e-14);
  CHECK(rel_err(quad_sphere([](double t, double p) { return ylm(0, 0, t, p); }, rule),
                std::sqrt(4.0 * std::numbers::pi)) < 1e-14);
  CHECK(std::abs(quad_sphere(
            [](double t, double p) { return std::conj(ylm(1, 0, t, p)) * ylm(2, 0, t, p); },
            rule)) < 1e-12);
  // orthonormality over a block, also in a rotated frame
  const SphereRule rotated(12, 24, {0.3, 1.1, -0.4});
  for (const auto *r : {&rule, &rotated})
    for (int l1 = 0; l1 <= 4; ++l1)
      for (int m1 = -l1; m1 <= l1; ++m1)
        for (int l2 = 0; l2 <= 4; ++l2)
          for (int m2 = -l2; m2 <= l2; ++m2) {
            const cplx v = quad_sphere(
                [&](double t, double p) { return std::conj(ylm(l1, m1, t, p)) * ylm(l2, m2, t, p); },
                *r);
            CHECK(std::abs(v - cplx(l1 == l2 && m1 == m2 ? 1.0 : 0.0)) < 1e-12);
          }
}

TEST_CASE("3D matrix element at k = 0 is the norm") {
  states::PhysicalConstants c;
  c.Z = 30;
  for (auto s : {states::BoundState{0, -1, 1}, states::BoundState{1, 1, -1},
                 states::BoundState{0, -2, 3}}) {
    const auto o = matel::make_orbital(s, c);
    const OracleSpinor sp{o.kappa, o.two_m, [d = o.bd](double r) { return d.eval(r); }};
    cplx sum = 0.0;
    for (int i = 1; i <= 4; ++i)
      sum += quad_matel_3d(sp, sp, i, i, {0.0, 0.0, 0.0}).value;
    CHECK(rel_err(sum, 1.0) < 1e-10);
  }
}

TEST_CASE("spinor components follow the spin-angle functions") {
  // kappa = -1, m = 1/2: Omega = Y00 (1, 0)
  const OracleSpinor s{-1, 1, [](double) { return states::RadialPair{2.0, 3.0}; }};
  const auto psi = dirac_spinor(s, 0.7, 0.4, 1.3);
  CHECK(std::abs(psi[0] - 2.0 / std::sqrt(4.0 * std::numbers::pi)) < 1e-15);
  CHECK(std::abs(psi[1]) < 1e-15);
  // lower: i f Omega_{1,1/2}, norm |f| |Y_1|-weighted sum = 3^2/(4 pi)
  CHECK(std::abs(std::norm(psi[2]) + std::norm(psi[3]) - 9.0 / (4.0 * std::numbers::pi)) < 1e-14);
}
