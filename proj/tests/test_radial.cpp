#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "dmatel/errors.hpp"
#include "dmatel/numerics.hpp"
#include "dmatel/oracle.hpp"
#include "dmatel/radial.hpp"
#include "oracle_compare.hpp"
#include "test_util.hpp"
#include <cmath>
#include <numbers>

using namespace dmatel;
using namespace dmatel::radial;
using dmatel::test::rel_err;
using dmatel::test::quad_bb;
using dmatel::test::quad_bf;
using dmatel::test::quad_hl;
using dmatel::test::quad_laplace;
using states::BoundDecomposition;
using states::FreeDecomposition;
constexpr double pi = std::numbers::pi;
const cplx I{0.0, 1.0};

namespace {

states::PhysicalConstants with_z(int Z) {
  states::PhysicalConstants c;
  c.Z = Z;
  return c;
}

} // namespace

TEST_CASE("hankel_laplace: closed forms and preconditions") {
  CHECK(rel_err(hankel_laplace({1.0, 0.0, 3.0, 4.0}).value, 0.2) < 1e-14);
  CHECK(rel_err(hankel_laplace({2.0, 0.0, 1.0, 1.0}).value, std::pow(2.0, -1.5)) < 1e-14);
  CHECK_THROWS_AS(hankel_laplace({-0.5, 0.0, 1.0, 1.0}), PreconditionError);
  CHECK_THROWS_AS(hankel_laplace({1.0, 0.0, cplx(0.0, 1.0), 1.0}), PreconditionError);
  // nu = 1/2 is elementary: J_1/2(x) = sqrt(2/(pi x)) sin x, and mu = 1/2
  // leaves int e^(-a r) sin(b r)/r dr = atan(b/a)
  const double a = 0.7, b = 1.3;
  CHECK(rel_err(hankel_laplace({0.5, 0.5, a, b}).value,
                std::sqrt(2.0 / (pi * b)) * std::atan(b / a)) < 1e-13);
}

TEST_CASE("hankel_laplace: scaling and oracle agreement") {
  test::Rng rng(11);
  for (int i = 0; i < 40; ++i) {
    const double nu = rng.integer(0, 6) + 0.5 * rng.integer(0, 1);
    const cplx mu = rng.uniform(0.2, 6.0);
    const double a = rng.uniform(0.2, 3.0), b = rng.uniform(0.05, 5.0);
    const double c = rng.uniform(0.1, 10.0);
    const HankelLaplaceSpec h{mu, nu, a, b};
    const cplx v = hankel_laplace(h).value;
    const cplx scaled = hankel_laplace({mu, nu, c * a, c * b}).value;
    CHECK(rel_err(scaled, std::pow(c, -mu) * v) < 1e-12);
    if (i < 15)
      CHECK(rel_err(v, quad_hl(h)) < 1e-8);
  }
}

TEST_CASE("laplace_1f1: closed forms, preconditions, conjugation") {
  CHECK(rel_err(laplace_1f1({1.3, 2.1, 2.0, 0.0, 1.0}).value, 1.0) < 1e-15);
  CHECK(rel_err(laplace_1f1({1.5, 1.5, 2.0, 0.3, 1.0}).value, 1.0 / 0.49) < 1e-14);
  CHECK_THROWS_AS(laplace_1f1({1.5, 1.5, 2.0, 0.3, cplx(0.0, 1.0)}), PreconditionError);
  CHECK_THROWS_AS(laplace_1f1({1.5, 1.5, -0.2, 0.3, 1.0}), PreconditionError);
  const Laplace1F1Spec s{cplx(1.2, 0.4), cplx(2.7, -0.3), cplx(1.9, 0.2), cplx(0.1, 0.8),
                         cplx(1.1, 0.6)};
  const Laplace1F1Spec sc{std::conj(s.a), std::conj(s.c), std::conj(s.b), std::conj(s.p),
                          std::conj(s.s)};
  CHECK(rel_err(laplace_1f1(sc).value, std::conj(laplace_1f1(s).value)) < 1e-14);
  CHECK(rel_err(laplace_1f1(s).value, quad_laplace(s)) < 1e-9);
}

TEST_CASE("laplace_1f1_sinc: examples") {
  // p = 0: int e^(-r) r sin(r)/r dr = Im 1/(1-i) = 1/2
  CHECK(rel_err(laplace_1f1_sinc({1.0, 2.0, 2.0, 0.0, 1.0, 1.0}).value, 0.5) < 1e-14);
  // k -> 0 reproduces the plain Laplace rule
  const Laplace1F1Spec small{1.2, 2.4, 2.0, 0.2, 1.0, 1e-4};
  Laplace1F1Spec plain = small;
  plain.k = 0.0;
  CHECK(rel_err(laplace_1f1_sinc(small).value, laplace_1f1(plain).value) < 1e-6);
  const Laplace1F1Spec generic{cplx(1.5, 0.5), 3.1, 2.6, cplx(0.0, 0.4), 1.0, 0.8};
  const auto g = laplace_1f1_sinc(generic);
  CHECK(g.path == Path::laplace_1f1_sinc);
  CHECK(rel_err(g.value, quad_laplace(generic)) < 1e-8);
  // b = 1 sits on the pole of Gamma(b-1)
  const Laplace1F1Spec unit{1.2, 2.4, 1.0, 0.2, 1.0, 0.9};
  CHECK(rel_err(laplace_1f1_sinc(unit).value, quad_laplace(unit)) < 1e-8);
  CHECK_THROWS_AS(laplace_1f1_sinc({1.2, 2.4, 1.0, 0.2, 1.0, 0.0}), PreconditionError);
}

TEST_CASE("laplace_1f1_sinc: cancellation at tiny k") {
  const Laplace1F1Spec s{1.2, 2.4, 2.0, 0.2, 1.0, 1e-8};
  const auto r = laplace_1f1_sinc(s);
  CHECK(r.cancellation_warning);
  CHECK(r.cancellation_ratio < 1e-6);
  CHECK(rel_err(r.value, quad_laplace(s)) < 1e-5);
  // and no warning at ordinary k
  CHECK_FALSE(laplace_1f1_sinc({1.2, 2.4, 2.0, 0.2, 1.0, 0.5}).cancellation_warning);
}

TEST_CASE("laplace rules: randomized oracle agreement") {
  test::Rng rng(12);
  for (int i = 0; i < 24; ++i) {
    Laplace1F1Spec s;
    s.a = cplx(rng.uniform(0.5, 3.0), rng.uniform(-1.0, 1.0));
    s.c = rng.uniform(1.5, 4.0);
    s.b = rng.uniform(0.6, 4.0);
    s.s = cplx(rng.uniform(0.8, 2.0), rng.uniform(-1.0, 1.0));
    s.p = rng.complex_in_disk(0.6 * s.s.real());
    s.k = (i % 2) ? rng.uniform(0.05, 3.0) : 0.0;
    const auto r = laplace_1f1(s);
    CHECK_MESSAGE(rel_err(r.value, quad_laplace(s)) < 1e-7, "draw " << i);
  }
}

TEST_CASE("bessel split coefficients rebuild j_l") {
  for (int l = 0; l <= 6; ++l)
    for (double x : {2.5, 7.0, 19.0}) {
      cplx sum = 0.0;
      for (int sg : {+1, -1})
        for (int j = 0; j <= l; ++j)
          sum += bessel_split_coefficient(l, sg, j) * std::polar(1.0, sg * x) *
                 std::pow(x, -j - 1.0);
      CHECK(std::abs(sum.imag()) < 1e-14);
      CHECK(std::abs(sum.real() - numerics::sph_bessel(l, x)) < 1e-13);
    }
  CHECK(bessel_split_coefficient(2, 1, 3) == cplx(0.0));
}

TEST_CASE("radial_bound_bound") {
  const auto c = with_z(1);
  const auto s1 = states::bound_decomposition({0, -1, 1}, c);
  const auto s2 = states::bound_decomposition({1, -1, 1}, c);
  // k = 0: g1 g1 + f1 f1 integrates to the norm
  const double norm = radial_bound_bound(s1, Component::large, s1, Component::large, 0, 0.0)
                          .value.real() +
                      radial_bound_bound(s1, Component::small, s1, Component::small, 0, 0.0)
                          .value.real();
  CHECK(std::abs(norm - 1.0) < 1e-12);
  CHECK(rel_err(radial_bound_bound(s1, Component::large, s2, Component::large, 0, 0.0).value,
                quad_bb(s1, Component::large, s2, Component::large, 0, 0.0)) < 1e-9);
  CHECK(radial_bound_bound(s1, Component::large, s2, Component::large, 2, 0.0).value == 0.0);
  const double k = c.za();
  const auto g = radial_bound_bound(s2, Component::large, s1, Component::large, 0, k);
  CHECK(g.path == Path::hankel_laplace);
  CHECK(rel_err(g.value, quad_bb(s2, Component::large, s1, Component::large, 0, k)) < 1e-8);

  test::Rng rng(13);
  for (int i = 0; i < 16; ++i) {
    const auto cc = with_z(rng.integer(1, 92));
    const int k1 = rng.integer(0, 1) ? -1 - rng.integer(0, 1) : 1 + rng.integer(0, 1);
    const int k2 = rng.integer(0, 1) ? -1 - rng.integer(0, 1) : 1 + rng.integer(0, 1);
    const auto b1 = states::bound_decomposition({rng.integer(k1 > 0, 2), k1, 1}, cc);
    const auto b2 = states::bound_decomposition({rng.integer(k2 > 0, 2), k2, 1}, cc);
    const int l = rng.integer(0, 4);
    const double kk = std::exp(rng.uniform(std::log(0.01), std::log(5.0))) * b1.lambda;
    const auto x = Component(rng.integer(0, 1)), y = Component(rng.integer(0, 1));
    const auto r = radial_bound_bound(b1, x, b2, y, l, kk);
    CHECK_MESSAGE(rel_err(r.value, quad_bb(b1, x, b2, y, l, kk)) < 1e-8, "draw " << i);
  }
}

TEST_CASE("radial_bound_free: generic case and routes") {
  const auto c = with_z(1);
  const auto b = states::bound_decomposition({0, -1, 1}, c);
  const auto f = states::free_decomposition({0.5 * c.za(), -1, 1}, c);
  for (double k : {0.02, 0.5, 1.0, 3.0}) {
    const double kk = k * c.za();
    const auto r = radial_bound_free(b, Component::large, f, Component::large, 0, kk);
    CHECK(r.value.imag() == 0.0);
    CHECK(rel_err(r.value, quad_bf(b, Component::large, f, Component::large, 0, kk)) < 1e-7);
    CHECK(r.ascending_series == (kk < 0.9 * std::hypot(b.lambda, f.p)));
  }
  // near the critical charge the l = 0 split power drops below 1.25 and the
  // sinc rule takes over
  const auto ch = with_z(118);
  const auto bh = states::bound_decomposition({0, -1, 1}, ch);
  const auto fh = states::free_decomposition({0.4, -1, 1}, ch);
  const auto rh = radial_bound_free(bh, Component::small, fh, Component::small, 0, 1.5);
  CHECK(rh.path == Path::laplace_1f1_sinc);
  CHECK(rel_err(rh.value, quad_bf(bh, Component::small, fh, Component::small, 0, 1.5)) < 1e-8);
}

TEST_CASE("radial_bound_free: with the 1F1 switched off it is the sinc rule") {
  BoundDecomposition b;
  b.gamma = 0.5;
  b.lambda = 0.8;
  b.g_coef = {1.0};
  b.f_coef = {0.0};
  FreeDecomposition f;
  f.gamma = 0.5;
  f.p = 0.3;
  f.a = 0.0; // 1F1(0; c; z) = 1
  f.c = 2.0;
  f.G = cplx(0.4, -0.2);
  f.F = 0.0;
  const double k = 1.1;
  const auto r = radial_bound_free(b, Component::large, f, Component::large, 0, k);
  CHECK(r.path == Path::laplace_1f1_sinc);
  const cplx s{b.lambda, f.p};
  const auto ref = laplace_1f1_sinc({0.0, 2.0, 2.0, cplx(0.0, 2.0 * f.p), s, k});
  CHECK(rel_err(r.value, 2.0 * (f.G * ref.value).real()) < 1e-14);
}

TEST_CASE("radial_bound_free: forward-overlap spike") {
  // continuum at vanishing charge: the l = 0 overlap peaks where k meets p
  auto free_c = with_z(0);
  const auto b = states::bound_decomposition({0, -1, 1}, with_z(1));
  const double p = 20.0 * b.lambda;
  const auto f = states::free_decomposition({p, -1, 1}, free_c);
  const double at_p =
      std::abs(radial_bound_free(b, Component::large, f, Component::large, 0, p).value);
  const double at_2p =
      std::abs(radial_bound_free(b, Component::large, f, Component::large, 0, 2.0 * p).value);
  CHECK(at_p > 5.0 * at_2p);
}

TEST_CASE("radial_bound_free: randomized oracle agreement") {
  test::Rng rng(14);
  int flagged = 0;
  for (int i = 0; i < 24; ++i) {
    const auto cc = with_z(rng.integer(1, 92));
    const int k1 = rng.integer(0, 1) ? -1 - rng.integer(0, 1) : 1 + rng.integer(0, 1);
    const int k2 = rng.integer(0, 1) ? -1 - rng.integer(0, 2) : 1 + rng.integer(0, 2);
    const auto b = states::bound_decomposition({rng.integer(k1 > 0, 2), k1, 1}, cc);
    const double p = std::exp(rng.uniform(std::log(0.1), std::log(5.0))) * b.lambda;
    const auto f = states::free_decomposition({p, k2, 1}, cc);
    const int l = rng.integer(0, 3);
    const double k = std::exp(rng.uniform(std::log(0.01), std::log(4.0))) *
                     std::hypot(b.lambda, p);
    const auto x = Component(rng.integer(0, 1)), y = Component(rng.integer(0, 1));
    const auto r = radial_bound_free(b, x, f, y, l, k);
    const double tol = r.cancellation_warning ? 1e-5 : 1e-7;
    flagged += r.cancellation_warning;
    CHECK_MESSAGE(rel_err(r.value, quad_bf(b, x, f, y, l, k)) < tol,
                  "draw " << i << " Z=" << cc.Z << " l=" << l);
  }
  MESSAGE("flagged draws: " << flagged);
}
