#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "dmatel/errors.hpp"
#include "dmatel/numerics.hpp"
#include "dmatel/oracle.hpp"
#include "dmatel/states.hpp"
#include "test_util.hpp"
#include <cmath>
#include <numbers>

using namespace dmatel;
using namespace dmatel::states;
using dmatel::test::rel_err;
constexpr double pi = std::numbers::pi;

namespace {

PhysicalConstants with_za(double za) {
  PhysicalConstants c;
  c.Z = 1;
  c.alpha = za;
  return c;
}

// Relative residual of the radial Dirac equations by central differences.
template <class Eval>
double ode_residual(Eval eval, int kappa, double E, double za, double r,
                    double h) {
  const auto v = eval(r), vp = eval(r + h), vm = eval(r - h);
  const double gp = (vp.g - vm.g) / (2 * h), fp = (vp.f - vm.f) / (2 * h);
  const double V = -za / r;
  const double r1 = gp - (-(1.0 + kappa) / r * v.g + (E + 1.0 - V) * v.f);
  const double r2 = fp - (-(1.0 - kappa) / r * v.f - (E - 1.0 - V) * v.g);
  const double scale = (std::abs(v.g) + std::abs(v.f)) * (1.0 / r + std::abs(E) + 1.0);
  return std::max(std::abs(r1), std::abs(r2)) / scale;
}

} // namespace

TEST_CASE("quantum number bookkeeping") {
  CHECK(orbital_l(-1) == 0);
  CHECK(orbital_l(1) == 1);
  CHECK(orbital_l(-2) == 1);
  CHECK(orbital_l(2) == 2);
  CHECK(orbital_lbar(-1) == 1);
  CHECK(orbital_lbar(1) == 0);
  for (int k : {-4, -3, -2, -1, 1, 2, 3, 4}) {
    const double j = total_j(k);
    CHECK(j == std::abs(k) - 0.5);
    const int l = orbital_l(k);
    // l = j - 1/2 for kappa < 0, j + 1/2 for kappa > 0
    CHECK(l == (k < 0 ? j - 0.5 : j + 0.5));
    CHECK(state_type(k) == (k < 0 ? StateType::first : StateType::second));
  }
  CHECK_THROWS_AS((BoundState{0, 1, 1}.validate()), DomainError);
  CHECK_THROWS_AS((BoundState{0, -1, 3}.validate()), DomainError);
  CHECK_THROWS_AS((BoundState{0, -1, 0}.validate()), DomainError);
  CHECK_THROWS_AS((FreeState{0.0, -1, 1}.validate()), DomainError);
  CHECK_NOTHROW((BoundState{1, 2, -3}.validate()));
}

TEST_CASE("gamma_kappa") {
  CHECK(gamma_kappa(-1, with_za(0.0)) == 1.0);
  CHECK(std::abs(gamma_kappa(2, with_za(0.5)) - std::sqrt(3.75)) < 1e-15);
  CHECK_THROWS_AS(gamma_kappa(-1, with_za(1.0)), SubcriticalError);
  PhysicalConstants c;
  CHECK(c.a0() * c.m_e * c.alpha == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("bound_energy") {
  const auto c = with_za(0.5);
  CHECK(std::abs(bound_energy({0, -1, 1}, c) - std::sqrt(0.75)) < 1e-15);
  CHECK(bound_energy({1, 1, 1}, c) == bound_energy({1, -1, 1}, c));
  CHECK(std::abs(bound_energy({0, -1, 1}, with_za(1e-9)) - 1.0) < 1e-15);
  for (int k : {-2, -1, 1, 2}) {
    double prev = 0.0;
    for (int n = (k > 0 ? 1 : 0); n < 8; ++n) {
      const double e = bound_energy({n, k, 1}, c);
      CHECK(e > prev);
      CHECK(e < 1.0);
      prev = e;
    }
  }
  // decomposition uses E = m (n_r + gamma)/N; same number
  PhysicalConstants h;
  h.Z = 3;
  for (int n = 0; n < 4; ++n)
    CHECK(rel_err(bound_decomposition({n + 1, 2, 1}, h).energy,
                  bound_energy({n + 1, 2, 1}, h)) < 1e-15);
}

TEST_CASE("bound states are normalized") {
  for (int Z : {1, 20, 80}) {
    PhysicalConstants c;
    c.Z = Z;
    for (auto [n, k] : {std::pair{0, -1}, {1, -1}, {1, 1}, {2, -2}, {3, 2}, {0, -3}}) {
      const auto d = bound_decomposition({n, k, 1}, c);
      const auto q = oracle::quad_radial([&](double r) {
        const auto v = d.eval(r);
        return cplx(r * r * (v.g * v.g + v.f * v.f));
      });
      CHECK(std::abs(q.value.real() - 1.0) < 1e-10);
    }
  }
}

TEST_CASE("bound states: orthogonality at equal kappa") {
  PhysicalConstants c;
  c.Z = 10;
  for (int k : {-1, 1, -2}) {
    const int n0 = k > 0 ? 1 : 0;
    for (int n1 = n0; n1 < n0 + 3; ++n1)
      for (int n2 = n1 + 1; n2 < n0 + 4; ++n2) {
        const auto d1 = bound_decomposition({n1, k, 1}, c);
        const auto d2 = bound_decomposition({n2, k, 1}, c);
        const auto q = oracle::quad_radial([&](double r) {
          const auto a = d1.eval(r), b = d2.eval(r);
          return cplx(r * r * (a.g * b.g + a.f * b.f));
        });
        CHECK(std::abs(q.value) < 1e-8);
      }
  }
}

TEST_CASE("bound states satisfy the radial Dirac equation") {
  PhysicalConstants c;
  c.Z = 40;
  for (auto [n, k] : {std::pair{0, -1}, {2, -1}, {1, 1}, {2, 3}, {0, -2}}) {
    const auto d = bound_decomposition({n, k, 1}, c);
    for (double r : {0.01, 0.1, 1.0}) {
      const double res = ode_residual([&](double x) { return d.eval(x); }, k,
                                      d.energy, c.za(), r / d.lambda, 1e-4 * r / d.lambda);
      CHECK(res < 1e-7);
    }
  }
}

TEST_CASE("bound states: small-r power and Schroedinger limit") {
  PhysicalConstants c;
  const auto d = bound_decomposition({0, -1, 1}, c);
  const double r = 1e-6;
  // the exponential adds lambda r / 2 to the log ratio
  const double slope = std::log(d.eval(r).g / d.eval(r / 2).g) + d.lambda * r / 2;
  CHECK(std::abs(slope - (d.gamma - 1.0) * std::log(2.0)) < 1e-12);
  CHECK(d.eval(r).g > 0.0);
  // 1s: R(r) = 2 (Z/a0)^(3/2) e^(-Zr/a0)
  const double a0 = c.a0();
  const double want = 2.0 * std::pow(1.0 / a0, 1.5) * std::exp(-1.0);
  CHECK(std::abs(bound_radial({0, -1, 1}, a0, c).g / want - 1.0) <
        5.0 * c.za() * c.za());
}

TEST_CASE("continuum states: Dirac equation and reality") {
  dmatel::test::Rng rng(5);
  for (int Z : {1, 30}) {
    PhysicalConstants c;
    c.Z = Z;
    for (int k : {-2, -1, 1, 2}) {
      for (int trial = 0; trial < 4; ++trial) {
        const double p = std::exp(rng.uniform(std::log(0.05), std::log(3.0)));
        const double r = std::exp(rng.uniform(std::log(0.1), std::log(200.0)));
        const auto d = free_decomposition({p, k, 1}, c);
        const double h = 1e-4 * std::min(r, 1.0 / (p + c.za() / r));
        CHECK(ode_residual([&](double x) { return d.eval(x); }, k, d.energy,
                           c.za(), r, h) < 1e-7);
        // the two Kummer-conjugate halves, computed independently, add up to a
        // real number
        const cplx z{0.0, 2.0 * p * r};
        const cplx env = std::pow(r, d.gamma - 1.0);
        const cplx plus = d.G * env * std::polar(1.0, -p * r) *
                          numerics::hyp1f1(d.a, d.c, z).value;
        const cplx minus = std::conj(d.G) * env * std::polar(1.0, p * r) *
                           numerics::hyp1f1(std::conj(d.a), d.c, -z).value;
        const cplx g = plus + minus;
        CHECK(std::abs(g.imag()) <= 1e-12 * std::abs(g.real()));
        CHECK(rel_err(g.real(), d.eval(r).g) < 1e-12);
      }
    }
  }
}

TEST_CASE("continuum states: free-particle limit") {
  PhysicalConstants c;
  c.Z = 0;
  for (int k : {-1, 1, -3, 2})
    for (double p : {0.05, 0.7, 4.0})
      for (double x : {0.3, 2.3, 17.0}) {
        const double r = x / p;
        const double W = std::hypot(1.0, p);
        const auto v = free_radial({p, k, 1}, r, c);
        const double jl = numerics::sph_bessel(orbital_l(k), x);
        const double jlb = numerics::sph_bessel(orbital_lbar(k), x);
        const double scale = std::sqrt(2.0 / pi) * p;
        CHECK(rel_err(v.g, std::sqrt((W + 1) / (2 * W)) * scale * jl) < 1e-8);
        // small component: -sign(kappa) sqrt((W-1)/2W) ... j_lbar
        CHECK(std::abs(std::abs(v.f) - std::sqrt((W - 1) / (2 * W)) * scale * std::abs(jlb)) <
              1e-8 * scale);
      }
}

TEST_CASE("continuum states: unit momentum-scale normalization") {
  // pi r^2 [W/(W+m) g^2 + W/(W-m) f^2] -> 1 at large r
  for (int Z : {1, 10})
    for (int k : {-1, 2})
      for (double p : {0.2, 1.5}) {
        PhysicalConstants c;
        c.Z = Z;
        const auto d = free_decomposition({p, k, 1}, c);
        const double W = d.energy;
        const double r = 2e4 / p;
        const auto v = d.eval(r);
        const double amp = pi * r * r * (W / (W + 1) * v.g * v.g + W / (W - 1) * v.f * v.f);
        CHECK(std::abs(amp - 1.0) < 2e-3 * (1.0 + d.y));
      }
}

TEST_CASE("continuum states: small-r power") {
  PhysicalConstants c;
  c.Z = 5;
  const auto d = free_decomposition({0.4, -1, 1}, c);
  const double r = 1e-6;
  CHECK(std::abs(std::log(d.eval(r).g / d.eval(r / 2).g) -
                 (d.gamma - 1.0) * std::log(2.0)) < 1e-7);
  // f/g -> (gamma + kappa)/(Z alpha)
  const auto v = d.eval(r);
  CHECK(rel_err(v.f / v.g, (d.gamma - 1.0) / c.za()) < 1e-5);
}
