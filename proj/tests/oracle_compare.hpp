#pragma once
// Brute-force counterparts of the closed-form radial rules, shared by the
// unit tests and the acceptance binary.
#include "dmatel/numerics.hpp"
#include "dmatel/oracle.hpp"
#include "dmatel/radial.hpp"
#include "test_util.hpp"
#include <cmath>
#include <numbers>

namespace dmatel::test {

using cplx = std::complex<double>;

//! Y_lm from the standard library (independent of angular::sph_harm).
inline cplx oracle_ylm(int l, int m, double theta, double phi) {
  const double v = std::sph_legendre(l, std::abs(m), theta);
  const double sign = (m < 0 && (m % 2)) ? -1.0 : 1.0;
  return sign * v * std::polar(1.0, m * phi);
}

inline cplx quad_hl(const radial::HankelLaplaceSpec &h) {
  oracle::OracleConfig cfg;
  const double osc = h.beta_osc + std::abs(h.alpha_decay.imag());
  if (osc > 0.0)
    cfg.oscillation_period_hint = 2.0 * std::numbers::pi / osc;
  return oracle::quad_radial(
             [&](double r) -> cplx {
               if (!(r > 0.0))
                 return 0.0;
               return std::exp(-h.alpha_decay * r) * std::pow(r, h.mu - 1.0) *
                      std::cyl_bessel_j(h.nu, h.beta_osc * r);
             },
             cfg)
      .value;
}

inline cplx quad_laplace(const radial::Laplace1F1Spec &s) {
  oracle::OracleConfig cfg;
  const double osc = std::abs(s.p.imag()) + std::abs(s.s.imag()) + s.k;
  if (osc > 0.0)
    cfg.oscillation_period_hint = 2.0 * std::numbers::pi / osc;
  return oracle::quad_radial(
             [&](double t) -> cplx {
               if (!(t > 0.0))
                 return 0.0;
               const cplx v = std::exp(-s.s * t) * std::pow(t, s.b - 1.0) *
                              numerics::hyp1f1(s.a, s.c, s.p * t).value;
               return s.k > 0.0 ? v * numerics::sph_bessel(0, s.k * t) : v;
             },
             cfg)
      .value;
}

inline double quad_bb(const states::BoundDecomposition &a, radial::Component ca,
                      const states::BoundDecomposition &b, radial::Component cb, int l,
                      double k) {
  oracle::OracleConfig cfg;
  if (k > 0.0)
    cfg.oscillation_period_hint = 2.0 * std::numbers::pi / k;
  return oracle::quad_radial(
             [&](double r) -> cplx {
               if (!(r > 0.0))
                 return 0.0;
               const auto u = a.eval(r), v = b.eval(r);
               const double x = ca == radial::Component::large ? u.g : u.f;
               const double y = cb == radial::Component::large ? v.g : v.f;
               return r * r * numerics::sph_bessel(l, k * r) * x * y;
             },
             cfg)
      .value.real();
}

inline double quad_bf(const states::BoundDecomposition &a, radial::Component ca,
                      const states::FreeDecomposition &f, radial::Component cf, int l,
                      double k) {
  oracle::OracleConfig cfg;
  cfg.oscillation_period_hint = 2.0 * std::numbers::pi / (f.p + k);
  return oracle::quad_radial(
             [&](double r) -> cplx {
               if (!(r > 0.0))
                 return 0.0;
               const auto u = a.eval(r), v = f.eval(r);
               const double x = ca == radial::Component::large ? u.g : u.f;
               const double y = cf == radial::Component::large ? v.g : v.f;
               return r * r * numerics::sph_bessel(l, k * r) * x * y;
             },
             cfg)
      .value.real();
}

//! Admissible Hankel-Laplace parameters: Re(mu + nu) > 0, Re alpha > 0.
inline radial::HankelLaplaceSpec hankel_draw(Rng &rng) {
  radial::HankelLaplaceSpec h;
  h.nu = rng.integer(0, 6) + 0.5 * rng.integer(0, 1);
  h.mu = cplx(rng.uniform(0.2, 6.0), rng.integer(0, 1) ? rng.uniform(-1.0, 1.0) : 0.0);
  h.alpha_decay = cplx(rng.uniform(0.2, 3.0), rng.integer(0, 1) ? rng.uniform(-1.5, 1.5) : 0.0);
  h.beta_osc = rng.uniform(0.05, 5.0);
  return h;
}

//! Laplace-1F1 parameters with |p| < Re s (convergent), b > 0; k > 0 when
//! `sinc` is set.
inline radial::Laplace1F1Spec laplace_draw(Rng &rng, bool sinc) {
  radial::Laplace1F1Spec s;
  s.a = cplx(rng.uniform(0.5, 3.0), rng.uniform(-1.0, 1.0));
  s.c = rng.uniform(1.5, 4.0);
  s.b = rng.uniform(0.6, 4.0);
  s.s = cplx(rng.uniform(0.8, 2.0), rng.uniform(-1.0, 1.0));
  s.p = rng.complex_in_disk(0.6 * s.s.real());
  s.k = sinc ? rng.uniform(0.05, 3.0) : 0.0;
  return s;
}

} // namespace dmatel::test
