#pragma once
#include "dmatel/numerics.hpp"
#include "dmatel/states.hpp"
#include <complex>

//! Closed-form radial integrals. The three primitives evaluate one integral
//! each; the two assemblers expand the radial functions and the spherical
//! Bessel function into sums of primitives.
namespace dmatel::radial {

using cplx = std::complex<double>;

enum class Path { hankel_laplace, laplace_1f1, laplace_1f1_sinc };
const char *to_string(Path p);

struct RadialIntegralResult {
  cplx value;
  Path path = Path::hankel_laplace;
  numerics::SeriesDiagnostics diagnostics;
  //! Set when the combined value is below 1e-6 of the largest term summed.
  bool cancellation_warning = false;
  double cancellation_ratio = 1.0; // |combined| / |largest term|
  //! Bound-free only: the ascending Bessel series was used instead of the
  //! exponential split (small k).
  bool ascending_series = false;
};

//! int_0^inf e^(-alpha r) r^(mu-1) J_nu(beta r) dr
struct HankelLaplaceSpec {
  cplx mu;
  double nu = 0.0;
  cplx alpha_decay;
  double beta_osc = 0.0;
};

//! int_0^inf e^(-s t) t^(b-1) 1F1(a; c; p t) [sin(k t)/(k t)] dt
//! (the bracket only when k > 0)
struct Laplace1F1Spec {
  cplx a, c, b, p, s;
  double k = 0.0;
};

//! (beta/2alpha)^nu Gamma(nu+mu) / (alpha^mu Gamma(nu+1))
//!   2F1((nu+mu)/2, (1+mu+nu)/2; nu+1; -beta^2/alpha^2)
RadialIntegralResult hankel_laplace(const HankelLaplaceSpec &spec);

//! Gamma(b) s^-b 2F1(a, b; c; p/s).
RadialIntegralResult laplace_1f1(const Laplace1F1Spec &spec);

//! The sin(kt)/(kt) variant: the plain j_0 transform of t^(b-1) e^(-st)
//! plus the 1F1 - 1 remainder split into e^(+-ikt) halves,
//!   (1/2ik) Gamma(b-1) [ (s-ik)^(1-b) (2F1(a,b-1;c;p/(s-ik)) - 1)
//!                      - (s+ik)^(1-b) (2F1(a,b-1;c;p/(s+ik)) - 1) ].
RadialIntegralResult laplace_1f1_sinc(const Laplace1F1Spec &spec);

//------------------------------------------------------------------------------
// Assemblers

enum class Component { large, small }; // g or f

//! int_0^inf r^2 j_l(k r) F1(r) F2(r) dr for two bound radial components.
//! k = 0 is allowed (j_l(0) = delta_l0).
RadialIntegralResult radial_bound_bound(const states::BoundDecomposition &b1,
                                        Component c1,
                                        const states::BoundDecomposition &b2,
                                        Component c2, int l, double k);

//! int_0^inf r^2 j_l(k r) F1(r) F2(r) dr, F1 bound, F2 continuum.
//! Uses the exponential split of j_l (Laplace rule per term, finite-part
//! continuation for terms with Re b <= 0, the sinc rule at l = 0 when the
//! split power would reach Re b <= 1.25) for k >= 0.9|s| and the ascending
//! series of j_l below that, where the split terms cancel catastrophically.
RadialIntegralResult radial_bound_free(const states::BoundDecomposition &b1,
                                       Component c1,
                                       const states::FreeDecomposition &f2,
                                       Component c2, int l, double k);

//! Coefficients of j_l(x) = sum_{sigma=+-1} sum_j c(sigma, j) e^(i sigma x) x^(-j-1).
cplx bessel_split_coefficient(int l, int sigma, int j);

} // namespace dmatel::radial
