#pragma once
#include <complex>
#include <cstddef>
#include <vector>

//! Special-function kernel: complex gamma, confluent and Gauss hypergeometric
//! functions, spherical Bessel functions, associated Legendre functions and
//! generalized Laguerre polynomials. Everything here is a pure function of its
//! arguments and may be called concurrently.
namespace dmatel::numerics {

using cplx = std::complex<double>;

enum class Transformation {
  none,
  pfaff,
  euler,
  recip_z,
  one_minus_z,
  continuation, // Taylor re-expansion along a ray (ODE continuation)
  asymptotic    // large-|z| expansion (1F1 only)
};

const char *to_string(Transformation t);

struct SeriesDiagnostics {
  std::size_t terms_used = 1;
  double truncation_bound = 0.0;
  Transformation transformation_applied = Transformation::none;
  bool perturbed = false; // degenerate connection evaluated by c +/- eps
};

template <typename T> struct WithDiagnostics {
  T value;
  SeriesDiagnostics diagnostics;
};

//------------------------------------------------------------------------------
// Gamma function

//! Gamma(z). Throws PoleError at non-positive integers and OverflowError when
//! |Gamma(z)| is not representable (use lgamma_c instead).
cplx gamma_c(cplx z);

//! log Gamma(z) on some branch; only exp() of it is meaningful for callers.
cplx lgamma_c(cplx z);

//! 1/Gamma(z); exactly zero at the poles of Gamma.
cplx rgamma_c(cplx z);

//! True if z is (to within tol) a non-positive integer.
bool is_nonpositive_integer(cplx z, double tol = 0.0);

//! sin(pi z) with exact argument reduction on the real part.
cplx sinpi(cplx z);

//------------------------------------------------------------------------------
// Hypergeometric functions

//! Requested relative accuracy of the hypergeometric evaluators.
inline constexpr double hyp_tolerance = 1.0e-15;

//! Confluent 1F1(a;c;z). Ascending series for moderate |z| (with Kummer's
//! transformation when Re z < 0), Taylor continuation at intermediate |z| and
//! the asymptotic expansion for large |z|.
WithDiagnostics<cplx> hyp1f1(cplx a, cplx c, cplx z);

//! Gauss 2F1(a,b;c;z) for complex parameters and argument off the cut [1,inf).
WithDiagnostics<cplx> hyp2f1(cplx a, cplx b, cplx c, cplx z);

//------------------------------------------------------------------------------
// Bessel / Legendre / Laguerre

inline constexpr int default_l_max = 30;

//! Spherical Bessel j_l(z) for z >= 0: ascending series for z <= max(l,2),
//! the finite Hankel sum above.
double sph_bessel(int l, double z, int l_max = default_l_max);

//! Associated Legendre P_l^m(x), Condon-Shortley phase included. Negative m
//! via P_l^{-m} = (-1)^m (l-m)!/(l+m)! P_l^m.
double assoc_legendre(int l, int m, double x);

//! Generalized Laguerre polynomial L_n^{(a)}(x) by three-term recurrence.
double laguerre(int n, double a, double x);

//! Coefficients c_q with L_n^{(a)}(x) = sum_q c_q x^q, q = 0..n.
std::vector<double> laguerre_coefficients(int n, double a);

//! Coefficients of the terminating series 1F1(-n; c; x) = sum_q d_q x^q.
std::vector<double> hyp1f1_polynomial_coefficients(int n, double c);

//------------------------------------------------------------------------------
// Small helpers shared by several modules

double factorial(int n);
double log_factorial(int n);

//! Gauss-Legendre nodes/weights on [-1,1], n points (Golub-Welsch free
//! Newton iteration on P_n).
void gauss_legendre(int n, std::vector<double> &nodes,
                    std::vector<double> &weights);

} // namespace dmatel::numerics
