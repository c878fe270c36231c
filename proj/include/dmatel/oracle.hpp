#pragma once
#include "dmatel/states.hpp"
#include <array>
#include <complex>
#include <functional>
#include <optional>
#include <vector>

//! Brute-force reference engine. Nothing here is used by the production
//! paths; the tests compare the analytic formulas against these routines.
//! Slow by design.
namespace dmatel::oracle {

using cplx = std::complex<double>;

struct OracleConfig {
  int digits = 40;                  // working accuracy of series_hyp (<= 90)
  int max_subdivisions = 4000;      // panels for quad_radial
  double rel_tol = 1e-13;           // quad_radial target
  std::optional<double> oscillation_period_hint;
};

//------------------------------------------------------------------------------
// Extended-precision hypergeometric series (100 decimal digits internally)

enum class HypKind { f11, f21 };

struct SeriesValue {
  cplx value;
  double tail_bound = 0.0; // relative, certified
  int terms = 0;
};

//! 1F1 uses params {a, c}; 2F1 uses {a, b, c}. 2F1 is summed directly for
//! |z| < 0.9 or after Pfaff's transformation when |z/(z-1)| < 0.9; anything
//! else throws NoConvergence.
SeriesValue series_hyp(HypKind kind, const std::vector<cplx> &params, cplx z,
                       const OracleConfig &cfg = {});

//------------------------------------------------------------------------------
// Radial quadrature on (0, inf)

struct QuadResult {
  cplx value;
  double error = 0.0;
};

//! Adaptive Gauss-Kronrod over consecutive panels, stopped once the panel
//! contributions fall below rel_tol. Panels are half the oscillation period
//! when a hint is given, otherwise they grow geometrically.
QuadResult quad_radial(const std::function<cplx(double)> &f,
                       const OracleConfig &cfg = {});

//! Same on a finite interval.
QuadResult quad_interval(const std::function<cplx(double)> &f, double a,
                         double b, double rel_tol = 1e-13);

//------------------------------------------------------------------------------
// Sphere quadrature

struct SphereNode {
  double theta, phi, weight;
};

//! Gauss-Legendre in cos(theta) times uniform phi. Exact for products of
//! spherical harmonics with total degree < min(2 n_theta, n_phi). The optional
//! rotation (z-y-z Euler angles) moves the nodes to a different frame.
class SphereRule {
public:
  SphereRule(int n_theta, int n_phi, std::array<double, 3> euler = {0, 0, 0});
  const std::vector<SphereNode> &nodes() const { return m_nodes; }

private:
  std::vector<SphereNode> m_nodes;
};

cplx quad_sphere(const std::function<cplx(double, double)> &f,
                 const SphereRule &rule);


//------------------------------------------------------------------------------
// Dirac spinors and brute-force matrix elements

//! A Dirac state known only through its quantum numbers and radial functions.
struct OracleSpinor {
  int kappa = -1;
  int two_m = 1;
  std::function<states::RadialPair(double)> radial;
};

//! psi(r) = (g Omega_{kappa,m}, i f Omega_{-kappa,m}) at a point, components
//! ordered (upper up, upper down, lower up, lower down).
std::array<cplx, 4> dirac_spinor(const OracleSpinor &s, double r, double theta,
                                 double phi);

//! int d^3r e^(i k.r) conj(psi1_i) psi2_j by radial quadrature of sphere
//! quadratures sized to the plane-wave oscillation. i, j count from 1.
QuadResult quad_matel_3d(const OracleSpinor &s1, const OracleSpinor &s2, int i,
                         int j, std::array<double, 3> k, const OracleConfig &cfg = {});

//! k^-averaged |<s1| e^(i k.r) M |s2>|^2 summed over the projections of s2,
//! for M = 1, alpha^x, alpha^y, alpha^z. Radial integrals by quadrature
//! against j_l, angular integrals by sphere quadrature, and the k^ average by
//! an explicit sphere rule over |.|^2.
struct QuadrupleValue {
  std::array<double, 4> t{};
  double combined = 0.0;
};

QuadrupleValue quad_quadruple(const OracleSpinor &s1, const OracleSpinor &s2,
                              double k, const OracleConfig &cfg = {});

} // namespace dmatel::oracle
