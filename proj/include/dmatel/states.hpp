#pragma once
#include <complex>
#include <vector>

//! Dirac-Coulomb eigenstates of a point nucleus. Natural units hbar = c = 1,
//! e^2 = alpha, lengths in units of 1/m. The spinor convention throughout is
//!   psi = ( g(r) Omega_{kappa,m}, i f(r) Omega_{-kappa,m} ),
//! with the radial equations
//!   g' = -(1+kappa)/r g + (E + m - V) f,   f' = -(1-kappa)/r f - (E - m - V) g.
namespace dmatel::states {

using cplx = std::complex<double>;

struct PhysicalConstants {
  double alpha = 7.2973525693e-3;
  double m_e = 1.0;
  int Z = 1;

  double a0() const { return 1.0 / (m_e * alpha); }
  double za() const { return Z * alpha; }
  //! Throws DomainError unless alpha > 0, m_e > 0, Z >= 0 and Z alpha < 1.
  void validate() const;
};

//! Type 1 states have kappa < 0, type 2 states kappa > 0.
enum class StateType { first = 1, second = 2 };

int orbital_l(int kappa);      // l of the large component
int orbital_lbar(int kappa);   // l of the small component (= l(-kappa))
double total_j(int kappa);
inline StateType state_type(int kappa) {
  return kappa < 0 ? StateType::first : StateType::second;
}

//! Magnetic projection m = two_m / 2 (two_m odd, |m| <= j). The component
//! projections (m -+ 1/2, one per spinor component) are derived from it in matel.
struct BoundState {
  int n_r = 0;
  int kappa = -1;
  int two_m = 1;

  double m() const { return 0.5 * two_m; }
  StateType type() const { return state_type(kappa); }
  int l() const { return orbital_l(kappa); }
  //! Throws DomainError on inconsistent quantum numbers.
  void validate() const;
};

struct FreeState {
  double p = 1.0;
  int kappa = -1;
  int two_m = 1;

  double m() const { return 0.5 * two_m; }
  StateType type() const { return state_type(kappa); }
  int l() const { return orbital_l(kappa); }
  void validate() const;
};

struct RadialPair {
  double g = 0.0;
  double f = 0.0;
};

//! gamma = sqrt(kappa^2 - (Z alpha)^2); SubcriticalError if Z alpha >= |kappa|.
double gamma_kappa(int kappa, const PhysicalConstants &c);

//! Apparent principal quantum number N = sqrt(n_r^2 + 2 n_r gamma + kappa^2).
double apparent_n(const BoundState &s, const PhysicalConstants &c);

//! Sommerfeld formula E = m [1 + (Z alpha / (n_r + gamma))^2]^(-1/2).
double bound_energy(const BoundState &s, const PhysicalConstants &c);

//! W = sqrt(m^2 + p^2).
double free_energy(const FreeState &s, const PhysicalConstants &c);

//------------------------------------------------------------------------------
// Bound states

//! g(r) = sum_q g_coef[q] r^(gamma-1+q) e^(-lambda r), likewise f.
//! lambda = m Z alpha / N = Z / (N a0).
struct BoundDecomposition {
  double gamma = 1.0;
  double lambda = 1.0;
  double energy = 1.0;
  std::vector<double> g_coef;
  std::vector<double> f_coef;

  RadialPair eval(double r) const;
};

BoundDecomposition bound_decomposition(const BoundState &s,
                                       const PhysicalConstants &c);

//! Normalized so that int (g^2 + f^2) r^2 dr = 1, g > 0 near the origin.
RadialPair bound_radial(const BoundState &s, double r, const PhysicalConstants &c);

//------------------------------------------------------------------------------
// Continuum states

//! g(r) = sum_{sigma=+-} G_sigma r^(gamma-1) e^(-i sigma p r)
//!          1F1(gamma + 1 + i sigma y; 2 gamma + 1; 2 i sigma p r)
//! with G_- = conj(G_+) and y = Z alpha W / p; f likewise with F_sigma.
//! Normalized to delta(p - p') (unit momentum scale): at large r
//! g ~ sqrt((W+m)/(pi W)) cos(...)/r and f ~ sqrt((W-m)/(pi W)) sin(...)/r.
struct FreeDecomposition {
  double gamma = 1.0;
  double p = 1.0;
  double energy = 1.0; // W
  double y = 0.0;
  cplx a;              // gamma + 1 + i y
  double c = 3.0;      // 2 gamma + 1
  cplx G;              // G_+
  cplx F;              // F_+

  RadialPair eval(double r) const;
};

FreeDecomposition free_decomposition(const FreeState &s,
                                     const PhysicalConstants &c);

RadialPair free_radial(const FreeState &s, double r, const PhysicalConstants &c);

} // namespace dmatel::states
