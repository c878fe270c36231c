#pragma once
#include "dmatel/radial.hpp"
#include "dmatel/states.hpp"
#include <array>
#include <complex>
#include <vector>

//! Transition matrix elements <s1| e^(i k.r) M |s2> with M = 1 or alpha^mu.
//!
//! Spinor components are ordered (upper up, upper down, lower up, lower down)
//! and written psi_i = c_i R_i(r) Y_{l_i, mt_i}(r^), where R_i is g for the
//! upper pair and f for the lower pair, mt_i = m - 1/2 for the "up"
//! components and m + 1/2 for the "down" ones, and the factor i of the lower
//! pair is carried by c_i. The plane wave is expanded as
//!   e^(i k.r) = 4 pi sum_lm i^l j_l(kr) Y_lm(k^) conj(Y_lm(r^)),
//! so the component block U_ij(k) = int d^3r e^(i k.r) conj(psi1_i) psi2_j is
//! a finite sum over l of coefficients times Y_{l, mt2_j - mt1_i}(k^).
namespace dmatel::matel {

using cplx = std::complex<double>;

//! A state together with its radial decomposition.
struct Orbital {
  int kappa = -1;
  int two_m = 1;
  bool bound = true;
  states::BoundDecomposition bd; // valid when bound
  states::FreeDecomposition fd;  // valid otherwise

  double energy() const { return bound ? bd.energy : fd.energy; }
};

Orbital make_orbital(const states::BoundState &s, const states::PhysicalConstants &c);
Orbital make_orbital(const states::FreeState &s, const states::PhysicalConstants &c);

//! Same radial functions with another magnetic projection.
Orbital with_two_m(Orbital o, int two_m);

struct SpinorCoefficients {
  std::array<cplx, 4> c{};
  std::array<int, 4> mt{};
  std::array<int, 4> lcomp{};
};

//! Clebsch-Gordan coefficients (l, m - mu; 1/2, mu | j m) per component.
//! Components whose mt falls outside [-l, l] get c = 0.
SpinorCoefficients spinor_coefficients(int kappa, int two_m);

struct LTerm {
  int l = 0;
  cplx coefficient; // multiplies Y_{l,m}(k^)
};

struct FourierBlock {
  cplx value;  // U_ij for k along +z
  int i = 1, j = 1;
  int m = 0;   // mt2_j - mt1_i
  std::vector<LTerm> lterms;
  bool cancellation_warning = false;
};

//! U_ij(s1, s2, k) in partial-wave form; i, j count from 1. s1 must be bound.
//! k > 0.
FourierBlock fourier_block(const Orbital &s1, const Orbital &s2, int i, int j,
                           double k);

//! U_ij at the direction (theta, phi) of k.
cplx evaluate(const FourierBlock &b, double theta, double phi);

//! The four k^-averaged squared moduli, summed over the magnetic projections
//! of s2 (s2.two_m is ignored): t0 for M = 1, t1..t3 for alpha^x,y,z.
struct TransitionQuadruple {
  double t0 = 0.0, t1 = 0.0, t2 = 0.0, t3 = 0.0;
  double combined = 0.0; // t0 - t1 - t2 - t3
  bool cancellation_warning = false;
};

TransitionQuadruple transition_quadruple(const Orbital &s1, const Orbital &s2,
                                         double k);

//! Nonzero entries of the Dirac-representation matrices 1, alpha^x,y,z
//! (0-based component indices).
struct MatrixEntry {
  int row, col;
  cplx value;
};
const std::vector<MatrixEntry> &dirac_matrix(int mu);

} // namespace dmatel::matel
