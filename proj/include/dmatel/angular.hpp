#pragma once
#include <complex>
#include <cstddef>

//! Spherical harmonics and Gaunt integrals. The Gaunt values are computed from
//! exact rational Wigner 3j sums and rounded once at the end, so selection-rule
//! zeros are exact.
namespace dmatel::angular {

enum class VanishingReason { none, parity, triangle, azimuthal, accidental };

const char *to_string(VanishingReason r);

struct GauntKey {
  int l1 = 0, l2 = 0, l3 = 0;
  int m1 = 0, m2 = 0, m3 = 0;
  bool operator==(const GauntKey &) const = default;
};

struct GauntValue {
  double value = 0.0;
  VanishingReason vanishing_reason = VanishingReason::none;
};

//! Values below this are reported as accidental zeros.
inline constexpr double accidental_zero = 1.0e-14;

//! Y_lm(theta, phi), Condon-Shortley phase, orthonormal on the sphere.
std::complex<double> sph_harm(int l, int m, double theta, double phi);

//! Wigner 3j symbol (j1 j2 j3; m1 m2 m3) for integer arguments.
double wigner3j(int j1, int j2, int j3, int m1, int m2, int m3);

//! Integral over [-1,1] of P_l1^m1 P_l2^m2 P_l3^m3. Any key whose m values
//! cancel for some choice of signs (m1 = m2 + m3 and its relatives) is
//! reduced with P_l^-m = (-1)^m (l-m)!/(l+m)! P_l^m; other keys throw
//! UnsupportedM. The result is an exact rational rounded to double.
GauntValue gaunt_legendre(const GauntKey &key);

//! Integral over the sphere of conj(Y_lm) conj(Y_l1,mt1) Y_l2,mt2.
GauntValue gaunt_sph_value(int l, int m, int l1, int mt1, int l2, int mt2);

inline double gaunt_sph(int l, int m, int l1, int mt1, int l2, int mt2) {
  return gaunt_sph_value(l, m, l1, mt1, l2, mt2).value;
}

//! Same as above without touching the memo tables.
GauntValue gaunt_legendre_uncached(const GauntKey &key);
GauntValue gaunt_sph_uncached(int l, int m, int l1, int mt1, int l2, int mt2);

//! Number of memoized entries (both tables).
std::size_t gaunt_cache_size();
void gaunt_cache_clear();

} // namespace dmatel::angular
