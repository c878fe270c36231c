#include "dmatel/angular.hpp"
#include "dmatel/errors.hpp"
#include "dmatel/numerics.hpp"
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <mutex>
#include <numbers>
#include <shared_mutex>
#include <string>
#include <unordered_map>

namespace dmatel::angular {

namespace {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

cpp_int ifact(int n) {
  cpp_int r = 1;
  for (int i = 2; i <= n; ++i)
    r *= i;
  return r;
}

// 3j = t * sqrt(delta * p), all three exact.
struct Exact3j {
  cpp_rational t = 0;
  cpp_rational delta = 0;
  cpp_int p = 0;
};

bool triangle_ok(int j1, int j2, int j3) {
  return j3 >= std::abs(j1 - j2) && j3 <= j1 + j2;
}

// Racah's single sum.
Exact3j exact3j(int j1, int j2, int j3, int m1, int m2, int m3) {
  Exact3j r;
  if (m1 + m2 + m3 != 0 || !triangle_ok(j1, j2, j3) || std::abs(m1) > j1 ||
      std::abs(m2) > j2 || std::abs(m3) > j3)
    return r;
  const int kmin = std::max({0, j2 - j3 - m1, j1 - j3 + m2});
  const int kmax = std::min({j1 + j2 - j3, j1 - m1, j2 + m2});
  cpp_rational s = 0;
  for (int k = kmin; k <= kmax; ++k) {
    const cpp_int den = ifact(k) * ifact(j3 - j2 + k + m1) *
                        ifact(j3 - j1 + k - m2) * ifact(j1 + j2 - j3 - k) *
                        ifact(j1 - k - m1) * ifact(j2 - k + m2);
    s += cpp_rational((k % 2) ? -1 : 1, den);
  }
  const int ph = j1 - j2 - m3;
  r.t = (ph % 2 != 0) ? cpp_rational(-s) : s;
  r.delta = cpp_rational(ifact(j1 + j2 - j3) * ifact(j1 - j2 + j3) *
                             ifact(-j1 + j2 + j3),
                         ifact(j1 + j2 + j3 + 1));
  r.p = ifact(j1 + m1) * ifact(j1 - m1) * ifact(j2 + m2) * ifact(j2 - m2) *
        ifact(j3 + m3) * ifact(j3 - m3);
  return r;
}

int sign_of(const cpp_rational &x) { return x < 0 ? -1 : (x > 0 ? 1 : 0); }

struct KeyHash {
  std::size_t operator()(const GauntKey &k) const {
    std::size_t h = 0;
    for (int v : {k.l1, k.l2, k.l3, k.m1, k.m2, k.m3})
      h = h * 131 + std::size_t(v + 64);
    return h;
  }
};

// Readers share the lock; insertion is serialized. Entries never change once
// inserted.
class Memo {
public:
  bool find(const GauntKey &k, GauntValue &out) const {
    std::shared_lock lock(m_mutex);
    auto it = m_map.find(k);
    if (it == m_map.end())
      return false;
    out = it->second;
    return true;
  }
  void insert(const GauntKey &k, const GauntValue &v) {
    std::unique_lock lock(m_mutex);
    m_map.emplace(k, v);
  }
  std::size_t size() const {
    std::shared_lock lock(m_mutex);
    return m_map.size();
  }
  void clear() {
    std::unique_lock lock(m_mutex);
    m_map.clear();
  }

private:
  mutable std::shared_mutex m_mutex;
  std::unordered_map<GauntKey, GauntValue, KeyHash> m_map;
};

Memo &legendre_memo() {
  static Memo m;
  return m;
}
Memo &sph_memo() {
  static Memo m;
  return m;
}

GauntValue finish(double v) {
  if (std::abs(v) < accidental_zero)
    return {v, VanishingReason::accidental};
  return {v, VanishingReason::none};
}

} // namespace

const char *to_string(VanishingReason r) {
  switch (r) {
  case VanishingReason::none:
    return "none";
  case VanishingReason::parity:
    return "parity";
  case VanishingReason::triangle:
    return "triangle";
  case VanishingReason::azimuthal:
    return "azimuthal";
  case VanishingReason::accidental:
    return "accidental";
  }
  return "?";
}

std::complex<double> sph_harm(int l, int m, double theta, double phi) {
  if (l < 0 || std::abs(m) > l)
    throw DomainError("sph_harm: requires |m| <= l");
  const double norm =
      std::sqrt(double(2 * l + 1) / (4.0 * std::numbers::pi) *
                std::exp(numerics::log_factorial(l - m) -
                         numerics::log_factorial(l + m)));
  return norm * numerics::assoc_legendre(l, m, std::cos(theta)) *
         std::polar(1.0, double(m) * phi);
}

double wigner3j(int j1, int j2, int j3, int m1, int m2, int m3) {
  if (j1 < 0 || j2 < 0 || j3 < 0)
    throw DomainError("wigner3j: negative angular momentum");
  const auto e = exact3j(j1, j2, j3, m1, m2, m3);
  if (e.t == 0)
    return 0.0;
  const cpp_rational sq = e.t * e.t * e.delta * cpp_rational(e.p);
  return sign_of(e.t) * std::sqrt(sq.convert_to<double>());
}

GauntValue gaunt_legendre_uncached(const GauntKey &key) {
  const int l[3] = {key.l1, key.l2, key.l3};
  const int m[3] = {key.m1, key.m2, key.m3};
  for (int i = 0; i < 3; ++i)
    if (l[i] < 0 || std::abs(m[i]) > l[i])
      throw DomainError("gaunt_legendre: requires |m_i| <= l_i");

  // signs e_i with sum e_i m_i = 0
  int eps[3] = {0, 0, 0};
  bool found = false;
  for (int s = 0; s < 8 && !found; ++s) {
    int e[3] = {(s & 1) ? -1 : 1, (s & 2) ? -1 : 1, (s & 4) ? -1 : 1};
    if (e[0] * m[0] + e[1] * m[1] + e[2] * m[2] == 0) {
      std::copy(e, e + 3, eps);
      found = true;
    }
  }
  if (!found)
    throw UnsupportedM("gaunt_legendre: no sign combination of (" +
                       std::to_string(m[0]) + "," + std::to_string(m[1]) +
                       "," + std::to_string(m[2]) + ") sums to zero");
  if ((l[0] + l[1] + l[2]) % 2 != 0)
    return {0.0, VanishingReason::parity};
  if (!triangle_ok(l[0], l[1], l[2]))
    return {0.0, VanishingReason::triangle};

  int n[3];
  for (int i = 0; i < 3; ++i)
    n[i] = eps[i] * m[i];
  // With sum n = 0:
  //   int P P P dx = 2 (l1 l2 l3; 0 0 0)(l1 l2 l3; n1 n2 n3) prod sqrt((l+n)!/(l-n)!)
  // and the square roots combine into integers.
  const auto e0 = exact3j(l[0], l[1], l[2], 0, 0, 0);
  const auto en = exact3j(l[0], l[1], l[2], n[0], n[1], n[2]);
  cpp_rational v = 2 * e0.t * en.t * e0.delta;
  for (int i = 0; i < 3; ++i)
    v *= cpp_rational(ifact(l[i]) * ifact(l[i] + n[i]));
  // undo the sign flips: P_l^m = (-1)^m (l+m)!/(l-m)! P_l^-m
  for (int i = 0; i < 3; ++i)
    if (eps[i] < 0 && m[i] != 0) {
      v *= cpp_rational(ifact(l[i] + m[i]), ifact(l[i] - m[i]));
      if (m[i] % 2 != 0)
        v = -v;
    }
  return finish(v.convert_to<double>());
}

GauntValue gaunt_sph_uncached(int l, int m, int l1, int mt1, int l2, int mt2) {
  if (l < 0 || l1 < 0 || l2 < 0 || std::abs(m) > l || std::abs(mt1) > l1 ||
      std::abs(mt2) > l2)
    throw DomainError("gaunt_sph: requires |m| <= l for every pair");
  if (m != mt2 - mt1)
    return {0.0, VanishingReason::azimuthal};
  if ((l + l1 + l2) % 2 != 0)
    return {0.0, VanishingReason::parity};
  if (!triangle_ok(l1, l2, l))
    return {0.0, VanishingReason::triangle};
  // (-1)^(m+mt1) sqrt((2l+1)(2l1+1)(2l2+1)/4pi) (l l1 l2; 000)(l l1 l2; -m -mt1 mt2)
  const auto e0 = exact3j(l, l1, l2, 0, 0, 0);
  const auto en = exact3j(l, l1, l2, -m, -mt1, mt2);
  const cpp_rational t = e0.t * en.t * e0.delta * cpp_rational(ifact(l) * ifact(l1) * ifact(l2));
  if (t == 0)
    return finish(0.0);
  const cpp_rational sq = t * t * cpp_rational(en.p) *
                          cpp_rational((2 * l + 1) * (2 * l1 + 1) * (2 * l2 + 1));
  double v = std::sqrt(sq.convert_to<double>() / (4.0 * std::numbers::pi));
  if (sign_of(t) < 0)
    v = -v;
  if ((m + mt1) % 2 != 0)
    v = -v;
  return finish(v);
}

GauntValue gaunt_legendre(const GauntKey &key) {
  GauntValue v;
  if (legendre_memo().find(key, v))
    return v;
  v = gaunt_legendre_uncached(key);
  legendre_memo().insert(key, v);
  return v;
}

GauntValue gaunt_sph_value(int l, int m, int l1, int mt1, int l2, int mt2) {
  const GauntKey key{l, l1, l2, m, mt1, mt2};
  GauntValue v;
  if (sph_memo().find(key, v))
    return v;
  v = gaunt_sph_uncached(l, m, l1, mt1, l2, mt2);
  sph_memo().insert(key, v);
  return v;
}

std::size_t gaunt_cache_size() {
  return legendre_memo().size() + sph_memo().size();
}

void gaunt_cache_clear() {
  legendre_memo().clear();
  sph_memo().clear();
}

} // namespace dmatel::angular
