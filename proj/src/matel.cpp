#include "dmatel/matel.hpp"
#include "dmatel/angular.hpp"
#include "dmatel/errors.hpp"
#include <cmath>
#include <numbers>
#include <optional>
#include <string>

namespace dmatel::matel {

namespace {

constexpr double four_pi = 4.0 * std::numbers::pi;
const cplx I{0.0, 1.0};

cplx ipow(int l) {
  static const cplx p[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return p[l & 3];
}

//! (l, m - mu; 1/2, mu | j m) for the two couplings j = l +- 1/2.
double clebsch_half(int l, int two_j, int two_m, int two_mu) {
  const double den = 2.0 * l + 1.0;
  const double plus = std::sqrt((2.0 * l + two_m + 1.0) / (2.0 * den));
  const double minus = std::sqrt((2.0 * l - two_m + 1.0) / (2.0 * den));
  if (two_j == 2 * l + 1)
    return two_mu > 0 ? plus : minus;
  return two_mu > 0 ? -minus : plus;
}

//! Lazily filled radial integrals for one (s1, s2, k), indexed by the two
//! component kinds and l.
class RadialTable {
public:
  RadialTable(const Orbital &a, const Orbital &b, double k) : m_a(a), m_b(b), m_k(k) {}

  cplx get(int ci, int cj, int l) {
    auto &slot = m_cache[2 * ci + cj];
    if (static_cast<int>(slot.size()) <= l)
      slot.resize(l + 1);
    if (!slot[l]) {
      const auto c1 = ci == 0 ? radial::Component::large : radial::Component::small;
      const auto c2 = cj == 0 ? radial::Component::large : radial::Component::small;
      const auto r = m_b.bound ? radial::radial_bound_bound(m_a.bd, c1, m_b.bd, c2, l, m_k)
                               : radial::radial_bound_free(m_a.bd, c1, m_b.fd, c2, l, m_k);
      warning = warning || r.cancellation_warning;
      slot[l] = r.value;
    }
    return *slot[l];
  }

  bool warning = false;

private:
  const Orbital &m_a;
  const Orbital &m_b;
  double m_k;
  std::array<std::vector<std::optional<cplx>>, 4> m_cache;
};

//! Partial-wave coefficient of U_ij at a given l (zero when forbidden).
cplx block_term(const SpinorCoefficients &a, const SpinorCoefficients &b, int i,
                int j, int l, RadialTable &rt) {
  const cplx cc = std::conj(a.c[i]) * b.c[j];
  if (cc == 0.0)
    return 0.0;
  const int m = b.mt[j] - a.mt[i];
  const auto g = angular::gaunt_sph_value(l, m, a.lcomp[i], a.mt[i], b.lcomp[j], b.mt[j]);
  if (g.vanishing_reason != angular::VanishingReason::none)
    return 0.0;
  return four_pi * ipow(l) * cc * g.value * rt.get(i < 2 ? 0 : 1, j < 2 ? 0 : 1, l);
}

void check_pair(const Orbital &s1, double k, const char *where) {
  if (!s1.bound)
    throw PreconditionError(std::string(where) + ": s1 must be a bound state");
  if (!(k > 0.0) || !std::isfinite(k))
    throw PreconditionError(std::string(where) + ": k must be positive");
}

} // namespace

Orbital make_orbital(const states::BoundState &s, const states::PhysicalConstants &c) {
  s.validate();
  Orbital o;
  o.kappa = s.kappa;
  o.two_m = s.two_m;
  o.bound = true;
  o.bd = states::bound_decomposition(s, c);
  return o;
}

Orbital make_orbital(const states::FreeState &s, const states::PhysicalConstants &c) {
  s.validate();
  Orbital o;
  o.kappa = s.kappa;
  o.two_m = s.two_m;
  o.bound = false;
  o.fd = states::free_decomposition(s, c);
  return o;
}

Orbital with_two_m(Orbital o, int two_m) {
  if (two_m % 2 == 0 || std::abs(two_m) > 2 * std::abs(o.kappa) - 1)
    throw DomainError("with_two_m: |m| must be <= j and half-integer");
  o.two_m = two_m;
  return o;
}

SpinorCoefficients spinor_coefficients(int kappa, int two_m) {
  if (kappa == 0)
    throw DomainError("spinor_coefficients: kappa must be nonzero");
  const int two_j = 2 * std::abs(kappa) - 1;
  if (two_m % 2 == 0 || std::abs(two_m) > two_j)
    throw DomainError("spinor_coefficients: |m| must be <= j and half-integer");
  SpinorCoefficients s;
  const int l = states::orbital_l(kappa), lb = states::orbital_lbar(kappa);
  for (int i = 0; i < 4; ++i) {
    const int lc = i < 2 ? l : lb;
    const int two_mu = (i % 2 == 0) ? 1 : -1;
    s.lcomp[i] = lc;
    s.mt[i] = (two_m - two_mu) / 2;
    if (std::abs(s.mt[i]) > lc)
      continue;
    const double cg = clebsch_half(lc, two_j, two_m, two_mu);
    s.c[i] = i < 2 ? cplx(cg) : I * cg;
  }
  return s;
}

const std::vector<MatrixEntry> &dirac_matrix(int mu) {
  static const std::vector<MatrixEntry> tables[4] = {
      {{0, 0, 1.0}, {1, 1, 1.0}, {2, 2, 1.0}, {3, 3, 1.0}},
      {{0, 3, 1.0}, {1, 2, 1.0}, {2, 1, 1.0}, {3, 0, 1.0}},
      {{0, 3, -I}, {1, 2, I}, {2, 1, -I}, {3, 0, I}},
      {{0, 2, 1.0}, {1, 3, -1.0}, {2, 0, 1.0}, {3, 1, -1.0}},
  };
  if (mu < 0 || mu > 3)
    throw DomainError("dirac_matrix: mu must be 0..3");
  return tables[mu];
}

FourierBlock fourier_block(const Orbital &s1, const Orbital &s2, int i, int j,
                           double k) {
  check_pair(s1, k, "fourier_block");
  if (i < 1 || i > 4 || j < 1 || j > 4)
    throw DomainError("fourier_block: component indices run from 1 to 4");
  const auto a = spinor_coefficients(s1.kappa, s1.two_m);
  const auto b = spinor_coefficients(s2.kappa, s2.two_m);
  RadialTable rt(s1, s2, k);
  FourierBlock out;
  out.i = i;
  out.j = j;
  --i;
  --j;
  out.m = b.mt[j] - a.mt[i];
  const int l1 = a.lcomp[i], l2 = b.lcomp[j];
  for (int l = std::max(std::abs(l1 - l2), std::abs(out.m)); l <= l1 + l2; ++l) {
    const cplx v = block_term(a, b, i, j, l, rt);
    if (v == 0.0)
      continue;
    out.lterms.push_back({l, v});
  }
  out.cancellation_warning = rt.warning;
  out.value = evaluate(out, 0.0, 0.0);
  return out;
}

cplx evaluate(const FourierBlock &b, double theta, double phi) {
  cplx s = 0.0;
  for (const auto &t : b.lterms)
    s += t.coefficient * angular::sph_harm(t.l, b.m, theta, phi);
  return s;
}

TransitionQuadruple transition_quadruple(const Orbital &s1, const Orbital &s2,
                                         double k) {
  check_pair(s1, k, "transition_quadruple");
  const auto a = spinor_coefficients(s1.kappa, s1.two_m);
  RadialTable rt(s1, s2, k);
  const int lmax = std::max(a.lcomp[0], a.lcomp[2]) +
                   std::max(states::orbital_l(s2.kappa), states::orbital_lbar(s2.kappa));
  const int width = 2 * lmax + 1;
  std::vector<cplx> acc((lmax + 1) * width);
  double t[4] = {0, 0, 0, 0};
  const int two_j2 = 2 * std::abs(s2.kappa) - 1;
  for (int two_m2 = -two_j2; two_m2 <= two_j2; two_m2 += 2) {
    const auto b = spinor_coefficients(s2.kappa, two_m2);
    for (int mu = 0; mu < 4; ++mu) {
      std::fill(acc.begin(), acc.end(), cplx{});
      for (const auto &e : dirac_matrix(mu)) {
        const int m = b.mt[e.col] - a.mt[e.row];
        const int l1 = a.lcomp[e.row], l2 = b.lcomp[e.col];
        for (int l = std::max(std::abs(l1 - l2), std::abs(m)); l <= l1 + l2; ++l)
          acc[l * width + m + lmax] += e.value * block_term(a, b, e.row, e.col, l, rt);
      }
      for (const auto &v : acc)
        t[mu] += std::norm(v);
    }
  }
  TransitionQuadruple q;
  q.t0 = t[0] / four_pi;
  q.t1 = t[1] / four_pi;
  q.t2 = t[2] / four_pi;
  q.t3 = t[3] / four_pi;
  q.combined = q.t0 - q.t1 - q.t2 - q.t3;
  q.cancellation_warning = rt.warning;
  return q;
}

} // namespace dmatel::matel
