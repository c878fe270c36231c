#include "dmatel/oracle.hpp"
#include "dmatel/errors.hpp"
#include "dmatel/numerics.hpp"
#include "dmatel/angular.hpp"
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/multiprecision/cpp_complex.hpp>
#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

namespace dmatel::oracle {

namespace {

using mp_real = boost::multiprecision::cpp_bin_float_100;
using mp_cplx = boost::multiprecision::cpp_complex_100;

mp_cplx to_mp(cplx z) { return mp_cplx(mp_real(z.real()), mp_real(z.imag())); }
cplx to_d(const mp_cplx &z) {
  return {z.real().convert_to<double>(), z.imag().convert_to<double>()};
}

constexpr int term_cap = 200000;

// sum_n prod_i (p_i)_n / prod_j (q_j)_n z^n / n!, with a tail bound from the
// worst-case term ratio bound (k + |p|) / ((k - |q|)(k + 1)) |z|.
SeriesValue pfq(const std::vector<cplx> &p, const std::vector<cplx> &q, cplx z,
                int digits) {
  std::vector<mp_cplx> pm, qm;
  for (auto v : p)
    pm.push_back(to_mp(v));
  for (auto v : q)
    qm.push_back(to_mp(v));
  const mp_cplx zm = to_mp(z);
  const double az = std::abs(z);
  const double target = std::pow(10.0, -double(digits));
  mp_cplx term = 1, sum = 1;
  mp_real max_term = 1;
  for (int n = 0; n < term_cap; ++n) {
    mp_cplx num = 1, den = mp_real(n + 1);
    for (auto &v : pm)
      num *= v + mp_real(n);
    for (auto &v : qm)
      den *= v + mp_real(n);
    term *= num / den * zm;
    sum += term;
    const mp_real at = abs(term);
    if (at > max_term)
      max_term = at;
    if (at == 0) {
      SeriesValue out{to_d(sum), 0.0, n + 2};
      return out;
    }
    // bound the ratio of every later term
    double rho = az / double(n + 2);
    for (auto v : p)
      rho *= double(n + 1) + std::abs(v);
    bool ok = true;
    for (auto v : q) {
      const double d = double(n + 1) - std::abs(v);
      if (d <= 0.0)
        ok = false;
      rho /= d;
    }
    if (!ok || rho >= 1.0)
      continue;
    // for 2F1 the ratio bound tends to |z| from above, for 1F1 to zero; both
    // are decreasing past this point, so rho bounds every later ratio
    const double tail = (at * rho / (1.0 - rho)).convert_to<double>();
    const double asum = abs(sum).convert_to<double>();
    const double rounding = 1e-98 * (max_term.convert_to<double>() / asum);
    if (tail <= target * asum) {
      if (rounding > target)
        throw NoConvergence("series_hyp: cancellation exceeds working precision");
      return {to_d(sum), tail / asum + rounding, n + 2};
    }
  }
  throw NoConvergence("series_hyp: series did not converge");
}

// Adaptive Gauss-Kronrod (7, 15) on complex values, with the node tables from
// boost. boost's own driver estimates errors badly on short intervals and
// cannot take complex integrands. A panel is accepted once its error estimate
// is below tol |I| or below 1e-13 of its L1 norm, which is about as well as
// the special-function integrands can be evaluated.
cplx gk_adapt(const std::function<cplx(double)> &f, double a, double b,
              double tol, int depth, double &err) {
  using gk = boost::math::quadrature::gauss_kronrod<double, 15>;
  static const auto &x = gk::abscissa();
  static const auto &wk = gk::weights();
  static const auto &wg = boost::math::quadrature::gauss<double, 7>::weights();
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const cplx f0 = f(c);
  cplx k = wk[0] * f0, g = wg[0] * f0;
  double l1 = wk[0] * std::abs(f0);
  for (std::size_t i = 1; i < x.size(); ++i) {
    const cplx s = f(c - h * x[i]) + f(c + h * x[i]);
    k += wk[i] * s;
    l1 += wk[i] * std::abs(s);
    if (i % 2 == 0)
      g += wg[i / 2] * s;
  }
  k *= h;
  const double e = std::abs(h) * std::abs(k / h - g);
  const double floor = 1e-13 * std::abs(h) * l1;
  if (e <= std::max(tol * std::abs(k), floor) || depth == 0) {
    err = std::max(e, floor);
    return k;
  }
  double e1 = 0.0, e2 = 0.0;
  const cplx v = gk_adapt(f, a, c, tol, depth - 1, e1) +
                 gk_adapt(f, c, b, tol, depth - 1, e2);
  err = e1 + e2;
  return v;
}

cplx gk31(const std::function<cplx(double)> &f, double a, double b, double tol,
          double &err) {
  return gk_adapt(f, a, b, tol, 12, err);
}

} // namespace

SeriesValue series_hyp(HypKind kind, const std::vector<cplx> &params, cplx z,
                       const OracleConfig &cfg) {
  const int digits = std::min(cfg.digits, 90);
  if (kind == HypKind::f11) {
    if (params.size() != 2)
      throw DomainError("series_hyp: 1F1 takes {a, c}");
    if (numerics::is_nonpositive_integer(params[1]))
      throw DomainError("series_hyp: c is a non-positive integer");
    return pfq({params[0]}, {params[1]}, z, digits);
  }
  if (params.size() != 3)
    throw DomainError("series_hyp: 2F1 takes {a, b, c}");
  const cplx a = params[0], b = params[1], c = params[2];
  if (numerics::is_nonpositive_integer(c))
    throw DomainError("series_hyp: c is a non-positive integer");
  if (std::abs(z) < 0.9)
    return pfq({a, b}, {c}, z, digits);
  const cplx w = z / (z - 1.0);
  if (std::abs(w) < 0.9) {
    // Pfaff: (1-z)^(-a) 2F1(a, c-b; c; z/(z-1))
    auto s = pfq({a, c - b}, {c}, w, digits);
    const mp_cplx f = exp(-to_mp(a) * log(mp_cplx(1) - to_mp(z)));
    s.value = to_d(f * to_mp(s.value));
    return s;
  }
  throw NoConvergence("series_hyp: z outside the reach of the direct series");
}

QuadResult quad_interval(const std::function<cplx(double)> &f, double a,
                         double b, double rel_tol) {
  double err = 0.0;
  const cplx v = gk31(f, a, b, rel_tol, err);
  return {v, err};
}

QuadResult quad_radial(const std::function<cplx(double)> &f,
                       const OracleConfig &cfg) {
  double lo = 0.0, width = 1e-4;
  const double cap = cfg.oscillation_period_hint
                         ? 0.5 * *cfg.oscillation_period_hint
                         : std::numeric_limits<double>::infinity();
  cplx sum = 0.0;
  double err = 0.0, l1_total = 0.0, l1_peak = 0.0;
  int quiet = 0;
  for (int panel = 0; panel < cfg.max_subdivisions; ++panel) {
    const double hi = lo + std::min(width, cap);
    double e = 0.0;
    cplx v;
    if (panel == 0) {
      // t = hi u^8 tames algebraic end-point singularities t^(b-1), b >= 1/8
      v = gk31(
          [&](double u) {
            const double u7 = std::pow(u, 7);
            return 8.0 * hi * u7 * f(hi * u7 * u);
          },
          0.0, 1.0, 0.1 * cfg.rel_tol, e);
    } else {
      v = gk31(f, lo, hi, 0.1 * cfg.rel_tol, e);
    }
    // |v| + e stands in for the L1 norm (panels are at most half a period
    // wide when oscillating)
    const double l1 = std::abs(v) + e;
    sum += v;
    err += e;
    l1_total += l1;
    l1_peak = std::max(l1_peak, l1);
    // past the peak and negligible for several panels in a row
    if (l1 < l1_peak && l1 <= 1e-3 * cfg.rel_tol * l1_total)
      ++quiet;
    else
      quiet = 0;
    if (quiet >= 4 && l1_total > 0.0)
      return {sum, err + l1};
    if (l1_total == 0.0 && hi > 1e12) // identically zero
      return {0.0, 0.0};
    lo = hi;
    width *= 2.0;
  }
  throw NoConvergence("quad_radial: integrand did not decay within the panel budget");
}

SphereRule::SphereRule(int n_theta, int n_phi, std::array<double, 3> euler) {
  std::vector<double> x, w;
  numerics::gauss_legendre(n_theta, x, w);
  const double ca = std::cos(euler[0]), sa = std::sin(euler[0]);
  const double cb = std::cos(euler[1]), sb = std::sin(euler[1]);
  const double cg = std::cos(euler[2]), sg = std::sin(euler[2]);
  // R = Rz(alpha) Ry(beta) Rz(gamma)
  const double R[3][3] = {
      {ca * cb * cg - sa * sg, -ca * cb * sg - sa * cg, ca * sb},
      {sa * cb * cg + ca * sg, -sa * cb * sg + ca * cg, sa * sb},
      {-sb * cg, sb * sg, cb}};
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double st = std::sqrt(std::max(0.0, 1.0 - x[i] * x[i]));
    for (int j = 0; j < n_phi; ++j) {
      const double ph = 2.0 * std::numbers::pi * (j + 0.5) / n_phi;
      const double v[3] = {st * std::cos(ph), st * std::sin(ph), x[i]};
      double u[3];
      for (int r = 0; r < 3; ++r)
        u[r] = R[r][0] * v[0] + R[r][1] * v[1] + R[r][2] * v[2];
      const double theta = std::acos(std::clamp(u[2], -1.0, 1.0));
      const double phi = std::atan2(u[1], u[0]);
      m_nodes.push_back({theta, phi, w[i] * 2.0 * std::numbers::pi / n_phi});
    }
  }
}

cplx quad_sphere(const std::function<cplx(double, double)> &f,
                 const SphereRule &rule) {
  cplx s = 0.0;
  for (const auto &n : rule.nodes())
    s += n.weight * f(n.theta, n.phi);
  return s;
}


namespace {

//! Spin-angle function Omega_{kappa,m}, written with j rather than l.
std::array<cplx, 2> spin_angle(int kappa, int two_m, double theta, double phi) {
  const int l = kappa < 0 ? -kappa - 1 : kappa;
  const double j = std::abs(kappa) - 0.5, m = 0.5 * two_m;
  double up, down;
  if (kappa < 0) { // j = l + 1/2
    up = std::sqrt((j + m) / (2 * j));
    down = std::sqrt((j - m) / (2 * j));
  } else {         // j = l - 1/2
    up = -std::sqrt((j - m + 1) / (2 * j + 2));
    down = std::sqrt((j + m + 1) / (2 * j + 2));
  }
  const int mu = (two_m - 1) / 2, md = (two_m + 1) / 2;
  std::array<cplx, 2> out{};
  if (std::abs(mu) <= l)
    out[0] = up * angular::sph_harm(l, mu, theta, phi);
  if (std::abs(md) <= l)
    out[1] = down * angular::sph_harm(l, md, theta, phi);
  return out;
}

//! The four angular factors of psi: Omega_kappa and i Omega_{-kappa}.
std::array<cplx, 4> angular_parts(int kappa, int two_m, double theta, double phi) {
  const auto u = spin_angle(kappa, two_m, theta, phi);
  const auto d = spin_angle(-kappa, two_m, theta, phi);
  const cplx I{0, 1};
  return {u[0], u[1], I * d[0], I * d[1]};
}

//! Dense 1, alpha^x, alpha^y, alpha^z built from the Pauli matrices.
std::array<std::array<std::array<cplx, 4>, 4>, 4> dirac_dense() {
  const cplx I{0, 1};
  const cplx sigma[3][2][2] = {{{0, 1}, {1, 0}}, {{0, -I}, {I, 0}}, {{1, 0}, {0, -1}}};
  std::array<std::array<std::array<cplx, 4>, 4>, 4> M{};
  for (int i = 0; i < 4; ++i)
    M[0][i][i] = 1.0;
  for (int mu = 0; mu < 3; ++mu)
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        M[mu + 1][a][b + 2] = sigma[mu][a][b];
        M[mu + 1][a + 2][b] = sigma[mu][a][b];
      }
  return M;
}

int max_l(int kappa) {
  const int l = kappa < 0 ? -kappa - 1 : kappa;
  const int lb = -kappa < 0 ? kappa - 1 : -kappa;
  return std::max(l, lb);
}

} // namespace

std::array<cplx, 4> dirac_spinor(const OracleSpinor &s, double r, double theta,
                                 double phi) {
  auto a = angular_parts(s.kappa, s.two_m, theta, phi);
  const auto gf = s.radial(r);
  a[0] *= gf.g;
  a[1] *= gf.g;
  a[2] *= gf.f;
  a[3] *= gf.f;
  return a;
}

QuadResult quad_matel_3d(const OracleSpinor &s1, const OracleSpinor &s2, int i,
                         int j, std::array<double, 3> k, const OracleConfig &cfg) {
  if (i < 1 || i > 4 || j < 1 || j > 4)
    throw DomainError("quad_matel_3d: component indices run from 1 to 4");
  --i;
  --j;
  const double kn = std::hypot(k[0], k[1], k[2]);
  const int base = max_l(s1.kappa) + max_l(s2.kappa);
  // per rule: conj(psi1_i) psi2_j angular factor and k.n at every node
  struct Cached {
    std::vector<double> w, kdot;
    std::vector<cplx> ab;
  };
  std::map<int, Cached> rules;
  auto angular = [&](double r) {
    const double kr = kn * r;
    const int deg = base + static_cast<int>(std::ceil(kr + 20.0 + 4.0 * std::cbrt(kr)));
    auto it = rules.find(deg);
    if (it == rules.end()) {
      Cached c;
      const SphereRule rule(deg / 2 + 2, deg + 2);
      for (const auto &n : rule.nodes()) {
        const double st = std::sin(n.theta);
        c.w.push_back(n.weight);
        c.kdot.push_back(k[0] * st * std::cos(n.phi) + k[1] * st * std::sin(n.phi) +
                         k[2] * std::cos(n.theta));
        const auto a = angular_parts(s1.kappa, s1.two_m, n.theta, n.phi);
        const auto b = angular_parts(s2.kappa, s2.two_m, n.theta, n.phi);
        c.ab.push_back(std::conj(a[i]) * b[j]);
      }
      it = rules.emplace(deg, std::move(c)).first;
    }
    const auto &c = it->second;
    cplx s = 0.0;
    for (std::size_t n = 0; n < c.w.size(); ++n)
      s += c.w[n] * std::polar(1.0, r * c.kdot[n]) * c.ab[n];
    return s;
  };
  // cut off where the radial envelope has dropped by 1e-17 from its peak
  double peak = 0.0, r_cut = 0.0;
  for (double r = 1e-3; r < 1e7; r *= 1.05) {
    const auto g1 = s1.radial(r), g2 = s2.radial(r);
    const double env = r * r * (std::abs(g1.g) + std::abs(g1.f)) *
                       (std::abs(g2.g) + std::abs(g2.f));
    peak = std::max(peak, env);
    if (env > 1e-17 * peak)
      r_cut = r;
  }
  r_cut *= 1.5;
  auto f = [&](double r) {
    if (r > r_cut)
      return cplx{};
    const auto g1 = s1.radial(r), g2 = s2.radial(r);
    const double x1 = i < 2 ? g1.g : g1.f, x2 = j < 2 ? g2.g : g2.f;
    const double rad = r * r * x1 * x2;
    if (rad == 0.0)
      return cplx{};
    return rad * angular(r);
  };
  return quad_radial(f, cfg);
}

QuadrupleValue quad_quadruple(const OracleSpinor &s1, const OracleSpinor &s2,
                              double k, const OracleConfig &cfg) {
  const int L = max_l(s1.kappa) + max_l(s2.kappa);
  const SphereRule rule(L + 2, 2 * L + 3);
  const auto M = dirac_dense();
  const double four_pi = 4.0 * std::numbers::pi;
  const cplx I{0, 1};

  // radial integrals r^2 j_l(kr) X1 X2 for X = g, f
  std::vector<cplx> rad(4 * (L + 1));
  OracleConfig rc = cfg;
  rc.oscillation_period_hint =
      std::min(cfg.oscillation_period_hint.value_or(INFINITY), 2.0 * std::numbers::pi / k);
  for (int ci = 0; ci < 2; ++ci)
    for (int cj = 0; cj < 2; ++cj)
      for (int l = 0; l <= L; ++l)
        rad[(2 * ci + cj) * (L + 1) + l] =
            quad_radial(
                [&](double r) {
                  const auto a = s1.radial(r), b = s2.radial(r);
                  return cplx(r * r * boost::math::sph_bessel(l, k * r) * (ci ? a.f : a.g) *
                              (cj ? b.f : b.g));
                },
                rc)
                .value;

  // Y_lm at the k^ nodes
  const auto &nodes = rule.nodes();
  const int nlm = (L + 1) * (L + 1);
  std::vector<cplx> ylm(nodes.size() * nlm);
  for (std::size_t n = 0; n < nodes.size(); ++n)
    for (int l = 0; l <= L; ++l)
      for (int m = -l; m <= l; ++m)
        ylm[n * nlm + l * l + l + m] = angular::sph_harm(l, m, nodes[n].theta, nodes[n].phi);

  QuadrupleValue out;
  const int two_j2 = 2 * std::abs(s2.kappa) - 1;
  for (int two_m2 = -two_j2; two_m2 <= two_j2; two_m2 += 2) {
    // plane-wave coefficient of each block U_ij: sum_lm Y_lm(k^) blk[ij][lm]
    std::vector<cplx> blk(16 * nlm);
    for (std::size_t n = 0; n < nodes.size(); ++n) {
      const auto a = angular_parts(s1.kappa, s1.two_m, nodes[n].theta, nodes[n].phi);
      const auto b = angular_parts(s2.kappa, two_m2, nodes[n].theta, nodes[n].phi);
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
          const cplx ab = nodes[n].weight * std::conj(a[i]) * b[j];
          if (ab == 0.0)
            continue;
          for (int l = 0; l <= L; ++l) {
            const cplx r = four_pi * std::pow(I, l) *
                           rad[(2 * (i / 2) + j / 2) * (L + 1) + l];
            for (int m = -l; m <= l; ++m)
              blk[(4 * i + j) * nlm + l * l + l + m] +=
                  r * ab * std::conj(ylm[n * nlm + l * l + l + m]);
          }
        }
    }
    for (int mu = 0; mu < 4; ++mu) {
      double avg = 0.0;
      for (std::size_t n = 0; n < nodes.size(); ++n) {
        cplx T = 0.0;
        for (int i = 0; i < 4; ++i)
          for (int j = 0; j < 4; ++j) {
            if (M[mu][i][j] == 0.0)
              continue;
            cplx u = 0.0;
            for (int q = 0; q < nlm; ++q)
              u += blk[(4 * i + j) * nlm + q] * ylm[n * nlm + q];
            T += M[mu][i][j] * u;
          }
        avg += nodes[n].weight * std::norm(T);
      }
      out.t[mu] += avg / four_pi;
    }
  }
  out.combined = out.t[0] - out.t[1] - out.t[2] - out.t[3];
  return out;
}

} // namespace dmatel::oracle
