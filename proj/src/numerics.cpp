#include "dmatel/numerics.hpp"
#include "dmatel/errors.hpp"
#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace dmatel::numerics {

namespace {

constexpr double pi = std::numbers::pi;
const cplx I{0.0, 1.0};

// Lanczos-type coefficients (g = 671/128, 14 terms); double precision for
// Re z >= 1/2.
constexpr std::array<double, 14> lanczos_cof = {
    57.1562356658629235,     -59.5979603554754912,
    14.1360979747417471,     -0.491913816097620199,
    .339946499848118887e-4,  .465236289270485756e-4,
    -.983744753048795646e-4, .158088703224912494e-3,
    -.210264441724104883e-3, .217439618115212643e-3,
    -.164318106536763890e-3, .844182239838527433e-4,
    -.261908384015814087e-4, .368991826595316234e-5};

cplx lgamma_right(cplx z) {
  cplx y = z;
  const cplx tmp = z + 5.24218750000000000;
  const cplx lead = (z + 0.5) * std::log(tmp) - tmp;
  cplx ser = 0.999999999999997092;
  for (double c : lanczos_cof) {
    y += 1.0;
    ser += c / y;
  }
  return lead + std::log(2.5066282746310005 * ser / z);
}

//! Sum of lgamma over `num` minus lgamma over `den`, exponentiated. Returns
//! zero when any denominator argument sits on a pole of Gamma.
cplx gamma_ratio(std::initializer_list<cplx> num,
                 std::initializer_list<cplx> den) {
  cplx acc = 0.0;
  for (auto d : den) {
    if (is_nonpositive_integer(d))
      return 0.0;
    acc -= lgamma_c(d);
  }
  for (auto n : num) {
    if (is_nonpositive_integer(n))
      throw PoleError("gamma_ratio: numerator on a pole of Gamma");
    acc += lgamma_c(n);
  }
  if (acc.real() > 700.0)
    throw OverflowError("gamma_ratio: result exceeds double range");
  return std::exp(acc);
}

bool is_zero(cplx z) { return z.real() == 0.0 && z.imag() == 0.0; }

//------------------------------------------------------------------------------
// Plain power series with a tail estimate.

struct SeriesOut {
  cplx sum;
  std::size_t terms;
  double tail;
  double max_term;
};

constexpr std::size_t series_cap = 20000;

// Terms of 2F1 have ratio -> z; with |z| < 1 the tail after term t_n is
// bounded by |t_n| rho / (1 - rho) once the ratio has settled below 1.
SeriesOut series_2f1(cplx a, cplx b, cplx c, cplx z) {
  cplx term = 1.0, sum = 1.0;
  double max_term = 1.0;
  const double az = std::abs(z);
  for (std::size_t n = 0; n < series_cap; ++n) {
    const double dn = double(n);
    const cplx num = (a + dn) * (b + dn);
    if (is_zero(num))
      return {sum, n + 1, 0.0, max_term};
    term *= num / ((c + dn) * (dn + 1.0)) * z;
    sum += term;
    max_term = std::max(max_term, std::abs(term));
    const double ratio =
        std::abs((a + dn + 1.0) * (b + dn + 1.0) / ((c + dn + 1.0) * (dn + 2.0))) *
        az;
    const double rho = std::max(ratio, az);
    if (rho < 1.0) {
      const double tail = std::abs(term) * rho / (1.0 - rho);
      if (tail <= hyp_tolerance * std::abs(sum) || tail == 0.0)
        return {sum, n + 2, tail, max_term};
    }
  }
  throw NoConvergence("hyp2f1: power series did not converge");
}

SeriesOut series_1f1(cplx a, cplx c, cplx z) {
  cplx term = 1.0, sum = 1.0;
  double max_term = 1.0;
  const double az = std::abs(z);
  for (std::size_t n = 0; n < series_cap; ++n) {
    const double dn = double(n);
    if (is_zero(a + dn))
      return {sum, n + 1, 0.0, max_term};
    term *= (a + dn) / ((c + dn) * (dn + 1.0)) * z;
    sum += term;
    max_term = std::max(max_term, std::abs(term));
    const double ratio =
        std::abs((a + dn + 1.0) / ((c + dn + 1.0) * (dn + 2.0))) * az;
    // ratio decreases monotonically once n exceeds |a|, |c|, |z|
    if (ratio < 0.5 && dn > std::abs(a) && dn > std::abs(c)) {
      const double tail = std::abs(term) * ratio / (1.0 - ratio);
      if (tail <= hyp_tolerance * std::abs(sum) || tail == 0.0)
        return {sum, n + 2, tail, max_term};
    }
  }
  throw NoConvergence("hyp1f1: power series did not converge");
}

//------------------------------------------------------------------------------
// Taylor re-expansion of a second-order linear ODE
//   (A0 + A1 t + A2 t^2) w'' + (B0 + B1 t) w' + C0 w = 0
// about the current point. Advances (w, w') by the step h.

struct OdeCoeffs {
  cplx A0, A1, A2, B0, B1, C0;
};

std::size_t taylor_step(const OdeCoeffs &q, cplx h, cplx &w, cplx &dw) {
  // e_n = d_n h^n
  cplx e0 = w, e1 = dw * h;
  cplx val = e0 + e1;
  cplx der = e1; // sum n e_n  (= h w')
  std::size_t n = 0;
  int small = 0;
  for (; n < 2000; ++n) {
    const double dn = double(n);
    const cplx e2 = -((q.A1 * dn + q.B0) * (dn + 1.0) * e1 * h +
                      (q.A2 * dn * (dn - 1.0) + q.B1 * dn + q.C0) * e0 * h * h) /
                    (q.A0 * (dn + 2.0) * (dn + 1.0));
    val += e2;
    der += (dn + 2.0) * e2;
    const double scale = std::abs(val) + std::abs(der) / (dn + 2.0);
    if (std::abs(e2) <= 1.0e-17 * scale)
      ++small;
    else
      small = 0;
    if (small >= 3)
      break;
    e0 = e1;
    e1 = e2;
  }
  if (n >= 2000)
    throw NoConvergence("taylor continuation did not converge");
  w = val;
  dw = der / h;
  return n + 2;
}

//------------------------------------------------------------------------------
// 1F1 branches

// Large-|z| expansion, valid for -pi/2 <= arg z <= pi/2. Returns false if the
// divergent series does not reach the tolerance before its smallest term.
bool hyp1f1_asymptotic(cplx a, cplx c, cplx z, WithDiagnostics<cplx> &out) {
  auto asym_sum = [](cplx p, cplx q, cplx w, std::size_t &terms,
                     double &tail) -> cplx {
    // sum_n (p)_n (q)_n / n! w^n, stopped at the smallest term
    cplx term = 1.0, sum = 1.0;
    double prev = 1.0;
    for (std::size_t n = 0; n < 400; ++n) {
      const double dn = double(n);
      const cplx next = term * (p + dn) * (q + dn) / (dn + 1.0) * w;
      const double an = std::abs(next);
      if (an > prev && n > 2) {
        terms = n + 1;
        tail = prev;
        return sum;
      }
      term = next;
      sum += term;
      prev = an;
      if (an <= 1e-17 * std::abs(sum)) {
        terms = n + 2;
        tail = an;
        return sum;
      }
    }
    terms = 400;
    tail = prev;
    return sum;
  };
  std::size_t n1 = 0, n2 = 0;
  double t1 = 0, t2 = 0;
  const cplx s1 = asym_sum(c - a, 1.0 - a, 1.0 / z, n1, t1);
  const cplx s2 = asym_sum(a, a - c + 1.0, -1.0 / z, n2, t2);
  if (t1 > 1e-15 * std::abs(s1) || t2 > 1e-15 * std::abs(s2))
    return false;
  const cplx lgc = lgamma_c(c);
  cplx term1 = 0.0, term2 = 0.0;
  if (!is_nonpositive_integer(a))
    term1 = std::exp(lgc - lgamma_c(a) + z + (a - c) * std::log(z)) * s1;
  if (!is_nonpositive_integer(c - a))
    term2 = std::exp(lgc - lgamma_c(c - a) - a * std::log(-z)) * s2;
  out.value = term1 + term2;
  out.diagnostics.terms_used = n1 + n2;
  out.diagnostics.truncation_bound =
      t1 * std::abs(term1) / std::max(std::abs(s1), 1e-300) +
      t2 * std::abs(term2) / std::max(std::abs(s2), 1e-300);
  out.diagnostics.transformation_applied = Transformation::asymptotic;
  return true;
}

// Re z >= 0 assumed.
WithDiagnostics<cplx> hyp1f1_right(cplx a, cplx c, cplx z) {
  const double az = std::abs(z);
  // The series cancels when Im z is large, and also when |a| is: with
  // a = x + iy, y >> 1, on the imaginary axis it sums I-Bessel-like terms
  // to a J-Bessel-like value.
  auto conditioned = [](const SeriesOut &s) {
    return s.max_term <= 20.0 * std::abs(s.sum);
  };
  if (az <= 60.0) {
    const auto s = series_1f1(a, c, z);
    if (az - z.real() <= 8.0 && conditioned(s)) {
      SeriesDiagnostics d;
      d.terms_used = s.terms;
      d.truncation_bound = s.tail + 2.2e-16 * s.max_term;
      return {s.sum, d};
    }
  }
  WithDiagnostics<cplx> out;
  if (az >= 30.0 + 2.0 * (std::abs(a) + std::abs(c)) &&
      hyp1f1_asymptotic(a, c, z, out))
    return out;
  // Taylor continuation along the ray, from the largest |z0| <= 6 where the
  // series is still well conditioned.
  const cplx dir = z / az;
  double r0 = std::min(6.0, az);
  auto f0 = series_1f1(a, c, dir * r0);
  while (!conditioned(f0) && r0 > 1e-3) {
    r0 *= 0.5;
    f0 = series_1f1(a, c, dir * r0);
  }
  cplx zc = dir * r0;
  auto f1 = series_1f1(a + 1.0, c + 1.0, zc);
  cplx w = f0.sum, dw = a / c * f1.sum;
  std::size_t terms = f0.terms + f1.terms;
  while (std::abs(z - zc) > 0.0) {
    const double remaining = std::abs(z - zc);
    const double step = std::min({remaining, 2.0, 0.5 * std::abs(zc)});
    const cplx h = (remaining <= step) ? (z - zc) : dir * step;
    OdeCoeffs q{zc, 1.0, 0.0, c - zc, -1.0, -a};
    terms += taylor_step(q, h, w, dw);
    zc = (remaining <= step) ? z : zc + h;
  }
  out.value = w;
  out.diagnostics.terms_used = terms;
  out.diagnostics.truncation_bound =
      2.2e-16 * std::max(f0.max_term, 1.0) * std::abs(w) /
      std::max(std::abs(f0.sum), 1e-300);
  out.diagnostics.transformation_applied = Transformation::continuation;
  return out;
}

//------------------------------------------------------------------------------
// 2F1 branches

WithDiagnostics<cplx> from_series(const SeriesOut &s, cplx prefactor,
                                  Transformation t) {
  SeriesDiagnostics d;
  d.terms_used = s.terms;
  d.truncation_bound =
      std::abs(prefactor) * (s.tail + 2.2e-16 * s.max_term);
  d.transformation_applied = t;
  return {prefactor * s.sum, d};
}

WithDiagnostics<cplx> hyp2f1_dispatch(cplx a, cplx b, cplx c, cplx z,
                                      bool allow_perturb);

bool ill_conditioned(const SeriesOut &s) {
  return 2.2e-16 * s.max_term > 1e-14 * std::abs(s.sum);
}

// continuation walks outward from 0.5 z/|z| and must not cross the cut [1, inf)
bool off_cut(cplx z) {
  return std::abs(z) > 0.5 && !(z.imag() == 0.0 && z.real() >= 1.0);
}

WithDiagnostics<cplx> hyp2f1_recip(cplx a, cplx b, cplx c, cplx z) {
  const cplx w = 1.0 / z;
  const cplx lmz = std::log(-z);
  const auto s1 = series_2f1(a, a - c + 1.0, a - b + 1.0, w);
  const auto s2 = series_2f1(b, b - c + 1.0, b - a + 1.0, w);
  const cplx p1 = gamma_ratio({c, b - a}, {b, c - a}) * std::exp(-a * lmz);
  const cplx p2 = gamma_ratio({c, a - b}, {a, c - b}) * std::exp(-b * lmz);
  WithDiagnostics<cplx> out;
  out.value = p1 * s1.sum + p2 * s2.sum;
  out.diagnostics.terms_used = s1.terms + s2.terms;
  out.diagnostics.truncation_bound =
      std::abs(p1) * (s1.tail + 2.2e-16 * s1.max_term) +
      std::abs(p2) * (s2.tail + 2.2e-16 * s2.max_term) +
      4.4e-16 * (std::abs(p1 * s1.sum) + std::abs(p2 * s2.sum));
  out.diagnostics.transformation_applied = Transformation::recip_z;
  return out;
}

WithDiagnostics<cplx> hyp2f1_one_minus(cplx a, cplx b, cplx c, cplx z) {
  const cplx w = 1.0 - z;
  const auto s1 = series_2f1(a, b, a + b - c + 1.0, w);
  const auto s2 = series_2f1(c - a, c - b, c - a - b + 1.0, w);
  const cplx p1 = gamma_ratio({c, c - a - b}, {c - a, c - b});
  const cplx p2 =
      gamma_ratio({c, a + b - c}, {a, b}) * std::exp((c - a - b) * std::log(w));
  WithDiagnostics<cplx> out;
  out.value = p1 * s1.sum + p2 * s2.sum;
  out.diagnostics.terms_used = s1.terms + s2.terms;
  out.diagnostics.truncation_bound =
      std::abs(p1) * (s1.tail + 2.2e-16 * s1.max_term) +
      std::abs(p2) * (s2.tail + 2.2e-16 * s2.max_term) +
      4.4e-16 * (std::abs(p1 * s1.sum) + std::abs(p2 * s2.sum));
  out.diagnostics.transformation_applied = Transformation::one_minus_z;
  return out;
}

WithDiagnostics<cplx> hyp2f1_continue(cplx a, cplx b, cplx c, cplx z) {
  const double az = std::abs(z);
  const cplx dir = z / az;
  cplx zc = 0.5 * dir;
  const auto f0 = series_2f1(a, b, c, zc);
  const auto f1 = series_2f1(a + 1.0, b + 1.0, c + 1.0, zc);
  cplx w = f0.sum, dw = a * b / c * f1.sum;
  std::size_t terms = f0.terms + f1.terms;
  while (true) {
    const double remaining = std::abs(z - zc);
    if (remaining == 0.0)
      break;
    const double radius = std::min(std::abs(zc), std::abs(1.0 - zc));
    const double step = 0.5 * radius;
    const bool last = remaining <= step;
    const cplx h = last ? (z - zc) : dir * step;
    OdeCoeffs q{zc * (1.0 - zc), 1.0 - 2.0 * zc, -1.0,
                c - (a + b + 1.0) * zc, -(a + b + 1.0), -a * b};
    terms += taylor_step(q, h, w, dw);
    zc = last ? z : zc + h;
  }
  WithDiagnostics<cplx> out;
  out.value = w;
  out.diagnostics.terms_used = terms;
  out.diagnostics.truncation_bound = 1e-15 * std::abs(w);
  out.diagnostics.transformation_applied = Transformation::continuation;
  return out;
}

// Evaluate at parameter +/- eps and average; error O(eps^2).
template <typename F>
WithDiagnostics<cplx> perturbed(F &&eval, cplx scale_ref) {
  const double eps = 1.0e-6 * (1.0 + std::abs(scale_ref));
  const auto up = eval(eps);
  const auto dn = eval(-eps);
  WithDiagnostics<cplx> out;
  out.value = 0.5 * (up.value + dn.value);
  out.diagnostics = up.diagnostics;
  out.diagnostics.terms_used += dn.diagnostics.terms_used;
  out.diagnostics.truncation_bound =
      std::max(up.diagnostics.truncation_bound,
               dn.diagnostics.truncation_bound) +
      eps * eps * std::abs(up.value - dn.value) / (2.0 * eps);
  out.diagnostics.perturbed = true;
  return out;
}

bool near_integer(cplx z) {
  return std::abs(z.imag()) < 1e-9 &&
         std::abs(z.real() - std::round(z.real())) < 1e-9;
}

WithDiagnostics<cplx> hyp2f1_dispatch(cplx a, cplx b, cplx c, cplx z,
                                      bool allow_perturb) {
  const double az = std::abs(z);
  if (az <= 0.6)
    return from_series(series_2f1(a, b, c, z), 1.0, Transformation::none);
  const cplx zp = z / (z - 1.0);
  if (std::abs(zp) <= 0.6)
    return from_series(series_2f1(a, c - b, c, zp),
                       std::exp(-a * std::log(1.0 - z)), Transformation::pfaff);
  if (az >= 1.0 / 0.6) {
    if (near_integer(a - b)) {
      if (!allow_perturb)
        throw DegenerateTransformError("hyp2f1: a-b integer in 1/z formula");
      return perturbed(
          [&](double e) { return hyp2f1_dispatch(a, b + e, c, z, false); }, b);
    }
    auto r = hyp2f1_recip(a, b, c, z);
    if (r.diagnostics.truncation_bound > 1e-12 * std::abs(r.value))
      return hyp2f1_continue(a, b, c, z);
    return r;
  }
  if (std::abs(1.0 - z) <= 0.6) {
    if (near_integer(c - a - b)) {
      if (!allow_perturb)
        throw DegenerateTransformError(
            "hyp2f1: c-a-b integer in 1-z formula");
      return perturbed(
          [&](double e) { return hyp2f1_dispatch(a, b, c + e, z, false); }, c);
    }
    auto r = hyp2f1_one_minus(a, b, c, z);
    if (r.diagnostics.truncation_bound > 1e-12 * std::abs(r.value))
      return hyp2f1_continue(a, b, c, z);
    return r;
  }
  return hyp2f1_continue(a, b, c, z);
}

} // namespace

//==============================================================================

const char *to_string(Transformation t) {
  switch (t) {
  case Transformation::none:
    return "none";
  case Transformation::pfaff:
    return "pfaff";
  case Transformation::euler:
    return "euler";
  case Transformation::recip_z:
    return "recip_z";
  case Transformation::one_minus_z:
    return "one_minus_z";
  case Transformation::continuation:
    return "continuation";
  case Transformation::asymptotic:
    return "asymptotic";
  }
  return "?";
}

bool is_nonpositive_integer(cplx z, double tol) {
  return std::abs(z.imag()) <= tol && z.real() <= tol &&
         std::abs(z.real() - std::round(z.real())) <= tol;
}

cplx sinpi(cplx z) {
  const double n = std::round(z.real());
  const double r = z.real() - n;
  const double sign = (std::fmod(std::abs(n), 2.0) == 1.0) ? -1.0 : 1.0;
  const double py = pi * z.imag();
  return sign * cplx{std::sin(pi * r) * std::cosh(py),
                     std::cos(pi * r) * std::sinh(py)};
}

cplx lgamma_c(cplx z) {
  if (is_nonpositive_integer(z))
    throw PoleError("lgamma_c: pole at non-positive integer");
  if (z.real() >= 0.5)
    return lgamma_right(z);
  // reflection
  return std::log(pi) - std::log(sinpi(z)) - lgamma_right(1.0 - z);
}

cplx gamma_c(cplx z) {
  if (is_nonpositive_integer(z))
    throw PoleError("gamma_c: pole at non-positive integer");
  if (z.real() >= 0.5) {
    const cplx lg = lgamma_right(z);
    if (lg.real() > std::log(std::numeric_limits<double>::max()))
      throw OverflowError("gamma_c: |Gamma(z)| overflows; use lgamma_c");
    return std::exp(lg);
  }
  const cplx lg1 = lgamma_right(1.0 - z);
  const cplx s = sinpi(z);
  const cplx lg = std::log(pi) - std::log(s) - lg1;
  if (lg.real() > std::log(std::numeric_limits<double>::max()))
    throw OverflowError("gamma_c: |Gamma(z)| overflows; use lgamma_c");
  if (lg1.real() < 700.0)
    return pi / (s * std::exp(lg1));
  return std::exp(lg);
}

cplx rgamma_c(cplx z) {
  if (is_nonpositive_integer(z))
    return 0.0;
  const cplx lg = lgamma_c(z);
  if (-lg.real() > std::log(std::numeric_limits<double>::max()))
    throw OverflowError("rgamma_c: 1/Gamma(z) overflows");
  return std::exp(-lg);
}

//------------------------------------------------------------------------------

WithDiagnostics<cplx> hyp1f1(cplx a, cplx c, cplx z) {
  if (is_nonpositive_integer(c))
    throw DomainError("hyp1f1: c is a non-positive integer");
  if (is_zero(z) || is_zero(a))
    return {1.0, {}};
  if (is_nonpositive_integer(a)) {
    auto s = series_1f1(a, c, z);
    SeriesDiagnostics d;
    d.terms_used = s.terms;
    d.truncation_bound = 2.2e-16 * s.max_term;
    return {s.sum, d};
  }
  if (z.real() < 0.0) {
    // Kummer: 1F1(a;c;z) = e^z 1F1(c-a;c;-z)
    auto r = hyp1f1(c - a, c, -z);
    const cplx ez = std::exp(z);
    r.value *= ez;
    r.diagnostics.truncation_bound *= std::abs(ez);
    if (r.diagnostics.transformation_applied == Transformation::none)
      r.diagnostics.transformation_applied = Transformation::euler;
    return r;
  }
  return hyp1f1_right(a, c, z);
}

WithDiagnostics<cplx> hyp2f1(cplx a, cplx b, cplx c, cplx z) {
  if (is_nonpositive_integer(c))
    throw DomainError("hyp2f1: c is a non-positive integer");
  if (is_zero(z))
    return {1.0, {}};
  // terminating series
  if (is_nonpositive_integer(a) || is_nonpositive_integer(b)) {
    auto s = series_2f1(a, b, c, z);
    // long polynomials with alternating terms cancel; continue instead
    if (ill_conditioned(s) && off_cut(z))
      return hyp2f1_continue(a, b, c, z);
    SeriesDiagnostics d;
    d.terms_used = s.terms;
    d.truncation_bound = 2.2e-16 * s.max_term;
    return {s.sum, d};
  }
  // Euler's transformation makes the series terminate
  if (is_nonpositive_integer(c - a) || is_nonpositive_integer(c - b)) {
    if (z == cplx{1.0, 0.0})
      throw BranchCutError("hyp2f1: z = 1 with c-a or c-b terminating");
    auto s = series_2f1(c - a, c - b, c, z);
    if (!ill_conditioned(s) || !off_cut(z)) {
      const cplx pref = std::exp((c - a - b) * std::log(1.0 - z));
      return from_series(s, pref, Transformation::euler);
    }
  }
  if (z.imag() == 0.0 && z.real() >= 1.0) {
    if (z.real() == 1.0 && (c - a - b).real() > 0.0) {
      // Gauss summation
      SeriesDiagnostics d;
      return {gamma_ratio({c, c - a - b}, {c - a, c - b}), d};
    }
    throw BranchCutError("hyp2f1: argument on the branch cut [1, inf)");
  }
  return hyp2f1_dispatch(a, b, c, z, true);
}

//------------------------------------------------------------------------------

double sph_bessel(int l, double z, int l_max) {
  if (l < 0 || l > l_max)
    throw DomainError("sph_bessel: order out of range, l=" + std::to_string(l));
  if (z < 0.0 || !std::isfinite(z))
    throw DomainError("sph_bessel: argument must be finite and >= 0");
  const double crossover = std::max(double(l), 2.0);
  if (z <= crossover) {
    // z^l / (2l+1)!!
    double lead = 1.0;
    for (int i = 1; i <= l; ++i)
      lead *= z / double(2 * i + 1);
    if (l == 0)
      lead = 1.0;
    const double x = -0.5 * z * z;
    double term = 1.0, sum = 1.0;
    for (int k = 0; k < 500; ++k) {
      term *= x / (double(k + 1) * double(2 * l + 2 * k + 3));
      sum += term;
      if (std::abs(term) <= 1e-17 * std::abs(sum))
        break;
    }
    return lead * sum;
  }
  // (1/z) Re{ e^{iz} sum_k i^{k-l-1} (l+k)!/(k!(l-k)!) (2z)^{-k} }
  const cplx ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  cplx sum = 0.0;
  double ak = 1.0;
  double inv2z = 1.0;
  for (int k = 0; k <= l; ++k) {
    const int e = ((k - l - 1) % 4 + 4) % 4;
    sum += ipow[e] * (ak * inv2z);
    ak *= double(l + k + 1) * double(l - k) / double(k + 1);
    inv2z /= 2.0 * z;
  }
  return (cplx{std::cos(z), std::sin(z)} * sum).real() / z;
}

double assoc_legendre(int l, int m, double x) {
  if (l < 0 || std::abs(m) > l)
    throw DomainError("assoc_legendre: requires |m| <= l");
  if (x < -1.0 || x > 1.0)
    throw DomainError("assoc_legendre: requires |x| <= 1");
  if (m < 0) {
    const int am = -m;
    const double sign = (am % 2) ? -1.0 : 1.0;
    return sign * std::exp(log_factorial(l - am) - log_factorial(l + am)) *
           assoc_legendre(l, am, x);
  }
  double pmm = 1.0;
  if (m > 0) {
    const double somx2 = std::sqrt((1.0 - x) * (1.0 + x));
    double fact = 1.0;
    for (int i = 1; i <= m; ++i) {
      pmm *= -fact * somx2;
      fact += 2.0;
    }
  }
  if (l == m)
    return pmm;
  double pmmp1 = x * double(2 * m + 1) * pmm;
  if (l == m + 1)
    return pmmp1;
  double pll = 0.0;
  for (int ll = m + 2; ll <= l; ++ll) {
    pll = (x * double(2 * ll - 1) * pmmp1 - double(ll + m - 1) * pmm) /
          double(ll - m);
    pmm = pmmp1;
    pmmp1 = pll;
  }
  return pll;
}

double laguerre(int n, double a, double x) {
  if (n < 0)
    throw DomainError("laguerre: n must be >= 0");
  if (n == 0)
    return 1.0;
  double lm1 = 1.0, l = 1.0 + a - x;
  for (int k = 1; k < n; ++k) {
    const double next =
        ((double(2 * k + 1) + a - x) * l - (double(k) + a) * lm1) / double(k + 1);
    lm1 = l;
    l = next;
  }
  return l;
}

std::vector<double> laguerre_coefficients(int n, double a) {
  if (n < 0)
    throw DomainError("laguerre_coefficients: n must be >= 0");
  std::vector<double> c(std::size_t(n) + 1);
  for (int q = 0; q <= n; ++q) {
    // (-1)^q / q! * binom(n + a, n - q)
    double binom = 1.0;
    for (int i = 1; i <= n - q; ++i)
      binom *= (a + double(q + i)) / double(i);
    c[std::size_t(q)] = ((q % 2) ? -1.0 : 1.0) * binom / factorial(q);
  }
  return c;
}

std::vector<double> hyp1f1_polynomial_coefficients(int n, double c) {
  if (n < 0)
    throw DomainError("hyp1f1_polynomial_coefficients: n must be >= 0");
  std::vector<double> d(std::size_t(n) + 1);
  d[0] = 1.0;
  for (int q = 0; q < n; ++q)
    d[std::size_t(q) + 1] =
        d[std::size_t(q)] * double(q - n) / ((c + double(q)) * double(q + 1));
  return d;
}

double factorial(int n) {
  if (n < 0)
    throw DomainError("factorial: negative argument");
  double f = 1.0;
  for (int i = 2; i <= n; ++i)
    f *= double(i);
  return f;
}

double log_factorial(int n) {
  if (n < 0)
    throw DomainError("log_factorial: negative argument");
  return std::lgamma(double(n) + 1.0);
}

void gauss_legendre(int n, std::vector<double> &nodes,
                    std::vector<double> &weights) {
  nodes.assign(std::size_t(n), 0.0);
  weights.assign(std::size_t(n), 0.0);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(pi * (double(i) + 0.75) / (double(n) + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = (double(2 * k - 1) * x * p1 - double(k - 1) * p0) / double(k);
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) {
        p1 = x;
        p0 = 1.0;
      }
      dp = double(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16)
        break;
    }
    // recompute derivative at converged node
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = (double(2 * k - 1) * x * p1 - double(k - 1) * p0) / double(k);
      p0 = p1;
      p1 = p2;
    }
    dp = double(n) * (x * p1 - p0) / (x * x - 1.0);
    nodes[std::size_t(i)] = -x;
    nodes[std::size_t(n - 1 - i)] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    weights[std::size_t(i)] = w;
    weights[std::size_t(n - 1 - i)] = w;
  }
}

} // namespace dmatel::numerics
