#include "dmatel/radial.hpp"
#include "dmatel/errors.hpp"
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace dmatel::radial {

using numerics::SeriesDiagnostics;
using numerics::Transformation;

namespace {

constexpr double pi = std::numbers::pi;
const cplx I{0.0, 1.0};

// Poles of Gamma(b) closer than this are stepped around symmetrically.
constexpr double pole_tol = 1e-8;
constexpr double pole_shift = 1e-5;
constexpr double cancellation_limit = 1e-6;

void merge(SeriesDiagnostics &into, const SeriesDiagnostics &d, double weight) {
  into.terms_used += d.terms_used;
  into.truncation_bound += weight * d.truncation_bound;
  if (d.transformation_applied != Transformation::none)
    into.transformation_applied = d.transformation_applied;
  into.perturbed = into.perturbed || d.perturbed;
}

struct Term {
  cplx value;
  SeriesDiagnostics diag;
};

// exp(log_scale) Gamma(b) s^-b 2F1(a, b; c; p/s), no precondition on b; the
// analytic continuation in b is what the finite-part sums need.
Term laplace_continued(cplx a, cplx b, cplx c, cplx p, cplx s,
                       cplx log_scale = 0.0) {
  if (numerics::is_nonpositive_integer(b, pole_tol) && std::abs(b.imag()) < pole_tol) {
    // symmetric average across the pole; the 1/eps parts cancel exactly
    const cplx b0 = std::round(b.real());
    Term lo = laplace_continued(a, b0 - pole_shift, c, p, s, log_scale);
    Term hi = laplace_continued(a, b0 + pole_shift, c, p, s, log_scale);
    Term out{0.5 * (lo.value + hi.value), lo.diag};
    merge(out.diag, hi.diag, 1.0);
    out.diag.perturbed = true;
    return out;
  }
  const auto f = numerics::hyp2f1(a, b, c, p / s);
  const cplx pre = std::exp(log_scale + numerics::lgamma_c(b) - b * std::log(s));
  Term out{pre * f.value, f.diagnostics};
  out.diag.truncation_bound *= std::abs(pre);
  return out;
}

// Gamma(b-1) s'^(1-b) (2F1(a, b-1; c; p/s') - 1), continued through b = 1.
Term sinc_half(cplx a, cplx b, cplx c, cplx p, cplx sp) {
  const cplx bm = b - 1.0;
  if (numerics::is_nonpositive_integer(bm, pole_tol) && std::abs(bm.imag()) < pole_tol) {
    const cplx b0 = std::round(b.real());
    Term lo = sinc_half(a, b0 - pole_shift, c, p, sp);
    Term hi = sinc_half(a, b0 + pole_shift, c, p, sp);
    Term out{0.5 * (lo.value + hi.value), lo.diag};
    merge(out.diag, hi.diag, 1.0);
    out.diag.perturbed = true;
    return out;
  }
  const auto f = numerics::hyp2f1(a, bm, c, p / sp);
  const cplx pre = std::exp(numerics::lgamma_c(bm) - bm * std::log(sp));
  Term out{pre * (f.value - 1.0), f.diagnostics};
  out.diag.truncation_bound *= std::abs(pre);
  return out;
}

// 2F1(a, b0 + i; c; z) for i = 0, 1, 2, ... by the contiguous relation
//   (c-b) F(b-1) + (2b - c + (a-b) z) F(b) + b (z-1) F(b+1) = 0.
// The direct evaluations lose about 2^b to cancellation once b is large, but
// with |1-z| = 1 both solutions of the recurrence share the same exponential
// size and running it forward costs only a power of b.
class BLadder {
public:
  BLadder(cplx a, double b0, cplx c, cplx z) : m_a(a), m_b0(b0), m_c(c), m_z(z) {
    const auto f0 = numerics::hyp2f1(a, b0, c, z);
    const auto f1 = numerics::hyp2f1(a, b0 + 1.0, c, z);
    m_f = {f0.value, f1.value};
    m_diag = f0.diagnostics;
    merge(m_diag, f1.diagnostics, 1.0);
    m_diag.truncation_bound = std::max(f0.diagnostics.truncation_bound / std::abs(f0.value),
                                       f1.diagnostics.truncation_bound / std::abs(f1.value));
  }
  cplx at(int i) {
    while (int(m_f.size()) <= i) {
      const std::size_t j = m_f.size() - 1;
      const double b = m_b0 + double(j);
      m_f.push_back(-((2.0 * b - m_c + (m_a - b) * m_z) * m_f[j] +
                      (m_c - b) * m_f[j - 1]) /
                    (b * (m_z - 1.0)));
    }
    return m_f[i];
  }
  //! relative seed error, scaled by the (linear) growth of the recurrence
  SeriesDiagnostics diagnostics() const {
    SeriesDiagnostics d = m_diag;
    d.terms_used += m_f.size();
    d.truncation_bound = (m_diag.truncation_bound + 2.2e-16) * double(m_f.size());
    return d;
  }

private:
  cplx m_a;
  double m_b0;
  cplx m_c, m_z;
  std::vector<cplx> m_f;
  SeriesDiagnostics m_diag;
};

cplx hankel_laplace_raw(cplx mu, double nu, cplx alpha, double beta,
                        SeriesDiagnostics &diag) {
  const cplx nm = nu + mu;
  if (beta == 0.0) {
    if (nu != 0.0)
      return 0.0;
    return std::exp(numerics::lgamma_c(mu) - mu * std::log(alpha));
  }
  const cplx z = -(beta * beta) / (alpha * alpha);
  const auto f = numerics::hyp2f1(0.5 * nm, 0.5 * (1.0 + nm), nu + 1.0, z);
  const cplx pre =
      std::exp(nu * std::log(beta / (2.0 * alpha)) + numerics::lgamma_c(nm) -
               mu * std::log(alpha) - std::lgamma(nu + 1.0));
  diag = f.diagnostics;
  diag.truncation_bound *= std::abs(pre);
  return pre * f.value;
}

const std::vector<double> &coef_of(const states::BoundDecomposition &b,
                                   Component c) {
  return c == Component::large ? b.g_coef : b.f_coef;
}

cplx free_coef(const states::FreeDecomposition &f, Component c) {
  return c == Component::large ? f.G : f.F;
}

void finish(RadialIntegralResult &r, double abs_sum) {
  r.cancellation_ratio = abs_sum > 0.0 ? std::abs(r.value) / abs_sum : 1.0;
  r.cancellation_warning = r.cancellation_ratio < cancellation_limit;
}

} // namespace

const char *to_string(Path p) {
  switch (p) {
  case Path::hankel_laplace:
    return "hankel_laplace";
  case Path::laplace_1f1:
    return "laplace_1f1";
  case Path::laplace_1f1_sinc:
    return "laplace_1f1_sinc";
  }
  return "?";
}

cplx bessel_split_coefficient(int l, int sigma, int j) {
  if (j < 0 || j > l)
    return 0.0;
  // (+-i)^(-l+j-1) (l+j)! / (2 j! (l-j)! 2^j)
  const cplx unit = sigma > 0 ? I : -I;
  cplx ph = 1.0;
  const int e = ((-l + j - 1) % 4 + 4) % 4;
  for (int i = 0; i < e; ++i)
    ph *= unit;
  const double mag = std::exp(numerics::log_factorial(l + j) -
                              numerics::log_factorial(j) -
                              numerics::log_factorial(l - j)) /
                     (2.0 * std::ldexp(1.0, j));
  return ph * mag;
}

RadialIntegralResult hankel_laplace(const HankelLaplaceSpec &spec) {
  std::string failed;
  if (!((spec.nu + spec.mu).real() > 0.0))
    failed += " Re(nu+mu)>0";
  if (!((spec.alpha_decay + I * spec.beta_osc).real() > 0.0))
    failed += " Re(alpha+i beta)>0";
  if (!((spec.alpha_decay - I * spec.beta_osc).real() > 0.0))
    failed += " Re(alpha-i beta)>0";
  if (!failed.empty())
    throw PreconditionError("hankel_laplace: violated" + failed);
  RadialIntegralResult r;
  r.path = Path::hankel_laplace;
  r.value = hankel_laplace_raw(spec.mu, spec.nu, spec.alpha_decay, spec.beta_osc,
                               r.diagnostics);
  return r;
}

RadialIntegralResult laplace_1f1(const Laplace1F1Spec &spec) {
  if (spec.k != 0.0)
    return laplace_1f1_sinc(spec);
  if (!(spec.b.real() > 0.0))
    throw PreconditionError("laplace_1f1: Re(b) must be positive");
  if (!(spec.s.real() > 0.0))
    throw PreconditionError("laplace_1f1: Re(s) must be positive");
  RadialIntegralResult r;
  r.path = Path::laplace_1f1;
  const Term t = laplace_continued(spec.a, spec.b, spec.c, spec.p, spec.s);
  r.value = t.value;
  r.diagnostics = t.diag;
  return r;
}

RadialIntegralResult laplace_1f1_sinc(const Laplace1F1Spec &spec) {
  if (!(spec.k > 0.0))
    throw PreconditionError("laplace_1f1_sinc: k must be positive");
  if (!(spec.b.real() > 0.0))
    throw PreconditionError("laplace_1f1_sinc: Re(b) must be positive");
  if (!(spec.s.real() > 0.0))
    throw PreconditionError("laplace_1f1_sinc: Re(s) must be positive");
  const double k = spec.k;
  RadialIntegralResult r;
  r.path = Path::laplace_1f1_sinc;
  // j_0 transform of t^(b-1) e^(-st): sqrt(pi/2k) x Hankel-Laplace(mu=b-1/2, nu=1/2)
  SeriesDiagnostics d0;
  const cplx first = std::sqrt(pi / (2.0 * k)) *
                     hankel_laplace_raw(spec.b - 0.5, 0.5, spec.s, k, d0);
  const Term minus = sinc_half(spec.a, spec.b, spec.c, spec.p, spec.s - I * k);
  const Term plus = sinc_half(spec.a, spec.b, spec.c, spec.p, spec.s + I * k);
  const cplx scale = 1.0 / (2.0 * I * k);
  const cplx rest = scale * (minus.value - plus.value);
  r.value = first + rest;
  r.diagnostics = d0;
  merge(r.diagnostics, minus.diag, 0.5 / k);
  merge(r.diagnostics, plus.diag, 0.5 / k);
  const double biggest = std::max(std::abs(scale * minus.value), std::abs(scale * plus.value));
  r.cancellation_ratio = biggest > 0.0 ? std::abs(rest) / biggest : 1.0;
  r.cancellation_warning = r.cancellation_ratio < cancellation_limit;
  return r;
}

RadialIntegralResult radial_bound_bound(const states::BoundDecomposition &b1,
                                        Component c1,
                                        const states::BoundDecomposition &b2,
                                        Component c2, int l, double k) {
  if (l < 0 || !(k >= 0.0))
    throw DomainError("radial_bound_bound: need l >= 0 and k >= 0");
  RadialIntegralResult r;
  r.path = Path::hankel_laplace;
  const auto &u = coef_of(b1, c1);
  const auto &v = coef_of(b2, c2);
  const double alpha = b1.lambda + b2.lambda;
  const double g12 = b1.gamma + b2.gamma;
  if (k == 0.0 && l > 0)
    return r;
  double abs_sum = 0.0;
  cplx total = 0.0;
  for (std::size_t q1 = 0; q1 < u.size(); ++q1)
    for (std::size_t q2 = 0; q2 < v.size(); ++q2) {
      const double w = u[q1] * v[q2];
      if (w == 0.0)
        continue;
      SeriesDiagnostics d;
      cplx t;
      if (k == 0.0) {
        // int r^(g12+q1+q2) e^(-alpha r) dr
        t = hankel_laplace_raw(g12 + double(q1 + q2) + 1.0, 0.0, alpha, 0.0, d);
      } else {
        // r^2 j_l(kr) = sqrt(pi/2k) r^(3/2) J_(l+1/2)(kr)
        t = std::sqrt(pi / (2.0 * k)) *
            hankel_laplace_raw(g12 + double(q1 + q2) + 0.5, l + 0.5, alpha, k, d);
      }
      total += w * t;
      abs_sum += std::abs(w * t);
      merge(r.diagnostics, d, std::abs(w));
    }
  r.value = total.real();
  finish(r, abs_sum);
  return r;
}

RadialIntegralResult radial_bound_free(const states::BoundDecomposition &b1,
                                       Component c1,
                                       const states::FreeDecomposition &f2,
                                       Component c2, int l, double k) {
  if (l < 0 || !(k >= 0.0))
    throw DomainError("radial_bound_free: need l >= 0 and k >= 0");
  RadialIntegralResult r;
  r.path = Path::laplace_1f1;
  const auto &u = coef_of(b1, c1);
  // sigma = +1 half; the sigma = -1 half is its complex conjugate
  const cplx G = free_coef(f2, c2);
  const cplx a = f2.a, c = f2.c;
  const cplx P = 2.0 * I * f2.p;
  const cplx s = b1.lambda + I * f2.p;
  const double g12 = b1.gamma + f2.gamma;
  const bool ascending = k > 0.0 && k < 0.9 * std::abs(s);
  const bool sinc = !ascending && k > 0.0 && l == 0 && g12 <= 1.25;
  r.ascending_series = ascending;
  if (sinc)
    r.path = Path::laplace_1f1_sinc;

  cplx total = 0.0;
  double abs_sum = 0.0;
  auto add = [&](cplx w, const Term &t) {
    total += w * t.value;
    abs_sum += std::abs(w * t.value);
    merge(r.diagnostics, t.diag, std::abs(w));
  };

  for (std::size_t q = 0; q < u.size(); ++q) {
    if (u[q] == 0.0)
      continue;
    const cplx w = u[q] * G;
    const double b0 = g12 + double(q) + 1.0; // r^2 r^(g1-1+q) r^(g2-1) = r^(b0-1)
    if (k == 0.0) {
      if (l == 0)
        add(w, laplace_continued(a, b0, c, P, s));
    } else if (ascending) {
      // j_l(x) = x^l sum_n (-x^2/2)^n / (n! (2l+2n+1)!!); the term n needs
      // 2F1(a, b0+l+2n; c; P/s), taken from the b recurrence
      BLadder F(a, b0, c, P / s);
      cplx part = 0.0;
      int quiet = 0;
      for (int n = 0;; ++n) {
        if (n == 2000)
          throw NoConvergence("radial_bound_free: ascending Bessel series");
        const double bn = b0 + l + 2.0 * n;
        const double log_dfact = std::lgamma(2.0 * (l + n) + 2.0) -
                                 (l + n) * std::log(2.0) - std::lgamma(l + n + 1.0);
        const double log_coef = -n * std::log(2.0) - std::lgamma(n + 1.0) -
                                log_dfact + (l + 2.0 * n) * std::log(k);
        cplx t = std::exp(log_coef + std::lgamma(bn) - bn * std::log(s)) * F.at(l + 2 * n);
        if (n % 2)
          t = -t;
        part += t;
        total += w * t;
        abs_sum += std::abs(w * t);
        quiet = (std::abs(t) <= 1e-17 * std::abs(part)) ? quiet + 1 : 0;
        if (quiet >= 2)
          break;
      }
      merge(r.diagnostics, F.diagnostics(), std::abs(w) * std::abs(part));
    } else if (sinc) {
      const Term t = [&] {
        const auto v = laplace_1f1_sinc({a, c, b0, P, s, k});
        return Term{v.value, v.diagnostics};
      }();
      add(w, t);
    } else {
      for (int sp : {+1, -1})
        for (int j = 0; j <= l; ++j) {
          const cplx cj = bessel_split_coefficient(l, sp, j) * std::pow(k, -j - 1.0);
          // r^(b0-1) (kr)^(-j-1) e^(i sp k r): b = b0 - 1 - j, s' = s - i sp k
          add(w * cj, laplace_continued(a, b0 - 1.0 - j, c, P, s - double(sp) * I * k));
        }
    }
  }
  r.value = 2.0 * total.real();
  finish(r, 2.0 * abs_sum);
  return r;
}

} // namespace dmatel::radial
