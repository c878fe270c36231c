#include "dmatel/states.hpp"
#include "dmatel/errors.hpp"
#include "dmatel/numerics.hpp"
#include <cmath>
#include <numbers>
#include <string>

namespace dmatel::states {

namespace {

constexpr double pi = std::numbers::pi;

void check_kappa_m(int kappa, int two_m, const char *who) {
  if (kappa == 0)
    throw DomainError(std::string(who) + ": kappa must be nonzero");
  if (two_m % 2 == 0)
    throw DomainError(std::string(who) + ": m must be half-integer (two_m odd)");
  if (std::abs(two_m) > 2 * std::abs(kappa) - 1)
    throw DomainError(std::string(who) + ": |m| exceeds j");
}

// gamma + kappa without cancellation for kappa < 0
double gamma_plus_kappa(int kappa, double gamma, double za) {
  return kappa < 0 ? -za * za / (gamma - kappa) : gamma + kappa;
}

} // namespace

void PhysicalConstants::validate() const {
  if (!(alpha > 0.0) || !(m_e > 0.0))
    throw DomainError("constants: alpha and m_e must be positive");
  if (Z < 0)
    throw DomainError("constants: Z must be non-negative");
  if (!(za() < 1.0))
    throw SubcriticalError("constants: Z alpha must be below 1");
}

int orbital_l(int kappa) { return kappa < 0 ? -kappa - 1 : kappa; }
int orbital_lbar(int kappa) { return orbital_l(-kappa); }
double total_j(int kappa) { return std::abs(kappa) - 0.5; }

void BoundState::validate() const {
  check_kappa_m(kappa, two_m, "BoundState");
  if (n_r < 0)
    throw DomainError("BoundState: n_r must be >= 0");
  if (kappa > 0 && n_r < 1)
    throw DomainError("BoundState: kappa > 0 requires n_r >= 1");
}

void FreeState::validate() const {
  check_kappa_m(kappa, two_m, "FreeState");
  if (!(p > 0.0) || !std::isfinite(p))
    throw DomainError("FreeState: p must be positive and finite");
}

double gamma_kappa(int kappa, const PhysicalConstants &c) {
  if (kappa == 0)
    throw DomainError("gamma_kappa: kappa must be nonzero");
  const double za = c.za();
  if (za >= std::abs(kappa))
    throw SubcriticalError("gamma_kappa: Z alpha >= |kappa|");
  return std::sqrt(double(kappa) * kappa - za * za);
}

double apparent_n(const BoundState &s, const PhysicalConstants &c) {
  const double g = gamma_kappa(s.kappa, c);
  const double n = s.n_r;
  return std::sqrt(n * n + 2.0 * n * g + double(s.kappa) * s.kappa);
}

double bound_energy(const BoundState &s, const PhysicalConstants &c) {
  s.validate();
  const double g = gamma_kappa(s.kappa, c);
  const double t = c.za() / (s.n_r + g);
  return c.m_e / std::sqrt(1.0 + t * t);
}

double free_energy(const FreeState &s, const PhysicalConstants &c) {
  return std::hypot(c.m_e, s.p);
}

//------------------------------------------------------------------------------

RadialPair BoundDecomposition::eval(double r) const {
  double pg = 0.0, pf = 0.0;
  for (std::size_t q = g_coef.size(); q-- > 0;) {
    pg = pg * r + g_coef[q];
    pf = pf * r + f_coef[q];
  }
  const double env = std::pow(r, gamma - 1.0) * std::exp(-lambda * r);
  return {pg * env, pf * env};
}

BoundDecomposition bound_decomposition(const BoundState &s,
                                       const PhysicalConstants &c) {
  s.validate();
  c.validate();
  if (c.Z < 1)
    throw DomainError("bound states need Z >= 1");
  const double m = c.m_e;
  const double gam = gamma_kappa(s.kappa, c);
  const double N = apparent_n(s, c);
  const double E = m * (s.n_r + gam) / N;
  const double lam = m * c.za() / N;
  const int n = s.n_r;

  // rho = 2 lambda r;
  //  g ~ sqrt(1+E/m) rho^(gamma-1) e^(-rho/2) [(N-kappa) M(-n,2g+1,rho) - n M(1-n,2g+1,rho)]
  //  f ~ -sqrt(1-E/m) rho^(gamma-1) e^(-rho/2) [(N-kappa) M(-n,..) + n M(1-n,..)]
  const auto d0 = numerics::hyp1f1_polynomial_coefficients(n, 2.0 * gam + 1.0);
  std::vector<double> d1(n + 1, 0.0);
  if (n > 0) {
    const auto t = numerics::hyp1f1_polynomial_coefficients(n - 1, 2.0 * gam + 1.0);
    std::copy(t.begin(), t.end(), d1.begin());
  }
  std::vector<double> A(n + 1), B(n + 1);
  for (int q = 0; q <= n; ++q) {
    A[q] = (N - s.kappa) * d0[q] - n * d1[q];
    B[q] = (N - s.kappa) * d0[q] + n * d1[q];
  }
  const double up = std::sqrt(1.0 + E / m), lo = std::sqrt(1.0 - E / m);

  // int (g^2 + f^2) r^2 dr in units of the bracket coefficients
  double norm = 0.0;
  for (int q = 0; q <= n; ++q)
    for (int k = 0; k <= n; ++k)
      norm += (up * up * A[q] * A[k] + lo * lo * B[q] * B[k]) *
              std::tgamma(2.0 * gam + 1.0 + q + k);
  norm /= std::pow(2.0 * lam, 3.0);
  double C = 1.0 / std::sqrt(norm);
  if (A[0] < 0.0)
    C = -C;

  BoundDecomposition out;
  out.gamma = gam;
  out.lambda = lam;
  out.energy = E;
  out.g_coef.resize(n + 1);
  out.f_coef.resize(n + 1);
  const double two_lam = 2.0 * lam;
  for (int q = 0; q <= n; ++q) {
    const double pw = std::pow(two_lam, gam - 1.0 + q);
    out.g_coef[q] = C * up * pw * A[q];
    out.f_coef[q] = -C * lo * pw * B[q];
  }
  return out;
}

RadialPair bound_radial(const BoundState &s, double r, const PhysicalConstants &c) {
  if (!(r > 0.0))
    throw DomainError("bound_radial: r must be positive");
  return bound_decomposition(s, c).eval(r);
}

//------------------------------------------------------------------------------

RadialPair FreeDecomposition::eval(double r) const {
  const cplx M = numerics::hyp1f1(a, c, cplx{0.0, 2.0 * p * r}).value;
  const cplx X = std::pow(r, gamma - 1.0) * std::polar(1.0, -p * r) * M;
  return {2.0 * (G * X).real(), 2.0 * (F * X).real()};
}

FreeDecomposition free_decomposition(const FreeState &s,
                                     const PhysicalConstants &c) {
  s.validate();
  c.validate();
  const double m = c.m_e;
  const double za = c.za();
  const double gam = gamma_kappa(s.kappa, c);
  const double W = std::hypot(m, s.p);
  const double y = za * W / s.p;

  FreeDecomposition out;
  out.gamma = gam;
  out.p = s.p;
  out.energy = W;
  out.y = y;
  out.a = cplx{gam + 1.0, y};
  out.c = 2.0 * gam + 1.0;

  // |K| = p e^(pi y/2) |Gamma(gamma+1+iy)| / (sqrt(pi W) |gamma+iy| Gamma(2gamma+1))
  // and the amplitude carried at the origin is |K| |gamma + i y|.
  const double log_amp = std::log(s.p) + 0.5 * pi * y +
                         numerics::lgamma_c(out.a).real() -
                         0.5 * std::log(pi * W) - std::lgamma(2.0 * gam + 1.0);
  // phase fixed by f/g -> (gamma + kappa)/(Z alpha) at the origin
  double theta = 0.0;
  if (!(s.kappa < 0 && za == 0.0))
    theta = std::atan2(-gamma_plus_kappa(s.kappa, gam, za) * std::sqrt(W + m),
                       za * std::sqrt(W - m));
  const cplx A = std::polar(std::exp(log_amp), theta) *
                 std::pow(2.0 * s.p, gam - 1.0);
  out.G = std::sqrt(W + m) * A;
  out.F = cplx{0.0, 1.0} * std::sqrt(W - m) * A;
  return out;
}

RadialPair free_radial(const FreeState &s, double r, const PhysicalConstants &c) {
  if (!(r > 0.0))
    throw DomainError("free_radial: r must be positive");
  return free_decomposition(s, c).eval(r);
}

} // namespace dmatel::states
