#include "dmatel/shift.hpp"
#include "dmatel/errors.hpp"
#include "dmatel/numerics.hpp"
#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <cstring>
#include <numbers>
#include <sstream>
#ifdef _OPENMP
#include <omp.h>
#endif

namespace dmatel::shift {

namespace {

constexpr double four_pi = 4.0 * std::numbers::pi;

//! Sum in order of increasing magnitude (reproducible regardless of the
//! order in which the terms were produced).
double ordered_sum(std::vector<double> v) {
  std::sort(v.begin(), v.end(), [](double a, double b) {
    return std::abs(a) < std::abs(b) || (std::abs(a) == std::abs(b) && a < b);
  });
  double s = 0.0;
  for (double x : v)
    s += x;
  return s;
}

void check_finite(double x, const char *what) {
  if (!std::isfinite(x))
    throw Error(std::string("state_sum: non-finite ") + what);
}

} // namespace

DeltaMHook DeltaMHook::zero() { return {}; }

DeltaMHook DeltaMHook::self_subtraction() {
  DeltaMHook h;
  h.label = "self";
  h.self = true;
  return h;
}

std::string StateLabel::text() const {
  std::ostringstream os;
  if (bound)
    os << "bound n_r=" << n_r << " kappa=" << kappa;
  else
    os << "free p=" << p << " kappa=" << kappa;
  return os.str();
}

IntegrandValue k_integrand(const matel::Orbital &s1, const matel::Orbital &s2,
                           double k, const RegularizationSpec &reg) {
  const auto q = matel::transition_quadruple(s1, s2, k);
  const double num = four_pi * q.combined;
  const double delta = s1.energy() - s2.energy();
  IntegrandValue v;
  v.cancellation_warning = q.cancellation_warning;
  v.raw = k * num / (delta - k);
  v.regularized = v.raw;
  if (reg.finite()) {
    const double w = std::hypot(k, reg.lambda);
    v.regularized -= k * k / w * num / (delta - w);
  }
  return v;
}

GridPolicy default_policy(const matel::Orbital &s1, const RegularizationSpec &reg) {
  GridPolicy p;
  p.scale = s1.bd.lambda;
  p.k_top = std::max(64.0 * p.scale, 16.0 * s1.energy());
  if (reg.finite())
    p.k_top = std::max(p.k_top, 4.0 * reg.lambda);
  return p;
}

KGrid grid_for(const matel::Orbital &s1, const matel::Orbital &s2, const GridPolicy &base) {
  GridPolicy p = base;
  if (!s2.bound)
    p.features.push_back({s2.fd.p, s1.bd.lambda});
  const double delta = s1.energy() - s2.energy();
  if (delta > 0.0)
    return make_grid(p, delta);
  return make_grid(p);
}

ShiftContribution contribution(const matel::Orbital &s1, const matel::Orbital &s2,
                               const StateLabel &label, const RegularizationSpec &reg,
                               const GridPolicy &base, const states::PhysicalConstants &c) {
  if (reg.finite() && s1.energy() - s2.energy() >= reg.lambda)
    throw ValidationError("regularization: lambda must exceed E1 - E2");
  const KGrid grid = grid_for(s1, s2, base);
  std::vector<double> raw(grid.nodes.size()), regd(grid.nodes.size());
  ShiftContribution out;
  out.s2 = label;
  for (std::size_t i = 0; i < grid.nodes.size(); ++i) {
    const auto v = k_integrand(s1, s2, grid.nodes[i], reg);
    raw[i] = v.raw;
    regd[i] = v.regularized;
    out.cancellation_warning = out.cancellation_warning || v.cancellation_warning;
  }
  const double pref =
      -c.alpha / (4.0 * std::numbers::pi * std::numbers::pi) * (label.bound ? 1.0 : label.p_weight);
  const auto r = pv_sum(raw, grid);
  const auto g = pv_sum(regd, grid);
  out.raw_pv = pref * r.value;
  out.raw_error = std::abs(pref) * r.error;
  out.regularized_pv = pref * g.value;
  out.regularized_error = std::abs(pref) * g.error;
  out.dm_subtracted = out.regularized_pv;
  out.has_pole = grid.pole.has_value();
  out.k_nodes = static_cast<int>(grid.nodes.size());
  return out;
}

double scalar_density(const states::BoundDecomposition &d) {
  // int r^(2 gamma + q + q') e^(-2 lambda r) dr
  double s = 0.0;
  for (std::size_t q = 0; q < d.g_coef.size(); ++q)
    for (std::size_t r = 0; r < d.g_coef.size(); ++r) {
      const double n = 2.0 * d.gamma + static_cast<double>(q + r) + 1.0;
      const double moment = std::exp(std::lgamma(n) - n * std::log(2.0 * d.lambda));
      s += (d.g_coef[q] * d.g_coef[r] - d.f_coef[q] * d.f_coef[r]) * moment;
    }
  return s;
}

std::vector<StateLabel> intermediate_states(const Truncation &t) {
  if (t.n_max < 0 || t.kappa_max < 1 || t.p_nodes < 0 || !(t.p_scale > 0.0))
    throw ValidationError("truncation: need n_max >= 0, kappa_max >= 1, p_nodes >= 0, p_scale > 0");
  std::vector<int> kappas;
  for (int a = 1; a <= t.kappa_max; ++a) {
    kappas.push_back(-a);
    kappas.push_back(a);
  }
  std::vector<StateLabel> out;
  for (int n = 0; n <= t.n_max; ++n)
    for (int kappa : kappas)
      if (n > 0 || kappa < 0)
        out.push_back({true, n, kappa, 0.0, 0.0});
  if (t.p_nodes > 0) {
    std::vector<double> x, w;
    numerics::gauss_legendre(t.p_nodes, x, w);
    for (int kappa : kappas)
      for (std::size_t i = 0; i < x.size(); ++i) {
        const double u = 0.5 * (x[i] + 1.0), wu = 0.5 * w[i];
        const double p = t.p_scale * u / (1.0 - u);
        const double dp = t.p_scale / ((1.0 - u) * (1.0 - u));
        out.push_back({false, 0, kappa, p, wu * dp});
      }
  }
  return out;
}

int thread_limit() {
  const char *env = std::getenv("DIRAC_MATEL_THREADS");
  if (!env || !*env)
    return 0;
  int n = 0;
  const auto [ptr, ec] = std::from_chars(env, env + std::strlen(env), n);
  if (ec != std::errc() || *ptr != '\0' || n < 1)
    throw ValidationError("DIRAC_MATEL_THREADS must be an integer >= 1");
  return n;
}

void validate_inputs(const states::BoundState &s1, const states::PhysicalConstants &c,
                     const Truncation &t, const RegularizationSpec &reg) {
  c.validate();
  s1.validate();
  if (!(reg.lambda > 0.0))
    throw ValidationError("regularization: lambda must be positive");
  if (!(t.tail_budget >= 0.0))
    throw ValidationError("truncation: tail_budget must be >= 0");
  const double e1 = states::bound_energy(s1, c);
  for (const auto &l : intermediate_states(t))
    if (l.bound && reg.finite() &&
        e1 - states::bound_energy({l.n_r, l.kappa, 1}, c) >= reg.lambda)
      throw ValidationError("regularization: lambda must exceed E1 - E2");
}

ShiftResult state_sum(const states::BoundState &s1, const states::PhysicalConstants &c,
                      const Truncation &t, const RegularizationSpec &reg,
                      const DeltaMHook &hook, std::optional<GridPolicy> policy,
                      Execution mode) {
  validate_inputs(s1, c, t, reg);
  const auto o1 = matel::make_orbital(s1, c);
  const auto labels = intermediate_states(t);
  const GridPolicy base = policy ? *policy : default_policy(o1, reg);

  std::vector<ShiftContribution> recs(labels.size());
  std::vector<std::string> errors(labels.size());
  auto work = [&](std::size_t i) {
    try {
      const auto &l = labels[i];
      const auto o2 = l.bound ? matel::make_orbital(states::BoundState{l.n_r, l.kappa, 1}, c)
                              : matel::make_orbital(states::FreeState{l.p, l.kappa, 1}, c);
      recs[i] = contribution(o1, o2, l, reg, base, c);
      check_finite(recs[i].raw_pv, "raw contribution");
      check_finite(recs[i].regularized_pv, "regularized contribution");
    } catch (const std::exception &e) {
      errors[i] = labels[i].text() + ": " + e.what();
    }
  };
  const long n = static_cast<long>(labels.size());
  const int cap = thread_limit();
  if (mode == Execution::parallel) {
#ifdef _OPENMP
    const int threads = cap > 0 ? cap : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (long i = 0; i < n; ++i)
      work(static_cast<std::size_t>(i));
#else
    for (long i = 0; i < n; ++i)
      work(static_cast<std::size_t>(i));
#endif
  } else {
    for (long i = 0; i < n; ++i)
      work(static_cast<std::size_t>(i));
  }
  for (std::size_t i = 0; i < errors.size(); ++i)
    if (!errors[i].empty()) {
      std::vector<ShiftContribution> done;
      for (std::size_t j = 0; j < recs.size(); ++j)
        if (errors[j].empty())
          done.push_back(recs[j]);
      throw ShiftFailure(errors[i], std::move(done));
    }

  ShiftResult res;
  res.scalar_density = scalar_density(o1.bd);
  if (hook.self || hook.integrand) {
    ShiftContribution dm;
    dm.counterterm = true;
    dm.s2.bound = false;
    dm.s2.kappa = 0;
    if (hook.self) {
      std::vector<double> v;
      for (const auto &r : recs)
        v.push_back(r.regularized_pv);
      dm.dm_subtracted = -ordered_sum(v);
    } else {
      const KGrid grid = make_grid(base);
      PVResult I;
      try {
        I = pv_integrate(
            [&](double k) {
              const double f = hook.integrand(k, reg.lambda);
              if (!std::isfinite(f))
                throw Error("delta-m hook returned a non-finite value");
              return f;
            },
            grid);
      } catch (const std::exception &e) {
        throw ShiftFailure(std::string("counterterm: ") + e.what(), recs);
      }
      dm.dm_subtracted = -res.scalar_density * I.value;
      dm.regularized_error = std::abs(res.scalar_density) * I.error;
      dm.k_nodes = static_cast<int>(grid.nodes.size());
    }
    recs.push_back(dm);
  }

  // state sum first, counterterm last: the self hook then cancels exactly
  std::vector<double> parts, tail;
  double counterterm = 0.0;
  for (const auto &r : recs) {
    res.total_error += r.regularized_error;
    if (r.counterterm) {
      counterterm = r.dm_subtracted;
      continue;
    }
    parts.push_back(r.dm_subtracted);
    if (std::abs(r.s2.kappa) == t.kappa_max)
      tail.push_back(r.dm_subtracted);
  }
  res.total = ordered_sum(parts) + counterterm;
  res.tail_estimate = std::abs(ordered_sum(tail));
  res.truncation_warning = res.tail_estimate > t.tail_budget * std::abs(res.total);
  res.records = std::move(recs);
  return res;
}

} // namespace dmatel::shift
