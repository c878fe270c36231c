#include "dmatel/kgrid.hpp"
#include "dmatel/errors.hpp"
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <algorithm>
#include <cmath>
#include <limits>

namespace dmatel::shift {

namespace {

using gk = boost::math::quadrature::gauss_kronrod<double, 15>;
using gauss7 = boost::math::quadrature::gauss<double, 7>;

struct Node {
  double k, w, wc;
};

//! GK15 on [a, b] after the change of variables k = map(u), dk = jac(u) du.
template <class Map, class Jac>
void add_panel(std::vector<Node> &out, double a, double b, Map map, Jac jac) {
  const auto &x = gk::abscissa();
  const auto &wk = gk::weights();
  const auto &wg = gauss7::weights();
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  out.push_back({map(c), h * wk[0] * jac(c), h * wg[0] * jac(c)});
  for (std::size_t i = 1; i < x.size(); ++i)
    for (double s : {-1.0, 1.0}) {
      const double u = c + s * h * x[i];
      const double g = i % 2 == 0 ? wg[i / 2] : 0.0;
      out.push_back({map(u), h * wk[i] * jac(u), h * g * jac(u)});
    }
}

void add_panel(std::vector<Node> &out, double a, double b) {
  add_panel(out, a, b, [](double u) { return u; }, [](double) { return 1.0; });
}

//! Nodes k0 -+ t for t in (0, delta), each pair with the weight of t.
void add_window(std::vector<Node> &out, double k0, double delta) {
  std::vector<Node> half;
  add_panel(half, 0.0, delta);
  for (const auto &n : half) {
    out.push_back({k0 - n.k, n.w, n.wc});
    out.push_back({k0 + n.k, n.w, n.wc});
  }
}

std::vector<double> dedupe(std::vector<double> b) {
  std::sort(b.begin(), b.end());
  std::vector<double> out;
  for (double x : b)
    if (out.empty() || x - out.back() > 1e-9 * std::max(std::abs(x), 1e-300))
      out.push_back(x);
  return out;
}

} // namespace

const char *to_string(Mapping m) {
  switch (m) {
  case Mapping::linear:
    return "linear";
  case Mapping::log:
    return "log";
  case Mapping::rational:
    return "rational";
  }
  return "?";
}

KGrid make_grid(const GridPolicy &policy, std::optional<double> pole) {
  if (!(policy.scale > 0.0))
    throw PreconditionError("make_grid: scale must be positive");
  const bool finite = policy.mapping != Mapping::rational;
  if (finite && !(policy.k_max > 0.0))
    throw PreconditionError("make_grid: linear and log grids need k_max > 0");
  if (policy.mapping == Mapping::linear && policy.linear_panels < 1)
    throw PreconditionError("make_grid: linear_panels must be >= 1");

  double top = policy.k_max;
  if (!finite) {
    top = policy.k_top > 0.0 ? policy.k_top : 64.0 * policy.scale;
    for (const auto &f : policy.features)
      top = std::max(top, 4.0 * f.center);
    if (pole)
      top = std::max(top, 4.0 * *pole);
  }
  if (pole && !(*pole > 0.0 && *pole < top))
    throw PoleMisconfigured("make_grid: pole must lie inside the integration range");

  std::vector<double> b{0.0, top};
  if (policy.mapping == Mapping::linear) {
    for (int i = 1; i < policy.linear_panels; ++i)
      b.push_back(top * i / policy.linear_panels);
  } else {
    for (double x = policy.scale * std::ldexp(1.0, -policy.octaves_below); x < top; x *= 2.0)
      b.push_back(x);
  }
  for (const auto &f : policy.features) {
    if (!(f.width > 0.0) || !(f.center > 0.0) || f.center >= top)
      continue;
    b.push_back(f.center);
    for (double w = f.width; w < 0.5 * f.center; w *= 2.0) {
      b.push_back(f.center - w);
      b.push_back(f.center + w);
    }
  }

  KGrid g;
  g.mapping = policy.mapping;
  std::vector<Node> nodes;
  if (pole) {
    const double k0 = *pole;
    std::erase_if(b, [&](double x) { return x != 0.0 && x != top && std::abs(x - k0) < 0.1 * k0; });
    double gap = std::numeric_limits<double>::infinity();
    for (double x : b)
      gap = std::min(gap, std::abs(x - k0));
    const double delta = std::min(0.1 * k0, 0.5 * gap);
    b.push_back(k0 - delta);
    b.push_back(k0 + delta);
    g.pole = k0;
    g.window = delta;
    add_window(nodes, k0, delta);
  }
  b = dedupe(std::move(b));
  if (pole) {
    // no panel wider than half its distance to the pole
    const double k0 = *pole;
    std::vector<double> refined;
    for (std::size_t i = 0; i + 1 < b.size(); ++i) {
      const double lo = b[i], hi = b[i + 1];
      if (lo >= k0)
        for (double x = lo + 0.5 * (lo - k0); hi - x > 0.5 * (x - k0); x += 0.5 * (x - k0))
          refined.push_back(x);
      else if (hi <= k0)
        for (double x = hi - 0.5 * (k0 - hi); x - lo > 0.5 * (k0 - x); x -= 0.5 * (k0 - x))
          refined.push_back(x);
    }
    b.insert(b.end(), refined.begin(), refined.end());
    b = dedupe(std::move(b));
  }
  for (std::size_t i = 0; i + 1 < b.size(); ++i) {
    if (pole && b[i] < *pole && b[i + 1] > *pole)
      continue; // the window
    add_panel(nodes, b[i], b[i + 1]);
  }
  if (!finite) {
    double k = top;
    for (int i = 0; i < policy.tail_panels; ++i, k *= 2.0) {
      add_panel(nodes, k, 2.0 * k);
      b.push_back(2.0 * k);
    }
    // k = K / (1 - u) on the rest
    const double K = k;
    add_panel(nodes, 0.0, 1.0, [K](double u) { return K / (1.0 - u); },
              [K](double u) { return K / ((1.0 - u) * (1.0 - u)); });
  }
  std::sort(nodes.begin(), nodes.end(), [](const Node &x, const Node &y) { return x.k < y.k; });
  for (const auto &n : nodes) {
    g.nodes.push_back(n.k);
    g.weights.push_back(n.w);
    g.coarse_weights.push_back(n.wc);
  }
  g.breakpoints = std::move(b);
  return g;
}

PVResult pv_sum(const std::vector<double> &values, const KGrid &grid) {
  if (values.size() != grid.nodes.size())
    throw PreconditionError("pv_sum: one value per node expected");
  double fine = 0.0, coarse = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    fine += grid.weights[i] * values[i];
    coarse += grid.coarse_weights[i] * values[i];
  }
  return {fine, std::abs(fine - coarse)};
}

PVResult pv_integrate(const std::function<double(double)> &f, const KGrid &grid) {
  if (grid.pole) {
    if (grid.window >= *grid.pole)
      throw WindowTooWide("pv_integrate: the pole window reaches k <= 0");
    if (std::find(grid.nodes.begin(), grid.nodes.end(), *grid.pole) != grid.nodes.end())
      throw PoleMisconfigured("pv_integrate: a node sits on the pole");
  }
  std::vector<double> v(grid.nodes.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    v[i] = f(grid.nodes[i]);
  return pv_sum(v, grid);
}

} // namespace dmatel::shift
