#pragma once
#include <functional>
#include <optional>
#include <vector>

//! Quadrature grids for the photon-momentum integral, with principal-value
//! handling of a simple pole.
namespace dmatel::shift {

enum class Mapping { linear, log, rational };

const char *to_string(Mapping m);

//! Composite 15-point Gauss-Kronrod rule. `coarse_weights` are the embedded
//! 7-point Gauss weights (zero at Kronrod-only nodes); their difference from
//! `weights` gives the error estimate. Inside the pole window the nodes come
//! in pairs k0 -+ t with equal weights, so a plain weighted sum of f is the
//! symmetric (principal value) rule f(k0 + t) + f(k0 - t).
struct KGrid {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<double> coarse_weights;
  std::optional<double> pole;
  double window = 0.0; // half-width delta of the pole window
  Mapping mapping = Mapping::rational;
  std::vector<double> breakpoints;
};

//! Graded refinement around a point where the integrand has structure of
//! the given width (e.g. k near the continuum momentum p).
struct Feature {
  double center = 0.0;
  double width = 0.0;
};

struct GridPolicy {
  Mapping mapping = Mapping::rational;
  double scale = 1.0;        // characteristic k; panels double from here
  int octaves_below = 8;     // first breakpoint at scale * 2^-octaves_below
  double k_top = 0.0;        // start of the tail (0: 64 scale)
  int tail_panels = 6;       // geometric panels before the rational map
  double k_max = 0.0;        // upper limit for linear/log grids
  int linear_panels = 32;
  std::vector<Feature> features;
};

//! Throws PreconditionError on an inconsistent policy and PoleMisconfigured
//! if the pole is not inside the integration range.
KGrid make_grid(const GridPolicy &policy, std::optional<double> pole = std::nullopt);

struct PVResult {
  double value = 0.0;
  double error = 0.0;
};

//! Weighted sum over the grid. Throws PoleMisconfigured if a node sits on
//! the pole and WindowTooWide if the window reaches k <= 0.
PVResult pv_integrate(const std::function<double(double)> &f, const KGrid &grid);

//! Same with the integrand values already computed at grid.nodes.
PVResult pv_sum(const std::vector<double> &values, const KGrid &grid);

} // namespace dmatel::shift
