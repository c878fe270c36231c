#pragma once
#include "dmatel/errors.hpp"
#include "dmatel/kgrid.hpp"
#include "dmatel/matel.hpp"
#include "dmatel/states.hpp"
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

//! Second-order self-energy shift of a bound level s1,
//!   dE = -(alpha / 4 pi^2) sum_s2 PV int_0^inf dk k int dOmega_k
//!          N(s1, s2, k) / (E1 - E2 - k),
//! with N the Feynman-gauge numerator |<e^ikr>|^2 - sum_i |<e^ikr alpha^i>|^2
//! summed over the projections of s2. The angular integral is 4 pi times the
//! k^-averaged quadruple. Pauli-Villars regularization subtracts the same
//! numerator with photon energy w = sqrt(k^2 + L^2), weight k^2 / w and
//! denominator E1 - E2 - w. Only positive-energy intermediate states enter.
namespace dmatel::shift {

inline constexpr double unregularized = std::numeric_limits<double>::infinity();

struct RegularizationSpec {
  double lambda = unregularized;
  bool finite() const { return std::isfinite(lambda); }
};

//! Integrand of the mass counterterm, subtracted as
//!   <bar s1|s1> int_0^inf dk integrand(k, lambda).
//! With `self` set the subtraction is the regularized state sum itself
//! (the total then vanishes up to rounding); a test and calibration device.
struct DeltaMHook {
  std::function<double(double, double)> integrand;
  std::string label = "zero";
  bool self = false;

  static DeltaMHook zero();
  static DeltaMHook self_subtraction();
};

struct Truncation {
  int n_max = 2;        // n_r of discrete intermediate states
  int kappa_max = 3;    // |kappa| of all intermediate states
  int p_nodes = 64;     // Gauss-Legendre nodes of the continuum
  double p_scale = 1.0; // p = p_scale t / (1 - t), in units of m
  double tail_budget = 0.05; // relative share allowed for the last kappa shell
};

struct StateLabel {
  bool bound = true;
  int n_r = 0;
  int kappa = -1;
  double p = 0.0;        // continuum momentum
  double p_weight = 0.0; // continuum quadrature weight (dp)
  std::string text() const;
};

struct ShiftContribution {
  StateLabel s2;
  bool counterterm = false; // the delta-m record
  double raw_pv = 0.0;
  double regularized_pv = 0.0;
  double dm_subtracted = 0.0;
  double raw_error = 0.0;
  double regularized_error = 0.0;
  bool has_pole = false;
  bool cancellation_warning = false;
  int k_nodes = 0;
};

struct ShiftResult {
  std::vector<ShiftContribution> records;
  double total = 0.0; // sum of dm_subtracted
  double total_error = 0.0;
  double tail_estimate = 0.0; // |contribution of the |kappa| = kappa_max shell|
  bool truncation_warning = false;
  double scalar_density = 1.0; // <bar s1|s1>
};

enum class Execution { serial, parallel };

//! A numerical failure inside the state sum. `completed` holds the records
//! that finished, in canonical order, so callers can flush partial output.
class ShiftFailure : public Error {
public:
  ShiftFailure(const std::string &what, std::vector<ShiftContribution> completed)
      : Error(what), completed(std::move(completed)) {}
  std::vector<ShiftContribution> completed;
};

struct IntegrandValue {
  double raw = 0.0;
  double regularized = 0.0;
  bool cancellation_warning = false;
};

//! 4 pi k combined / (E1 - E2 - k), and the same minus its Pauli-Villars
//! image. No alpha prefactor. k > 0.
IntegrandValue k_integrand(const matel::Orbital &s1, const matel::Orbital &s2,
                           double k, const RegularizationSpec &reg);

//! Grid used for one intermediate state: the base policy plus a pole window
//! when E2 < E1 and graded refinement around k = p for continuum states.
KGrid grid_for(const matel::Orbital &s1, const matel::Orbital &s2,
               const GridPolicy &base);

//! Default base policy: panels doubling from the s1 decay constant, tail
//! starting above both the regularization scale and the electron mass.
GridPolicy default_policy(const matel::Orbital &s1, const RegularizationSpec &reg);

//! One itemized contribution (prefactor and continuum weight applied).
ShiftContribution contribution(const matel::Orbital &s1, const matel::Orbital &s2,
                               const StateLabel &label, const RegularizationSpec &reg,
                               const GridPolicy &base, const states::PhysicalConstants &c);

//! int (g^2 - f^2) r^2 dr.
double scalar_density(const states::BoundDecomposition &d);

//! Intermediate states of a truncation, in canonical order: discrete
//! (n_r, then kappa), then continuum (kappa, then p).
std::vector<StateLabel> intermediate_states(const Truncation &t);

//! ValidationError unless the truncation is well formed, lambda > 0 and
//! lambda exceeds E1 - E2 for every discrete intermediate state.
void validate_inputs(const states::BoundState &s1, const states::PhysicalConstants &c,
                     const Truncation &t, const RegularizationSpec &reg);

//! Full itemized state sum. Records follow the canonical order of
//! intermediate_states, followed by the counterterm record when the hook is
//! not the zero hook. The state records are summed in order of increasing
//! magnitude and the counterterm is added last, so serial and parallel runs
//! agree bit for bit and the self hook cancels exactly. Input errors are raised
//! before any work starts; numerical failures surface as ShiftFailure.
ShiftResult state_sum(const states::BoundState &s1, const states::PhysicalConstants &c,
                      const Truncation &t, const RegularizationSpec &reg,
                      const DeltaMHook &hook, std::optional<GridPolicy> policy = std::nullopt,
                      Execution mode = Execution::parallel);

//! Thread cap from DIRAC_MATEL_THREADS (0 when unset). Throws
//! ValidationError on a malformed value.
int thread_limit();

} // namespace dmatel::shift
