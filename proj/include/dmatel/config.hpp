#pragma once
#include "dmatel/output.hpp"
#include "dmatel/shift.hpp"
#include "dmatel/states.hpp"
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

//! Run configuration of the shift command: flat key = value lines under
//! [section] headers, comments starting with ';' or '#'.
//!
//!   [physics]       Z, alpha
//!   [state]         n_r, kappa, m
//!   [truncation]    n_max, kappa_max, p_nodes, p_scale, p_mapping (rational)
//!   [regularization] lambda (number or inf), hook (zero | self)
//!   [grid]          mapping, scale (auto or number), octaves_below,
//!                   tail_panels, k_max, linear_panels
//!   [tolerance]     tail_budget
//!   [output]        format (csv | json), path
//!
//! Every key is optional; unknown keys are an error.
namespace dmatel::config {

using output::Format;

struct RunConfig {
  states::PhysicalConstants constants;
  states::BoundState s1;
  shift::Truncation truncation;
  shift::RegularizationSpec reg{10.0};
  std::string hook = "zero";
  shift::Mapping mapping = shift::Mapping::rational;
  std::optional<double> grid_scale; // default: decay constant of s1
  int octaves_below = 8;
  int tail_panels = 6;
  double k_max = 0.0;
  int linear_panels = 32;
  Format format = Format::csv;
  std::string path;

  //! Throws ValidationError on any physical or structural inconsistency.
  void validate() const;
  shift::DeltaMHook delta_m_hook() const;
  //! The k-grid policy for s1 (default policy with the overrides applied).
  shift::GridPolicy grid_policy() const;
  //! Canonical key/value listing, in file order.
  std::vector<std::pair<std::string, std::string>> entries() const;
};

RunConfig parse(std::istream &in);
RunConfig load(const std::string &path);

} // namespace dmatel::config
