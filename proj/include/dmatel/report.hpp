#pragma once
#include "dmatel/config.hpp"
#include "dmatel/output.hpp"
#include "dmatel/shift.hpp"

//! Itemized shift tables as written by the command-line tool.
namespace dmatel::report {

//! Columns: index, kind (bound | continuum | counterterm | tail | total |
//! FAILED), n_r, kappa, p, p_weight, raw_pv, regularized_pv, dm_subtracted,
//! raw_error, regularized_error, has_pole, cancellation_warning, k_nodes, note.
const std::vector<std::string> &shift_columns();

output::Document shift_table(const config::RunConfig &cfg, const shift::ShiftResult &res);

//! The completed records followed by a FAILED row carrying the message.
output::Document shift_failure(const config::RunConfig &cfg, const shift::ShiftFailure &err);

} // namespace dmatel::report
