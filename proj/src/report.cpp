#include "dmatel/report.hpp"

namespace dmatel::report {

namespace {

using output::Cell;

void add_record(output::Table &t, long long index, const shift::ShiftContribution &r,
                const std::string &hook) {
  const auto &s = r.s2;
  if (r.counterterm) {
    t.add({index, std::string("counterterm"), {}, {}, {}, {}, {}, {}, r.dm_subtracted, {},
           r.regularized_error, false, false, (long long)r.k_nodes, "hook=" + hook});
    return;
  }
  t.add({index, std::string(s.bound ? "bound" : "continuum"),
         s.bound ? Cell((long long)s.n_r) : Cell(), (long long)s.kappa,
         s.bound ? Cell() : Cell(s.p), s.bound ? Cell() : Cell(s.p_weight), r.raw_pv,
         r.regularized_pv, r.dm_subtracted, r.raw_error, r.regularized_error, r.has_pole,
         r.cancellation_warning, (long long)r.k_nodes, std::string()});
}

//! A summary row: kind, value in dm_subtracted, optional error, note.
std::vector<Cell> summary(const std::string &kind, Cell value, Cell error, std::string note) {
  std::vector<Cell> row(shift_columns().size());
  row[1] = kind;
  row[8] = std::move(value);
  row[10] = std::move(error);
  row[14] = std::move(note);
  return row;
}

output::Document start(const config::RunConfig &cfg) {
  output::Document doc;
  doc.table.columns = shift_columns();
  doc.config = cfg.entries();
  return doc;
}

} // namespace

const std::vector<std::string> &shift_columns() {
  static const std::vector<std::string> cols = {
      "index",         "kind",      "n_r",               "kappa",    "p",
      "p_weight",      "raw_pv",    "regularized_pv",    "dm_subtracted", "raw_error",
      "regularized_error", "has_pole", "cancellation_warning", "k_nodes", "note"};
  return cols;
}

output::Document shift_table(const config::RunConfig &cfg, const shift::ShiftResult &res) {
  auto doc = start(cfg);
  long long i = 0;
  for (const auto &r : res.records)
    add_record(doc.table, i++, r, cfg.hook);
  doc.table.add(summary("tail", res.tail_estimate, {},
                        res.truncation_warning ? "truncation_warning" : "within_budget"));
  doc.table.add(summary("total", res.total, res.total_error,
                        "scalar_density=" + output::format_number(res.scalar_density)));
  doc.total = res.total;
  return doc;
}

output::Document shift_failure(const config::RunConfig &cfg, const shift::ShiftFailure &err) {
  auto doc = start(cfg);
  long long i = 0;
  for (const auto &r : err.completed)
    add_record(doc.table, i++, r, cfg.hook);
  doc.table.add(summary("FAILED", {}, {}, err.what()));
  return doc;
}

} // namespace dmatel::report
