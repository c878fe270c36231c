#pragma once
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

//! CSV and JSON tables shared by all commands.
namespace dmatel::output {

enum class Format { csv, json };

using Cell = std::variant<std::monostate, bool, long long, double, std::string>;

//! Shortest decimal string that reads back to the same double
//! ("inf", "-inf", "nan" for non-finite values).
std::string format_number(double x);

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  //! Throws PreconditionError unless the row has one cell per column.
  void add(std::vector<Cell> row);
};

struct Document {
  Table table;
  std::vector<std::pair<std::string, std::string>> config;
  std::optional<double> total;
};

//! RFC 4180 style: header row, comma separated, fields quoted when they
//! contain a comma, quote or line break; empty cells for monostate.
void write_csv(std::ostream &out, const Table &table);

//! {"config": {...}, "records": [{column: value, ...}], "total": x | null}.
//! Non-finite numbers become null.
void write_json(std::ostream &out, const Document &doc);

//! Writes to `path` ("" or "-" means stdout). Files are written to a
//! temporary name and renamed, so a failed write never leaves a torn file.
void write(const Document &doc, Format format, const std::string &path);

} // namespace dmatel::output
