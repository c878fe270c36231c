#include "dmatel/output.hpp"
#include "dmatel/errors.hpp"
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>

namespace dmatel::output {

namespace {

using json = nlohmann::ordered_json;

std::string cell_text(const Cell &c) {
  struct {
    std::string operator()(std::monostate) const { return ""; }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
    std::string operator()(long long i) const { return std::to_string(i); }
    std::string operator()(double x) const { return format_number(x); }
    std::string operator()(const std::string &s) const { return s; }
  } v;
  return std::visit(v, c);
}

std::string csv_field(const std::string &s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos)
    return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"')
      out += '"';
    out += ch;
  }
  return out + "\"";
}

json number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json cell_json(const Cell &c) {
  struct {
    json operator()(std::monostate) const { return nullptr; }
    json operator()(bool b) const { return b; }
    json operator()(long long i) const { return i; }
    json operator()(double x) const { return number(x); }
    json operator()(const std::string &s) const { return s; }
  } v;
  return std::visit(v, c);
}

//! Config values that read back as numbers are emitted as numbers.
json config_value(const std::string &s) {
  long long i = 0;
  auto [pi, ei] = std::from_chars(s.data(), s.data() + s.size(), i);
  if (!s.empty() && ei == std::errc() && pi == s.data() + s.size())
    return i;
  double x = 0.0;
  auto [pd, ed] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (!s.empty() && ed == std::errc() && pd == s.data() + s.size() && std::isfinite(x))
    return x;
  return s;
}

} // namespace

std::string format_number(double x) {
  if (std::isnan(x))
    return "nan";
  if (std::isinf(x))
    return x > 0 ? "inf" : "-inf";
  char buf[64];
  // general: shortest digits, exponent form outside 1e-4 .. 1e17
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general);
  return std::string(buf, ptr);
}

void Table::add(std::vector<Cell> row) {
  if (row.size() != columns.size())
    throw PreconditionError("table row has " + std::to_string(row.size()) + " cells, expected " +
                            std::to_string(columns.size()));
  rows.push_back(std::move(row));
}

void write_csv(std::ostream &out, const Table &table) {
  for (std::size_t i = 0; i < table.columns.size(); ++i)
    out << (i ? "," : "") << csv_field(table.columns[i]);
  out << "\r\n";
  for (const auto &row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      out << (i ? "," : "") << csv_field(cell_text(row[i]));
    out << "\r\n";
  }
}

void write_json(std::ostream &out, const Document &doc) {
  json j;
  j["config"] = json::object();
  for (const auto &[k, v] : doc.config)
    j["config"][k] = config_value(v);
  j["records"] = json::array();
  for (const auto &row : doc.table.rows) {
    json r = json::object();
    for (std::size_t i = 0; i < row.size(); ++i)
      r[doc.table.columns[i]] = cell_json(row[i]);
    j["records"].push_back(std::move(r));
  }
  j["total"] = doc.total ? number(*doc.total) : json(nullptr);
  out << j.dump(2) << "\n";
}

void write(const Document &doc, Format format, const std::string &path) {
  auto emit = [&](std::ostream &out) {
    if (format == Format::csv)
      write_csv(out, doc.table);
    else
      write_json(out, doc);
  };
  if (path.empty() || path == "-") {
    emit(std::cout);
    std::cout.flush();
    return;
  }
  const std::string tmp = path + ".partial";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out)
      throw Error("cannot write " + tmp);
    emit(out);
    out.flush();
    if (!out)
      throw Error("write failed: " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec)
    throw Error("cannot rename " + tmp + " to " + path + ": " + ec.message());
}

} // namespace dmatel::output
