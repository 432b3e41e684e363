#include "qrw/cli/output.hpp"

#include "qrw/errors.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

namespace qrw::cli {

Format format_from_string(const std::string& name) {
  if (name == "csv") return Format::csv;
  if (name == "ndjson") return Format::ndjson;
  throw ConfigError("unknown format '" + name + "' (expected csv or ndjson)");
}

std::string extension(Format format) { return format == Format::csv ? ".csv" : ".ndjson"; }

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

std::string csv_cell(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_number(*d);
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  const auto& s = std::get<std::string>(c);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char ch : s) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  return quoted + "\"";
}

nlohmann::ordered_json json_cell(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) {
    if (std::isfinite(*d)) return *d;
    return format_number(*d);
  }
  if (const auto* i = std::get_if<std::int64_t>(&c)) return *i;
  return std::get<std::string>(c);
}

std::ofstream open(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  return out;
}

}  // namespace

void write_table(const std::string& path, const Table& table, Format format) {
  auto out = open(path);
  if (format == Format::csv) {
    for (const auto& [key, value] : table.meta.items()) out << "# " << key << ": " << value.dump() << '\n';
    for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
    out << '\n';
    std::string line;
    for (const auto& row : table.rows) {
      line.clear();
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) line += ',';
        line += csv_cell(row[i]);
      }
      line += '\n';
      out << line;
    }
  } else {
    out << nlohmann::json{{"meta", table.meta}}.dump() << '\n';
    for (const auto& row : table.rows) {
      nlohmann::ordered_json obj = nlohmann::ordered_json::object();
      for (std::size_t i = 0; i < row.size(); ++i) obj[table.columns[i]] = json_cell(row[i]);
      out << obj.dump() << '\n';
    }
  }
  if (!out) throw ConfigError("failed writing '" + path + "'");
}

void write_json(const std::string& path, const nlohmann::json& doc) {
  auto out = open(path);
  out << doc.dump(2) << '\n';
  if (!out) throw ConfigError("failed writing '" + path + "'");
}

}  // namespace qrw::cli
