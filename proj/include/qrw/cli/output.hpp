#pragma once

// Tabular output: CSV with a '#'-prefixed metadata block, or NDJSON whose
// first line is {"meta": ...}.

#include <json.hpp>

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace qrw::cli {

enum class Format { csv, ndjson };

Format format_from_string(const std::string& name);

using Cell = std::variant<double, std::int64_t, std::string>;

struct Table {
  nlohmann::json meta;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// Shortest round-trip decimal form; "nan", "inf" and "-inf" for non-finite values.
std::string format_number(double v);

void write_table(const std::string& path, const Table& table, Format format);
void write_json(const std::string& path, const nlohmann::json& doc);

/// Extension for the format: ".csv" or ".ndjson".
std::string extension(Format format);

}  // namespace qrw::cli
