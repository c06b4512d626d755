#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "unlike/params.hpp"

namespace unlike::report {

inline constexpr const char* kVersion = "1.0.0";

using Cell = std::variant<std::string, double, std::int64_t, std::uint64_t, bool>;

// Doubles print with 12 significant digits; NaN and infinities as nan/inf.
std::string format_number(double x);
std::string format_cell(const Cell& c);

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  void add(std::vector<Cell> row);
};

enum class Format { Csv, Json };
Format parse_format(const std::string& name);

struct RunManifest {
  std::string id;
  std::string command_line;
  std::map<std::string, std::string> config;
  std::string version = kVersion;
  std::map<std::string, std::string> data_checksums;  // file → fnv1a64 hex
  double wall_seconds = 0;
  std::map<std::string, bool> accuracy;               // per-module flags

  // The id hashes the command line, config and checksums, so identical
  // runs carry identical ids.
  void seal();
  std::string json() const;
};

RunManifest make_manifest(const std::vector<std::string>& argv, const GlobalParameters& params);
std::map<std::string, std::string> config_snapshot(const GlobalParameters& params);
std::string fnv1a_file(const std::filesystem::path& path);

// CSV: a "# manifest <id>" line, then the header and the rows.
// JSON: {"manifest": id, "rows": [...]}.
void emit(const Table& table, Format format, const std::string& manifest_id, std::ostream& out);
void emit_file(const Table& table, Format format, const std::string& manifest_id,
               const std::filesystem::path& path);

}  // namespace unlike::report
