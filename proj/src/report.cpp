#include "unlike/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"
#include "unlike/error.hpp"

namespace unlike::report {

namespace {

constexpr std::uint64_t kFnvOffset = 1469598103934665603ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

std::uint64_t fnv1a(std::uint64_t h, const std::string& s) {
  for (unsigned char c : s) {
    h ^= c;
    h *= kFnvPrime;
  }
  return h;
}

std::string hex64(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

nlohmann::ordered_json json_cell(const Cell& c) {
  return std::visit(
      [](const auto& v) -> nlohmann::ordered_json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          // Keep the 12-digit rendering in JSON too; non-finite values as strings.
          if (!std::isfinite(v)) return format_number(v);
          return nlohmann::ordered_json::parse(format_number(v));
        } else {
          return v;
        }
      },
      c);
}

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string format_cell(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::string>) {
          return v;
        } else if constexpr (std::is_same_v<T, double>) {
          return format_number(v);
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else {
          return std::to_string(v);
        }
      },
      c);
}

void Table::add(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw Error("row width does not match the header");
  rows.push_back(std::move(row));
}

Format parse_format(const std::string& name) {
  if (name == "csv") return Format::Csv;
  if (name == "json") return Format::Json;
  throw Error("unknown output format: " + name);
}

std::map<std::string, std::string> config_snapshot(const GlobalParameters& p) {
  std::map<std::string, std::string> c;
  c["n"] = std::to_string(p.n);
  c["lambda"] = format_number(p.lambda);
  c["R"] = std::to_string(p.R);
  c["eta_inv"] = std::to_string(p.eta_inv);
  for (int k = 5; k <= 11; ++k) c["r" + std::to_string(k)] = std::to_string(p.r(k));
  c["nu"] = format_number(p.nu);
  c["A"] = format_number(p.A);
  c["sieve_budget"] = std::to_string(p.sieve_budget);
  c["table_budget"] = std::to_string(p.table_budget);
  return c;
}

std::string fnv1a_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return hex64(fnv1a(kFnvOffset, ss.str()));
}

void RunManifest::seal() {
  std::uint64_t h = fnv1a(kFnvOffset, command_line);
  h = fnv1a(h, version);
  for (const auto& [k, v] : config) h = fnv1a(h, k + "=" + v + ";");
  for (const auto& [k, v] : data_checksums) h = fnv1a(h, k + ":" + v + ";");
  id = hex64(h);
}

std::string RunManifest::json() const {
  nlohmann::ordered_json j;
  j["id"] = id;
  j["command_line"] = command_line;
  j["version"] = version;
  j["config"] = config;
  j["data_checksums"] = data_checksums;
  j["wall_seconds"] = wall_seconds;
  j["accuracy"] = accuracy;
  return j.dump(2);
}

RunManifest make_manifest(const std::vector<std::string>& argv, const GlobalParameters& params) {
  RunManifest m;
  for (std::size_t i = 0; i < argv.size(); ++i) {
    if (i > 0) m.command_line += ' ';
    m.command_line += argv[i];
  }
  m.config = config_snapshot(params);
  const std::filesystem::path table = std::filesystem::path(UNLIKE_DATA_DIR) / "permissible_exponents.txt";
  if (std::filesystem::exists(table)) m.data_checksums[table.filename().string()] = fnv1a_file(table);
  m.seal();
  return m;
}

void emit(const Table& table, Format format, const std::string& manifest_id, std::ostream& out) {
  if (table.rows.empty()) throw Error("no rows to report");
  if (format == Format::Csv) {
    out << "# manifest " << manifest_id << '\n';
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
      out << (i ? "," : "") << csv_escape(table.columns[i]);
    }
    out << '\n';
    for (const auto& row : table.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        out << (i ? "," : "") << csv_escape(format_cell(row[i]));
      }
      out << '\n';
    }
    return;
  }
  nlohmann::ordered_json j;
  j["manifest"] = manifest_id;
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json r;
    for (std::size_t i = 0; i < row.size(); ++i) r[table.columns[i]] = json_cell(row[i]);
    j["rows"].push_back(std::move(r));
  }
  out << j.dump(2) << '\n';
}

void emit_file(const Table& table, Format format, const std::string& manifest_id,
               const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("unwritable path: " + path.string());
  emit(table, format, manifest_id, out);
  if (!out) throw Error("unwritable path: " + path.string());
}

}  // namespace unlike::report
