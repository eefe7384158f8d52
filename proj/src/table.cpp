#include "ewp/table.hpp"

#include <charconv>
#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ewp/errors.hpp"

namespace ewp {

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size())
    throw ValidationError("Table: row width does not match the header");
  rows.push_back(std::move(row));
}

std::string format_cell(const Table::Cell& cell) {
  if (std::holds_alternative<std::string>(cell)) return std::get<std::string>(cell);
  char buf[64];
  if (std::holds_alternative<std::int64_t>(cell)) {
    auto res = std::to_chars(buf, buf + sizeof buf, std::get<std::int64_t>(cell));
    return std::string(buf, res.ptr);
  }
  // Shortest representation that round-trips.
  auto res = std::to_chars(buf, buf + sizeof buf, std::get<double>(cell));
  return std::string(buf, res.ptr);
}

void emit_csv(const Table& table, std::ostream& os) {
  for (size_t c = 0; c < table.columns.size(); ++c)
    os << (c ? "," : "") << table.columns[c];
  os << '\n';
  for (const auto& row : table.rows) {
    for (size_t c = 0; c < row.size(); ++c)
      os << (c ? "," : "") << format_cell(row[c]);
    os << '\n';
  }
}

namespace {

// Timestamps and digests live only in the sidecar manifest; the copy
// embedded in JSON data files stays byte-stable across reruns. Destination
// and scheduling flags never influence data contents, so they are dropped
// from the embedded copy as well.
nlohmann::json manifest_to_json(const RunManifest& m, bool full) {
  nlohmann::json j;
  j["subcommand"] = m.subcommand;
  if (full) {
    j["parameters"] = m.parameters;
  } else {
    auto params = m.parameters;
    params.erase("--out");
    params.erase("--workers");
    j["parameters"] = params;
  }
  if (m.seeded) j["master_seed"] = m.master_seed;
  j["version"] = m.version;
  if (full) {
    j["started_at"] = m.started_at;
    j["finished_at"] = m.finished_at;
    auto outs = nlohmann::json::array();
    for (const auto& o : m.outputs) outs.push_back({{"path", o.path}, {"digest", o.digest}});
    j["outputs"] = outs;
  }
  return j;
}

nlohmann::json cell_to_json(const Table::Cell& cell) {
  if (std::holds_alternative<std::int64_t>(cell)) return std::get<std::int64_t>(cell);
  if (std::holds_alternative<double>(cell)) return std::get<double>(cell);
  return std::get<std::string>(cell);
}

}  // namespace

void emit_json(const Table& table, const RunManifest& manifest, std::ostream& os) {
  nlohmann::json j;
  j["manifest"] = manifest_to_json(manifest, /*full=*/false);
  j["columns"] = table.columns;
  auto rows = nlohmann::json::array();
  for (const auto& row : table.rows) {
    auto r = nlohmann::json::array();
    for (const auto& cell : row) r.push_back(cell_to_json(cell));
    rows.push_back(std::move(r));
  }
  j["rows"] = rows;
  os << j.dump(2) << '\n';
}

Table parse_table_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  Table t;
  t.columns = j.at("columns").get<std::vector<std::string>>();
  for (const auto& row : j.at("rows")) {
    std::vector<Table::Cell> cells;
    for (const auto& v : row) {
      if (v.is_number_integer())
        cells.emplace_back(v.get<std::int64_t>());
      else if (v.is_number_float())
        cells.emplace_back(v.get<double>());
      else
        cells.emplace_back(v.get<std::string>());
    }
    t.add_row(std::move(cells));
  }
  return t;
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  auto res = std::to_chars(buf, buf + sizeof buf, h, 16);
  std::string hex(buf, res.ptr);
  return std::string(16 - hex.size(), '0') + hex;
}

std::string emit_file(const Table& table, const RunManifest& manifest, EmitFormat format,
                      const std::string& path) {
  std::ostringstream body;
  if (format == EmitFormat::csv)
    emit_csv(table, body);
  else
    emit_json(table, manifest, body);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw NumericError("emit_file: cannot open " + path + " for writing");
  const std::string bytes = body.str();
  out.write(bytes.data(), std::streamsize(bytes.size()));
  out.flush();
  if (!out) throw NumericError("emit_file: write failed for " + path);
  return fnv1a_hex(bytes);
}

std::string manifest_json(const RunManifest& manifest) {
  return manifest_to_json(manifest, /*full=*/true).dump(2) + "\n";
}

void write_manifest(const RunManifest& manifest, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw NumericError("write_manifest: cannot open " + path);
  const std::string bytes = manifest_json(manifest);
  out.write(bytes.data(), std::streamsize(bytes.size()));
  if (!out) throw NumericError("write_manifest: write failed for " + path);
}

std::string iso8601_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace ewp
