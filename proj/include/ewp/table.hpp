#ifndef EWP_TABLE_HPP
#define EWP_TABLE_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace ewp {

// A flat result table: named columns, typed cells. Numbers are emitted in
// shortest round-trip form so re-reading a file reproduces the values exactly.
struct Table {
  using Cell = std::variant<std::int64_t, double, std::string>;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
};

std::string format_cell(const Table::Cell& cell);

// Deterministic run description written alongside every file output.
// Timestamps are recorded but excluded from the data digests.
struct RunManifest {
  std::string subcommand;
  std::map<std::string, std::string> parameters;  // resolved flag values
  std::uint64_t master_seed = 0;
  bool seeded = false;
  std::string version;
  std::string started_at;
  std::string finished_at;
  struct Output {
    std::string path;
    std::string digest;  // fnv1a-64 of the file bytes, hex
  };
  std::vector<Output> outputs;
};

void emit_csv(const Table& table, std::ostream& os);
void emit_json(const Table& table, const RunManifest& manifest, std::ostream& os);

enum class EmitFormat { csv, json };

// Writes the table to `path` (UTF-8, LF). Returns the fnv1a-64 digest of the
// written bytes.
std::string emit_file(const Table& table, const RunManifest& manifest, EmitFormat format,
                      const std::string& path);

// Parses a JSON emission back into a table (serialization round-trip).
Table parse_table_json(const std::string& text);

std::string fnv1a_hex(const std::string& bytes);
std::string manifest_json(const RunManifest& manifest);
void write_manifest(const RunManifest& manifest, const std::string& path);
std::string iso8601_now();

}  // namespace ewp

#endif
