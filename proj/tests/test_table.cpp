#include <doctest.h>

#include <charconv>
#include <sstream>

#include "ewp/errors.hpp"
#include "ewp/rng.hpp"
#include "ewp/table.hpp"

using namespace ewp;

TEST_CASE("csv emission: header-only for an empty table, LF endings") {
  Table t;
  t.columns = {"a", "b"};
  std::ostringstream os;
  emit_csv(t, os);
  CHECK(os.str() == "a,b\n");

  t.add_row({std::int64_t(1), 0.1});
  std::ostringstream os2;
  emit_csv(t, os2);
  CHECK(os2.str() == "a,b\n1,0.1\n");
  CHECK(os2.str().find('\r') == std::string::npos);
  CHECK_THROWS_AS(t.add_row({std::int64_t(1)}), ValidationError);
}

TEST_CASE("doubles are emitted in round-trip form") {
  const double values[] = {0.1, 1.0 / 3.0, 1e-300, 123456789.123456789, -0.25};
  for (double v : values) {
    const std::string s = format_cell(Table::Cell(v));
    double back = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), back);
    CHECK(back == v);
  }
}

TEST_CASE("json emission round-trips exactly") {
  RngStream rng(2024, 0);
  Table t;
  t.columns = {"i", "x", "s"};
  for (int row = 0; row < 200; ++row) {
    const std::int64_t i = std::int64_t(rng.raw() >> 20) - (1 << 22);
    double x;
    do {
      x = (rng.uniform() - 0.5) * std::pow(10.0, double(rng.uniform_below(600)) - 300.0);
    } while (!std::isfinite(x));
    t.add_row({i, x, std::string("row_") + std::to_string(row)});
  }
  RunManifest manifest;
  manifest.subcommand = "test";
  manifest.version = "0.0";
  std::ostringstream os;
  emit_json(t, manifest, os);
  const Table back = parse_table_json(os.str());
  REQUIRE(back.columns == t.columns);
  REQUIRE(back.rows.size() == t.rows.size());
  for (size_t r = 0; r < t.rows.size(); ++r)
    for (size_t c = 0; c < t.columns.size(); ++c)
      CHECK(back.rows[r][c] == t.rows[r][c]);
}

TEST_CASE("fnv1a digest is stable") {
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("abc") == "e71fa2190541574b");
  CHECK(fnv1a_hex("abd") != fnv1a_hex("abc"));
}

TEST_CASE("manifest json carries the run description") {
  RunManifest m;
  m.subcommand = "sample";
  m.parameters["--alpha"] = "0.5";
  m.master_seed = 42;
  m.seeded = true;
  m.version = "0.1.0";
  m.started_at = "2026-01-01T00:00:00Z";
  m.finished_at = "2026-01-01T00:00:01Z";
  m.outputs.push_back({"out.csv", "deadbeefdeadbeef"});
  const std::string j = manifest_json(m);
  CHECK(j.find("\"subcommand\": \"sample\"") != std::string::npos);
  CHECK(j.find("\"master_seed\": 42") != std::string::npos);
  CHECK(j.find("deadbeefdeadbeef") != std::string::npos);
  CHECK(j.find("started_at") != std::string::npos);
}
