#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "selfsim/grid.hpp"
#include "selfsim/snapshot_io.hpp"

using namespace selfsim;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
  const fs::path dir = fs::temp_directory_path() / "selfsim-io-test";
  fs::create_directories(dir);
  return dir;
}

SnapshotRecord sample_record() {
  SnapshotRecord snap;
  snap.d = 1;
  snap.p = 2.5;
  snap.tau = 1.2345678901234567;
  snap.t = 9.87654321;
  snap.g = GroupElement::identity(1);
  snap.g.alpha = 1.7320508075688772;
  snap.g.b[0] = -0.3333333333333333;
  snap.mu.d = 1;
  snap.mu.mu1 = 0.1234567890123456;
  snap.mu.mu3[0] = -7.5e-3;
  snap.mass = 0.9999999999999;
  snap.residual = 3.2e-11;
  const Grid g = Grid::line(-8.0, 8.0, 64);
  snap.v = Field(g);
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> U(-2.0, 2.0);
  for (std::size_t i = 0; i < snap.v.size(); ++i) snap.v[i] = U(rng);
  snap.v[3] = 0.1;      // not representable exactly
  snap.v[4] = -1e-300;  // tiny magnitude
  snap.v[5] = 0.0;
  return snap;
}

}  // namespace

TEST_CASE("snapshot round-trips bit exactly") {
  const fs::path path = temp_dir() / "roundtrip.snap";
  const SnapshotRecord snap = sample_record();
  write_snapshot(snap, path);
  const SnapshotRecord back = read_snapshot(path);

  CHECK(back.d == snap.d);
  CHECK(back.p == snap.p);
  CHECK(back.tau == snap.tau);
  CHECK(back.t == snap.t);
  CHECK(back.g.alpha == snap.g.alpha);
  CHECK(back.g.b[0] == snap.g.b[0]);
  CHECK(back.mu.mu1 == snap.mu.mu1);
  CHECK(back.mu.mu3[0] == snap.mu.mu3[0]);
  CHECK(back.mass == snap.mass);
  CHECK(back.residual == snap.residual);
  CHECK(back.v.grid() == snap.v.grid());
  REQUIRE(back.v.size() == snap.v.size());
  for (std::size_t i = 0; i < snap.v.size(); ++i) CHECK(back.v[i] == snap.v[i]);

  // no stray temporary left behind
  CHECK_FALSE(fs::exists(path.string() + ".tmp"));
}

TEST_CASE("2d snapshots carry both axes") {
  const fs::path path = temp_dir() / "round2d.snap";
  SnapshotRecord snap;
  snap.d = 2;
  snap.p = 1.5;
  snap.g = GroupElement::identity(2);
  snap.g.b = {0.25, -0.5, 0.0};
  snap.mu.d = 2;
  snap.mu.mu3 = {0.5, 0.25, 0.0};
  const Grid g = Grid::box2({-5, -5}, {5, 5}, {12, 10});
  snap.v = Field(g);
  for (std::size_t i = 0; i < snap.v.size(); ++i) snap.v[i] = static_cast<double>(i) * 0.1;
  write_snapshot(snap, path);
  const SnapshotRecord back = read_snapshot(path);
  CHECK(back.v.grid().cells(0) == 12);
  CHECK(back.v.grid().cells(1) == 10);
  CHECK(back.g.b[1] == -0.5);
  CHECK(back.mu.mu3[1] == 0.25);
  for (std::size_t i = 0; i < snap.v.size(); ++i) CHECK(back.v[i] == snap.v[i]);
}

TEST_CASE("snapshot failures carry the path and the reason") {
  const fs::path dir = temp_dir();

  SUBCASE("missing file") {
    try {
      read_snapshot(dir / "no-such-file.snap");
      FAIL("expected an error");
    } catch (const std::runtime_error& e) {
      CHECK(std::string(e.what()).find("no-such-file") != std::string::npos);
    }
  }

  SUBCASE("bad magic") {
    const fs::path path = dir / "bad-magic.snap";
    std::ofstream(path) << "not a snapshot\n";
    CHECK_THROWS_WITH_AS(read_snapshot(path), doctest::Contains("bad magic"), std::runtime_error);
  }

  SUBCASE("truncated payload") {
    const fs::path path = dir / "truncated.snap";
    write_snapshot(sample_record(), path);
    const auto size = fs::file_size(path);
    fs::resize_file(path, size - 8);
    CHECK_THROWS_WITH_AS(read_snapshot(path), doctest::Contains("truncated payload"),
                         std::runtime_error);
  }

  SUBCASE("header order is enforced") {
    const fs::path path = dir / "disordered.snap";
    std::ofstream(path) << "selfsim-snapshot 1\np 2\n";
    CHECK_THROWS_WITH_AS(read_snapshot(path), doctest::Contains("expected 'd'"), std::runtime_error);
  }
}

TEST_CASE("series files round-trip through the csv reader") {
  const fs::path path = temp_dir() / "series.csv";
  SeriesWriter writer(path, 1);
  SnapshotRecord snap = sample_record();
  writer.append(snap);
  snap.tau = 2.5;
  snap.mass = 0.5;
  writer.append(snap);

  const SeriesData data = read_series_csv(path);
  REQUIRE(data.columns.size() == 8);
  CHECK(data.columns[0] == "tau");
  CHECK(data.column("mu1") == 2);
  CHECK(data.column("mu3_1") == 3);
  CHECK(data.column("alpha") == 4);
  CHECK(data.column("b1") == 5);
  CHECK(data.column("mass") == 6);
  CHECK(data.column("residual") == 7);
  CHECK(data.column("phi") == -1);

  REQUIRE(data.rows.size() == 2);
  CHECK(data.rows[0][0] == sample_record().tau);  // %.17g round-trips doubles
  CHECK(data.rows[1][0] == 2.5);
  CHECK(data.rows[0][6] == sample_record().mass);
  CHECK(data.rows[1][6] == 0.5);
  CHECK(data.rows[0][2] == sample_record().mu.mu1);
}

TEST_CASE("series reader rejects damage") {
  const fs::path dir = temp_dir();
  CHECK_THROWS(read_series_csv(dir / "missing.csv"));

  const fs::path ragged = dir / "ragged.csv";
  std::ofstream(ragged) << "tau,t\n1.0\n";
  CHECK_THROWS_WITH_AS(read_series_csv(ragged), doctest::Contains("ragged"), std::runtime_error);
}
