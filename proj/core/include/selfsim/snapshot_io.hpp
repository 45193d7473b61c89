#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "selfsim/grid.hpp"
#include "selfsim/lie_group.hpp"

// On-disk formats.
//
// Snapshot: a plain-text header (one "key value..." line each for d, p, lo,
// hi, n, tau, t, alpha, phi, b, mu, mass, residual, payload) followed by the
// raw field payload as little-endian IEEE doubles in grid storage order.
// Numbers are printed with 17 significant digits, so write/read round-trips
// are bit exact.  Writes go to a temporary file in the target directory and
// are renamed into place.
//
// Series: a CSV with columns tau, t, mu..., alpha (and phi when d = 3),
// b..., mass, residual; one row per snapshot instant.

namespace selfsim {

struct SnapshotRecord {
  int d = 1;
  double p = 2.0;
  double tau = 0.0;
  double t = 0.0;
  GroupElement g;
  AlgebraElement mu;
  double mass = 0.0;
  double residual = 0.0;
  Field v;
};

void write_snapshot(const SnapshotRecord& snap, const std::filesystem::path& path);
SnapshotRecord read_snapshot(const std::filesystem::path& path);

class SeriesWriter {
 public:
  SeriesWriter(std::filesystem::path path, int d);
  void append(const SnapshotRecord& snap);

 private:
  void flush() const;
  std::filesystem::path path_;
  int d_;
  std::vector<std::string> rows_;
};

struct SeriesData {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  int column(const std::string& name) const;  // -1 when absent
};

SeriesData read_series_csv(const std::filesystem::path& path);

}  // namespace selfsim
