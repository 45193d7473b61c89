#include "selfsim/snapshot_io.hpp"

#include <bit>
#include <cinttypes>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace selfsim {

namespace {

constexpr const char* kMagic = "selfsim-snapshot 1";

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::uint64_t to_le(std::uint64_t x) {
  if constexpr (std::endian::native == std::endian::little) {
    return x;
  } else {
    std::uint64_t out = 0;
    for (int i = 0; i < 8; ++i) out |= ((x >> (8 * i)) & 0xffu) << (8 * (7 - i));
    return out;
  }
}

void write_payload(std::ostream& os, std::span<const double> values) {
  for (double v : values) {
    const std::uint64_t le = to_le(std::bit_cast<std::uint64_t>(v));
    os.write(reinterpret_cast<const char*>(&le), 8);
  }
}

[[noreturn]] void fail(const std::filesystem::path& path, const std::string& what) {
  throw std::runtime_error("snapshot '" + path.string() + "': " + what);
}

struct HeaderReader {
  std::istream& is;
  const std::filesystem::path& path;

  std::vector<double> values(const std::string& expect_key) {
    std::string line;
    if (!std::getline(is, line)) fail(path, "truncated header, missing '" + expect_key + "'");
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    if (key != expect_key) fail(path, "expected '" + expect_key + "', found '" + key + "'");
    std::vector<double> out;
    double v;
    while (ls >> v) out.push_back(v);
    if (out.empty()) fail(path, "no values for '" + expect_key + "'");
    return out;
  }

  double value(const std::string& key) { return values(key).at(0); }
};

void atomic_write(const std::filesystem::path& path, const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
    os.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!os) throw std::runtime_error("short write to '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace

void write_snapshot(const SnapshotRecord& snap, const std::filesystem::path& path) {
  const Grid& g = snap.v.grid();
  std::ostringstream os;
  os << kMagic << "\n";
  os << "d " << snap.d << "\n";
  os << "p " << fmt(snap.p) << "\n";
  auto axis_list = [&](const char* key, auto get) {
    os << key;
    for (int a = 0; a < g.dim(); ++a) os << " " << get(a);
    os << "\n";
  };
  axis_list("lo", [&](int a) { return fmt(g.lo(a)); });
  axis_list("hi", [&](int a) { return fmt(g.hi(a)); });
  axis_list("n", [&](int a) { return std::to_string(g.cells(a)); });
  os << "tau " << fmt(snap.tau) << "\n";
  os << "t " << fmt(snap.t) << "\n";
  os << "alpha " << fmt(snap.g.alpha) << "\n";
  os << "phi " << fmt(snap.g.phi) << "\n";
  os << "b";
  for (int a = 0; a < snap.d; ++a) os << " " << fmt(snap.g.b[a]);
  os << "\n";
  os << "mu";
  const auto mu = algebra_coords(snap.mu);
  for (int j = 0; j < group_dim(snap.d); ++j) os << " " << fmt(mu[j]);
  os << "\n";
  os << "mass " << fmt(snap.mass) << "\n";
  os << "residual " << fmt(snap.residual) << "\n";
  os << "payload " << snap.v.size() << "\n";
  write_payload(os, snap.v.values());
  atomic_write(path, os.str());
}

SnapshotRecord read_snapshot(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) fail(path, "cannot open");
  std::string magic;
  std::getline(is, magic);
  if (magic != kMagic) fail(path, "bad magic line");

  HeaderReader h{is, path};
  SnapshotRecord snap;
  snap.d = static_cast<int>(h.value("d"));
  if (snap.d < 1 || snap.d > 3) fail(path, "bad dimension");
  snap.p = h.value("p");
  const auto lo = h.values("lo");
  const auto hi = h.values("hi");
  const auto n = h.values("n");
  if (static_cast<int>(lo.size()) != snap.d || hi.size() != lo.size() || n.size() != lo.size())
    fail(path, "grid extent lists do not match d");
  snap.tau = h.value("tau");
  snap.t = h.value("t");
  snap.g.d = snap.d;
  snap.g.alpha = h.value("alpha");
  snap.g.phi = h.value("phi");
  const auto b = h.values("b");
  if (static_cast<int>(b.size()) != snap.d) fail(path, "b has wrong length");
  for (int a = 0; a < snap.d; ++a) snap.g.b[a] = b[a];
  const auto mu = h.values("mu");
  if (static_cast<int>(mu.size()) != group_dim(snap.d)) fail(path, "mu has wrong length");
  std::array<double, 5> coords{};
  for (std::size_t j = 0; j < mu.size(); ++j) coords[j] = mu[j];
  snap.mu = algebra_from_coords(snap.d, coords);
  snap.mass = h.value("mass");
  snap.residual = h.value("residual");
  const auto payload = static_cast<std::size_t>(h.value("payload"));

  std::array<double, kMaxDim> glo{}, ghi{};
  std::array<int, kMaxDim> gn{1, 1, 1};
  for (int a = 0; a < snap.d; ++a) {
    glo[a] = lo[a];
    ghi[a] = hi[a];
    gn[a] = static_cast<int>(n[a]);
  }
  Grid grid(snap.d, glo, ghi, gn);
  if (grid.size() != payload) fail(path, "payload count does not match the grid");
  snap.v = Field(grid);
  for (std::size_t i = 0; i < payload; ++i) {
    std::uint64_t le = 0;
    is.read(reinterpret_cast<char*>(&le), 8);
    if (!is) fail(path, "truncated payload");
    snap.v[i] = std::bit_cast<double>(to_le(le));
  }
  return snap;
}

SeriesWriter::SeriesWriter(std::filesystem::path path, int d) : path_(std::move(path)), d_(d) {
  std::ostringstream os;
  os << "tau,t";
  os << ",mu1";
  if (d_ == 3) os << ",mu2";
  for (int a = 0; a < d_; ++a) os << ",mu3_" << (a + 1);
  os << ",alpha";
  if (d_ == 3) os << ",phi";
  for (int a = 0; a < d_; ++a) os << ",b" << (a + 1);
  os << ",mass,residual";
  rows_.push_back(os.str());
  flush();
}

void SeriesWriter::append(const SnapshotRecord& snap) {
  std::ostringstream os;
  os << fmt(snap.tau) << "," << fmt(snap.t);
  const auto mu = algebra_coords(snap.mu);
  for (int j = 0; j < group_dim(d_); ++j) os << "," << fmt(mu[j]);
  os << "," << fmt(snap.g.alpha);
  if (d_ == 3) os << "," << fmt(snap.g.phi);
  for (int a = 0; a < d_; ++a) os << "," << fmt(snap.g.b[a]);
  os << "," << fmt(snap.mass) << "," << fmt(snap.residual);
  rows_.push_back(os.str());
  flush();
}

void SeriesWriter::flush() const {
  std::string content;
  for (const auto& r : rows_) content += r + "\n";
  atomic_write(path_, content);
}

SeriesData read_series_csv(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open series '" + path.string() + "'");
  SeriesData out;
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("empty series '" + path.string() + "'");
  std::stringstream hs(line);
  std::string cell;
  while (std::getline(hs, cell, ',')) out.columns.push_back(cell);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ls(line);
    while (std::getline(ls, cell, ',')) row.push_back(std::strtod(cell.c_str(), nullptr));
    if (row.size() != out.columns.size())
      throw std::runtime_error("ragged series row in '" + path.string() + "'");
    out.rows.push_back(std::move(row));
  }
  return out;
}

int SeriesData::column(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) return static_cast<int>(i);
  return -1;
}

}  // namespace selfsim
