#include "selfsim/config.hpp"

#include <cmath>
#include <cstdlib>
#include <set>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "selfsim/expression.hpp"
#include "selfsim/snapshot_io.hpp"

namespace selfsim {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

[[noreturn]] void fail_line(int line, const std::string& what) {
  throw std::invalid_argument("config line " + std::to_string(line) + ": " + what);
}

double parse_number(const std::string& s, int line) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') fail_line(line, "malformed number '" + s + "'");
  return v;
}

std::vector<double> parse_list(const std::string& s, int line) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_number(trim(item), line));
  if (out.empty()) fail_line(line, "empty list");
  return out;
}

struct RawConfig {
  SolverConfig cfg;
  bool has_lo = false, has_hi = false, has_n = false, has_initial = false;
};

void apply_key(RawConfig& raw, const std::string& key, const std::string& value, int line) {
  SolverConfig& c = raw.cfg;
  if (key == "d") {
    const double v = parse_number(value, line);
    if (v != 1.0 && v != 2.0) fail_line(line, "d must be 1 or 2");
    c.d = static_cast<int>(v);
  } else if (key == "p") {
    c.p = parse_number(value, line);
  } else if (key == "nu") {
    c.nu = parse_number(value, line);
  } else if (key == "domain_lo") {
    const auto v = parse_list(value, line);
    raw.has_lo = true;
    for (std::size_t i = 0; i < v.size() && i < 3; ++i) c.lo[i] = v[i];
    if (v.size() == 1) c.lo[1] = c.lo[2] = v[0];
  } else if (key == "domain_hi") {
    const auto v = parse_list(value, line);
    raw.has_hi = true;
    for (std::size_t i = 0; i < v.size() && i < 3; ++i) c.hi[i] = v[i];
    if (v.size() == 1) c.hi[1] = c.hi[2] = v[0];
  } else if (key == "n") {
    const auto v = parse_list(value, line);
    raw.has_n = true;
    for (std::size_t i = 0; i < v.size() && i < 3; ++i) {
      if (v[i] != std::floor(v[i])) fail_line(line, "cell counts must be integers");
      c.n[i] = static_cast<int>(v[i]);
    }
    if (v.size() == 1) c.n[1] = c.n[2] = c.n[0];
  } else if (key == "cfl") {
    c.cfl = parse_number(value, line);
  } else if (key == "theta") {
    c.theta = parse_number(value, line);
  } else if (key == "phase") {
    if (value == "fixed")
      c.phase = PhaseKind::Fixed;
    else if (value == "orthogonal")
      c.phase = PhaseKind::Orthogonal;
    else
      fail_line(line, "phase must be 'fixed' or 'orthogonal'");
  } else if (key == "eta") {
    c.eta = parse_number(value, line);
  } else if (key == "tau_end") {
    c.tau_end = parse_number(value, line);
  } else if (key == "snapshot_every") {
    c.snapshot_every = parse_number(value, line);
  } else if (key == "dtau_max") {
    c.dtau_max = parse_number(value, line);
  } else if (key == "output_dir") {
    c.output_dir = value;
  } else if (key == "seed") {
    const double v = parse_number(value, line);
    if (v < 0 || v != std::floor(v)) fail_line(line, "seed must be a nonnegative integer");
    c.seed = static_cast<unsigned long>(v);
  } else if (key == "initial") {
    c.initial = value;
    raw.has_initial = true;
  } else if (key == "a_vec") {
    const auto v = parse_list(value, line);
    std::array<double, 3> a{};
    for (std::size_t i = 0; i < v.size() && i < 3; ++i) a[i] = v[i];
    c.a_vec = a;
    if (v.size() > 3) fail_line(line, "a_vec takes at most 3 components");
  } else {
    fail_line(line, "unknown key '" + key + "'");
  }
}

void finalize(RawConfig& raw) {
  SolverConfig& c = raw.cfg;
  if (!raw.has_lo)
    for (int a = 0; a < 3; ++a) c.lo[a] = c.d == 1 ? -8.0 : -5.0;
  if (!raw.has_hi)
    for (int a = 0; a < 3; ++a) c.hi[a] = c.d == 1 ? 8.0 : 5.0;
  if (!raw.has_n)
    for (int a = 0; a < 3; ++a) c.n[a] = c.d == 1 ? 1600 : 150;
  if (!raw.has_initial) c.initial = c.d == 1 ? "1d-sine" : "2d-sine";

  std::vector<std::string> range_errors;
  auto check = [&](bool ok, const std::string& msg) {
    if (!ok) range_errors.push_back(msg);
  };
  check(c.p > 1.0, "p must exceed 1");
  check(c.nu > 0.0, "nu must be positive");
  check(c.cfl > 0.0 && c.cfl < 1.0, "cfl must lie in (0, 1)");
  check(c.theta >= 1.0 && c.theta <= 2.0, "theta must lie in [1, 2]");
  check(c.eta > 0.0, "eta must be positive");
  check(c.tau_end >= 0.0, "tau_end must be nonnegative");
  check(c.snapshot_every > 0.0, "snapshot_every must be positive");
  check(c.dtau_max > 0.0, "dtau_max must be positive");
  for (int a = 0; a < c.d; ++a) {
    check(c.hi[a] > c.lo[a], "domain_hi must exceed domain_lo on every axis");
    check(c.n[a] >= 4, "n must be at least 4 on every axis");
  }
  if (c.a_vec) {
    double norm2 = 0.0;
    for (int i = 0; i < c.d; ++i) norm2 += (*c.a_vec)[i] * (*c.a_vec)[i];
    check(norm2 > 0.0, "a_vec must be nonzero");
    for (int i = c.d; i < 3; ++i)
      check((*c.a_vec)[i] == 0.0, "a_vec has more components than d");
  }
  if (!range_errors.empty()) {
    std::string msg = "invalid configuration:";
    for (const auto& e : range_errors) msg += "\n  - " + e;
    throw std::invalid_argument(msg);
  }

  if (c.a_vec && c.nu > 0.0) c.reduction = canonical_reduce(c.d, *c.a_vec, c.nu);
}

}  // namespace

Grid SolverConfig::make_grid() const {
  if (d == 1) return Grid::line(lo[0], hi[0], n[0]);
  return Grid::box2({lo[0], lo[1]}, {hi[0], hi[1]}, {n[0], n[1]});
}

double SolverConfig::effective_nu() const { return reduction ? reduction->nu_eff : nu; }

SolverConfig parse_config(const std::string& text) {
  RawConfig raw;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  std::set<std::string> seen;
  while (std::getline(ss, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail_line(lineno, "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail_line(lineno, "missing key");
    if (value.empty()) fail_line(lineno, "missing value for '" + key + "'");
    if (!seen.insert(key).second) fail_line(lineno, "duplicate key '" + key + "'");
    apply_key(raw, key, value, lineno);
  }
  finalize(raw);
  return raw.cfg;
}

std::string render_config(const SolverConfig& cfg) {
  std::ostringstream os;
  os.precision(17);
  os << "d = " << cfg.d << "\n";
  os << "p = " << cfg.p << "\n";
  os << "nu = " << cfg.nu << "\n";
  auto list = [&](auto get) {
    std::ostringstream s;
    s.precision(17);
    for (int a = 0; a < cfg.d; ++a) s << (a ? "," : "") << get(a);
    return s.str();
  };
  os << "domain_lo = " << list([&](int a) { return cfg.lo[a]; }) << "\n";
  os << "domain_hi = " << list([&](int a) { return cfg.hi[a]; }) << "\n";
  os << "n = " << list([&](int a) { return cfg.n[a]; }) << "\n";
  os << "cfl = " << cfg.cfl << "\n";
  os << "theta = " << cfg.theta << "\n";
  os << "phase = " << (cfg.phase == PhaseKind::Fixed ? "fixed" : "orthogonal") << "\n";
  os << "eta = " << cfg.eta << "\n";
  os << "tau_end = " << cfg.tau_end << "\n";
  os << "snapshot_every = " << cfg.snapshot_every << "\n";
  os << "dtau_max = " << cfg.dtau_max << "\n";
  os << "output_dir = " << cfg.output_dir << "\n";
  os << "seed = " << cfg.seed << "\n";
  os << "initial = " << cfg.initial << "\n";
  if (cfg.a_vec) {
    os << "a_vec = ";
    for (int i = 0; i < cfg.d; ++i) os << (i ? "," : "") << (*cfg.a_vec)[i];
    os << "\n";
  }
  return os.str();
}

void apply_override(SolverConfig& cfg, const std::string& line) {
  std::string text = render_config(cfg);
  const auto eq = line.find('=');
  if (eq == std::string::npos) throw std::invalid_argument("override must look like key=value");
  const std::string key = trim(line.substr(0, eq));
  // drop the old assignment so the override does not trip duplicate detection
  std::stringstream ss(text);
  std::string out, l;
  while (std::getline(ss, l)) {
    if (trim(l.substr(0, l.find('='))) != key) out += l + "\n";
  }
  out += line + "\n";
  cfg = parse_config(out);
}

SolverConfig preset_config(const std::string& name) {
  std::string text;
  if (name == "1d-p2-nu0.4-fixed") {
    text = "d = 1\np = 2\nnu = 0.4\nphase = fixed\ntau_end = 5\n";
  } else if (name == "1d-p2-nu0.4-orth") {
    text = "d = 1\np = 2\nnu = 0.4\nphase = orthogonal\ntau_end = 5\n";
  } else if (name == "1d-p1.5-nu0.4") {
    text = "d = 1\np = 1.5\nnu = 0.4\nphase = fixed\ntau_end = 5\n";
  } else if (name == "1d-p2.5-nu0.4") {
    text = "d = 1\np = 2.5\nnu = 0.4\nphase = fixed\ntau_end = 4\n"
           "domain_lo = -5\ndomain_hi = 5\nn = 1000\n";
  } else if (name == "1d-p2-nu0.01-metastable") {
    text = "d = 1\np = 2\nnu = 0.01\nphase = fixed\ntau_end = 50\nsnapshot_every = 1\n";
  } else if (name == "2d-p1.5-nu0.05-metastable") {
    text = "d = 2\np = 1.5\nnu = 0.05\nphase = orthogonal\ntau_end = 20\nsnapshot_every = 1\n";
  } else if (name == "2d-p1.5-nu0.4") {
    text = "d = 2\np = 1.5\nnu = 0.4\nphase = orthogonal\ntau_end = 5\n";
  } else if (name == "2d-p2-nu0.4") {
    text = "d = 2\np = 2\nnu = 0.4\nphase = orthogonal\ntau_end = 5\n";
  } else {
    throw std::invalid_argument("unknown preset '" + name + "'");
  }
  SolverConfig cfg = parse_config(text);
  cfg.output_dir = "out-" + name;
  return cfg;
}

std::vector<std::string> preset_names() {
  return {"1d-p2-nu0.4-fixed",  "1d-p2-nu0.4-orth",        "1d-p1.5-nu0.4",
          "1d-p2.5-nu0.4",      "1d-p2-nu0.01-metastable", "2d-p1.5-nu0.05-metastable",
          "2d-p1.5-nu0.4",      "2d-p2-nu0.4"};
}

namespace {

double sine_1d(double x) {
  if (x >= -0.5 * kPi && x <= 0.0) return std::sin(2.0 * x);
  if (x > 0.0 && x <= kPi) return std::sin(x);
  return 0.0;
}

double sine_2d(double x, double y) {
  if (x > -0.5 * kPi && x < 0.0 && y > 0.0 && y < kPi) return std::sin(2.0 * x) * std::sin(y);
  if (x > 0.0 && x < kPi && y > -0.5 * kPi && y < 0.5 * kPi) return std::sin(x) * std::cos(y);
  return 0.0;
}

}  // namespace

Field initial_condition(const SolverConfig& cfg) {
  const Grid grid = cfg.make_grid();
  const std::string& spec = cfg.initial;
  if (spec == "1d-sine") {
    if (cfg.d != 1) throw std::invalid_argument("initial '1d-sine' needs d = 1");
    return sample_function(grid, [](const std::array<double, 3>& x) { return sine_1d(x[0]); });
  }
  if (spec == "2d-sine") {
    if (cfg.d != 2) throw std::invalid_argument("initial '2d-sine' needs d = 2");
    return sample_function(grid,
                           [](const std::array<double, 3>& x) { return sine_2d(x[0], x[1]); });
  }
  if (spec == "gaussian") {
    return sample_function(grid, [](const std::array<double, 3>& x) {
      return std::exp(-(x[0] * x[0] + x[1] * x[1]));
    });
  }
  if (spec.rfind("expr:", 0) == 0) {
    Expression e(spec.substr(5));
    return sample_function(grid,
                           [&](const std::array<double, 3>& x) { return e.eval(x[0], x[1]); });
  }
  if (spec.rfind("file:", 0) == 0) {
    const SnapshotRecord snap = read_snapshot(spec.substr(5));
    if (!(snap.v.grid() == grid))
      throw std::invalid_argument("initial 'file:' snapshot grid does not match the configuration");
    return snap.v;
  }
  throw std::invalid_argument("unknown initial condition '" + spec + "'");
}

}  // namespace selfsim
