#include "cofrag/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "cofrag/errors.hpp"
#include "cofrag/io.hpp"

namespace cofrag {

namespace {

const char* kRequiredKeys[] = {
    "radius", "n_size", "x_min", "x_max", "y_min", "y_max", "nx", "ny",
    "coag_kernel", "frag_kernel", "diffusion_model", "diffusion_coeff",
    "initial_datum", "boundary", "dt", "t_end"};

const char* kOptionalKeys[] = {
    "preset", "diag_every", "steady_tol", "positivity", "integrator",
    "snapshot_times", "snapshot_fields", "seed", "out_dir"};

bool known_key(const std::string& key) {
  for (const char* k : kRequiredKeys)
    if (key == k) return true;
  for (const char* k : kOptionalKeys)
    if (key == k) return true;
  return false;
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &pos);
  } catch (const std::exception&) {
    throw ConfigError("config: key '" + key + "': cannot parse number '" +
                      value + "'");
  }
  if (pos != value.size())
    throw ConfigError("config: key '" + key + "': trailing characters in '" +
                      value + "'");
  return v;
}

long parse_long(const std::string& key, const std::string& value) {
  const double v = parse_double(key, value);
  if (v != std::floor(v))
    throw ConfigError("config: key '" + key + "': expected an integer, got '" +
                      value + "'");
  return static_cast<long>(v);
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> items;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

CoagKernelId parse_coag(const std::string& v) {
  if (v == "constant") return CoagKernelId::Constant;
  if (v == "product-sqrt") return CoagKernelId::ProductSqrt;
  throw ConfigError("config: unknown coag_kernel '" + v + "'");
}

FragKernelId parse_frag(const std::string& v) {
  if (v == "constant") return FragKernelId::Constant;
  throw ConfigError("config: unknown frag_kernel '" + v + "'");
}

DiffusionId parse_diffusion(const std::string& v) {
  if (v == "constant") return DiffusionId::Constant;
  if (v == "inverse-linear") return DiffusionId::InverseLinear;
  throw ConfigError("config: unknown diffusion_model '" + v + "'");
}

InitialDatumId parse_initial(const std::string& v) {
  if (v == "ab-exp") return InitialDatumId::AbExp;
  if (v == "sqrt-exp") return InitialDatumId::SqrtExp;
  if (v == "channel-eq") return InitialDatumId::ChannelEq;
  throw ConfigError("config: unknown initial_datum '" + v + "'");
}

BoundaryId parse_boundary(const std::string& v) {
  if (v == "neumann") return BoundaryId::Neumann;
  if (v == "dirichlet-channel") return BoundaryId::DirichletChannel;
  throw ConfigError("config: unknown boundary '" + v + "'");
}

SnapshotField parse_snapshot_field(const std::string& v) {
  if (v == "m0") return SnapshotField::M0;
  if (v == "m1") return SnapshotField::M1;
  if (v == "projection") return SnapshotField::Projection;
  throw ConfigError("config: unknown snapshot field '" + v + "'");
}

PositivityMode parse_positivity(const std::string& v) {
  if (v == "strict") return PositivityMode::StrictError;
  if (v == "clamp") return PositivityMode::ClampAndCount;
  throw ConfigError("config: unknown positivity mode '" + v + "'");
}

Integrator parse_integrator(const std::string& v) {
  if (v == "euler") return Integrator::ForwardEuler;
  if (v == "heun") return Integrator::Heun;
  throw ConfigError("config: unknown integrator '" + v + "'");
}

void apply_key(RunManifest& m, const std::string& key,
               const std::string& value) {
  if (key == "radius") m.radius = parse_double(key, value);
  else if (key == "n_size") m.n_size = static_cast<int>(parse_long(key, value));
  else if (key == "x_min") m.x_min = parse_double(key, value);
  else if (key == "x_max") m.x_max = parse_double(key, value);
  else if (key == "y_min") m.y_min = parse_double(key, value);
  else if (key == "y_max") m.y_max = parse_double(key, value);
  else if (key == "nx") m.nx = static_cast<int>(parse_long(key, value));
  else if (key == "ny") m.ny = static_cast<int>(parse_long(key, value));
  else if (key == "coag_kernel") m.coag_kernel = parse_coag(value);
  else if (key == "frag_kernel") m.frag_kernel = parse_frag(value);
  else if (key == "diffusion_model") m.diffusion_model = parse_diffusion(value);
  else if (key == "diffusion_coeff") m.diffusion_coeff = parse_double(key, value);
  else if (key == "initial_datum") m.initial_datum = parse_initial(value);
  else if (key == "boundary") m.boundary = parse_boundary(value);
  else if (key == "dt") m.dt = parse_double(key, value);
  else if (key == "t_end") m.t_end = parse_double(key, value);
  else if (key == "diag_every")
    m.diag_every = static_cast<int>(parse_long(key, value));
  else if (key == "steady_tol") m.steady_tol = parse_double(key, value);
  else if (key == "positivity") m.positivity = parse_positivity(value);
  else if (key == "integrator") m.integrator = parse_integrator(value);
  else if (key == "snapshot_times") {
    m.snapshot_times.clear();
    for (const auto& item : split_list(value))
      m.snapshot_times.push_back(parse_double(key, item));
  } else if (key == "snapshot_fields") {
    m.snapshot_fields.clear();
    for (const auto& item : split_list(value))
      m.snapshot_fields.push_back(parse_snapshot_field(item));
  } else if (key == "seed")
    m.seed = static_cast<unsigned long>(parse_long(key, value));
  else if (key == "out_dir") m.out_dir = value;
  else
    throw ConfigError("config: unknown key '" + key + "'");
}

}  // namespace

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {"ab-neumann", "sqrt-kernel",
                                                 "dirichlet-channel"};
  return names;
}

bool is_preset(const std::string& name) {
  const auto& names = preset_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

RunManifest preset_manifest(const std::string& name) {
  RunManifest m;
  m.preset = name;
  m.radius = 20.0;
  m.n_size = 64;
  m.dt = 0.002;
  m.diag_every = 20;
  m.steady_tol = 1e-8;
  m.positivity = PositivityMode::StrictError;
  m.integrator = Integrator::ForwardEuler;
  m.snapshot_fields = {SnapshotField::M0};
  m.seed = 0;
  m.out_dir = "out";

  if (name == "ab-neumann") {
    m.x_min = -0.5; m.x_max = 0.5; m.y_min = -0.5; m.y_max = 0.5;
    m.nx = 32; m.ny = 32;
    m.coag_kernel = CoagKernelId::Constant;
    m.frag_kernel = FragKernelId::Constant;
    m.diffusion_model = DiffusionId::Constant;
    m.diffusion_coeff = 0.1;
    m.initial_datum = InitialDatumId::AbExp;
    m.boundary = BoundaryId::Neumann;
    m.t_end = 4.0;
  } else if (name == "sqrt-kernel") {
    m.x_min = -0.5; m.x_max = 0.5; m.y_min = -0.5; m.y_max = 0.5;
    m.nx = 32; m.ny = 32;
    m.coag_kernel = CoagKernelId::ProductSqrt;
    m.frag_kernel = FragKernelId::Constant;
    m.diffusion_model = DiffusionId::InverseLinear;
    m.diffusion_coeff = 0.1;
    m.initial_datum = InitialDatumId::SqrtExp;
    m.boundary = BoundaryId::Neumann;
    m.t_end = 400.0;
    m.diag_every = 100;
  } else if (name == "dirichlet-channel") {
    m.x_min = 0.0; m.x_max = 0.125; m.y_min = 0.0; m.y_max = 1.0;
    m.nx = 128; m.ny = 128;
    m.coag_kernel = CoagKernelId::Constant;
    m.frag_kernel = FragKernelId::Constant;
    m.diffusion_model = DiffusionId::InverseLinear;
    m.diffusion_coeff = 0.01;
    m.initial_datum = InitialDatumId::ChannelEq;
    m.boundary = BoundaryId::DirichletChannel;
    m.dt = 1e-5;
    m.t_end = 10.0;
    m.diag_every = 100;
    m.steady_tol = 1e-3;
    m.snapshot_times = {0.0, 0.33, 0.66, 4.0};
    m.snapshot_fields = {SnapshotField::M0, SnapshotField::M1,
                         SnapshotField::Projection};
  } else {
    throw ConfigError("config: unknown preset '" + name + "'");
  }
  return m;
}

RunManifest load_config(const std::string& path_or_preset) {
  if (is_preset(path_or_preset)) {
    RunManifest m = preset_manifest(path_or_preset);
    validate_manifest(m);
    return m;
  }

  std::ifstream in(path_or_preset);
  if (!in)
    throw ConfigError("config: '" + path_or_preset +
                      "' is neither a preset nor a readable file");

  std::map<std::string, std::string> entries;
  std::vector<std::string> order;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config: line " + std::to_string(line_no) +
                        ": expected key=value, got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!known_key(key))
      throw ConfigError("config: line " + std::to_string(line_no) +
                        ": unknown key '" + key + "'");
    if (entries.count(key))
      throw ConfigError("config: line " + std::to_string(line_no) +
                        ": duplicate key '" + key + "'");
    entries[key] = value;
    order.push_back(key);
  }

  RunManifest m;
  const auto preset_it = entries.find("preset");
  if (preset_it != entries.end()) {
    m = preset_manifest(preset_it->second);
  } else {
    for (const char* k : kRequiredKeys)
      if (!entries.count(k))
        throw ConfigError("config: missing required key '" + std::string(k) +
                          "'");
  }
  for (const auto& key : order) {
    if (key == "preset") continue;
    apply_key(m, key, entries.at(key));
  }
  validate_manifest(m);
  return m;
}

void apply_overrides(RunManifest& m, const ManifestOverrides& ov) {
  if (ov.nx) m.nx = *ov.nx;
  if (ov.ny) m.ny = *ov.ny;
  if (ov.n_size) m.n_size = *ov.n_size;
  if (ov.dt) m.dt = *ov.dt;
  if (ov.t_end) m.t_end = *ov.t_end;
  if (ov.steady_tol) m.steady_tol = *ov.steady_tol;
  if (ov.seed) m.seed = *ov.seed;
  if (ov.out_dir) m.out_dir = *ov.out_dir;
  validate_manifest(m);
}

void validate_manifest(const RunManifest& m) {
  if (!(m.radius > 0.0)) throw ConfigError("config: radius must be positive");
  if (m.n_size < 2) throw ConfigError("config: n_size must be at least 2");
  if (!(m.x_max > m.x_min) || !(m.y_max > m.y_min))
    throw ConfigError("config: degenerate spatial extents");
  if (m.nx < 1 || m.ny < 1)
    throw ConfigError("config: nx and ny must be at least 1");
  if (!(m.dt > 0.0)) throw ConfigError("config: dt must be positive");
  if (!(m.t_end > 0.0)) throw ConfigError("config: t_end must be positive");
  if (m.diag_every < 1)
    throw ConfigError("config: diag_every must be at least 1");
  if (!(m.steady_tol > 0.0))
    throw ConfigError("config: steady_tol must be positive");
  if (!(m.diffusion_coeff > 0.0))
    throw ConfigError("config: diffusion_coeff must be positive");
  for (const double t : m.snapshot_times)
    if (t < 0.0) throw ConfigError("config: snapshot times must be >= 0");
  if (m.out_dir.empty()) throw ConfigError("config: out_dir must be set");
}

std::string to_string(CoagKernelId id) {
  return id == CoagKernelId::Constant ? "constant" : "product-sqrt";
}
std::string to_string(FragKernelId) { return "constant"; }
std::string to_string(DiffusionId id) {
  return id == DiffusionId::Constant ? "constant" : "inverse-linear";
}
std::string to_string(InitialDatumId id) {
  switch (id) {
    case InitialDatumId::AbExp: return "ab-exp";
    case InitialDatumId::SqrtExp: return "sqrt-exp";
    case InitialDatumId::ChannelEq: return "channel-eq";
  }
  return "";
}
std::string to_string(BoundaryId id) {
  return id == BoundaryId::Neumann ? "neumann" : "dirichlet-channel";
}
std::string to_string(SnapshotField f) {
  switch (f) {
    case SnapshotField::M0: return "m0";
    case SnapshotField::M1: return "m1";
    case SnapshotField::Projection: return "projection";
  }
  return "";
}
std::string to_string(PositivityMode m) {
  return m == PositivityMode::StrictError ? "strict" : "clamp";
}
std::string to_string(Integrator i) {
  return i == Integrator::ForwardEuler ? "euler" : "heun";
}

std::string manifest_text(const RunManifest& m) {
  std::string out;
  auto kv = [&out](const std::string& key, const std::string& value) {
    out += key;
    out += "=";
    out += value;
    out += "\n";
  };
  kv("tool_version", kToolVersion);
  kv("preset", m.preset.empty() ? "none" : m.preset);
  kv("radius", format_full(m.radius));
  kv("n_size", std::to_string(m.n_size));
  kv("x_min", format_full(m.x_min));
  kv("x_max", format_full(m.x_max));
  kv("y_min", format_full(m.y_min));
  kv("y_max", format_full(m.y_max));
  kv("nx", std::to_string(m.nx));
  kv("ny", std::to_string(m.ny));
  kv("coag_kernel", to_string(m.coag_kernel));
  kv("frag_kernel", to_string(m.frag_kernel));
  kv("diffusion_model", to_string(m.diffusion_model));
  kv("diffusion_coeff", format_full(m.diffusion_coeff));
  kv("initial_datum", to_string(m.initial_datum));
  kv("boundary", to_string(m.boundary));
  kv("dt", format_full(m.dt));
  kv("t_end", format_full(m.t_end));
  kv("diag_every", std::to_string(m.diag_every));
  kv("steady_tol", format_full(m.steady_tol));
  kv("positivity", to_string(m.positivity));
  kv("integrator", to_string(m.integrator));
  std::string times;
  for (std::size_t i = 0; i < m.snapshot_times.size(); ++i) {
    if (i) times += ",";
    times += format_full(m.snapshot_times[i]);
  }
  kv("snapshot_times", times);
  std::string fields;
  for (std::size_t i = 0; i < m.snapshot_fields.size(); ++i) {
    if (i) fields += ",";
    fields += to_string(m.snapshot_fields[i]);
  }
  kv("snapshot_fields", fields);
  kv("seed", std::to_string(m.seed));
  kv("out_dir", m.out_dir);
  kv("entropy_tracked", m.entropy_tracked() ? "true" : "false");
  return out;
}

}  // namespace cofrag
