#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cofrag/evolution.hpp"

namespace cofrag {

inline constexpr const char* kToolVersion = "0.1.0";

enum class CoagKernelId { Constant, ProductSqrt };
enum class FragKernelId { Constant };
enum class DiffusionId { Constant, InverseLinear };
enum class InitialDatumId { AbExp, SqrtExp, ChannelEq };
enum class BoundaryId { Neumann, DirichletChannel };
enum class SnapshotField { M0, M1, Projection };

// Fully resolved run description. Every field is echoed to disk before
// stepping begins so a run can be reproduced from its manifest alone.
struct RunManifest {
  std::string preset;  // empty for fully explicit configs

  double radius = 0.0;
  int n_size = 0;
  double x_min = 0.0, x_max = 0.0;
  double y_min = 0.0, y_max = 0.0;
  int nx = 0, ny = 0;

  CoagKernelId coag_kernel = CoagKernelId::Constant;
  FragKernelId frag_kernel = FragKernelId::Constant;
  DiffusionId diffusion_model = DiffusionId::Constant;
  double diffusion_coeff = 0.0;
  InitialDatumId initial_datum = InitialDatumId::AbExp;
  BoundaryId boundary = BoundaryId::Neumann;

  double dt = 0.0;
  double t_end = 0.0;
  int diag_every = 1;
  double steady_tol = 0.0;
  PositivityMode positivity = PositivityMode::StrictError;
  Integrator integrator = Integrator::ForwardEuler;
  std::vector<double> snapshot_times;
  std::vector<SnapshotField> snapshot_fields;

  unsigned long seed = 0;
  std::string out_dir = "out";

  // Entropy diagnostics need detailed-balance kernels and no boundary
  // forcing.
  bool entropy_tracked() const {
    return coag_kernel == CoagKernelId::Constant &&
           frag_kernel == FragKernelId::Constant &&
           boundary == BoundaryId::Neumann;
  }
};

const std::vector<std::string>& preset_names();
bool is_preset(const std::string& name);
RunManifest preset_manifest(const std::string& name);

// Loads a manifest from a preset name or a key=value config file. Files may
// name a preset to inherit defaults; otherwise every required key must be
// present. Unknown keys are rejected.
RunManifest load_config(const std::string& path_or_preset);

// Applies CLI overrides (negative/empty means "keep").
struct ManifestOverrides {
  std::optional<int> nx, ny, n_size;
  std::optional<double> dt, t_end, steady_tol;
  std::optional<unsigned long> seed;
  std::optional<std::string> out_dir;
};
void apply_overrides(RunManifest& manifest, const ManifestOverrides& ov);

// Validates ranges and cross-field consistency; throws ConfigError.
void validate_manifest(const RunManifest& manifest);

std::string to_string(CoagKernelId id);
std::string to_string(FragKernelId id);
std::string to_string(DiffusionId id);
std::string to_string(InitialDatumId id);
std::string to_string(BoundaryId id);
std::string to_string(SnapshotField f);
std::string to_string(PositivityMode m);
std::string to_string(Integrator i);

// Key=value serialization used for both the manifest file and `info`.
std::string manifest_text(const RunManifest& manifest);

}  // namespace cofrag
