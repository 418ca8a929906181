#include "cofrag/problem.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <memory>
#include <numbers>

#include "cofrag/diagnostics.hpp"
#include "cofrag/errors.hpp"
#include "cofrag/io.hpp"

namespace cofrag {

namespace {

constexpr double kPi = std::numbers::pi;

RateFn make_coag(const RunManifest& m) {
  switch (m.coag_kernel) {
    case CoagKernelId::Constant:
      return [](double, double) { return 1.0; };
    case CoagKernelId::ProductSqrt:
      return [](double y, double yp) { return std::sqrt(y * yp); };
  }
  throw ConfigError("problem: unhandled coagulation kernel");
}

RateFn make_frag(const RunManifest&) {
  return [](double, double) { return 1.0; };
}

DiffusionFn make_diffusion(const RunManifest& m) {
  const double d0 = m.diffusion_coeff;
  switch (m.diffusion_model) {
    case DiffusionId::Constant:
      return [d0](double) { return d0; };
    case DiffusionId::InverseLinear:
      return [d0](double y) { return d0 / (1.0 + y); };
  }
  throw ConfigError("problem: unhandled diffusion model");
}

// exp(-y/alpha) with the alpha -> 0 limit: 1 at y = 0, 0 for y > 0.
double inverse_exponent_profile(double alpha, double y) {
  if (y <= 0.0) return 1.0;
  if (alpha <= 1e-300) return 0.0;
  return std::exp(-y / alpha);
}

// Initial data sampled at cell centers in space and lower cell edges in
// size, so detailed-balance initial profiles are exact zeros of the
// discrete operator.
double initial_value(const RunManifest& m, Vec2 x, double y) {
  switch (m.initial_datum) {
    case InitialDatumId::AbExp: {
      const double alpha =
          1.0 + 0.1 * std::cos(2.0 * kPi * x.x) * std::cos(2.0 * kPi * x.y);
      return std::exp(-alpha * y);
    }
    case InitialDatumId::SqrtExp: {
      const double alpha =
          1.0 + 0.5 * std::cos(4.0 * kPi * x.x) * std::cos(4.0 * kPi * x.y);
      return std::exp(-alpha * y);
    }
    case InitialDatumId::ChannelEq: {
      const double alpha =
          0.5 * (1.0 + std::cos(32.0 * kPi * x.x) * std::cos(4.0 * kPi * x.y));
      return inverse_exponent_profile(alpha, y);
    }
  }
  throw ConfigError("problem: unhandled initial datum");
}

}  // namespace

Problem build_problem(const RunManifest& manifest) {
  validate_manifest(manifest);

  Problem p;
  p.grid = std::make_unique<SizeGrid>(
      build_size_grid(manifest.radius, manifest.n_size));
  p.mesh = std::make_unique<SpatialMesh>(
      build_cartesian_mesh(manifest.x_min, manifest.x_max, manifest.y_min,
                           manifest.y_max, manifest.nx, manifest.ny));

  if (manifest.boundary == BoundaryId::DirichletChannel) {
    auto profile = std::make_shared<BoundaryProfile>();
    profile->name = "channel-inflow";
    profile->value = [](Vec2 midpoint, double y) {
      const double alpha = 0.5 * (1.0 + std::cos(4.0 * kPi * midpoint.y));
      return inverse_exponent_profile(alpha, y);
    };
    const double x_left = manifest.x_min;
    tag_boundary(
        *p.mesh,
        [x_left](Vec2 mid) { return std::abs(mid.x - x_left) <= 1e-12; },
        BcType::Dirichlet, profile);
  }

  p.tables = build_kernel_tables(*p.grid, make_coag(manifest),
                                 make_frag(manifest),
                                 make_diffusion(manifest));

  p.initial = State(*p.mesh, *p.grid);
  for (int k = 0; k < p.initial.n_cells(); ++k) {
    const Vec2 center = p.mesh->cells[static_cast<std::size_t>(k)].center;
    for (int i = 0; i < p.grid->n_size; ++i)
      p.initial.at(k, i) = initial_value(manifest, center, p.grid->edge(i));
  }

  p.sim.dt = manifest.dt;
  p.sim.t_end = manifest.t_end;
  p.sim.diag_every = manifest.diag_every;
  p.sim.snapshot_times = manifest.snapshot_times;
  p.sim.steady_tol = manifest.steady_tol;
  p.sim.positivity = manifest.positivity;
  p.sim.integrator = manifest.integrator;
  p.sim.track_entropy = manifest.entropy_tracked();

  if (p.sim.track_entropy) {
    const double volume = discrete_volume(p.initial);
    if (volume > 0.0)
      p.global_eq = solve_alpha(volume, *p.grid, *p.mesh);
    else
      p.sim.track_entropy = false;  // vacuum initial state has no equilibrium
  }
  return p;
}

namespace {

std::string time_label(double t) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", t);
  return buf;
}

int write_snapshot_files(const Problem& problem, const State& state,
                         const std::string& label,
                         const std::vector<SnapshotField>& fields,
                         const std::filesystem::path& dir) {
  int written = 0;
  for (const SnapshotField field : fields) {
    const std::filesystem::path path =
        dir / ("snapshot_" + to_string(field) + "_" + label + ".csv");
    if (field == SnapshotField::Projection) {
      write_projection_snapshot(projection_x2(state), *problem.grid, path);
    } else {
      const SpatialFields f = spatial_fields(state);
      write_field_snapshot(*problem.mesh,
                           field == SnapshotField::M0 ? f.m0 : f.m1, path);
    }
    ++written;
  }
  return written;
}

}  // namespace

int run_to_files(const RunManifest& manifest) {
  Problem problem = build_problem(manifest);
  const std::filesystem::path dir(manifest.out_dir);
  std::filesystem::create_directories(dir);

  int files = 0;
  write_manifest(manifest, dir / "manifest.txt");
  ++files;

  // Snapshot callbacks arrive in requested-time order; files are named by
  // the requested time so reruns are byte-stable.
  std::vector<double> requested = manifest.snapshot_times;
  std::sort(requested.begin(), requested.end());
  std::size_t snapshot_index = 0;
  auto on_snapshot = [&](double, const State& state) {
    const double target = requested[snapshot_index++];
    files += write_snapshot_files(problem, state, "t" + time_label(target),
                                  manifest.snapshot_fields, dir);
  };

  const RunResult result =
      run(problem.initial, problem.tables, problem.sim,
          problem.global_eq ? &*problem.global_eq : nullptr, on_snapshot);

  write_diagnostics(result.records, dir / "diagnostics.csv");
  ++files;
  files += write_snapshot_files(problem, result.final_state, "final",
                                manifest.snapshot_fields, dir);
  return files;
}

}  // namespace cofrag
