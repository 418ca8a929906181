#include <chrono>
#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cofrag/check.hpp"
#include "cofrag/config.hpp"
#include "cofrag/errors.hpp"
#include "cofrag/problem.hpp"

namespace {

cofrag::RunManifest resolve_manifest(const std::string& preset,
                                     const std::string& config_path) {
  if (!preset.empty() && !config_path.empty())
    throw cofrag::ConfigError("use either --preset or --config, not both");
  if (preset.empty() && config_path.empty())
    throw cofrag::ConfigError("one of --preset or --config is required");
  return cofrag::load_config(preset.empty() ? config_path : preset);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-volume simulator for coagulation-fragmentation with "
               "spatial diffusion"};
  app.require_subcommand(1);

  std::string preset, config_path, out_dir;
  cofrag::ManifestOverrides overrides;
  int nx = 0, ny = 0, nsize = 0;
  double dt = 0.0, t_end = 0.0, steady_tol = 0.0;
  unsigned long seed = 0;
  bool seed_set = false;

  auto add_manifest_options = [&](CLI::App* cmd) {
    cmd->add_option("--preset", preset,
                    "preset name (ab-neumann, sqrt-kernel, dirichlet-channel)");
    cmd->add_option("--config", config_path, "key=value config file");
  };
  auto add_override_options = [&](CLI::App* cmd) {
    cmd->add_option("--nx", nx, "spatial cells in x1");
    cmd->add_option("--ny", ny, "spatial cells in x2");
    cmd->add_option("--nsize", nsize, "size cells");
    cmd->add_option("--dt", dt, "time step");
    cmd->add_option("--t-end", t_end, "final time");
    cmd->add_option("--steady-tol", steady_tol,
                    "steady-state rate tolerance per unit time");
    cmd->add_option("--seed", seed, "seed for randomized checks")
        ->each([&](const std::string&) { seed_set = true; });
    cmd->add_option("--out", out_dir, "output directory");
  };

  CLI::App* run_cmd =
      app.add_subcommand("run", "simulate and write diagnostics/snapshots");
  add_manifest_options(run_cmd);
  add_override_options(run_cmd);

  CLI::App* info_cmd =
      app.add_subcommand("info", "print the resolved configuration");
  add_manifest_options(info_cmd);
  add_override_options(info_cmd);

  CLI::App* check_cmd = app.add_subcommand(
      "check", "run the randomized invariant suite and report pass/fail");
  check_cmd->add_option("--seed", seed, "seed for randomized checks")
      ->each([&](const std::string&) { seed_set = true; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    auto collect_overrides = [&]() {
      if (nx > 0) overrides.nx = nx;
      if (ny > 0) overrides.ny = ny;
      if (nsize > 0) overrides.n_size = nsize;
      if (dt > 0.0) overrides.dt = dt;
      if (t_end > 0.0) overrides.t_end = t_end;
      if (steady_tol > 0.0) overrides.steady_tol = steady_tol;
      if (seed_set) overrides.seed = seed;
      if (!out_dir.empty()) overrides.out_dir = out_dir;
    };

    if (run_cmd->parsed()) {
      cofrag::RunManifest manifest = resolve_manifest(preset, config_path);
      collect_overrides();
      cofrag::apply_overrides(manifest, overrides);
      const auto start = std::chrono::steady_clock::now();
      const int files = cofrag::run_to_files(manifest);
      const double seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                        start)
              .count();
      std::printf("wrote %d files to %s in %.2f s\n", files,
                  manifest.out_dir.c_str(), seconds);
      return 0;
    }
    if (info_cmd->parsed()) {
      cofrag::RunManifest manifest = resolve_manifest(preset, config_path);
      collect_overrides();
      cofrag::apply_overrides(manifest, overrides);
      std::cout << cofrag::manifest_text(manifest);
      return 0;
    }
    if (check_cmd->parsed()) {
      const bool ok = cofrag::run_checks(seed_set ? seed : 12345, std::cout);
      return ok ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
