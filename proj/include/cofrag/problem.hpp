#pragma once

#include <memory>
#include <optional>

#include "cofrag/config.hpp"
#include "cofrag/equilibrium.hpp"
#include "cofrag/state.hpp"

namespace cofrag {

// Simulation objects assembled from a manifest. Grid and mesh live on the
// heap so the state's back references stay valid when a Problem moves.
struct Problem {
  std::unique_ptr<SizeGrid> grid;
  std::unique_ptr<SpatialMesh> mesh;
  KernelTables tables;
  State initial;
  std::optional<EquilibriumProfile> global_eq;  // set when entropy is tracked
  SimConfig sim;
};

Problem build_problem(const RunManifest& manifest);

// Runs the simulation described by the manifest and writes manifest,
// diagnostics and snapshot files under manifest.out_dir. Returns the number
// of files written.
int run_to_files(const RunManifest& manifest);

}  // namespace cofrag
