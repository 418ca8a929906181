#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "cofrag/config.hpp"
#include "cofrag/diagnostics.hpp"
#include "cofrag/evolution.hpp"

namespace cofrag {

// Full-precision decimal rendering (17 significant digits) so identical runs
// produce identical bytes.
std::string format_full(double v);

// CSV with one header row
// (t,m0,m1,m2,m3,h_global,h_local,h_locglobal,dissipation,mass_residual,
//  min_f,clamp_count), LF line endings.
void write_diagnostics(const std::vector<DiagnosticsRecord>& records,
                       const std::filesystem::path& path);

// Per-cell field as (x1,x2,value) rows in mesh cell order.
void write_field_snapshot(const SpatialMesh& mesh,
                          std::span<const double> values,
                          const std::filesystem::path& path);

// Projection table as (x2,y,value) rows, y at size-cell centers.
void write_projection_snapshot(const ProjectionTable& table,
                               const SizeGrid& grid,
                               const std::filesystem::path& path);

void write_manifest(const RunManifest& manifest,
                    const std::filesystem::path& path);

}  // namespace cofrag
