#include "cofrag/io.hpp"

#include <cstdio>
#include <fstream>

#include "cofrag/errors.hpp"

namespace cofrag {

std::string format_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::ofstream open_for_write(const std::filesystem::path& path) {
  if (path.has_parent_path())
    std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);  // binary keeps LF endings
  if (!out)
    throw std::runtime_error("io: cannot open '" + path.string() +
                             "' for writing");
  return out;
}

}  // namespace

void write_diagnostics(const std::vector<DiagnosticsRecord>& records,
                       const std::filesystem::path& path) {
  std::ofstream out = open_for_write(path);
  out << "t,m0,m1,m2,m3,h_global,h_local,h_locglobal,dissipation,"
         "mass_residual,min_f,clamp_count\n";
  for (const auto& r : records) {
    out << format_full(r.t) << ',' << format_full(r.m0) << ','
        << format_full(r.m1) << ',' << format_full(r.m2) << ','
        << format_full(r.m3) << ',' << format_full(r.h_global) << ','
        << format_full(r.h_local) << ',' << format_full(r.h_locglobal) << ','
        << format_full(r.dissipation) << ',' << format_full(r.mass_residual)
        << ',' << format_full(r.min_f) << ',' << r.clamp_count << '\n';
  }
}

void write_field_snapshot(const SpatialMesh& mesh,
                          std::span<const double> values,
                          const std::filesystem::path& path) {
  if (values.size() != mesh.cells.size())
    throw std::invalid_argument("io: field size does not match the mesh");
  std::ofstream out = open_for_write(path);
  out << "x1,x2,value\n";
  for (std::size_t k = 0; k < mesh.cells.size(); ++k) {
    const auto& c = mesh.cells[k];
    out << format_full(c.center.x) << ',' << format_full(c.center.y) << ','
        << format_full(values[k]) << '\n';
  }
}

void write_projection_snapshot(const ProjectionTable& table,
                               const SizeGrid& grid,
                               const std::filesystem::path& path) {
  std::ofstream out = open_for_write(path);
  out << "x2,y,value\n";
  for (int r = 0; r < table.n_rows; ++r) {
    for (int i = 0; i < table.n_size; ++i) {
      out << format_full(table.x2_centers[static_cast<std::size_t>(r)]) << ','
          << format_full(grid.center(i)) << ',' << format_full(table.at(r, i))
          << '\n';
    }
  }
}

void write_manifest(const RunManifest& manifest,
                    const std::filesystem::path& path) {
  std::ofstream out = open_for_write(path);
  out << manifest_text(manifest);
}

}  // namespace cofrag
