#include "cofrag/spatial_mesh.hpp"

#include <cmath>
#include <string>

#include "cofrag/errors.hpp"

namespace cofrag {

double SpatialMesh::total_measure() const {
  double sum = 0.0;
  for (const auto& c : cells) sum += c.measure;
  return sum;
}

double SpatialMesh::perimeter() const {
  double sum = 0.0;
  for (const auto& e : boundary_edges) sum += e.measure;
  return sum;
}

bool SpatialMesh::all_neumann() const {
  for (const auto& e : boundary_edges)
    if (e.bc != BcType::Neumann) return false;
  return true;
}

SpatialMesh build_cartesian_mesh(double x_min, double x_max, double y_min,
                                 double y_max, int nx, int ny,
                                 double min_regularity) {
  if (!(x_max > x_min) || !(y_max > y_min))
    throw ConfigError("mesh: degenerate extents");
  if (nx < 1 || ny < 1)
    throw ConfigError("mesh: nx and ny must be at least 1");

  const double dx = (x_max - x_min) / nx;
  const double dy = (y_max - y_min) / ny;

  SpatialMesh m;
  m.cartesian = CartesianLayout{nx, ny, x_min, x_max, y_min, y_max, dx, dy};
  m.cells.reserve(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny));
  for (int iy = 0; iy < ny; ++iy) {
    for (int ix = 0; ix < nx; ++ix) {
      MeshCell c;
      c.measure = dx * dy;
      c.center = {x_min + (ix + 0.5) * dx, y_min + (iy + 0.5) * dy};
      m.cells.push_back(c);
    }
  }
  auto cell_index = [nx](int ix, int iy) { return iy * nx + ix; };

  // Interior edges: vertical (x-neighbors) first, then horizontal, both in
  // row-major order.
  for (int iy = 0; iy < ny; ++iy) {
    for (int ix = 0; ix + 1 < nx; ++ix) {
      InteriorEdge e;
      e.left = cell_index(ix, iy);
      e.right = cell_index(ix + 1, iy);
      e.measure = dy;
      e.dist_centers = dx;
      e.dist_left = 0.5 * dx;
      e.dist_right = 0.5 * dx;
      e.tau = e.measure / e.dist_centers;
      m.interior_edges.push_back(e);
    }
  }
  for (int iy = 0; iy + 1 < ny; ++iy) {
    for (int ix = 0; ix < nx; ++ix) {
      InteriorEdge e;
      e.left = cell_index(ix, iy);
      e.right = cell_index(ix, iy + 1);
      e.measure = dx;
      e.dist_centers = dy;
      e.dist_left = 0.5 * dy;
      e.dist_right = 0.5 * dy;
      e.tau = e.measure / e.dist_centers;
      m.interior_edges.push_back(e);
    }
  }

  // Boundary edges: left, right, bottom, top walls.
  auto add_boundary = [&m](int cell, double measure, double dist,
                           Vec2 midpoint) {
    BoundaryEdge e;
    e.cell = cell;
    e.measure = measure;
    e.tau = measure / dist;
    e.midpoint = midpoint;
    m.boundary_edges.push_back(e);
  };
  for (int iy = 0; iy < ny; ++iy)
    add_boundary(cell_index(0, iy), dy, 0.5 * dx,
                 {x_min, y_min + (iy + 0.5) * dy});
  for (int iy = 0; iy < ny; ++iy)
    add_boundary(cell_index(nx - 1, iy), dy, 0.5 * dx,
                 {x_max, y_min + (iy + 0.5) * dy});
  for (int ix = 0; ix < nx; ++ix)
    add_boundary(cell_index(ix, 0), dx, 0.5 * dy,
                 {x_min + (ix + 0.5) * dx, y_min});
  for (int ix = 0; ix < nx; ++ix)
    add_boundary(cell_index(ix, ny - 1), dx, 0.5 * dy,
                 {x_min + (ix + 0.5) * dx, y_max});

  const double area = (x_max - x_min) * (y_max - y_min);
  if (std::abs(m.total_measure() - area) > 1e-12 * area)
    throw ConfigError("mesh: cell measures do not sum to the domain area");
  const double xi = mesh_regularity(m);
  if (xi < min_regularity)
    throw ConfigError("mesh: regularity " + std::to_string(xi) +
                      " below required minimum " +
                      std::to_string(min_regularity));
  return m;
}

std::size_t tag_boundary(SpatialMesh& mesh,
                         const std::function<bool(Vec2)>& selector, BcType bc,
                         std::shared_ptr<const BoundaryProfile> profile) {
  if (bc == BcType::Dirichlet && !profile)
    throw ConfigError("tag_boundary: Dirichlet requires a boundary profile");
  std::size_t count = 0;
  for (auto& e : mesh.boundary_edges) {
    if (!selector(e.midpoint)) continue;
    e.bc = bc;
    e.profile = (bc == BcType::Dirichlet) ? profile : nullptr;
    ++count;
  }
  return count;
}

double mesh_regularity(const SpatialMesh& mesh) {
  double xi = 1.0;
  for (const auto& e : mesh.interior_edges) {
    xi = std::min(xi, e.dist_left / e.dist_centers);
    xi = std::min(xi, e.dist_right / e.dist_centers);
  }
  return xi;
}

}  // namespace cofrag
