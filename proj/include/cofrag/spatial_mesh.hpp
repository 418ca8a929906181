#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace cofrag {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

enum class BcType { Neumann, Dirichlet };

// Prescribed boundary density for Dirichlet edges, evaluated at the edge
// midpoint and a size coordinate.
struct BoundaryProfile {
  std::string name;
  std::function<double(Vec2 midpoint, double size)> value;
};

struct MeshCell {
  double measure = 0.0;  // area
  Vec2 center;
};

// Two-point interior edge between cells `left` and `right`. tau is the
// transmissibility m(sigma)/dist(x_K, x_L).
struct InteriorEdge {
  int left = -1;
  int right = -1;
  double measure = 0.0;
  double tau = 0.0;
  double dist_centers = 0.0;
  double dist_left = 0.0;   // dist(x_left, sigma)
  double dist_right = 0.0;  // dist(x_right, sigma)
};

// Boundary edge of cell `cell`. tau uses the center-to-edge distance.
struct BoundaryEdge {
  int cell = -1;
  double measure = 0.0;
  double tau = 0.0;
  Vec2 midpoint;
  BcType bc = BcType::Neumann;
  std::shared_ptr<const BoundaryProfile> profile;  // Dirichlet only
};

// Present when the mesh was produced by the Cartesian builder; enables
// row-wise post-processing.
struct CartesianLayout {
  int nx = 0;
  int ny = 0;
  double x_min = 0.0, x_max = 0.0;
  double y_min = 0.0, y_max = 0.0;
  double dx = 0.0;
  double dy = 0.0;
};

// Admissible polygonal finite-volume mesh: cell measures/centers, interior
// edges with transmissibilities and boundary edges with condition tags.
// Immutable after construction and tagging.
struct SpatialMesh {
  std::vector<MeshCell> cells;
  std::vector<InteriorEdge> interior_edges;
  std::vector<BoundaryEdge> boundary_edges;
  std::optional<CartesianLayout> cartesian;

  int n_cells() const { return static_cast<int>(cells.size()); }
  double total_measure() const;
  double perimeter() const;
  bool all_neumann() const;
};

// Uniform rectangle grid on (x_min,x_max) x (y_min,y_max), row-major cell
// ordering (x varies fastest). All boundary edges default to Neumann.
// Throws ConfigError on degenerate extents or if the measured regularity
// falls below min_regularity.
SpatialMesh build_cartesian_mesh(double x_min, double x_max, double y_min,
                                 double y_max, int nx, int ny,
                                 double min_regularity = 0.1);

// Retags boundary edges whose midpoint satisfies the selector; returns the
// number of matched edges. Zero matches is legal.
std::size_t tag_boundary(SpatialMesh& mesh,
                         const std::function<bool(Vec2)>& selector, BcType bc,
                         std::shared_ptr<const BoundaryProfile> profile = {});

// Largest xi with dist(x_K, sigma) >= xi * dist(x_K, x_L) over all interior
// edges; 1 by convention when there are none.
double mesh_regularity(const SpatialMesh& mesh);

}  // namespace cofrag
