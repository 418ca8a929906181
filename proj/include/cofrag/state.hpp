#pragma once

#include <span>
#include <vector>

#include "cofrag/size_grid.hpp"
#include "cofrag/spatial_mesh.hpp"

namespace cofrag {

// Density f[cell][size], row-major, conforming to a mesh and size grid that
// must outlive the state.
struct State {
  const SpatialMesh* mesh = nullptr;
  const SizeGrid* grid = nullptr;
  std::vector<double> f;

  State() = default;
  State(const SpatialMesh& m, const SizeGrid& g)
      : mesh(&m), grid(&g),
        f(static_cast<std::size_t>(m.n_cells()) *
              static_cast<std::size_t>(g.n_size),
          0.0) {}

  int n_cells() const { return mesh->n_cells(); }
  int n_size() const { return grid->n_size; }

  double& at(int cell, int i) {
    return f[static_cast<std::size_t>(cell) *
                 static_cast<std::size_t>(grid->n_size) +
             static_cast<std::size_t>(i)];
  }
  double at(int cell, int i) const {
    return f[static_cast<std::size_t>(cell) *
                 static_cast<std::size_t>(grid->n_size) +
             static_cast<std::size_t>(i)];
  }
  std::span<double> row(int cell) {
    return {f.data() + static_cast<std::size_t>(cell) *
                           static_cast<std::size_t>(grid->n_size),
            static_cast<std::size_t>(grid->n_size)};
  }
  std::span<const double> row(int cell) const {
    return {f.data() + static_cast<std::size_t>(cell) *
                           static_cast<std::size_t>(grid->n_size),
            static_cast<std::size_t>(grid->n_size)};
  }
};

}  // namespace cofrag
