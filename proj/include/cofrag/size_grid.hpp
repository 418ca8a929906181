#pragma once

#include <functional>
#include <vector>

namespace cofrag {

// Uniform partition of the size interval (0, R) into n_size cells.
// Edge i sits at i*dy, cell i is [edge(i), edge(i+1)) with center (i+1/2)*dy.
struct SizeGrid {
  double radius = 0.0;  // truncation radius R
  int n_size = 0;       // number of size cells
  double dy = 0.0;      // R / n_size
  std::vector<double> edges;    // n_size + 1 entries
  std::vector<double> centers;  // n_size entries

  double edge(int i) const { return edges[static_cast<std::size_t>(i)]; }
  double center(int i) const { return centers[static_cast<std::size_t>(i)]; }
};

// Symmetric rate function of two sizes (coagulation or fragmentation).
using RateFn = std::function<double(double, double)>;
// Diffusion coefficient as a function of size.
using DiffusionFn = std::function<double(double)>;

// Precomputed rate tables on the size grid. a and b are sampled at cell
// centers and stored dense row-major; d is sampled at the lower cell edges,
// except d[0] which uses dy/2 to avoid evaluating at size zero.
struct KernelTables {
  int n = 0;
  std::vector<double> a;  // n*n, a(center_i, center_j)
  std::vector<double> b;  // n*n
  std::vector<double> d;  // n

  double a_at(int i, int j) const {
    return a[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
             static_cast<std::size_t>(j)];
  }
  double b_at(int i, int j) const {
    return b[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
             static_cast<std::size_t>(j)];
  }
};

SizeGrid build_size_grid(double radius, int n_size);

// Evaluates the rate tables, symmetrizes them as (v + v^T)/2 and rejects
// asymmetries above 1e-12 relative, negative or non-finite entries.
KernelTables build_kernel_tables(const SizeGrid& grid, const RateFn& a_fn,
                                 const RateFn& b_fn, const DiffusionFn& d_fn);

}  // namespace cofrag
