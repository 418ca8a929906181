#include "cofrag/size_grid.hpp"

#include <cmath>
#include <string>

#include "cofrag/errors.hpp"

namespace cofrag {

SizeGrid build_size_grid(double radius, int n_size) {
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw ConfigError("size grid: radius must be positive, got " +
                      std::to_string(radius));
  if (n_size < 2)
    throw ConfigError("size grid: need at least 2 size cells, got " +
                      std::to_string(n_size));

  SizeGrid g;
  g.radius = radius;
  g.n_size = n_size;
  g.dy = radius / n_size;
  g.edges.resize(static_cast<std::size_t>(n_size) + 1);
  g.centers.resize(static_cast<std::size_t>(n_size));
  for (int i = 0; i <= n_size; ++i)
    g.edges[static_cast<std::size_t>(i)] = i * g.dy;
  for (int i = 0; i < n_size; ++i)
    g.centers[static_cast<std::size_t>(i)] = (i + 0.5) * g.dy;
  return g;
}

KernelTables build_kernel_tables(const SizeGrid& grid, const RateFn& a_fn,
                                 const RateFn& b_fn, const DiffusionFn& d_fn) {
  const int n = grid.n_size;
  KernelTables t;
  t.n = n;
  t.a.resize(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  t.b.resize(t.a.size());
  t.d.resize(static_cast<std::size_t>(n));

  auto fill = [&](std::vector<double>& out, const RateFn& fn,
                  const char* name) {
    double max_abs = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const double v = fn(grid.center(i), grid.center(j));
        if (!std::isfinite(v) || v < 0.0)
          throw ConfigError(std::string("kernel table ") + name +
                            ": invalid value at (" + std::to_string(i) + "," +
                            std::to_string(j) + "): " + std::to_string(v));
        out[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
            static_cast<std::size_t>(j)] = v;
        max_abs = std::max(max_abs, v);
      }
    }
    // Symmetrize and reject anything beyond rounding-level asymmetry.
    double max_asym = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const std::size_t ij =
            static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
            static_cast<std::size_t>(j);
        const std::size_t ji =
            static_cast<std::size_t>(j) * static_cast<std::size_t>(n) +
            static_cast<std::size_t>(i);
        max_asym = std::max(max_asym, std::abs(out[ij] - out[ji]));
        const double sym = 0.5 * (out[ij] + out[ji]);
        out[ij] = sym;
        out[ji] = sym;
      }
    }
    if (max_asym > 1e-12 * std::max(max_abs, 1e-300))
      throw ConfigError(std::string("kernel table ") + name +
                        ": rate function is not symmetric (relative "
                        "asymmetry " +
                        std::to_string(max_asym / std::max(max_abs, 1e-300)) +
                        ")");
  };
  fill(t.a, a_fn, "a");
  fill(t.b, b_fn, "b");

  // Diffusion is sampled where the scheme uses it, the lower cell edge;
  // cell 0 uses dy/2 so d is never evaluated at size zero.
  for (int i = 0; i < n; ++i) {
    const double y = (i == 0) ? 0.5 * grid.dy : grid.edge(i);
    const double v = d_fn(y);
    if (!std::isfinite(v) || v < 0.0)
      throw ConfigError("diffusion table: invalid value at cell " +
                        std::to_string(i) + ": " + std::to_string(v));
    t.d[static_cast<std::size_t>(i)] = v;
  }
  return t;
}

}  // namespace cofrag
