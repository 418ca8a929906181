#include "cofrag/equilibrium.hpp"

#include <cmath>
#include <string>

#include "cofrag/errors.hpp"
#include "cofrag/parallel.hpp"

namespace cofrag {

double discrete_volume(const State& state) {
  const int n = state.n_size();
  const double dy = state.grid->dy;
  double sum = 0.0;
  for (int k = 0; k < state.n_cells(); ++k) {
    const auto row = state.row(k);
    double cell = 0.0;
    for (int i = 0; i < n; ++i)
      cell += state.grid->edge(i) * row[static_cast<std::size_t>(i)];
    sum += state.mesh->cells[static_cast<std::size_t>(k)].measure * dy * cell;
  }
  return sum;
}

double profile_volume(std::span<const double> row, const SizeGrid& grid,
                      double domain_measure) {
  double sum = 0.0;
  for (int i = 0; i < grid.n_size; ++i)
    sum += grid.edge(i) * row[static_cast<std::size_t>(i)];
  return domain_measure * grid.dy * sum;
}

EquilibriumProfile detailed_balance_profile(double alpha,
                                            const SizeGrid& grid) {
  if (!(alpha > 0.0))
    throw ConfigError("detailed_balance_profile: alpha must be positive");
  EquilibriumProfile p;
  p.alpha = alpha;
  p.M.resize(static_cast<std::size_t>(grid.n_size));
  for (int i = 0; i < grid.n_size; ++i)
    p.M[static_cast<std::size_t>(i)] = std::exp(-alpha * grid.edge(i));
  return p;
}

namespace {

// Bisection for the alpha with volume(alpha) == target on a strictly
// decreasing volume map. Shared by the global and per-cell solves.
double solve_alpha_scalar(double target, const SizeGrid& grid,
                          double domain_measure, const ProfileForm& form) {
  auto volume_at = [&](double alpha) {
    return profile_volume(form(alpha), grid, domain_measure);
  };
  const double v_sup = volume_at(0.0);
  if (!(target > 0.0) || !(target < v_sup))
    throw InfeasibleError("solve_alpha: target volume " +
                          std::to_string(target) + " outside (0, " +
                          std::to_string(v_sup) + ")");

  double lo = 1e-8, hi = 1e8;
  // Grow the bracket geometrically until it straddles the target.
  while (volume_at(lo) < target) {
    lo *= 0.5;
    if (lo < 1e-280)
      throw InfeasibleError("solve_alpha: cannot bracket target from below");
  }
  while (volume_at(hi) > target) {
    hi *= 2.0;
    if (hi > 1e280)
      throw InfeasibleError("solve_alpha: cannot bracket target from above");
  }
  double alpha = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    alpha = 0.5 * (lo + hi);
    const double v = volume_at(alpha);
    if (std::abs(v - target) <= 1e-12 * target) break;
    if (v > target)
      lo = alpha;
    else
      hi = alpha;
  }
  return alpha;
}

}  // namespace

EquilibriumProfile solve_alpha(double target_volume, const SizeGrid& grid,
                               const SpatialMesh& mesh,
                               const ProfileForm& form) {
  const double alpha =
      solve_alpha_scalar(target_volume, grid, mesh.total_measure(), form);
  EquilibriumProfile p;
  p.alpha = alpha;
  p.M = form(alpha);
  return p;
}

EquilibriumProfile solve_alpha(double target_volume, const SizeGrid& grid,
                               const SpatialMesh& mesh) {
  ProfileForm db = [&grid](double alpha) {
    std::vector<double> row(static_cast<std::size_t>(grid.n_size));
    for (int i = 0; i < grid.n_size; ++i)
      row[static_cast<std::size_t>(i)] = std::exp(-alpha * grid.edge(i));
    return row;
  };
  return solve_alpha(target_volume, grid, mesh, db);
}

std::vector<double> local_equilibrium(const State& state,
                                      const SizeGrid& grid) {
  const int n = grid.n_size;
  const int n_cells = state.n_cells();
  std::vector<double> out(state.f.size(), 0.0);
  ProfileForm db = [&grid](double alpha) {
    std::vector<double> row(static_cast<std::size_t>(grid.n_size));
    for (int i = 0; i < grid.n_size; ++i)
      row[static_cast<std::size_t>(i)] = std::exp(-alpha * grid.edge(i));
    return row;
  };
  parallel_for(0, n_cells, [&](int k) {
    const auto row = state.row(k);
    double v = 0.0;
    for (int i = 0; i < n; ++i)
      v += grid.edge(i) * row[static_cast<std::size_t>(i)];
    v *= grid.dy;
    if (v <= 0.0) return;  // vacuum cell keeps the zero row
    const double alpha = solve_alpha_scalar(v, grid, 1.0, db);
    double* dst = out.data() +
                  static_cast<std::size_t>(k) * static_cast<std::size_t>(n);
    for (int i = 0; i < n; ++i) dst[i] = std::exp(-alpha * grid.edge(i));
  });
  return out;
}

}  // namespace cofrag
