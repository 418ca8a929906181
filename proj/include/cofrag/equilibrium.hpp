#pragma once

#include <functional>
#include <span>
#include <vector>

#include "cofrag/size_grid.hpp"
#include "cofrag/spatial_mesh.hpp"
#include "cofrag/state.hpp"

namespace cofrag {

// Detailed-balance equilibrium profile M[i] = exp(-alpha * edge(i)). Sampling
// at the lower cell edges makes a(l,i-l) M_l M_{i-l} = b(l,i-l) M_i exact for
// constant kernels, so the profile annihilates the discrete operator.
struct EquilibriumProfile {
  double alpha = 0.0;
  std::vector<double> M;
};

// The exactly conserved quantity sum_{K,i} m(K) dy edge(i) f[K][i].
double discrete_volume(const State& state);

// Volume of a single size row spread uniformly over a domain of the given
// measure: measure * dy * sum_i edge(i) * row[i].
double profile_volume(std::span<const double> row, const SizeGrid& grid,
                      double domain_measure);

EquilibriumProfile detailed_balance_profile(double alpha,
                                            const SizeGrid& grid);

// Maps an exponent to a candidate profile row; must be nonnegative and give
// a volume strictly decreasing in alpha. Must accept alpha = 0 (the volume
// supremum used for the feasibility check).
using ProfileForm = std::function<std::vector<double>(double alpha)>;

// Solves for alpha such that the profile volume over the mesh matches
// target_volume to 1e-12 relative, by geometric bracket growth from
// [1e-8, 1e8] followed by bisection (at most 200 steps). Throws
// InfeasibleError when target_volume is outside (0, V(alpha -> 0+)).
EquilibriumProfile solve_alpha(double target_volume, const SizeGrid& grid,
                               const SpatialMesh& mesh,
                               const ProfileForm& form);

// Overload using the detailed-balance exponential profile.
EquilibriumProfile solve_alpha(double target_volume, const SizeGrid& grid,
                               const SpatialMesh& mesh);

// Per-cell detailed-balance profiles matching each cell's local size volume
// v_K = dy sum_i edge(i) f[K][i]; cells with v_K = 0 get a zero row.
// Returns a flat n_cells * n_size array.
std::vector<double> local_equilibrium(const State& state,
                                      const SizeGrid& grid);

}  // namespace cofrag
