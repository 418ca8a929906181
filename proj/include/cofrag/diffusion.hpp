#pragma once

#include <span>
#include <vector>

#include "cofrag/state.hpp"

namespace cofrag {

// Two-point-flux diffusion operator. Output entry (K,i) is
//   d[i] * sum_{edges of K} tau * D,
// with D = f_L - f_K on interior edges, D = 0 on Neumann boundary edges and
// D = g - f_K on Dirichlet boundary edges (g sampled at the edge midpoint
// and size-cell center). The result is not divided by the cell measure; the
// integrator does that.
std::vector<double> diffusion_apply(const State& state,
                                    const KernelTables& tables);

// In-place variant writing into out (length n_cells * n_size).
void diffusion_apply_into(const State& state, const KernelTables& tables,
                          std::span<double> out);

// Spatial contribution to the entropy balance,
//   dy * sum_{K,i} sum_{edges of K} d[i] tau D ln(f_K / M_i),
// summed over interior edges (terms with f_K <= 0 contribute zero). On
// all-Neumann meshes this is nonpositive: the two sides of each edge combine
// into -(f_K - f_L)^2 / logmean(f_K, f_L) times d tau dy.
double diffusion_entropy_flux(const State& state, const KernelTables& tables,
                              std::span<const double> reference);

}  // namespace cofrag
