#pragma once

#include <span>
#include <vector>

#include "cofrag/size_grid.hpp"

namespace cofrag {

// Discrete coagulation-fragmentation operator on a single size row (the
// densities of one spatial cell). All functions are pure; rows for distinct
// spatial cells may be evaluated concurrently.

// Coagulation flux through the size-cell edges. Entry i+1 holds
//   sum_{j=0..i} sum_{l=i+1..n-1} dy^2 * edge(j) * a(j,l-j) * f[j] * f[l-j],
// entries 0 and n are the zero boundary fluxes. Length n+1.
std::vector<double> coag_flux(std::span<const double> f,
                              const KernelTables& tables,
                              const SizeGrid& grid);

// Fragmentation flux, same layout with summand dy^2 * edge(j) * b(j,l-j) * f[l].
std::vector<double> frag_flux(std::span<const double> f,
                              const KernelTables& tables,
                              const SizeGrid& grid);

// Classical form of the operator,
//   Q[i] = 1/2 sum_{j=0..i} dy (a(j,i-j) f[j] f[i-j] - b(j,i-j) f[i])
//        -     sum_{j=i..n-1} dy (a(i,j-i) f[i] f[j-i] - b(i,j-i) f[j]),
// well defined for every i including 0. This is the form the integrator uses.
std::vector<double> q_classical(std::span<const double> f,
                                const KernelTables& tables,
                                const SizeGrid& grid);

// Adds Q onto out (no allocation); out must have length n.
void q_classical_add(std::span<const double> f, const KernelTables& tables,
                     const SizeGrid& grid, std::span<double> out);

// Divided-difference form -(dC + dF)/(edge(i) dy) from precomputed fluxes.
// The denominator vanishes at i = 0: entry 0 is quiet NaN and must not be
// used (take q_classical there). Kept as a cross-check of the flux form.
std::vector<double> q_from_fluxes(std::span<const double> coag,
                                  std::span<const double> frag,
                                  const SizeGrid& grid);

// Scalar variant; throws std::logic_error for i = 0.
double q_from_fluxes_at(std::span<const double> coag,
                        std::span<const double> frag, const SizeGrid& grid,
                        int i);

// Right-hand side of the discrete weak formulation,
//   -1/2 sum_{i=0..n-1} sum_{l=0..i} dy^2
//        (a(l,i-l) f[l] f[i-l] - b(l,i-l) f[i]) (phi[l] + phi[i-l] - phi[i]).
// Equals sum_i dy * Q[i] * phi[i] for any phi.
double weak_form(std::span<const double> f, const KernelTables& tables,
                 const SizeGrid& grid, std::span<const double> phi);

struct DissipationResult {
  double value = 0.0;   // sum over i, l<=i of dy^2 (p-q) ln(p/q), each term >= 0
  long clamped = 0;     // terms where exactly one of p, q was zero
};

// Entropy dissipation of one row (without the spatial cell measure). Terms
// with p = q contribute zero; when exactly one of p, q vanishes the log
// argument is floored at 1e-300 and the term counted in `clamped`.
DissipationResult dissipation(std::span<const double> f,
                              const KernelTables& tables,
                              const SizeGrid& grid);

}  // namespace cofrag
