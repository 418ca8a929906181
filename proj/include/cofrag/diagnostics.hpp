#pragma once

#include <span>
#include <vector>

#include "cofrag/equilibrium.hpp"
#include "cofrag/evolution.hpp"
#include "cofrag/state.hpp"

namespace cofrag {

enum class EntropyField { Global, Local, LocGlobal };

struct DecayFit {
  double rate = 0.0;       // slope of ln(value) vs t, negative for decay
  double r_squared = 0.0;  // 1 by convention for a zero-variance target
};

// Least-squares line fit of ln(field) vs t over records with t in
// [t_begin, t_end]. Requires at least 3 usable records; nonpositive or
// non-finite values in the window throw std::domain_error.
DecayFit fit_decay_rate(const std::vector<DiagnosticsRecord>& records,
                        EntropyField field, double t_begin, double t_end);

// |H(f|M) - H(f|M_loc) - H(M_loc|M)| / (1 + H(f|M)), with M_loc rebuilt from
// the state. Reported, not asserted: the split identity carries a
// discretization residual.
double entropy_split_residual(const State& state,
                              const EquilibriumProfile& global_eq);

// Per-cell number and volume densities M0(x), M1(x).
struct SpatialFields {
  std::vector<double> m0;
  std::vector<double> m1;
};
SpatialFields spatial_fields(const State& state,
                             SizeWeight weight = SizeWeight::Edge);

// x1-line integral of y*f per x2-row and size cell:
//   P[r][i] = sum_{K in row r} m(K)/row_height * edge(i) * f[K][i].
// Requires a Cartesian mesh (throws UnsupportedError otherwise).
struct ProjectionTable {
  int n_rows = 0;
  int n_size = 0;
  double row_height = 0.0;
  std::vector<double> x2_centers;  // n_rows
  std::vector<double> p;           // n_rows * n_size, row-major

  double at(int r, int i) const {
    return p[static_cast<std::size_t>(r) * static_cast<std::size_t>(n_size) +
             static_cast<std::size_t>(i)];
  }
};
ProjectionTable projection_x2(const State& state,
                              SizeWeight weight = SizeWeight::Edge);

}  // namespace cofrag
