#pragma once

#include <functional>
#include <span>
#include <vector>

#include "cofrag/equilibrium.hpp"
#include "cofrag/state.hpp"

namespace cofrag {

enum class PositivityMode { StrictError, ClampAndCount };
enum class Integrator { ForwardEuler, Heun };

struct SimConfig {
  double dt = 0.002;
  double t_end = 1.0;
  int diag_every = 20;            // steps between diagnostics records
  std::vector<double> snapshot_times;
  double steady_tol = 1e-8;       // relative state change per unit time
  PositivityMode positivity = PositivityMode::StrictError;
  Integrator integrator = Integrator::ForwardEuler;
  bool track_entropy = false;     // needs a global equilibrium profile
};

struct DiagnosticsRecord {
  double t = 0.0;
  double m0 = 0.0, m1 = 0.0, m2 = 0.0, m3 = 0.0;
  double h_global = 0.0;     // H(f|M), NaN when entropy is not tracked
  double h_local = 0.0;      // H(f|M_loc)
  double h_locglobal = 0.0;  // H(M_loc|M)
  double dissipation = 0.0;  // NaN when entropy is not tracked
  double mass_residual = 0.0;  // (m1 - m1(0)) / max(|m1(0)|, eps)
  double min_f = 0.0;
  long clamp_count = 0;  // cumulative positivity clamps
};

struct Moments {
  double m0 = 0.0, m1 = 0.0, m2 = 0.0, m3 = 0.0;
};

// Size-cell weight used by moments and projections. Edge is the conserved
// weight and the default everywhere; Center exists for convergence studies.
enum class SizeWeight { Edge, Center };

// Space-integrated moments, m_p = sum_{K,i} m(K) dy w_i^p f[K][i] with
// w_i the selected size weight (w^0 counts as 1 even at w = 0).
Moments moments(const State& state, SizeWeight weight = SizeWeight::Edge);

// Semi-discrete right-hand side: diffusion_apply / m(K) + Q_classical per
// spatial cell.
std::vector<double> rhs(const State& state, const KernelTables& tables);
void rhs_into(const State& state, const KernelTables& tables,
              std::span<double> out);

// One explicit step. Returns max |f_new - f_old| / (dt (1 + |f_old|)), the
// steady-state rate metric. In strict mode a negative entry throws
// PositivityError (with a hint to reduce dt); in clamp mode negatives are
// zeroed and counted into *clamp_count.
double step(State& state, const KernelTables& tables, const SimConfig& cfg,
            long* clamp_count);

// Relative entropy sum_{K,i} m(K) dy [f (ln(f/M) - 1) + M], with the
// convention that f = 0 contributes M. The reference spans either one size
// row (profile shared by all cells) or the full n_cells * n_size array.
// Throws std::domain_error when the reference vanishes where f > 0.
double relative_entropy(const State& state, std::span<const double> reference);
double relative_entropy_rows(const SpatialMesh& mesh, const SizeGrid& grid,
                             std::span<const double> f,
                             std::span<const double> reference);

struct RunResult {
  State final_state;
  std::vector<DiagnosticsRecord> records;
  bool reached_steady = false;
  double final_time = 0.0;
  long total_clamped = 0;
};

using SnapshotCallback = std::function<void(double t, const State& state)>;

// Steps until t_end or until the rate metric falls below steady_tol.
// Diagnostics are recorded at t = 0, every diag_every steps and at the end;
// snapshots fire at the first step boundary reaching each requested time.
// global_eq enables the entropy/dissipation columns; on all-Neumann meshes
// every unclamped step asserts exact volume conservation.
RunResult run(const State& initial, const KernelTables& tables,
              const SimConfig& cfg,
              const EquilibriumProfile* global_eq = nullptr,
              const SnapshotCallback& on_snapshot = {});

}  // namespace cofrag
