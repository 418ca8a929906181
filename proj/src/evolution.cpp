#include "cofrag/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>

#include "cofrag/cf_kernel.hpp"
#include "cofrag/diffusion.hpp"
#include "cofrag/errors.hpp"
#include "cofrag/parallel.hpp"

namespace cofrag {

Moments moments(const State& state, SizeWeight weight) {
  const int n = state.n_size();
  const double dy = state.grid->dy;
  Moments m;
  for (int k = 0; k < state.n_cells(); ++k) {
    const auto row = state.row(k);
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    for (int i = 0; i < n; ++i) {
      const double w = weight == SizeWeight::Edge ? state.grid->edge(i)
                                                  : state.grid->center(i);
      const double fi = row[static_cast<std::size_t>(i)];
      s0 += fi;
      s1 += w * fi;
      s2 += w * w * fi;
      s3 += w * w * w * fi;
    }
    const double scale =
        state.mesh->cells[static_cast<std::size_t>(k)].measure * dy;
    m.m0 += scale * s0;
    m.m1 += scale * s1;
    m.m2 += scale * s2;
    m.m3 += scale * s3;
  }
  return m;
}

void rhs_into(const State& state, const KernelTables& tables,
              std::span<double> out) {
  const int n = state.n_size();
  diffusion_apply_into(state, tables, out);
  parallel_for(0, state.n_cells(), [&](int k) {
    double* dst = out.data() +
                  static_cast<std::size_t>(k) * static_cast<std::size_t>(n);
    const double inv_measure =
        1.0 / state.mesh->cells[static_cast<std::size_t>(k)].measure;
    for (int i = 0; i < n; ++i) dst[i] *= inv_measure;
    q_classical_add(state.row(k), tables, *state.grid,
                    {dst, static_cast<std::size_t>(n)});
  });
}

std::vector<double> rhs(const State& state, const KernelTables& tables) {
  std::vector<double> out(state.f.size());
  rhs_into(state, tables, out);
  return out;
}

namespace {

// Applies f += dt * increment with positivity handling; returns the steady
// rate metric max |f_new - f_old| / (dt (1 + |f_old|)).
double apply_update(State& state, std::span<const double> increment, double dt,
                    PositivityMode mode, long* clamp_count) {
  double rate = 0.0;
  const std::size_t total = state.f.size();
  for (std::size_t idx = 0; idx < total; ++idx) {
    const double old = state.f[idx];
    double next = old + dt * increment[idx];
    if (!std::isfinite(next))
      throw std::runtime_error("step: non-finite state entry " +
                               std::to_string(idx));
    if (next < 0.0) {
      if (mode == PositivityMode::StrictError) {
        const int n = state.n_size();
        throw PositivityError(
            "step: negative density " + std::to_string(next) + " at cell " +
            std::to_string(idx / static_cast<std::size_t>(n)) +
            ", size index " + std::to_string(idx % static_cast<std::size_t>(n)) +
            "; reduce dt below the stability bound");
      }
      next = 0.0;
      if (clamp_count) ++(*clamp_count);
    }
    if (dt > 0.0)
      rate = std::max(rate, std::abs(next - old) / (dt * (1.0 + std::abs(old))));
    state.f[idx] = next;
  }
  return rate;
}

struct StepBuffers {
  std::vector<double> k1;
  std::vector<double> k2;
  State stage;
};

double step_with(State& state, const KernelTables& tables,
                 const SimConfig& cfg, long* clamp_count, StepBuffers& buf) {
  buf.k1.resize(state.f.size());
  rhs_into(state, tables, buf.k1);
  if (cfg.integrator == Integrator::ForwardEuler)
    return apply_update(state, buf.k1, cfg.dt, cfg.positivity, clamp_count);

  // Heun: full Euler predictor, then average the two slopes.
  buf.k2.resize(state.f.size());
  buf.stage = state;
  for (std::size_t i = 0; i < state.f.size(); ++i)
    buf.stage.f[i] = state.f[i] + cfg.dt * buf.k1[i];
  rhs_into(buf.stage, tables, buf.k2);
  for (std::size_t i = 0; i < buf.k1.size(); ++i)
    buf.k1[i] = 0.5 * (buf.k1[i] + buf.k2[i]);
  return apply_update(state, buf.k1, cfg.dt, cfg.positivity, clamp_count);
}

}  // namespace

double step(State& state, const KernelTables& tables, const SimConfig& cfg,
            long* clamp_count) {
  StepBuffers buf;
  return step_with(state, tables, cfg, clamp_count, buf);
}

double relative_entropy_rows(const SpatialMesh& mesh, const SizeGrid& grid,
                             std::span<const double> f,
                             std::span<const double> reference) {
  const int n = grid.n_size;
  const std::size_t n_cells = f.size() / static_cast<std::size_t>(n);
  const bool per_cell = reference.size() == f.size();
  if (!per_cell && reference.size() != static_cast<std::size_t>(n))
    throw std::invalid_argument(
        "relative_entropy: reference must span one size row or the full "
        "state");
  double sum = 0.0;
  for (std::size_t k = 0; k < n_cells; ++k) {
    const double* fr = f.data() + k * static_cast<std::size_t>(n);
    const double* mr = per_cell
                           ? reference.data() + k * static_cast<std::size_t>(n)
                           : reference.data();
    double cell = 0.0;
    for (int i = 0; i < n; ++i) {
      const double fi = fr[i];
      const double mi = mr[i];
      if (fi <= 0.0) {
        cell += mi;  // limit of f (ln(f/M) - 1) + M as f -> 0
        continue;
      }
      if (mi <= 0.0)
        throw std::domain_error(
            "relative_entropy: reference vanishes where the state is "
            "positive (cell " +
            std::to_string(k) + ", size index " + std::to_string(i) + ")");
      cell += fi * (std::log(fi / mi) - 1.0) + mi;
    }
    sum += mesh.cells[k].measure * grid.dy * cell;
  }
  return sum;
}

double relative_entropy(const State& state,
                        std::span<const double> reference) {
  return relative_entropy_rows(*state.mesh, *state.grid, state.f, reference);
}

namespace {

double min_entry(const State& state) {
  double m = std::numeric_limits<double>::infinity();
  for (const double v : state.f) m = std::min(m, v);
  return m;
}

// Explicit stability heuristic: fastest loss rate over (K,i) from diffusion,
// coagulation with the current densities, and fragmentation.
double dt_stability_estimate(const State& state, const KernelTables& tables) {
  const int n = state.n_size();
  const double dy = state.grid->dy;
  std::vector<double> tau_sum(static_cast<std::size_t>(state.n_cells()), 0.0);
  for (const auto& e : state.mesh->interior_edges) {
    tau_sum[static_cast<std::size_t>(e.left)] += e.tau;
    tau_sum[static_cast<std::size_t>(e.right)] += e.tau;
  }
  for (const auto& e : state.mesh->boundary_edges)
    if (e.bc == BcType::Dirichlet)
      tau_sum[static_cast<std::size_t>(e.cell)] += e.tau;

  std::vector<double> frag_loss(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int j = 0; j <= i; ++j) s += tables.b_at(j, i - j);
    frag_loss[static_cast<std::size_t>(i)] = 0.5 * dy * s;
  }

  double max_rate = 0.0;
  for (int k = 0; k < state.n_cells(); ++k) {
    const auto row = state.row(k);
    const double geom =
        tau_sum[static_cast<std::size_t>(k)] /
        state.mesh->cells[static_cast<std::size_t>(k)].measure;
    for (int i = 0; i < n; ++i) {
      double coag = 0.0;
      for (int j = 0; j + i < n; ++j)
        coag += tables.a_at(i, j) * row[static_cast<std::size_t>(j)];
      const double rate = tables.d[static_cast<std::size_t>(i)] * geom +
                          dy * coag + frag_loss[static_cast<std::size_t>(i)];
      max_rate = std::max(max_rate, rate);
    }
  }
  return max_rate > 0.0 ? 1.0 / max_rate : std::numeric_limits<double>::infinity();
}

}  // namespace

RunResult run(const State& initial, const KernelTables& tables,
              const SimConfig& cfg, const EquilibriumProfile* global_eq,
              const SnapshotCallback& on_snapshot) {
  if (!(cfg.dt > 0.0) || !(cfg.t_end > 0.0) || cfg.diag_every < 1 ||
      !(cfg.steady_tol > 0.0))
    throw ConfigError("run: dt, t_end, diag_every and steady_tol must be "
                      "positive");
  if (cfg.track_entropy && global_eq == nullptr)
    throw ConfigError("run: entropy tracking needs a global equilibrium");

  RunResult result;
  result.final_state = initial;
  State& state = result.final_state;
  const double m1_initial = discrete_volume(state);
  const bool check_volume = state.mesh->all_neumann();

  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> cell_dissipation(
      static_cast<std::size_t>(state.n_cells()));
  auto make_record = [&](double t) {
    DiagnosticsRecord rec;
    rec.t = t;
    const Moments m = moments(state);
    rec.m0 = m.m0;
    rec.m1 = m.m1;
    rec.m2 = m.m2;
    rec.m3 = m.m3;
    rec.mass_residual =
        (m.m1 - m1_initial) / std::max(std::abs(m1_initial), 1e-300);
    rec.min_f = min_entry(state);
    rec.clamp_count = result.total_clamped;
    if (cfg.track_entropy && global_eq) {
      rec.h_global = relative_entropy(state, global_eq->M);
      const std::vector<double> mloc = local_equilibrium(state, *state.grid);
      rec.h_local =
          relative_entropy_rows(*state.mesh, *state.grid, state.f, mloc);
      rec.h_locglobal =
          relative_entropy_rows(*state.mesh, *state.grid, mloc, global_eq->M);
      parallel_for(0, state.n_cells(), [&](int k) {
        cell_dissipation[static_cast<std::size_t>(k)] =
            dissipation(state.row(k), tables, *state.grid).value;
      });
      double d = 0.0;
      for (int k = 0; k < state.n_cells(); ++k)
        d += state.mesh->cells[static_cast<std::size_t>(k)].measure *
             cell_dissipation[static_cast<std::size_t>(k)];
      rec.dissipation = 0.5 * d;
    } else {
      rec.h_global = nan;
      rec.h_local = nan;
      rec.h_locglobal = nan;
      rec.dissipation = nan;
    }
    result.records.push_back(rec);
  };

  std::vector<double> snapshot_times = cfg.snapshot_times;
  std::sort(snapshot_times.begin(), snapshot_times.end());
  std::size_t next_snapshot = 0;
  auto fire_snapshots = [&](double t) {
    while (next_snapshot < snapshot_times.size() &&
           t >= snapshot_times[next_snapshot] - 1e-9) {
      if (on_snapshot) on_snapshot(t, state);
      ++next_snapshot;
    }
  };

  double dt_max = dt_stability_estimate(state, tables);
  if (cfg.dt > dt_max)
    std::fprintf(stderr,
                 "warning: dt=%g exceeds the stability estimate %g\n", cfg.dt,
                 dt_max);

  make_record(0.0);
  fire_snapshots(0.0);

  const long n_steps = static_cast<long>(std::floor(cfg.t_end / cfg.dt + 1e-9));
  StepBuffers buf;
  double t = 0.0;
  double m1_prev = m1_initial;
  long last_recorded = 0;
  for (long n = 1; n <= n_steps; ++n) {
    long clamped_before = result.total_clamped;
    const double rate =
        step_with(state, tables, cfg, &result.total_clamped, buf);
    t = static_cast<double>(n) * cfg.dt;

    if (check_volume && result.total_clamped == clamped_before) {
      const double m1_now = discrete_volume(state);
      if (std::abs(m1_now - m1_prev) > 1e-12 * std::abs(m1_initial))
        throw std::runtime_error(
            "run: discrete volume drifted within one step (" +
            std::to_string(m1_prev) + " -> " + std::to_string(m1_now) + ")");
      m1_prev = m1_now;
    } else if (check_volume) {
      m1_prev = discrete_volume(state);
    }

    fire_snapshots(t);

    if (rate < cfg.steady_tol) {
      make_record(t);
      last_recorded = n;
      result.reached_steady = true;
      break;
    }
    if (n % cfg.diag_every == 0) {
      make_record(t);
      last_recorded = n;
      dt_max = dt_stability_estimate(state, tables);
      if (cfg.dt > dt_max)
        std::fprintf(stderr,
                     "warning: dt=%g exceeds the stability estimate %g at "
                     "t=%g\n",
                     cfg.dt, dt_max, t);
    }
  }
  if (!result.reached_steady && n_steps > 0 && last_recorded != n_steps)
    make_record(t);
  result.final_time = t;
  return result;
}

}  // namespace cofrag
