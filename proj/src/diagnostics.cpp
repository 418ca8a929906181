#include "cofrag/diagnostics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "cofrag/errors.hpp"

namespace cofrag {

namespace {

double field_value(const DiagnosticsRecord& rec, EntropyField field) {
  switch (field) {
    case EntropyField::Global: return rec.h_global;
    case EntropyField::Local: return rec.h_local;
    case EntropyField::LocGlobal: return rec.h_locglobal;
  }
  return 0.0;
}

}  // namespace

DecayFit fit_decay_rate(const std::vector<DiagnosticsRecord>& records,
                        EntropyField field, double t_begin, double t_end) {
  std::vector<double> ts, logs;
  for (const auto& rec : records) {
    if (rec.t < t_begin || rec.t > t_end) continue;
    const double v = field_value(rec, field);
    if (!(v > 0.0) || !std::isfinite(v))
      throw std::domain_error(
          "fit_decay_rate: nonpositive value " + std::to_string(v) + " at t=" +
          std::to_string(rec.t) + "; shrink the fit window");
    ts.push_back(rec.t);
    logs.push_back(std::log(v));
  }
  if (ts.size() < 3)
    throw std::domain_error("fit_decay_rate: need at least 3 records in the "
                            "window, found " +
                            std::to_string(ts.size()));

  const double n = static_cast<double>(ts.size());
  double mean_t = 0.0, mean_y = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    mean_t += ts[i];
    mean_y += logs[i];
  }
  mean_t /= n;
  mean_y /= n;
  double stt = 0.0, sty = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double dt = ts[i] - mean_t;
    const double dv = logs[i] - mean_y;
    stt += dt * dt;
    sty += dt * dv;
    syy += dv * dv;
  }
  DecayFit fit;
  fit.rate = (stt > 0.0) ? sty / stt : 0.0;
  if (syy <= 0.0) {
    fit.r_squared = 1.0;  // constant target: any line through it is exact
  } else {
    double ss_res = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      const double pred = mean_y + fit.rate * (ts[i] - mean_t);
      ss_res += (logs[i] - pred) * (logs[i] - pred);
    }
    fit.r_squared = 1.0 - ss_res / syy;
  }
  return fit;
}

double entropy_split_residual(const State& state,
                              const EquilibriumProfile& global_eq) {
  const std::vector<double> mloc = local_equilibrium(state, *state.grid);
  const double h_global = relative_entropy(state, global_eq.M);
  const double h_local =
      relative_entropy_rows(*state.mesh, *state.grid, state.f, mloc);
  const double h_locglobal =
      relative_entropy_rows(*state.mesh, *state.grid, mloc, global_eq.M);
  return std::abs(h_global - h_local - h_locglobal) / (1.0 + h_global);
}

SpatialFields spatial_fields(const State& state, SizeWeight weight) {
  const int n = state.n_size();
  const double dy = state.grid->dy;
  SpatialFields fields;
  fields.m0.resize(static_cast<std::size_t>(state.n_cells()));
  fields.m1.resize(static_cast<std::size_t>(state.n_cells()));
  for (int k = 0; k < state.n_cells(); ++k) {
    const auto row = state.row(k);
    double s0 = 0.0, s1 = 0.0;
    for (int i = 0; i < n; ++i) {
      const double w = weight == SizeWeight::Edge ? state.grid->edge(i)
                                                  : state.grid->center(i);
      s0 += row[static_cast<std::size_t>(i)];
      s1 += w * row[static_cast<std::size_t>(i)];
    }
    fields.m0[static_cast<std::size_t>(k)] = dy * s0;
    fields.m1[static_cast<std::size_t>(k)] = dy * s1;
  }
  return fields;
}

ProjectionTable projection_x2(const State& state, SizeWeight weight) {
  if (!state.mesh->cartesian)
    throw UnsupportedError("projection_x2: requires a Cartesian mesh");
  const CartesianLayout& lay = *state.mesh->cartesian;
  const int n = state.n_size();
  ProjectionTable table;
  table.n_rows = lay.ny;
  table.n_size = n;
  table.row_height = lay.dy;
  table.x2_centers.resize(static_cast<std::size_t>(lay.ny));
  table.p.assign(static_cast<std::size_t>(lay.ny) * static_cast<std::size_t>(n),
                 0.0);
  for (int r = 0; r < lay.ny; ++r) {
    table.x2_centers[static_cast<std::size_t>(r)] =
        lay.y_min + (r + 0.5) * lay.dy;
    double* dst = table.p.data() +
                  static_cast<std::size_t>(r) * static_cast<std::size_t>(n);
    for (int ix = 0; ix < lay.nx; ++ix) {
      const int k = r * lay.nx + ix;
      const auto row = state.row(k);
      const double scale =
          state.mesh->cells[static_cast<std::size_t>(k)].measure /
          table.row_height;
      for (int i = 0; i < n; ++i) {
        const double w = weight == SizeWeight::Edge ? state.grid->edge(i)
                                                    : state.grid->center(i);
        dst[i] += scale * w * row[static_cast<std::size_t>(i)];
      }
    }
  }
  return table;
}

}  // namespace cofrag
