#include "cofrag/diffusion.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cofrag/errors.hpp"

namespace cofrag {

void diffusion_apply_into(const State& state, const KernelTables& tables,
                          std::span<double> out) {
  const int n = state.n_size();
  const double* d = tables.d.data();
  const double* f = state.f.data();
  std::fill(out.begin(), out.end(), 0.0);

  for (const auto& e : state.mesh->interior_edges) {
    const double* fk =
        f + static_cast<std::size_t>(e.left) * static_cast<std::size_t>(n);
    const double* fl =
        f + static_cast<std::size_t>(e.right) * static_cast<std::size_t>(n);
    double* ok = out.data() +
                 static_cast<std::size_t>(e.left) * static_cast<std::size_t>(n);
    double* ol = out.data() + static_cast<std::size_t>(e.right) *
                                  static_cast<std::size_t>(n);
    const double tau = e.tau;
    for (int i = 0; i < n; ++i) {
      const double flux = d[i] * tau * (fl[i] - fk[i]);
      ok[i] += flux;
      ol[i] -= flux;
    }
  }
  for (const auto& e : state.mesh->boundary_edges) {
    if (e.bc != BcType::Dirichlet) continue;  // Neumann edges carry no flux
    const double* fk =
        f + static_cast<std::size_t>(e.cell) * static_cast<std::size_t>(n);
    double* ok = out.data() +
                 static_cast<std::size_t>(e.cell) * static_cast<std::size_t>(n);
    const double tau = e.tau;
    for (int i = 0; i < n; ++i) {
      const double g = e.profile->value(e.midpoint, state.grid->center(i));
      if (!std::isfinite(g) || g < 0.0)
        throw ConfigError("boundary profile '" + e.profile->name +
                          "' returned invalid value " + std::to_string(g));
      ok[i] += d[i] * tau * (g - fk[i]);
    }
  }
}

std::vector<double> diffusion_apply(const State& state,
                                    const KernelTables& tables) {
  std::vector<double> out(state.f.size(), 0.0);
  diffusion_apply_into(state, tables, out);
  return out;
}

double diffusion_entropy_flux(const State& state, const KernelTables& tables,
                              std::span<const double> reference) {
  const int n = state.n_size();
  const double* d = tables.d.data();
  const double* f = state.f.data();
  double acc = 0.0;
  for (const auto& e : state.mesh->interior_edges) {
    const double* fk =
        f + static_cast<std::size_t>(e.left) * static_cast<std::size_t>(n);
    const double* fl =
        f + static_cast<std::size_t>(e.right) * static_cast<std::size_t>(n);
    for (int i = 0; i < n; ++i) {
      const double m = reference[static_cast<std::size_t>(i)];
      double term = 0.0;
      if (fk[i] > 0.0) term += (fl[i] - fk[i]) * std::log(fk[i] / m);
      if (fl[i] > 0.0) term += (fk[i] - fl[i]) * std::log(fl[i] / m);
      acc += d[i] * e.tau * term;
    }
  }
  return state.grid->dy * acc;
}

}  // namespace cofrag
