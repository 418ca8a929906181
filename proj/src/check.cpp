#include "cofrag/check.hpp"

#include <cmath>
#include <random>
#include <vector>

#include "cofrag/cf_kernel.hpp"
#include "cofrag/config.hpp"
#include "cofrag/diffusion.hpp"
#include "cofrag/equilibrium.hpp"
#include "cofrag/evolution.hpp"
#include "cofrag/problem.hpp"
#include "cofrag/size_grid.hpp"

namespace cofrag {

namespace {

using Rng = std::mt19937_64;

KernelTables random_tables(Rng& rng, const SizeGrid& grid) {
  std::uniform_real_distribution<double> u(0.0, 2.0);
  const int n = grid.n_size;
  KernelTables t;
  t.n = n;
  t.a.resize(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  t.b.resize(t.a.size());
  t.d.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const double av = u(rng);
      const double bv = u(rng);
      t.a[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + j] = av;
      t.a[static_cast<std::size_t>(j) * static_cast<std::size_t>(n) + i] = av;
      t.b[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + j] = bv;
      t.b[static_cast<std::size_t>(j) * static_cast<std::size_t>(n) + i] = bv;
    }
    t.d[static_cast<std::size_t>(i)] = 0.05 + 0.1 * u(rng);
  }
  return t;
}

std::vector<double> random_row(Rng& rng, int n, double vacuum_fraction) {
  std::uniform_real_distribution<double> u(0.0, 2.0);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<double> f(static_cast<std::size_t>(n));
  for (auto& v : f) v = (coin(rng) < vacuum_fraction) ? 0.0 : u(rng);
  return f;
}

struct Reporter {
  std::ostream& out;
  bool all_ok = true;
  void report(const char* name, bool ok) {
    out << "check: " << name << " ... " << (ok ? "ok" : "FAIL") << "\n";
    all_ok = all_ok && ok;
  }
};

}  // namespace

bool run_checks(unsigned long seed, std::ostream& out) {
  Rng rng(seed);
  Reporter rep{out};
  const int sizes[] = {4, 8, 16};

  {  // flux form vs classical form, i >= 1
    bool ok = true;
    for (int trial = 0; trial < 200 && ok; ++trial) {
      const int n = sizes[trial % 3];
      const SizeGrid grid = build_size_grid(0.5 * n, n);
      const KernelTables tables = random_tables(rng, grid);
      const auto f = random_row(rng, n, 0.1);
      const auto qc = q_classical(f, tables, grid);
      const auto cf = coag_flux(f, tables, grid);
      const auto ff = frag_flux(f, tables, grid);
      for (int i = 1; i < n; ++i) {
        const double qf = q_from_fluxes_at(cf, ff, grid, i);
        const double denom = grid.edge(i) * grid.dy;
        const double scale =
            (cf[static_cast<std::size_t>(i)] + cf[static_cast<std::size_t>(i) + 1] +
             ff[static_cast<std::size_t>(i)] + ff[static_cast<std::size_t>(i) + 1]) /
                denom +
            std::abs(qc[static_cast<std::size_t>(i)]) + 1.0;
        ok = ok && std::abs(qf - qc[static_cast<std::size_t>(i)]) <= 1e-12 * scale;
      }
    }
    rep.report("flux/classical equivalence", ok);
  }

  {  // weak formulation identity
    bool ok = true;
    std::uniform_real_distribution<double> phi_dist(-1.0, 1.0);
    for (int trial = 0; trial < 200 && ok; ++trial) {
      const int n = sizes[trial % 3];
      const SizeGrid grid = build_size_grid(0.5 * n, n);
      const KernelTables tables = random_tables(rng, grid);
      const auto f = random_row(rng, n, 0.1);
      std::vector<double> phi(static_cast<std::size_t>(n));
      for (auto& v : phi) v = phi_dist(rng);
      const auto qc = q_classical(f, tables, grid);
      double lhs = 0.0, scale = 0.0;
      for (int i = 0; i < n; ++i) {
        lhs += grid.dy * qc[static_cast<std::size_t>(i)] *
               phi[static_cast<std::size_t>(i)];
        scale += grid.dy * std::abs(qc[static_cast<std::size_t>(i)] *
                                    phi[static_cast<std::size_t>(i)]);
      }
      const double rhs = weak_form(f, tables, grid, phi);
      ok = ok && std::abs(lhs - rhs) <= 1e-11 * (1.0 + scale);
    }
    rep.report("weak formulation identity", ok);
  }

  {  // the volume weight annihilates the operator
    bool ok = true;
    for (int trial = 0; trial < 200 && ok; ++trial) {
      const int n = sizes[trial % 3];
      const SizeGrid grid = build_size_grid(0.5 * n, n);
      const KernelTables tables = random_tables(rng, grid);
      const auto f = random_row(rng, n, 0.1);
      const auto qc = q_classical(f, tables, grid);
      double sum = 0.0, positive = 0.0;
      for (int i = 0; i < n; ++i) {
        const double term =
            grid.dy * grid.edge(i) * qc[static_cast<std::size_t>(i)];
        sum += term;
        positive += std::max(term, 0.0);
      }
      ok = ok && std::abs(sum) <= 1e-12 * (positive + 1.0);
    }
    rep.report("volume conservation of the operator", ok);
  }

  {  // dissipation sign and gain-only structure at vacuum sizes
    bool sign_ok = true, vacuum_ok = true;
    for (int trial = 0; trial < 200; ++trial) {
      const int n = sizes[trial % 3];
      const SizeGrid grid = build_size_grid(0.5 * n, n);
      const KernelTables tables = random_tables(rng, grid);
      const auto f = random_row(rng, n, 0.3);
      sign_ok = sign_ok && dissipation(f, tables, grid).value >= 0.0;
      const auto qc = q_classical(f, tables, grid);
      for (int i = 0; i < n; ++i)
        if (f[static_cast<std::size_t>(i)] == 0.0)
          vacuum_ok = vacuum_ok && qc[static_cast<std::size_t>(i)] >= 0.0;
    }
    rep.report("dissipation nonnegative", sign_ok);
    rep.report("gain-only at vacuum sizes", vacuum_ok);
  }

  {  // detailed balance profile annihilates the constant-kernel operator
    const SizeGrid grid = build_size_grid(16.0, 32);
    const KernelTables tables = build_kernel_tables(
        grid, [](double, double) { return 1.0; },
        [](double, double) { return 1.0; }, [](double) { return 0.1; });
    const EquilibriumProfile eq = detailed_balance_profile(0.8, grid);
    const auto qc = q_classical(eq.M, tables, grid);
    double max_q = 0.0, max_m = 0.0;
    for (int i = 0; i < grid.n_size; ++i) {
      max_q = std::max(max_q, std::abs(qc[static_cast<std::size_t>(i)]));
      max_m = std::max(max_m, eq.M[static_cast<std::size_t>(i)]);
    }
    rep.report("detailed balance annihilation", max_q <= 1e-12 * max_m);
  }

  {  // equilibrium exponent roundtrip
    bool ok = true;
    const SizeGrid grid = build_size_grid(20.0, 64);
    const SpatialMesh mesh = build_cartesian_mesh(0.0, 1.0, 0.0, 1.0, 2, 2);
    std::uniform_real_distribution<double> alpha_dist(-1.5, 1.5);
    for (int trial = 0; trial < 20 && ok; ++trial) {
      const double alpha = std::pow(10.0, alpha_dist(rng));
      const EquilibriumProfile ref = detailed_balance_profile(alpha, grid);
      const double target = profile_volume(ref.M, grid, mesh.total_measure());
      const EquilibriumProfile found = solve_alpha(target, grid, mesh);
      ok = ok && std::abs(found.alpha - alpha) <= 1e-10 * std::max(1.0, alpha);
    }
    rep.report("equilibrium exponent roundtrip", ok);
  }

  {  // discrete divergence theorem for the diffusion operator
    bool ok = true;
    const SizeGrid grid = build_size_grid(4.0, 8);
    const KernelTables tables = build_kernel_tables(
        grid, [](double, double) { return 1.0; },
        [](double, double) { return 1.0; },
        [](double y) { return 0.1 / (1.0 + y); });
    const SpatialMesh mesh = build_cartesian_mesh(0.0, 1.0, 0.0, 2.0, 3, 4);
    State state(mesh, grid);
    std::uniform_real_distribution<double> u(0.0, 2.0);
    for (auto& v : state.f) v = u(rng);
    const auto flux = diffusion_apply(state, tables);
    for (int i = 0; i < grid.n_size && ok; ++i) {
      double sum = 0.0, mag = 0.0;
      for (int k = 0; k < mesh.n_cells(); ++k) {
        const double v =
            flux[static_cast<std::size_t>(k) *
                     static_cast<std::size_t>(grid.n_size) +
                 static_cast<std::size_t>(i)];
        sum += v;
        mag += std::abs(v);
      }
      ok = ok && std::abs(sum) <= 1e-12 * (mag + 1.0);
    }
    rep.report("diffusion divergence identity", ok);
  }

  {  // short production-style run conserves volume and positivity
    RunManifest manifest = preset_manifest("ab-neumann");
    ManifestOverrides ov;
    ov.nx = 8;
    ov.ny = 8;
    ov.n_size = 16;
    ov.t_end = 0.1;
    apply_overrides(manifest, ov);
    Problem problem = build_problem(manifest);
    const double volume0 = discrete_volume(problem.initial);
    const RunResult result =
        run(problem.initial, problem.tables, problem.sim,
            problem.global_eq ? &*problem.global_eq : nullptr);
    bool ok = result.total_clamped == 0;
    for (const auto& rec : result.records) {
      ok = ok && std::abs(rec.m1 - volume0) <= 1e-12 * volume0;
      ok = ok && rec.min_f >= 0.0;
    }
    rep.report("short run conserves volume and positivity", ok);
  }

  out << (rep.all_ok ? "check: all properties held\n"
                     : "check: FAILURES detected\n");
  return rep.all_ok;
}

}  // namespace cofrag
