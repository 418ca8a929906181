#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cofrag/diffusion.hpp"
#include "cofrag/errors.hpp"
#include "oracles.hpp"

using namespace cofrag;

namespace {

KernelTables tables_with_d(const SizeGrid& g, double d0) {
  return build_kernel_tables(
      g, [](double, double) { return 1.0; },
      [](double, double) { return 1.0; }, [d0](double) { return d0; });
}

}  // namespace

TEST_CASE("uniform states do not diffuse") {
  const SizeGrid g = build_size_grid(4.0, 8);
  const KernelTables t = tables_with_d(g, 0.1);
  const SpatialMesh m = build_cartesian_mesh(0.0, 1.0, 0.0, 1.0, 4, 4);
  State s(m, g);
  for (auto& v : s.f) v = 0.7;
  for (const double v : diffusion_apply(s, t)) CHECK(v == 0.0);
}

TEST_CASE("two-cell exchange") {
  // 1x2 cells on (0,1)x(0,2): shared edge has measure 1 and distance 1.
  const SizeGrid g = build_size_grid(2.0, 2);
  const KernelTables t = tables_with_d(g, 0.1);
  const SpatialMesh m = build_cartesian_mesh(0.0, 1.0, 0.0, 2.0, 1, 2);
  REQUIRE(m.interior_edges.size() == 1);
  CHECK(m.interior_edges[0].tau == doctest::Approx(1.0));
  State s(m, g);
  s.at(1, 0) = 1.0;
  s.at(1, 1) = 1.0;
  const auto out = diffusion_apply(s, t);
  for (int i = 0; i < 2; ++i) {
    CHECK(out[static_cast<std::size_t>(i)] == doctest::Approx(0.1));
    CHECK(out[2 + static_cast<std::size_t>(i)] == doctest::Approx(-0.1));
  }
}

TEST_CASE("Dirichlet value equal to the cell value adds nothing") {
  const SizeGrid g = build_size_grid(2.0, 2);
  const KernelTables t = tables_with_d(g, 0.1);
  SpatialMesh m = build_cartesian_mesh(0.0, 1.0, 0.0, 1.0, 1, 1);
  auto profile = std::make_shared<BoundaryProfile>();
  profile->name = "match";
  profile->value = [](Vec2, double) { return 0.4; };
  tag_boundary(m, [](Vec2 mid) { return mid.x <= 1e-12; }, BcType::Dirichlet,
               profile);
  State s(m, g);
  for (auto& v : s.f) v = 0.4;
  for (const double v : diffusion_apply(s, t)) CHECK(v == 0.0);
}

TEST_CASE("discrete divergence identity") {
  oracles::Rng rng(41);
  const SizeGrid g = build_size_grid(4.0, 8);
  const KernelTables t = tables_with_d(g, 0.2);
  SpatialMesh m = build_cartesian_mesh(0.0, 1.0, 0.0, 2.0, 3, 5);

  SUBCASE("all-Neumann columns sum to zero") {
    State s(m, g);
    for (auto& v : s.f) v = oracles::random_row(rng, 1, 0.0)[0];
    const auto out = diffusion_apply(s, t);
    for (int i = 0; i < g.n_size; ++i) {
      double sum = 0.0, mag = 0.0;
      for (int k = 0; k < m.n_cells(); ++k) {
        const double v = out[static_cast<std::size_t>(k) *
                                 static_cast<std::size_t>(g.n_size) +
                             static_cast<std::size_t>(i)];
        sum += v;
        mag += std::abs(v);
      }
      CHECK(std::abs(sum) <= 1e-12 * (mag + 1e-30));
    }
  }

  SUBCASE("Dirichlet edges account for the total exactly") {
    auto profile = std::make_shared<BoundaryProfile>();
    profile->name = "inflow";
    profile->value = [](Vec2 mid, double y) {
      return 0.5 + 0.25 * mid.y + 0.1 * y;
    };
    tag_boundary(m, [](Vec2 mid) { return mid.x <= 1e-12; }, BcType::Dirichlet,
                 profile);
    State s(m, g);
    for (auto& v : s.f) v = oracles::random_row(rng, 1, 0.0)[0];
    const auto out = diffusion_apply(s, t);
    for (int i = 0; i < g.n_size; ++i) {
      double sum = 0.0;
      for (int k = 0; k < m.n_cells(); ++k)
        sum += out[static_cast<std::size_t>(k) *
                       static_cast<std::size_t>(g.n_size) +
                   static_cast<std::size_t>(i)];
      double boundary = 0.0;
      for (const auto& e : m.boundary_edges) {
        if (e.bc != BcType::Dirichlet) continue;
        const double gval = profile->value(e.midpoint, g.center(i));
        boundary += t.d[static_cast<std::size_t>(i)] * e.tau *
                    (gval - s.at(e.cell, i));
      }
      CHECK(sum == doctest::Approx(boundary).epsilon(1e-12));
    }
  }
}

TEST_CASE("invalid boundary profile values are rejected at use") {
  const SizeGrid g = build_size_grid(2.0, 2);
  const KernelTables t = tables_with_d(g, 0.1);
  SpatialMesh m = build_cartesian_mesh(0.0, 1.0, 0.0, 1.0, 1, 1);
  auto profile = std::make_shared<BoundaryProfile>();
  profile->name = "broken";
  profile->value = [](Vec2, double) { return -1.0; };
  tag_boundary(m, [](Vec2) { return true; }, BcType::Dirichlet, profile);
  State s(m, g);
  CHECK_THROWS_WITH_AS(diffusion_apply(s, t), doctest::Contains("broken"),
                       ConfigError);
}

TEST_CASE("operator is linear and size-local") {
  oracles::Rng rng(43);
  const SizeGrid g = build_size_grid(4.0, 4);
  const KernelTables t = tables_with_d(g, 0.3);
  const SpatialMesh m = build_cartesian_mesh(0.0, 1.0, 0.0, 1.0, 3, 3);
  State a(m, g), b(m, g);
  for (auto& v : a.f) v = oracles::random_row(rng, 1, 0.0)[0];
  for (auto& v : b.f) v = oracles::random_row(rng, 1, 0.0)[0];
  const auto fa = diffusion_apply(a, t);
  const auto fb = diffusion_apply(b, t);
  State sum(m, g);
  for (std::size_t i = 0; i < sum.f.size(); ++i)
    sum.f[i] = 2.0 * a.f[i] + 3.0 * b.f[i];
  const auto fsum = diffusion_apply(sum, t);
  for (std::size_t i = 0; i < fsum.size(); ++i)
    CHECK(fsum[i] == doctest::Approx(2.0 * fa[i] + 3.0 * fb[i])
                         .epsilon(1e-12));

  // no cross-size coupling: perturbing one size index leaves others alone
  State c = a;
  c.at(4, 2) += 1.0;
  const auto fc = diffusion_apply(c, t);
  for (int k = 0; k < m.n_cells(); ++k)
    for (int i = 0; i < g.n_size; ++i) {
      if (i == 2) continue;
      CHECK(fc[static_cast<std::size_t>(k) * 4 + static_cast<std::size_t>(i)] ==
            fa[static_cast<std::size_t>(k) * 4 + static_cast<std::size_t>(i)]);
    }
}

TEST_CASE("entropy flux of the diffusion operator") {
  const SizeGrid g = build_size_grid(1.0, 2);
  const KernelTables t = tables_with_d(g, 1.0);

  SUBCASE("uniform state contributes nothing") {
    const SpatialMesh m = build_cartesian_mesh(0.0, 1.0, 0.0, 2.0, 1, 2);
    State s(m, g);
    for (auto& v : s.f) v = 1.3;
    const std::vector<double> ref{1.0, 1.0};
    CHECK(diffusion_entropy_flux(s, t, ref) == doctest::Approx(0.0));
  }

  SUBCASE("two-cell hand value") {
    // f_K = 1, f_L = e, tau = 1, d = 1, M = 1: only the L side logs,
    // giving (1 - e) per size cell; dy = 0.5 halves the total.
    const SpatialMesh m = build_cartesian_mesh(0.0, 1.0, 0.0, 2.0, 1, 2);
    State s(m, g);
    const double e = std::exp(1.0);
    s.at(0, 0) = 1.0;
    s.at(0, 1) = 1.0;
    s.at(1, 0) = e;
    s.at(1, 1) = e;
    const std::vector<double> ref{1.0, 1.0};
    const double expected = g.dy * 2.0 * (1.0 - e);
    CHECK(diffusion_entropy_flux(s, t, ref) ==
          doctest::Approx(expected).epsilon(1e-12));
    CHECK(expected / (g.dy * 2.0) == doctest::Approx(-1.71828).epsilon(1e-5));
  }

  SUBCASE("never positive on Neumann meshes") {
    oracles::Rng rng(47);
    const SpatialMesh m = build_cartesian_mesh(0.0, 1.0, 0.0, 1.0, 4, 4);
    std::uniform_real_distribution<double> u(0.05, 3.0);
    for (int trial = 0; trial < 50; ++trial) {
      State s(m, g);
      for (auto& v : s.f) v = u(rng);
      std::vector<double> ref{u(rng), u(rng)};
      CHECK(diffusion_entropy_flux(s, t, ref) <= 1e-14);
    }
  }
}
