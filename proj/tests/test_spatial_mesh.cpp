#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cofrag/errors.hpp"
#include "cofrag/spatial_mesh.hpp"

using namespace cofrag;

TEST_CASE("2x2 unit square") {
  const SpatialMesh m = build_cartesian_mesh(-0.5, 0.5, -0.5, 0.5, 2, 2);
  REQUIRE(m.n_cells() == 4);
  for (const auto& c : m.cells) CHECK(c.measure == doctest::Approx(0.25));
  REQUIRE(m.interior_edges.size() == 4);
  for (const auto& e : m.interior_edges) {
    CHECK(e.measure == doctest::Approx(0.5));
    CHECK(e.tau == doctest::Approx(1.0));
    CHECK(e.left != e.right);
  }
  CHECK(m.total_measure() == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(m.perimeter() == doctest::Approx(4.0).epsilon(1e-13));
}

TEST_CASE("channel rectangle measure") {
  const SpatialMesh m = build_cartesian_mesh(0.0, 0.125, 0.0, 1.0, 4, 32);
  CHECK(m.total_measure() == doctest::Approx(0.125).epsilon(1e-13));
  CHECK(mesh_regularity(m) == doctest::Approx(0.5));
}

TEST_CASE("single cell mesh") {
  const SpatialMesh m = build_cartesian_mesh(0.0, 1.0, 0.0, 1.0, 1, 1);
  CHECK(m.n_cells() == 1);
  CHECK(m.interior_edges.empty());
  CHECK(m.boundary_edges.size() == 4);
  CHECK(mesh_regularity(m) == 1.0);
}

TEST_CASE("uniform grids have pitch-ratio transmissibilities") {
  const SpatialMesh m = build_cartesian_mesh(0.0, 2.0, 0.0, 1.0, 4, 5);
  const double dx = 0.5, dy = 0.2;
  for (const auto& e : m.interior_edges) {
    if (e.measure == doctest::Approx(dy))
      CHECK(e.tau == doctest::Approx(dy / dx));
    else
      CHECK(e.tau == doctest::Approx(dx / dy));
    CHECK(e.tau > 0.0);
  }
  CHECK(mesh_regularity(m) == doctest::Approx(0.5));
}

TEST_CASE("construction is deterministic and row-major") {
  const SpatialMesh a = build_cartesian_mesh(0.0, 1.0, 0.0, 1.0, 3, 2);
  const SpatialMesh b = build_cartesian_mesh(0.0, 1.0, 0.0, 1.0, 3, 2);
  REQUIRE(a.n_cells() == b.n_cells());
  for (int k = 0; k < a.n_cells(); ++k) {
    CHECK(a.cells[static_cast<std::size_t>(k)].center.x ==
          b.cells[static_cast<std::size_t>(k)].center.x);
    CHECK(a.cells[static_cast<std::size_t>(k)].center.y ==
          b.cells[static_cast<std::size_t>(k)].center.y);
  }
  // x varies fastest
  CHECK(a.cells[0].center.x < a.cells[1].center.x);
  CHECK(a.cells[0].center.y == a.cells[1].center.y);
  CHECK(a.cells[3].center.y > a.cells[0].center.y);
}

TEST_CASE("boundary tagging") {
  SpatialMesh m = build_cartesian_mesh(0.0, 0.125, 0.0, 1.0, 4, 8);
  auto profile = std::make_shared<BoundaryProfile>();
  profile->name = "inflow";
  profile->value = [](Vec2 mid, double y) {
    const double alpha = 0.5 * (1.0 + std::cos(4.0 * M_PI * mid.y));
    return (y <= 0.0) ? 1.0 : (alpha <= 0.0 ? 0.0 : std::exp(-y / alpha));
  };

  SUBCASE("left wall becomes Dirichlet") {
    const std::size_t count = tag_boundary(
        m, [](Vec2 mid) { return std::abs(mid.x) <= 1e-12; },
        BcType::Dirichlet, profile);
    CHECK(count == 8);
    CHECK_FALSE(m.all_neumann());
    std::size_t dirichlet = 0;
    for (const auto& e : m.boundary_edges)
      if (e.bc == BcType::Dirichlet) ++dirichlet;
    CHECK(dirichlet == 8);
  }

  SUBCASE("selector matching nothing leaves the mesh unchanged") {
    const std::size_t count = tag_boundary(
        m, [](Vec2) { return false; }, BcType::Dirichlet, profile);
    CHECK(count == 0);
    CHECK(m.all_neumann());
  }

  SUBCASE("retagging everything Neumann is idempotent") {
    tag_boundary(m, [](Vec2) { return true; }, BcType::Dirichlet, profile);
    const std::size_t count =
        tag_boundary(m, [](Vec2) { return true; }, BcType::Neumann);
    CHECK(count == m.boundary_edges.size());
    CHECK(m.all_neumann());
    for (const auto& e : m.boundary_edges) CHECK(e.profile == nullptr);
  }

  SUBCASE("Dirichlet without a profile is rejected") {
    CHECK_THROWS_AS(
        tag_boundary(m, [](Vec2) { return true; }, BcType::Dirichlet),
        ConfigError);
  }
}

TEST_CASE("degenerate meshes are rejected") {
  CHECK_THROWS_AS(build_cartesian_mesh(0.0, 0.0, 0.0, 1.0, 2, 2), ConfigError);
  CHECK_THROWS_AS(build_cartesian_mesh(1.0, 0.0, 0.0, 1.0, 2, 2), ConfigError);
  CHECK_THROWS_AS(build_cartesian_mesh(0.0, 1.0, 0.0, 1.0, 0, 2), ConfigError);
}

TEST_CASE("regularity floor aborts the build") {
  // Uniform grids measure xi = 0.5, so a floor above that must reject.
  CHECK_NOTHROW(build_cartesian_mesh(0.0, 1.0, 0.0, 1.0, 1, 20, 0.1));
  CHECK_THROWS_AS(build_cartesian_mesh(0.0, 1.0, 0.0, 1.0, 2, 20, 0.6),
                  ConfigError);
}
