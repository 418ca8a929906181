#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cofrag/errors.hpp"
#include "cofrag/size_grid.hpp"

using namespace cofrag;

TEST_CASE("grid matches the production setup") {
  const SizeGrid g = build_size_grid(20.0, 64);
  CHECK(g.dy == 0.3125);  // 20/64 is exact in binary
  CHECK(g.edges[64] == doctest::Approx(20.0).epsilon(1e-15));
  CHECK(g.edges[0] == 0.0);
}

TEST_CASE("two-cell grid layout") {
  const SizeGrid g = build_size_grid(1.0, 2);
  CHECK(g.edges[0] == 0.0);
  CHECK(g.edges[1] == doctest::Approx(0.5));
  CHECK(g.edges[2] == doctest::Approx(1.0));
  CHECK(g.centers[0] == doctest::Approx(0.25));
  CHECK(g.centers[1] == doctest::Approx(0.75));
}

TEST_CASE("centers sit midway") {
  const SizeGrid g = build_size_grid(2.0, 4);
  CHECK(g.centers[3] == doctest::Approx(1.75));
  for (int i = 0; i < g.n_size; ++i)
    CHECK(g.center(i) - g.edge(i) ==
          doctest::Approx(0.5 * g.dy).epsilon(1e-14));
}

TEST_CASE("uniform spacing and determinism") {
  const SizeGrid a = build_size_grid(7.3, 11);
  const SizeGrid b = build_size_grid(7.3, 11);
  CHECK(a.edges == b.edges);
  CHECK(a.centers == b.centers);
  for (int i = 0; i < a.n_size; ++i)
    CHECK(a.edge(i + 1) - a.edge(i) ==
          doctest::Approx(a.dy).epsilon(1e-13));
}

TEST_CASE("grid rejects bad arguments") {
  CHECK_THROWS_AS(build_size_grid(0.0, 8), ConfigError);
  CHECK_THROWS_AS(build_size_grid(-1.0, 8), ConfigError);
  CHECK_THROWS_AS(build_size_grid(1.0, 1), ConfigError);
}

TEST_CASE("constant kernels give all-ones tables") {
  const SizeGrid g = build_size_grid(4.0, 4);
  const KernelTables t = build_kernel_tables(
      g, [](double, double) { return 1.0; },
      [](double, double) { return 1.0; }, [](double) { return 0.1; });
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      CHECK(t.a_at(i, j) == 1.0);
      CHECK(t.b_at(i, j) == 1.0);
    }
}

TEST_CASE("square-root product kernel sampled at centers") {
  const SizeGrid g = build_size_grid(4.0, 4);  // dy = 1
  const KernelTables t = build_kernel_tables(
      g, [](double y, double yp) { return std::sqrt(y * yp); },
      [](double, double) { return 1.0; }, [](double) { return 0.1; });
  CHECK(t.a_at(0, 1) == doctest::Approx(std::sqrt(0.5 * 1.5)).epsilon(1e-14));
  CHECK(t.a_at(0, 1) == doctest::Approx(0.8660254).epsilon(1e-6));
}

TEST_CASE("diffusion sampled at lower edges, first cell at dy/2") {
  const SizeGrid g = build_size_grid(4.0, 4);  // dy = 1
  const KernelTables t = build_kernel_tables(
      g, [](double, double) { return 1.0; },
      [](double, double) { return 1.0; },
      [](double y) { return 0.1 / (1.0 + y); });
  CHECK(t.d[1] == doctest::Approx(0.05).epsilon(1e-14));
  CHECK(t.d[0] == doctest::Approx(0.1 / 1.5).epsilon(1e-14));
}

TEST_CASE("argument order does not matter for symmetric rates") {
  const SizeGrid g = build_size_grid(3.0, 6);
  auto rate = [](double y, double yp) { return 1.0 + y * yp + y + yp; };
  auto flipped = [&rate](double y, double yp) { return rate(yp, y); };
  const KernelTables t1 = build_kernel_tables(
      g, rate, rate, [](double) { return 1.0; });
  const KernelTables t2 = build_kernel_tables(
      g, flipped, flipped, [](double) { return 1.0; });
  CHECK(t1.a == t2.a);
  CHECK(t1.b == t2.b);
}

TEST_CASE("asymmetric or invalid rates are rejected") {
  const SizeGrid g = build_size_grid(3.0, 6);
  auto ones = [](double, double) { return 1.0; };
  auto asym = [](double y, double yp) { return y + 2.0 * yp; };
  CHECK_THROWS_AS(
      build_kernel_tables(g, asym, ones, [](double) { return 1.0; }),
      ConfigError);
  auto negative = [](double, double) { return -1.0; };
  CHECK_THROWS_WITH_AS(
      build_kernel_tables(g, negative, ones, [](double) { return 1.0; }),
      doctest::Contains("(0,0)"), ConfigError);
  CHECK_THROWS_AS(
      build_kernel_tables(g, ones, ones, [](double) { return -0.5; }),
      ConfigError);
}
