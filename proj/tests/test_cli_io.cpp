#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cofrag/check.hpp"
#include "cofrag/config.hpp"
#include "cofrag/errors.hpp"
#include "cofrag/io.hpp"
#include "cofrag/problem.hpp"

using namespace cofrag;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() / ("cofrag_test_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

}  // namespace

TEST_CASE("presets resolve the published parameters") {
  SUBCASE("ab-neumann") {
    const RunManifest m = load_config("ab-neumann");
    CHECK(m.radius == 20.0);
    CHECK(m.n_size == 64);
    CHECK(m.dt == 0.002);
    CHECK(m.diffusion_model == DiffusionId::Constant);
    CHECK(m.diffusion_coeff == 0.1);
    CHECK(m.coag_kernel == CoagKernelId::Constant);
    CHECK(m.frag_kernel == FragKernelId::Constant);
    CHECK(m.x_min == -0.5);
    CHECK(m.x_max == 0.5);
    CHECK(m.y_min == -0.5);
    CHECK(m.y_max == 0.5);
    CHECK(m.boundary == BoundaryId::Neumann);
    CHECK(m.entropy_tracked());
  }

  SUBCASE("sqrt-kernel") {
    const RunManifest m = load_config("sqrt-kernel");
    CHECK(m.coag_kernel == CoagKernelId::ProductSqrt);
    CHECK(m.frag_kernel == FragKernelId::Constant);
    CHECK(m.diffusion_model == DiffusionId::InverseLinear);
    CHECK(m.diffusion_coeff == 0.1);
    CHECK_FALSE(m.entropy_tracked());
  }

  SUBCASE("dirichlet-channel") {
    const RunManifest m = load_config("dirichlet-channel");
    CHECK(m.x_max == 0.125);
    CHECK(m.y_max == 1.0);
    CHECK(m.diffusion_coeff == 0.01);
    CHECK(m.boundary == BoundaryId::DirichletChannel);
    CHECK_FALSE(m.entropy_tracked());
    CHECK(m.snapshot_fields.size() == 3);
  }

  SUBCASE("unknown preset or missing file") {
    CHECK_THROWS_AS(load_config("no-such-preset"), ConfigError);
  }
}

TEST_CASE("config files") {
  const fs::path dir = temp_dir("config");

  SUBCASE("preset inheritance with overrides") {
    const fs::path path = dir / "override.cfg";
    write_text(path,
               "# desk-scale rerun\n"
               "preset = ab-neumann\n"
               "n_size = 16\n"
               "nx = 8\n"
               "ny = 8\n"
               "t_end = 0.5\n");
    const RunManifest m = load_config(path.string());
    CHECK(m.n_size == 16);
    CHECK(m.nx == 8);
    CHECK(m.t_end == 0.5);
    CHECK(m.radius == 20.0);  // inherited
  }

  SUBCASE("empty file names the first missing key") {
    const fs::path path = dir / "empty.cfg";
    write_text(path, "");
    CHECK_THROWS_WITH_AS(load_config(path.string()),
                         doctest::Contains("radius"), ConfigError);
  }

  SUBCASE("unknown keys are rejected with the line number") {
    const fs::path path = dir / "unknown.cfg";
    write_text(path, "preset = ab-neumann\nnot_a_key = 3\n");
    CHECK_THROWS_WITH_AS(load_config(path.string()),
                         doctest::Contains("not_a_key"), ConfigError);
  }

  SUBCASE("inconsistent values are rejected") {
    const fs::path path = dir / "bad.cfg";
    write_text(path, "preset = ab-neumann\ndt = -0.1\n");
    CHECK_THROWS_AS(load_config(path.string()), ConfigError);
  }

  SUBCASE("manifest text echoes every resolved parameter") {
    const RunManifest m = load_config("sqrt-kernel");
    const std::string text = manifest_text(m);
    CHECK(text.find("coag_kernel=product-sqrt") != std::string::npos);
    CHECK(text.find("diffusion_model=inverse-linear") != std::string::npos);
    CHECK(text.find("diffusion_coeff=0.1") != std::string::npos);
    CHECK(text.find("radius=20") != std::string::npos);
    CHECK(text.find("entropy_tracked=false") != std::string::npos);
  }
}

TEST_CASE("diagnostics files") {
  const fs::path dir = temp_dir("diag");

  SUBCASE("single record gives a two-line file") {
    DiagnosticsRecord rec;
    rec.t = 0.5;
    rec.m1 = 1.25;
    write_diagnostics({rec}, dir / "one.csv");
    const std::string text = slurp(dir / "one.csv");
    CHECK(std::count(text.begin(), text.end(), '\n') == 2);
    CHECK(text.find("t,m0,m1,m2,m3,h_global,h_local,h_locglobal,dissipation,"
                    "mass_residual,min_f,clamp_count\n") == 0);
    CHECK(text.find("1.25") != std::string::npos);
  }

  SUBCASE("empty record list gives a header-only file") {
    write_diagnostics({}, dir / "none.csv");
    const std::string text = slurp(dir / "none.csv");
    CHECK(std::count(text.begin(), text.end(), '\n') == 1);
  }

  SUBCASE("full precision roundtrip") {
    CHECK(format_full(0.1) == "0.10000000000000001");
    CHECK(format_full(1.0) == "1");
  }
}

TEST_CASE("simulation output files") {
  SUBCASE("desk run writes manifest, diagnostics and one snapshot") {
    const fs::path dir = temp_dir("run");
    RunManifest m = load_config("ab-neumann");
    ManifestOverrides ov;
    ov.nx = 6;
    ov.ny = 6;
    ov.n_size = 12;
    ov.t_end = 0.05;
    ov.out_dir = (dir / "out").string();
    apply_overrides(m, ov);
    const int files = run_to_files(m);
    CHECK(files == 3);
    CHECK(fs::exists(dir / "out" / "manifest.txt"));
    CHECK(fs::exists(dir / "out" / "diagnostics.csv"));
    CHECK(fs::exists(dir / "out" / "snapshot_m0_final.csv"));
  }

  SUBCASE("reruns are byte-identical") {
    const fs::path dir = temp_dir("rerun");
    RunManifest m = load_config("ab-neumann");
    ManifestOverrides ov;
    ov.nx = 5;
    ov.ny = 4;
    ov.n_size = 10;
    ov.t_end = 0.03;
    apply_overrides(m, ov);

    m.out_dir = (dir / "a").string();
    run_to_files(m);
    m.out_dir = (dir / "b").string();
    run_to_files(m);

    CHECK(slurp(dir / "a" / "diagnostics.csv") ==
          slurp(dir / "b" / "diagnostics.csv"));
    CHECK(slurp(dir / "a" / "snapshot_m0_final.csv") ==
          slurp(dir / "b" / "snapshot_m0_final.csv"));
  }

  SUBCASE("channel preset writes snapshots at requested times") {
    const fs::path dir = temp_dir("channel");
    RunManifest m = load_config("dirichlet-channel");
    ManifestOverrides ov;
    ov.nx = 4;
    ov.ny = 8;
    ov.n_size = 8;
    ov.dt = 0.01;
    ov.t_end = 0.05;
    ov.out_dir = (dir / "out").string();
    apply_overrides(m, ov);
    m.snapshot_times = {0.0, 0.02};
    const int files = run_to_files(m);
    // manifest + diagnostics + 2 snapshot times x 3 fields + final x 3
    CHECK(files == 2 + 6 + 3);
    CHECK(fs::exists(dir / "out" / "snapshot_m0_t0.csv"));
    CHECK(fs::exists(dir / "out" / "snapshot_m1_t0.02.csv"));
    CHECK(fs::exists(dir / "out" / "snapshot_projection_final.csv"));
  }
}

TEST_CASE("invariant check suite passes") {
  std::ostringstream out;
  CHECK(run_checks(2024, out));
  CHECK(out.str().find("FAIL") == std::string::npos);
}
