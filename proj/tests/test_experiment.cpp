#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "qps/experiment.hpp"

using namespace qps;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

ExperimentConfig small_dirichlet(double c) {
  ExperimentConfig cfg;
  cfg.problem = ProblemKind::dirichlet;
  cfg.dim = 2;
  cfg.extent = 1.0;
  cfg.n_points = 6;
  cfg.coupling = c;
  return cfg;
}

}  // namespace

TEST_CASE("config validation catches mismatched fields") {
  ExperimentConfig cfg = small_dirichlet(1.0);
  cfg.coefficients = std::vector<periodic::Coefficient>{
      periodic::Coefficient::constant(1.0)};
  CHECK_THROWS_AS(cfg.validate(), ConfigError);

  ExperimentConfig per;
  per.problem = ProblemKind::periodic;
  per.coupling = 1.0;
  CHECK_THROWS_AS(per.validate(), ConfigError);

  ExperimentConfig arn = small_dirichlet(1.0);
  arn.solver = SolverKind::arnoldi;
  CHECK_THROWS_AS(arn.validate(), ConfigError);  // no shifts

  ExperimentConfig sh = small_dirichlet(1.0);
  sh.shifts = {cplx(0.0, 1.0)};
  CHECK_THROWS_AS(sh.validate(), ConfigError);  // shifts without arnoldi
}

TEST_CASE("c=0 dense run reports the purely imaginary spectrum") {
  ExperimentConfig cfg = small_dirichlet(0.0);
  const SpectrumRecord rec = run_experiment(cfg);
  REQUIRE(static_cast<int>(rec.eigenvalues.size()) == 2 * 36);
  double max_abs = 0.0, max_re = 0.0, worst_res = 0.0;
  for (const auto& e : rec.eigenvalues) {
    max_abs = std::max(max_abs, std::hypot(e.re, e.im));
    max_re = std::max(max_re, std::abs(e.re));
    worst_res = std::max(worst_res, e.residual);
  }
  CHECK(max_re <= 1e-8 * max_abs);
  CHECK(worst_res <= 1e-8);
  bool found = false;
  for (const auto& [key, val] : rec.oracle_deltas)
    if (key == "c0_hausdorff") {
      found = true;
      CHECK(val < 1e-8);
    }
  CHECK(found);
}

TEST_CASE("periodic constant-coefficient run checks the dispersion oracle") {
  ExperimentConfig cfg;
  cfg.problem = ProblemKind::periodic;
  cfg.dim = 1;
  cfg.extent = 2.0 * 3.14159265358979323846;
  cfg.n_points = 8;
  const SpectrumRecord rec = run_experiment(cfg);
  REQUIRE(rec.eigenvalues.size() == 16);
  bool found = false;
  for (const auto& [key, val] : rec.oracle_deltas)
    if (key == "dispersion_hausdorff") {
      found = true;
      CHECK(val < 1e-6);  // the defective zero mode bounds this from below
    }
  CHECK(found);
}

TEST_CASE("identical configs produce identical output bytes") {
  namespace fs = std::filesystem;
  ExperimentConfig cfg = small_dirichlet(0.5);
  cfg.out_csv = "det_a.csv";
  cfg.out_json = "det_a.json";
  cfg.out_svg = "det_a.svg";
  run_experiment(cfg);
  ExperimentConfig cfg2 = cfg;
  cfg2.out_csv = "det_b.csv";
  cfg2.out_json = "det_b.json";
  cfg2.out_svg = "det_b.svg";
  run_experiment(cfg2);
  CHECK(slurp("det_a.csv") == slurp("det_b.csv"));
  CHECK(slurp("det_a.svg") == slurp("det_b.svg"));
  // JSON differs only in wall_seconds; compare eigenvalues via reparse
  const SpectrumRecord ra = record_from_json_file("det_a.json");
  const SpectrumRecord rb = record_from_json_file("det_b.json");
  REQUIRE(ra.eigenvalues.size() == rb.eigenvalues.size());
  for (std::size_t i = 0; i < ra.eigenvalues.size(); ++i) {
    CHECK(ra.eigenvalues[i].re == rb.eigenvalues[i].re);
    CHECK(ra.eigenvalues[i].im == rb.eigenvalues[i].im);
    CHECK(ra.eigenvalues[i].residual == rb.eigenvalues[i].residual);
  }
  for (const char* p : {"det_a.csv", "det_a.json", "det_a.svg", "det_b.csv",
                        "det_b.json", "det_b.svg"})
    fs::remove(p);
}

TEST_CASE("dense guardrail refuses oversized problems and suggests arnoldi") {
  ExperimentConfig cfg = small_dirichlet(1.0);
  cfg.n_points = 100;  // companion order 20000
  try {
    run_experiment(cfg);
    FAIL("expected SolverError");
  } catch (const SolverError& e) {
    CHECK(std::string(e.what()).find("arnoldi") != std::string::npos);
  }
}

TEST_CASE("sweep: cartesian product, failure slots, summary index") {
  namespace fs = std::filesystem;
  const std::string dir = "sweep_test_out";
  fs::create_directories(dir);

  SweepConfig sc;
  sc.base.problem = ProblemKind::periodic;
  sc.base.dim = 1;
  sc.base.extent = 2.0 * 3.14159265358979323846;
  // sinusoid with non-periodic frequency fails config validation at run time
  sc.base.coefficients = {
      {periodic::Coefficient::sinusoid(1.0, 0.5)}};
  sc.n_list = {6, 8};
  sc.out_dir = dir;
  const SweepOutcome bad = run_sweep(sc);
  REQUIRE(bad.records.size() == 2);
  for (const auto& rec : bad.records) {
    CHECK(rec.failed);
    CHECK(fs::exists(dir + "/" + rec.tag + ".json"));
    CHECK(!fs::exists(dir + "/" + rec.tag + ".csv"));
  }
  CHECK(fs::exists(bad.index_path));
  CHECK(slurp(bad.index_path).find("\"failed\": true") != std::string::npos);

  SweepConfig good;
  good.base = small_dirichlet(1.0);
  good.base.n_points = 4;
  good.c_list = {0.0, 1.0};
  good.n_list = {4, 5};
  good.extent_list = {1.0};
  good.out_dir = dir;
  good.workers = 2;
  const SweepOutcome ok = run_sweep(good);
  REQUIRE(ok.records.size() == 4);
  for (const auto& rec : ok.records) {
    CHECK_FALSE(rec.failed);
    CHECK(fs::exists(dir + "/" + rec.tag + ".csv"));
    CHECK(fs::exists(dir + "/" + rec.tag + ".json"));
  }
  fs::remove_all(dir);
}

TEST_CASE("tags are deterministic and filesystem friendly") {
  ExperimentConfig cfg = small_dirichlet(0.5);
  CHECK(cfg.tag() == "dirichlet_d2_N6_L1_c0.5");
  ExperimentConfig per;
  per.problem = ProblemKind::periodic;
  per.dim = 2;
  per.extent = 4.0;
  per.n_points = 12;
  per.coefficients = {{periodic::Coefficient::constant(1.0),
                       periodic::Coefficient::sinusoid(2.0, 3.14159)}};
  CHECK(per.tag() == "periodic_d2_N12_L4_const1_sin2x3.14159");
}
