#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "qconcur/io.hpp"
#include "qconcur/scan.hpp"
#include "qconcur/selftest.hpp"
#include "qconcur/states.hpp"

using namespace qconcur;

namespace {

std::string temp_path(const char* name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("state files round-trip bit-exactly") {
  const DensityMatrix rho = random_mixed(DimSpec({2, 3}), 4, 3100);
  const std::string path = temp_path("qconcur_state.json");
  write_state_file(path, rho);
  const StateFile sf = read_state_file(path);
  REQUIRE(sf.matrix.has_value());
  CHECK(sf.dims == rho.dims());
  CHECK((*sf.matrix - rho.mat()).cwiseAbs().maxCoeff() == 0.0);
  std::remove(path.c_str());

  const PureState psi = random_pure(DimSpec({2, 2}), 3200);
  const std::string vpath = temp_path("qconcur_vec.json");
  write_state_file(vpath, psi);
  const StateFile vf = read_state_file(vpath);
  REQUIRE(vf.vector.has_value());
  CHECK((*vf.vector - psi.amp()).cwiseAbs().maxCoeff() == 0.0);
  std::remove(vpath.c_str());
}

TEST_CASE("state file parsing rejects malformed documents") {
  CHECK_THROWS_AS(parse_state_json("{not json"), parse_error);
  CHECK_THROWS_AS(parse_state_json("[]"), parse_error);
  CHECK_THROWS_AS(parse_state_json(R"({"matrix": []})"), parse_error);
  CHECK_THROWS_AS(parse_state_json(R"({"dims": [2], "matrix": [], "vector": []})"),
                  parse_error);
  CHECK_THROWS_AS(parse_state_json(R"({"dims": [2]})"), parse_error);
  CHECK_THROWS_AS(parse_state_json(R"({"dims": [2], "vector": [[1, 0], [0, 0], [0, 0]]})"),
                  parse_error);
  CHECK_THROWS_AS(parse_state_json(R"({"dims": [1], "vector": [[1, 0]]})"), parse_error);
  CHECK_THROWS_AS(parse_state_json(R"({"dims": [2], "vector": [[1, 0], "x"]})"),
                  parse_error);

  // parses but violates the density-matrix invariants
  const StateFile bad = parse_state_json(
      R"({"dims": [2], "matrix": [[2, 0], [0, 0], [0, 0], [2, 0]]})");
  CHECK_THROWS_AS(to_density(bad), validation_error);
}

TEST_CASE("scan finds the detection threshold of the noisy single-excitation family") {
  ScanOptions opt;
  opt.grid = 41;
  opt.tol = 1e-4;
  opt.bounds = {"tau_n"};
  const ScanResult res = run_scan(make_family("w-noise", 3), opt);

  REQUIRE(res.thresholds.count("tau_n"));
  const ThresholdInfo th = res.thresholds.at("tau_n");
  CHECK(th.value == doctest::Approx(3.0 / 11.0).epsilon(5e-4));
  CHECK(th.value >= res.grid.front());
  CHECK(th.value <= res.grid.back());
  CHECK(th.iterations > 0);

  // bracketing: raw flips sign across the reported bracket
  const StateFamily fam = make_family("w-noise", 3);
  const double lo = th.value - th.bracket_halfwidth;
  const double hi = th.value + th.bracket_halfwidth;
  CHECK(tau_n(fam.make(lo)).bound.raw <= 0.0);
  CHECK(tau_n(fam.make(hi)).bound.raw > 0.0);
}

TEST_CASE("scan reports no threshold for an always-detected family") {
  ScanOptions opt;
  opt.grid = 21;
  opt.bounds = {"purity_lower"};
  const ScanResult res = run_scan(make_family("gen-ghz", 3), opt);
  CHECK(res.thresholds.empty());
  for (size_t i = 1; i + 1 < res.grid.size(); ++i) {
    CHECK(res.raws[0][i] > 0.0);
  }
}

TEST_CASE("scan output is deterministic and thread-count independent") {
  ScanOptions opt;
  opt.grid = 15;
  opt.bounds = {"tau_n", "purity_lower"};
  const StateFamily fam = make_family("ghz-noise", 3);
  const std::string csv1 = scan_to_csv(run_scan(fam, opt));
  const std::string csv2 = scan_to_csv(run_scan(fam, opt));
  opt.threads = 3;
  const std::string csv3 = scan_to_csv(run_scan(fam, opt));
  CHECK(csv1 == csv2);
  CHECK(csv1 == csv3);
  CHECK(csv1.find("p,tau_n,tau_n_raw,purity_lower,purity_lower_raw\n") == 0);
}

TEST_CASE("scan rejects families without a parameter and bad ranges") {
  ScanOptions opt;
  CHECK_THROWS_AS(run_scan(make_family("ghz", 3), opt), validation_error);
  opt.from = 0.8;
  opt.to = 0.2;
  CHECK_THROWS_AS(run_scan(make_family("w-noise", 3), opt), validation_error);
}

TEST_CASE("selftest passes on a fresh build and notices injected errors") {
  SelftestOptions opt;
  const auto results = run_selftest(opt);
  for (const SuiteResult& r : results) {
    INFO(r.name, ": ", r.detail);
    CHECK(r.passed);
  }
  CHECK(all_passed(results));

  SelftestOptions bad;
  bad.injected_perturbation = 1e-6;
  CHECK(!all_passed(run_selftest(bad)));
}
