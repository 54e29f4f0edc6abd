#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "curvtk/inequality.hpp"

#ifndef CURVTK_CLI_PATH
#error "CURVTK_CLI_PATH must be defined"
#endif

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(CURVTK_CLI_PATH) + " " + args + " 2>&1";
  std::array<char, 4096> buf{};
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  while (fgets(buf.data(), buf.size(), pipe)) out += buf.data();
  int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

std::string temp_path(const std::string& name) {
  return std::string("/tmp/curvtk_test_") + name + ".json";
}

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  nlohmann::json j;
  in >> j;
  return j;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("zoo-list: exit 0, has the expected entries, stable order") {
  RunResult r = run_cli("zoo-list");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("round-sphere:n=4:r=1") != std::string::npos);
  CHECK(r.out.find("s1xs:n=6:t=0.1:normalized") != std::string::npos);
  CHECK(r.out.find("fubini-study") != std::string::npos);
  CHECK(r.out.find("flat-torus:n=5") != std::string::npos);
  // sorted: flat-torus lines precede round-sphere lines
  CHECK(r.out.find("flat-torus:n=4") < r.out.find("round-sphere:n=4"));
  RunResult again = run_cli("zoo-list");
  CHECK(again.out == r.out);
}

TEST_CASE("curvature: round sphere report") {
  const std::string out = temp_path("curv_sphere");
  RunResult r = run_cli("curvature --metric round-sphere:n=4:r=1 --point 0.1,0.2,0.3,0 "
                        "--with-bach --out " + out);
  CHECK(r.exit_code == 0);
  nlohmann::json j = read_json(out);
  CHECK(j["schema_version"] == "1.0");
  CHECK(j["kind"] == "curvature_bundle");
  CHECK(j["scalar_curvature"].get<double>() == doctest::Approx(12.0).epsilon(1e-10));
  CHECK(j["norms"]["weyl_sq"].get<double>() < 1e-12);
  CHECK(j["bach_max_abs"].get<double>() < 1e-8);
  CHECK(j["inputs"]["metric"] == "round-sphere:n=4:r=1");
}

TEST_CASE("curvature: usage errors exit 2") {
  CHECK(run_cli("curvature --metric no-such-metric:n=4 --point 0,0,0,0").exit_code == 2);
  CHECK(run_cli("curvature --metric round-sphere:n=4:r=1 --point 0,0").exit_code == 2);
  CHECK(run_cli("curvature --metric round-sphere:n=4:r=1 --point 0,0,0,0 "
                "--fd-order 3").exit_code == 2);
  CHECK(run_cli("curvature --metric round-sphere:n=4:r=1 --point 0,0,0,0 "
                "--no-such-flag").exit_code == 2);
}

TEST_CASE("audit: exit codes reflect verdicts") {
  // boundary -> 0
  RunResult boundary = run_cli("audit --theorem thm14 --metric s1xs:n=8:t=0.1:normalized");
  CHECK(boundary.exit_code == 0);
  CHECK(boundary.out.find("boundary") != std::string::npos);
  // satisfied -> 0
  CHECK(run_cli("audit --theorem thm11 --metric round-sphere:n=6:r=1 --p 3").exit_code ==
        0);
  CHECK(run_cli("audit --theorem thm18 --metric s1xs:n=5:t=0.1:normalized").exit_code ==
        0);
  // not satisfied -> 1
  CHECK(run_cli("audit --theorem thm11 --metric s1xs:n=6:t=0.1:normalized --p 3")
            .exit_code == 1);
  // usage / preconditions -> 2
  CHECK(run_cli("audit --theorem no-such --metric round-sphere:n=4:r=1").exit_code == 2);
  CHECK(run_cli("audit --theorem thm11 --metric perturbed-flat:n=4:amp=0.1:seed=42")
            .exit_code == 2);
  CHECK(run_cli("audit --theorem cor19 --metric round-sphere:n=6:r=1").exit_code == 2);
}

TEST_CASE("audit: report document carries the schema and input echo") {
  const std::string out = temp_path("audit_doc");
  RunResult r = run_cli(
      "audit --theorem gursky --metric round-sphere:n=4:r=1 --out " + out);
  CHECK(r.exit_code == 0);
  nlohmann::json j = read_json(out);
  CHECK(j["schema_version"] == "1.0");
  CHECK(j["kind"] == "pinching_report");
  CHECK(j["verdict"] == "boundary");
  CHECK(j["hypothesis_flags"]["bach_flat"] == true);
  CHECK(j["yamabe"]["provenance"] == "round-sphere-exact");
  CHECK(j["inputs"]["theorem"] == "gursky");
}

TEST_CASE("sample: determinism and exit codes") {
  const std::string out1 = temp_path("sample1");
  const std::string out2 = temp_path("sample2");
  RunResult a =
      run_cli("sample --inequality huisken --n 4 --trials 2000 --seed 7 --out " + out1);
  RunResult b =
      run_cli("sample --inequality huisken --n 4 --trials 2000 --seed 7 --out " + out2);
  CHECK(a.exit_code == 0);
  CHECK(a.out.find("violations=0") != std::string::npos);
  CHECK(slurp(out1) == slurp(out2));  // byte-identical reports

  nlohmann::json j = read_json(out1);
  CHECK(j["kind"] == "sample_stats");
  CHECK(j["violations"] == 0);
  CHECK(j["witness"].contains("weyl"));
  CHECK(j["witness"]["weyl"]["rank"] == 4);

  // witness replay: deserialize the argmax tensors and re-evaluate
  curvtk::CampaignConfig cfg;
  cfg.inequality = "huisken";
  cfg.n = 4;
  curvtk::Witness w;
  for (const char* name : {"weyl", "ric0"}) {
    w.names.push_back(name);
    w.ranks.push_back(j["witness"][name]["rank"].get<int>());
    w.tensors.push_back(j["witness"][name]["entries"].get<std::vector<double>>());
  }
  const double replayed = curvtk::replay_witness(cfg, w);
  CHECK(replayed ==
        doctest::Approx(j["max_ratio"].get<double>()).epsilon(1e-15));

  CHECK(run_cli("sample --inequality no-such --n 4 --trials 10").exit_code == 2);
  CHECK(run_cli("sample --inequality huisken --n 4 --trials 0").exit_code == 2);
  CHECK(run_cli("sample --inequality huisken --n 4 --trials 10 --distribution spiked")
            .exit_code == 2);
}

TEST_CASE("constants: outputs and branch-domain rejections") {
  RunResult r = run_cli("constants --n 4 --p 2");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("epsilon") != std::string::npos);
  CHECK(r.out.find("5.5698260711920") != std::string::npos);  // C(4), 17 digits

  CHECK(run_cli("constants --n 4 --p 1").exit_code == 2);               // p < n/2
  CHECK(run_cli("constants --n 6 --p 3.5 --branch middle").exit_code == 2);
  CHECK(run_cli("constants --n 6 --only C3").exit_code == 2);           // C3 domain
  CHECK(run_cli("constants --n 4 --only C3").exit_code == 0);
  CHECK(run_cli("constants --n 4 --sign sideways").exit_code == 2);
  CHECK(run_cli("constants --n 4 --only Q7").exit_code == 2);
}

TEST_CASE("verify: suites pass and bad ids exit 2") {
  RunResult r = run_cli("verify --suite algebra --trials 40 --seed 5");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("suite algebra: PASS") != std::string::npos);
  CHECK(r.out.find("kn-norm-combination") != std::string::npos);

  CHECK(run_cli("verify --suite nonexistent").exit_code == 2);
  CHECK(run_cli("verify --suite \"\"").exit_code == 2);
}

TEST_CASE("help exits zero; missing subcommand is a usage error") {
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("").exit_code == 2);
}
