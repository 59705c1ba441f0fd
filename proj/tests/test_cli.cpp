// Black-box checks of the installed CLI binary: exit codes, schemas,
// output-path handling. The heavier determinism criterion lives in the
// acceptance suite.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

namespace {

struct CliResult {
  int exit_code;
  std::string out;
};

CliResult run_cli(const std::string& args) {
  const std::string cmd = std::string(QBELL_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  const int status = pclose(pipe);
  return CliResult{WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string first_line(const std::string& text) {
  return text.substr(0, text.find('\n'));
}

std::filesystem::path fresh_dir(const char* name) {
  const auto dir = std::filesystem::temp_directory_path() / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("cq emits the documented schema and value") {
  const auto r = run_cli(
      "cq --scenario lg-spin-half-dephasing --metric delta --q 1 "
      "--theta 0.5235987756 --kappa 0");
  REQUIRE(r.exit_code == 0);
  CHECK(first_line(r.out) == "scenario,metric,q,theta,kappa,c_q");
  // Last column of the data row.
  const std::string row = r.out.substr(r.out.find('\n') + 1);
  const double value = std::stod(row.substr(row.rfind(',') + 1));
  CHECK(std::abs(value - 0.1415688226) <= 1e-6);
}

TEST_CASE("entropy subcommand on an inline joint") {
  const auto r = run_cli("entropy --joint \"0.5,0;0,0.5\" --q 2");
  REQUIRE(r.exit_code == 0);
  CHECK(first_line(r.out) == "quantity,value");
  CHECK(r.out.find("delta,0\n") != std::string::npos);
  CHECK(r.out.find("dtilde,0\n") != std::string::npos);
  CHECK(r.out.find("h_joint,0.5\n") != std::string::npos);

  const auto json = run_cli("entropy --joint \"0.5,0;0,0.5\" --q 2 --format json");
  REQUIRE(json.exit_code == 0);
  CHECK(json.out.find("\"quantity\": \"h_joint\"") != std::string::npos);
}

TEST_CASE("entropy subcommand reads a joint from a file") {
  const auto dir = fresh_dir("qbell-cli-joint");
  const auto path = dir / "joint.csv";
  {
    std::ofstream f(path);
    f << "# independent fair bits\n0.25,0.25\n0.25,0.25\n";
  }
  const auto r = run_cli("entropy --file " + path.string() + " --q 2");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("h_joint,0.75\n") != std::string::npos);
  CHECK(r.out.find("mutual_information,0.25\n") != std::string::npos);
}

TEST_CASE("scan-s writes the documented header and respects --out") {
  const auto dir = fresh_dir("qbell-cli-scan");
  const auto path = dir / "scan.csv";
  const auto r = run_cli(
      "scan-s --scenario chsh-dephasing --metric dtilde --q 1.0 "
      "--kappa 0:0.1:0.05 --coarse-steps 300 --out " + path.string());
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.empty());

  std::ifstream f(path);
  REQUIRE(f.good());
  std::string header;
  std::getline(f, header);
  CHECK(header == "scenario,metric,q,kappa,theta_star,s_value,positive");
  int rows = 0;
  std::string line;
  while (std::getline(f, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 3);
}

TEST_CASE("relative --out lands in QBELL_OUT_DIR") {
  const auto dir = fresh_dir("qbell-cli-outdir");
  setenv("QBELL_OUT_DIR", dir.c_str(), 1);
  const auto r = run_cli(
      "cq --scenario chsh-dephasing --metric dtilde --q 1 --theta 0.8 "
      "--kappa 0 --out nested/cq.csv");
  unsetenv("QBELL_OUT_DIR");
  REQUIRE(r.exit_code == 0);
  CHECK(std::filesystem::exists(dir / "nested" / "cq.csv"));
}

TEST_CASE("kappa-threshold reports absent thresholds as nan") {
  const auto r = run_cli(
      "kappa-threshold --scenario chsh-dephasing --metric dtilde --q 0.3 "
      "--coarse-steps 300");
  REQUIRE(r.exit_code == 0);
  CHECK(first_line(r.out) == "scenario,metric,q,kappa_s");
  CHECK(r.out.find(",nan") != std::string::npos);
}

TEST_CASE("validate-oracle passes on a small grid") {
  const auto r = run_cli(
      "validate-oracle --scenario chsh-dephasing --theta-steps 4 "
      "--kappa-steps 3");
  REQUIRE(r.exit_code == 0);
  CHECK(first_line(r.out) == "scenario,max_abs_dev,tolerance,pass");
  CHECK(r.out.find(",1\n") != std::string::npos);
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run_cli("scan-s --scenario nowhere --metric dtilde --q 1 --kappa 0")
            .exit_code == 2);
  CHECK(run_cli("cq --scenario chsh-dephasing --metric dtilde --q 1 "
                "--theta 0.5 --kappa 0 --no-such-flag")
            .exit_code == 2);
  CHECK(run_cli("entropy --q 2").exit_code == 2);
  CHECK(run_cli("").exit_code == 2);
  CHECK(run_cli("scan-s --scenario chsh-dephasing --metric dtilde --q 1,x "
                "--kappa 0")
            .exit_code == 2);
}

TEST_CASE("validation errors exit with code 1") {
  // Joint entries sum to 2: rejected by the library, not the flag parser.
  CHECK(run_cli("entropy --joint \"1,0;0,1\" --q 2").exit_code == 1);
  // Negative kappa reaches the library range check.
  CHECK(run_cli("cq --scenario chsh-dephasing --metric dtilde --q 1 "
                "--theta 0.5 --kappa -1")
            .exit_code == 1);
  // Threshold search cannot bracket below an undersized --kappa-max.
  CHECK(run_cli("kappa-threshold --scenario chsh-dephasing --metric dtilde "
                "--q 2.5 --kappa-max 0.01 --coarse-steps 300")
            .exit_code == 1);
}
