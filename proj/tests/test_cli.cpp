#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

#include "doctest.h"

namespace {

struct Result {
  int code = -1;
  std::string out;
};

// Runs the CLI with the given arguments through the shell.
Result run(const std::string& args, bool merge_stderr = true) {
  std::string cmd = std::string(SEI_CLI_PATH) + " " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
  Result r;
  std::FILE* p = ::popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int status = ::pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

bool contains(const std::string& s, const std::string& needle) { return s.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("usage errors exit with 2") {
  const Result unknown = run("run --bogus");
  CHECK(unknown.code == 2);

  const Result zero_h = run("run --h 0");
  CHECK(zero_h.code == 2);
  CHECK(contains(zero_h.out, "h must be in (0,1]"));

  CHECK(run("").code == 2);
  CHECK(run("run --ic III").code == 2);
  CHECK(run("run --method rk4").code == 2);
}

TEST_CASE("config errors exit with 3") {
  const Result missing = run("convergence --config /nonexistent/cfg.json");
  CHECK(missing.code == 3);

  const Result no_potential = run("hamiltonian --field uniform --T 1");
  CHECK(no_potential.code == 3);
  CHECK(contains(no_potential.out, "field has no potential"));

  {
    std::ofstream f("cli_bad.json");
    f << "{\"experiment\": \"convergence\", \"unknown_key\": 1}";
  }
  CHECK(run("convergence --config cli_bad.json").code == 3);
  std::remove("cli_bad.json");
}

TEST_CASE("help lists every flag") {
  for (const char* sub : {"run", "convergence", "hamiltonian", "timing"}) {
    const Result r = run(std::string(sub) + " --help");
    CHECK(r.code == 0);
    for (const char* flag : {"--config", "--ic", "--method", "--h", "--T", "--out", "--field"}) {
      CAPTURE(flag);
      CHECK(contains(r.out, flag));
    }
  }
  const Result top = run("--help");
  CHECK(top.code == 0);
  for (const char* sub : {"run", "convergence", "hamiltonian", "timing", "selftest"}) CHECK(contains(top.out, sub));
}

TEST_CASE("run prints a JSON summary") {
  const Result r = run("run --ic II --h 0.0625 --T 1 --method both", false);
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j["trajectories"].size() == 2);
  for (const auto& t : j["trajectories"]) {
    CHECK(t["status"] == "ok");
    CHECK(t["final_state"]["gamma"].get<double>() > 1.0);
  }
}

TEST_CASE("convergence writes CSV and passes the gate") {
  const Result r = run("convergence --ic I --h 0.03125,0.015625 --h 0.0078125 --out cli_conv.csv", false);
  CHECK(r.code == 0);
  std::ifstream f("cli_conv.csv");
  std::string header;
  std::getline(f, header);
  CHECK(header == "method,ic,h,T,steps,err_u,status");
  int rows = 0;
  for (std::string line; std::getline(f, line);) ++rows;
  CHECK(rows == 6);
  std::remove("cli_conv.csv");

  const Result to_stdout = run("convergence --method sei --h 0.03125,0.015625,0.0078125", false);
  CHECK(to_stdout.code == 0);
  CHECK(to_stdout.out.rfind("method,ic,h,T,steps,err_u,status\n", 0) == 0);
}

TEST_CASE("config file with flag overrides") {
  {
    std::ofstream f("cli_cfg.json");
    f << R"({"experiment": "convergence", "ic": "II", "methods": ["heun"], "h_list": [0.5, 0.25]})";
  }
  const Result r = run("convergence --config cli_cfg.json --method sei --h 0.03125,0.015625,0.0078125", false);
  CHECK(r.code == 0);
  CHECK(contains(r.out, "sei,II,0.03125"));
  CHECK_FALSE(contains(r.out, "heun"));
  std::remove("cli_cfg.json");
}

TEST_CASE("selftest passes") {
  const Result r = run("selftest");
  CHECK(r.code == 0);
  CHECK(contains(r.out, "PASS"));
  CHECK_FALSE(contains(r.out, "FAIL"));
}
