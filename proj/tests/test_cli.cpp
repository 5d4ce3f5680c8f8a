#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"

namespace {

const char* cli_path() {
  const char* p = std::getenv("DRBD_CLI");
  REQUIRE_MESSAGE(p != nullptr, "DRBD_CLI must point at the drbd binary");
  return p;
}

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  std::string cmd = std::string(cli_path()) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) r.out.append(buf, n);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string write_model(const std::string& name, const std::string& text) {
  auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace

TEST_CASE("rel emits the documented CSV rows") {
  std::string model = write_model("cli_series.drbd", "A ~ exp(0.1)\nB ~ exp(0.2)\nsystem = A * B\n");
  RunResult r = run("rel " + model + " --t0 0 --t1 1 --steps 1");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "t,rel\n0,1\n1,0.740818221\n");
}

TEST_CASE("simplify reproduces the table reductions") {
  std::string absorb = write_model("cli_absorb.drbd", "X ~ exp(1)\nY ~ exp(1)\nsystem = X + X*Y\n");
  CHECK(run("simplify " + absorb).out == "X\n");
  std::string never1 = write_model("cli_never1.drbd", "X ~ exp(1)\nsystem = X * never\n");
  CHECK(run("simplify " + never1).out == "X\n");
  std::string never2 = write_model("cli_never2.drbd", "X ~ exp(1)\nsystem = X + never\n");
  CHECK(run("simplify " + never2).out == "never\n");
}

TEST_CASE("exit codes: 2 for parse/semantic, 3 for numeric, 4 for oracle") {
  std::string bad = write_model("cli_bad.drbd", "system = A\n");
  CHECK(run("rel " + bad).exit_code == 2);

  std::string dup = write_model("cli_dup.drbd", "A ~ exp(1)\nsystem = A * A\n");
  CHECK(run("rel " + dup).exit_code == 2);

  std::string diverge =
      write_model("cli_div.drbd", "X ~ exp(1)\nY ~ exp(1)\nZ ~ exp(1)\nsystem = X * (Y + Z)\n");
  CHECK(run("simplify " + diverge + " --expand").exit_code == 3);

  std::string or1 = write_model("cli_or.drbd", "X ~ exp(1)\nY ~ exp(1)\nsystem = X + Y\n");
  std::string and1 = write_model("cli_and.drbd", "X ~ exp(1)\nY ~ exp(1)\nsystem = X * Y\n");
  CHECK(run("equiv " + or1 + " " + and1 + " --samples 2000").exit_code == 4);
  CHECK(run("equiv " + or1 + " " + or1 + " --samples 2000").exit_code == 0);
}

TEST_CASE("simulate is byte-stable for a fixed seed and any worker count") {
  std::string model = write_model("cli_sim.drbd",
                                  "Y ~ exp(1)\nspare S ~ exp(1) dormancy 0.5\nsystem = wsp(Y, S)\n");
  std::string base = "simulate " + model + " --t1 2 --steps 5 --samples 20000 --seed 7";
  RunResult one = run(base + " --workers 1");
  CHECK(one.exit_code == 0);
  CHECK(one.out.substr(0, 20) == "t,mc_rel,mc_halfwidt");
  CHECK(run(base + " --workers 2").out == one.out);
  CHECK(run(base + " --workers 8").out == one.out);
}

TEST_CASE("DRBD_SEED environment fallback changes the draw") {
  std::string model = write_model("cli_seed.drbd", "Y ~ exp(1)\nsystem = Y\n");
  std::string args = "simulate " + model + " --t1 1 --steps 1 --samples 1000";
  RunResult with_flag = run(args + " --seed 99");
  std::string cmd_prefix = "DRBD_SEED=99 ";
  FILE* pipe = popen((cmd_prefix + cli_path() + " " + args + " 2>/dev/null").c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, n);
  pclose(pipe);
  CHECK(out == with_flag.out);
}

TEST_CASE("compare agrees on a read-once model") {
  std::string model = write_model("cli_cmp.drbd", "A ~ exp(0.5)\nB ~ exp(0.25)\nsystem = A + B\n");
  RunResult r = run("compare " + model + " --t 1 --samples 50000 --seed 4");
  CHECK(r.exit_code == 0);
  CHECK(r.out.substr(0, 28) == "t,rel,mc_rel,mc_halfwidth,z\n");
}

TEST_CASE("casestudy rate overrides change the curve") {
  RunResult base = run("casestudy dbw --t1 1000 --steps 1");
  RunResult faster = run("casestudy dbw --t1 1000 --steps 1 --rate TF=1e-3");
  CHECK(base.exit_code == 0);
  CHECK(faster.exit_code == 0);
  CHECK(base.out != faster.out);
  CHECK(run("casestudy dbw --rate QQ=1").exit_code == 2);
  CHECK(run("casestudy nope").exit_code == 2);
}
