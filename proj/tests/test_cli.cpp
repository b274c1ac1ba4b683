#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "tcsm/commands.hpp"

using namespace tcsm;

namespace {

RunConfig config(const std::string& command, int n, int r) {
  RunConfig cfg;
  cfg.command = command;
  cfg.n = n;
  cfg.r = r;
  cfg.samples = 300;
  cfg.deterministic = true;
  return cfg;
}

int run_binary(const std::string& args, const std::string& out_file) {
  const std::string cmd = std::string(TCSM_BIN) + " " + args + " > " + out_file + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("params report") {
  const auto res = run_command(config("params", 8, 3));
  CHECK(res.exit_code == 0);
  const auto& j = res.report;
  for (const char* key : {"N", "r", "beta", "L", "g", "G", "c", "k", "regime", "pair_count",
                          "triple_count_formula", "triple_count_enumerated", "E0_reduced",
                          "E0_physical", "verdicts"})
    CHECK(j.contains(key));
  CHECK(j["E0_reduced"] == 56);

  const auto full = run_command(config("params", 7, 3));
  CHECK(full.report["regime"] == "full");
  CHECK(full.report["triple_count_formula"] == 0);
  CHECK(full.report["triple_count_enumerated"] == 0);

  const auto conflict = run_command(config("params", 9, 3));
  CHECK(conflict.report["E0_reduced"] == 57);
  CHECK(conflict.report["table1_conflict"] == true);
  CHECK(conflict.exit_code == 1);
}

TEST_CASE("domain errors exit with 2") {
  const auto bad = run_command(config("params", 2, 1));
  CHECK(bad.exit_code == 2);
  CHECK(bad.report.contains("error"));
  CHECK(bad.report["verdicts"].is_array());

  auto boosted_cos = config("verify-excited", 6, 2);
  boosted_cos.state = "cos";
  boosted_cos.q = 1;
  CHECK(run_command(boosted_cos).exit_code == 2);

  auto unknown = config("verify-excited", 6, 2);
  unknown.state = "nope";
  CHECK(run_command(unknown).exit_code == 2);

  auto big = config("spectrum", 9, 2);
  CHECK(run_command(big).exit_code == 2);
  CHECK(run_command(config("frobnicate", 6, 2)).exit_code == 2);
}

TEST_CASE("verify commands") {
  auto cfg = config("verify-excited", 6, 2);
  cfg.state = "combo";
  const auto res = run_command(cfg);
  CHECK(res.exit_code == 0);
  CHECK(res.report["verdict"] == "pass");
  CHECK(res.report["predicted_reduced"].get<double>() == doctest::Approx(16.0));

  cfg.predicted_reduced = 17.0;
  CHECK(run_command(cfg).exit_code == 1);

  cfg = config("verify-excited", 6, 2);
  cfg.state = "nondeg0";
  const auto nd = run_command(cfg);
  CHECK(nd.report["trig_constant"]["confirmed"] == "N_r_beta_over_1_plus_2r_beta");

  CHECK(run_command(config("verify-ground", 9, 3)).exit_code == 0);
}

TEST_CASE("count-triples and symmetry") {
  auto cfg = config("count-triples", 11, 3);
  cfg.enumerate = true;
  const auto res = run_command(cfg);
  CHECK(res.exit_code == 0);
  CHECK(res.report["formula"] == res.report["enumerated"]);
  CHECK(res.report["triples"].size() == res.report["enumerated"].get<std::size_t>());

  const auto sym = run_command(config("symmetry", 6, 2));
  CHECK(sym.exit_code == 0);
  CHECK(sym.report["boost_formula"] == "2qd+Nq^2");
}

TEST_CASE("csv projection") {
  auto cfg = config("spectrum", 6, 2);
  cfg.degree = 6;
  const auto res = run_command(cfg);
  CHECK(res.csv.rfind("degree,lambda,imag,multiplicity,residual,matched\n", 0) == 0);
  CHECK(std::count(res.csv.begin(), res.csv.end(), '\n') == 3);
}

TEST_CASE("executable: exit codes and byte-identical output") {
  CHECK(run_binary("params --n 8 --r 3", "cli_a.json") == 0);
  CHECK(run_binary("params --n 9 --r 3", "cli_b.json") == 1);
  CHECK(run_binary("params --n 2 --r 1", "cli_c.json") == 2);
  CHECK(run_binary("params --n 8", "cli_c.json") == 2);
  CHECK(run_binary("bogus", "cli_c.json") == 2);

  const std::string args = "verify-excited --n 8 --r 3 --beta 2.5 --state e1 --samples 500 --seed 9";
  CHECK(run_binary(args + " --deterministic", "cli_d1.json") == 0);
  CHECK(run_binary(args + " --deterministic", "cli_d2.json") == 0);
  CHECK(run_binary(args + " --threads 3", "cli_d3.json") == 0);
  CHECK(slurp("cli_d1.json") == slurp("cli_d2.json"));
  CHECK(slurp("cli_d1.json") == slurp("cli_d3.json"));

  CHECK(run_binary("table1 --out cli_t.json", "cli_e.txt") == 1);
  CHECK(slurp("cli_e.txt").empty());
  CHECK(slurp("cli_t.json").find("\"adjudication\": \"closed_form\"") != std::string::npos);
}
