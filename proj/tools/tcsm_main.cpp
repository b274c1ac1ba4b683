// tcsm: command-line front end. Prints the JSON (or CSV) report on stdout,
// or writes it to --out, and exits with the report's exit code.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "tcsm/commands.hpp"
#include "tcsm/hamiltonian.hpp"

namespace {

void model_options(CLI::App* sub, tcsm::RunConfig& cfg) {
  sub->add_option("--n", cfg.n, "number of particles")->required();
  sub->add_option("--r", cfg.r, "interaction range")->required();
  sub->add_option("--beta", cfg.beta, "coupling exponent beta > 0");
  sub->add_option("--L", cfg.length, "circumference (default 2 pi)");
}

void sampling_options(CLI::App* sub, tcsm::RunConfig& cfg) {
  sub->add_option("--samples", cfg.samples, "number of configurations");
  sub->add_option("--seed", cfg.seed, "sampler seed");
  sub->add_option("--min-sep-frac", cfg.min_sep_frac, "minimum separation as a fraction of L");
  sub->add_option("--tol", cfg.tol, "relative tolerance of the residual oracle");
  sub->add_option("--predicted-reduced", cfg.predicted_reduced,
                  "override the predicted level (reduced units)");
}

}  // namespace

int main(int argc, char** argv) {
  tcsm::RunConfig cfg;
  cfg.threads = tcsm::default_thread_count();

  CLI::App app{"truncated Calogero-Sutherland model toolkit"};
  app.require_subcommand(1);
  app.add_option("--output", cfg.output, "report format")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", cfg.out_path, "write the report to this file");
  app.add_option("--threads", cfg.threads, "worker threads (default: TCSM_THREADS or hardware)");
  app.add_flag("--deterministic", cfg.deterministic, "sequential evaluation and reduction");

  auto* params = app.add_subcommand("params", "derived parameters and ground energy");
  model_options(params, cfg);

  auto* table = app.add_subcommand("table1", "reference ground-energy table with verdicts");
  table->add_option("--samples", cfg.samples, "oracle samples for conflicting rows");
  table->add_option("--seed", cfg.seed, "sampler seed");
  table->add_option("--L", cfg.length, "circumference (default 2 pi)");

  auto* ground = app.add_subcommand("verify-ground", "local-energy check of the ground state");
  model_options(ground, cfg);
  sampling_options(ground, cfg);

  auto* excited = app.add_subcommand("verify-excited", "local-energy check of an excited state");
  model_options(excited, cfg);
  sampling_options(excited, cfg);
  excited->add_option("--state", cfg.state, "ground|e1|eNm1|eN|combo|cos|sin|nondeg0");
  excited->add_option("--q", cfg.q, "boost exponent");

  auto* spectrum = app.add_subcommand("spectrum", "exact pencil spectrum of the reduced operator");
  model_options(spectrum, cfg);
  spectrum->add_option("--degree", cfg.degree, "single degree block (default 0..N)");
  spectrum->add_option("--tol", cfg.spectral_tol, "certification threshold");

  auto* triples = app.add_subcommand("count-triples", "three-body term count");
  model_options(triples, cfg);
  triples->add_flag("--enumerate", cfg.enumerate, "also enumerate and list the triples");

  auto* symmetry = app.add_subcommand("symmetry", "parity partners and boost shifts");
  model_options(symmetry, cfg);

  // command-line options may follow the subcommand
  for (auto* sub : app.get_subcommands({})) {
    sub->add_option("--output", cfg.output, "report format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", cfg.out_path, "write the report to this file");
    sub->add_option("--threads", cfg.threads, "worker threads");
    sub->add_flag("--deterministic", cfg.deterministic, "sequential evaluation and reduction");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  const tcsm::CommandResult res = tcsm::run_command(cfg);
  const std::string text = cfg.output == "csv" ? res.csv : res.report.dump(2) + "\n";
  if (cfg.out_path) {
    std::ofstream out(*cfg.out_path, std::ios::binary);
    if (!out) {
      std::cerr << "cannot write " << *cfg.out_path << "\n";
      return 2;
    }
    out << text;
  } else {
    std::cout << text;
  }
  if (res.report.contains("error")) std::cerr << "error: " << res.report["error"].get<std::string>() << "\n";
  return res.exit_code;
}
