#include <string>

#include "CLI11.hpp"

#include "czcap/cli.hpp"
#include "czcap/version.hpp"

int main(int argc, char** argv) {
  CLI::App app{std::string(czcap::kProjectName) +
               " - numerical laboratory for Calderon-Zygmund kernel capacities"};
  app.set_version_flag("--version", std::string(czcap::kVersion));
  app.set_help_flag("--help", "print help");  // frees -h for cell sizes
  app.require_subcommand(1);

  czcap::RunConfig cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->set_help_flag("--help", "print help");
    sub->add_option("-o,--out", cfg.output_path, "output file (default stdout)");
    sub->add_option("--seed", cfg.seed, "stream seed");
  };

  CLI::App* scan = app.add_subcommand(
      "scan-ratios", "extremes of (p1+p2)/c^2 over random triples");
  scan->add_option("--n", cfg.n, "kernel power")->check(CLI::PositiveNumber);
  scan->add_option("--samples", cfg.samples, "triples to draw")
      ->check(CLI::PositiveNumber);
  scan->add_option("--box-corner",
                   [&cfg](const std::vector<std::string>& vals) {
                     cfg.box_corner_x = std::stod(vals.at(0));
                     cfg.box_corner_y = std::stod(vals.at(1));
                     return true;
                   },
                   "lower-left corner of the sampling box")
      ->expected(2);
  scan->add_option("--box-side", cfg.box_side, "side of the sampling box")
      ->check(CLI::PositiveNumber);
  add_common(scan);

  CLI::App* ident = app.add_subcommand(
      "check-identities", "exact rational identity suite");
  ident->add_option("--max-m", cfg.max_m, "largest m for the binomial identity")
      ->check(CLI::NonNegativeNumber);
  ident->add_option("--max-n", cfg.max_n, "largest n for the polynomial checks")
      ->check(CLI::PositiveNumber);
  add_common(ident);

  CLI::App* energy = app.add_subcommand(
      "energy", "L^2 symmetrization report for a uniform grid measure");
  energy->add_option("--set", cfg.input_path, "set descriptor JSON")->required();
  energy->add_option("--h", cfg.h, "grid cell size")->check(CLI::PositiveNumber);
  energy->add_option("--n", cfg.n, "kernel power")->check(CLI::PositiveNumber);
  energy->add_option("--eps", cfg.eps, "separation cutoff (default h/2)");
  add_common(energy);

  CLI::App* capacity = app.add_subcommand(
      "capacity", "solve one capacity run descriptor");
  capacity->add_option("--run", cfg.input_path, "capacity run JSON")->required();
  capacity->add_flag("--witness", cfg.witness, "embed the witness measure");
  add_common(capacity);

  CLI::App* compare = app.add_subcommand(
      "compare", "capacity values for several kernel sets on one grid");
  compare->add_option("--set", cfg.input_path, "set descriptor JSON")->required();
  compare->add_option("--h", cfg.h, "grid cell size")->check(CLI::PositiveNumber);
  compare->add_option("--n", cfg.n, "odd-power kernel power")
      ->check(CLI::PositiveNumber);
  compare->add_option("--m", cfg.m, "second coordinate power (adds a mixed row)");
  add_common(compare);

  CLI::App* ahlfors = app.add_subcommand(
      "ahlfors", "non-Ahlfors ball covering of a capacity witness");
  ahlfors->add_option("--set", cfg.input_path, "set descriptor JSON")->required();
  ahlfors->add_option("--h", cfg.h, "grid cell size")->check(CLI::PositiveNumber);
  ahlfors->add_option("--M", cfg.big_m, "density threshold (default 100x growth)");
  ahlfors->add_option("--t", cfg.t, "smallest candidate radius (default h/2)");
  add_common(ahlfors);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : czcap::kExitUsage;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  return czcap::run(cfg);
}
