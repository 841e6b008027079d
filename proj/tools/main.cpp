#include "runner.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace flopslope;
using namespace flopslope::cli;

int main(int argc, char** argv) {
  CLI::App app{"Exact Futaki invariants of deformations to the normal cone and their flops"};
  app.require_subcommand(1);

  std::string job_file;
  std::string out_dir = ".";
  std::string grid;
  std::string gamma;
  std::string dprime;
  auto* run = app.add_subcommand("run", "Run a job file and write its report");
  run->add_option("job", job_file, "Job JSON file")->required();
  run->add_option("--out", out_dir, "Output directory");
  run->add_option("--grid", grid, "Sample b on lo:hi:step and write a CSV table");
  run->add_option("--gamma", gamma, "Value of gamma as p/q");
  run->add_option("--override-dprime", dprime, "Comma-separated D'.C_i values (auto keeps the default)");

  std::vector<std::string> catalog_args;
  auto* cat = app.add_subcommand("catalog", "List or show bundled surfaces");
  cat->add_option("args", catalog_args, "list | show <name>");

  std::string jobs_dir = default_jobs_dir().string();
  auto* verify = app.add_subcommand("verify-examples", "Run the bundled jobs and print a pass/fail table");
  verify->add_option("--jobs", jobs_dir, "Directory of bundled jobs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kParseError;
  }

  Catalog catalog = Catalog::from_env();
  if (*run) {
    RunOptions opts;
    try {
      if (!grid.empty()) opts.grid = parse_grid(grid, "--grid");
      if (!gamma.empty()) opts.gamma = rational_at(json(gamma), "--gamma");
      if (!dprime.empty()) opts.override_dprime = parse_dprime_list(dprime);
    } catch (const JobParseError& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kParseError;
    }
    return run_command(job_file, out_dir, opts, catalog, std::cout, std::cerr);
  }
  if (*cat) return catalog_command(catalog_args, catalog, std::cout, std::cerr);
  return verify_examples(jobs_dir, catalog, std::cout);
}
