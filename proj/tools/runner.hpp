#pragma once

#include "catalog.hpp"
#include "report_io.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace flopslope::cli {

enum ExitCode { kOk = 0, kFailed = 1, kInvalidConfig = 2, kParseError = 3 };

struct RunOptions {
  std::optional<GridSpec> grid;
  std::optional<Rational> gamma;
  std::optional<std::vector<std::optional<Rational>>> override_dprime;
};

/// Comma-separated D'.C_i values; "auto" (or an empty entry) keeps the
/// default rule for that curve.
std::vector<std::optional<Rational>> parse_dprime_list(const std::string& text);

struct RunOutput {
  int exit_code = kOk;
  std::string name;
  /// Report document, or an {"error": ...} document.
  json document;
  std::optional<JobSpec> job;
  std::optional<StabilityReport> report;
  /// Set when a grid was requested and the run completed.
  std::optional<std::string> csv;
};

/// Runs a job held in memory. Never throws for bad input: parse errors give
/// exit 3, engine errors and InvalidConfig verdicts exit 2.
RunOutput run_job(const std::string& bytes, const std::string& fallback_name, const RunOptions& options,
                  const Catalog& catalog);

/// Executes an already parsed job.
StabilityReport execute(const JobSpec& job, const BuiltJob& built);

/// `run`: reads the job file and writes <out>/<name>.report.json (and
/// <name>.samples.csv for grids).
int run_command(const std::filesystem::path& job_file, const std::filesystem::path& out_dir, const RunOptions& options,
                const Catalog& catalog, std::ostream& out, std::ostream& err);

int catalog_command(const std::vector<std::string>& args, const Catalog& catalog, std::ostream& out, std::ostream& err);

struct CheckRow {
  std::string job;
  std::string check;
  bool pass = false;
  std::string detail;
};

/// Golden checks of one job against its "expect" block.
std::vector<CheckRow> check_expectations(const std::string& job_name, const RunOutput& run);

/// Runs every bundled job in `jobs_dir` and prints a pass/fail table.
int verify_examples(const std::filesystem::path& jobs_dir, const Catalog& catalog, std::ostream& out);

/// FLOPSLOPE_JOBS if set, else the bundled directory.
std::filesystem::path default_jobs_dir();

}  // namespace flopslope::cli
