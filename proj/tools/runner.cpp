#include "runner.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#ifndef FLOPSLOPE_JOBS_DIR
#define FLOPSLOPE_JOBS_DIR "jobs"
#endif
#ifndef FLOPSLOPE_VERSION
#define FLOPSLOPE_VERSION "0"
#endif

namespace flopslope::cli {

namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + p.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

json provenance(const std::string& bytes) {
  return {{"engine", "flopslope"}, {"version", FLOPSLOPE_VERSION}, {"input_sha256", sha256_hex(bytes)}};
}

json error_doc(const std::string& bytes, const std::string& kind, const std::string& message,
               const std::optional<std::string>& pointer = std::nullopt) {
  json e{{"kind", kind}, {"message", message}};
  if (pointer) e["pointer"] = *pointer;
  return {{"provenance", provenance(bytes)}, {"error", e}};
}

const SurfacePair& parent_of(const BuiltJob& b) { return *b.pair->provenance().parent; }

}  // namespace

std::vector<std::optional<Rational>> parse_dprime_list(const std::string& text) {
  std::vector<std::optional<Rational>> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i < text.size() && text[i] != ',') continue;
    std::string item = text.substr(start, i - start);
    start = i + 1;
    if (item.empty() || item == "auto") {
      out.push_back(std::nullopt);
    } else {
      try {
        out.push_back(Rational::parse(item));
      } catch (const Error& e) {
        throw JobParseError("/flop/d_prime_dot_ci/" + std::to_string(out.size()), e.what());
      }
    }
  }
  return out;
}

StabilityReport execute(const JobSpec& job, const BuiltJob& built) {
  const PairPtr& pair = built.pair;
  StabilityReport r;
  switch (job.pipeline) {
    case Pipeline::Slope: {
      DNCConfig cfg = DNCConfig::log_fano(pair, built.z);
      if (job.c_rule) {
        r = slope_rule_verdict(cfg, *job.c_rule);
      } else if (job.beta.kind == BetaMode::Kind::Point) {
        r = slope_verdict(cfg, job.beta.point);
      } else {
        r = slope_verdict(cfg);
      }
      break;
    }
    case Pipeline::Flop:
      r = flop_slope_verdict(pair, job.c_rule, job.d_prime_dot_ci);
      break;
    case Pipeline::Maeda:
      if (built.blowup) {
        r = flop_destabilize(pair, job.gamma.value_or(default_gamma(parent_of(built))), job.c_rule);
      } else {
        if (job.c_rule) throw InvalidConfigError("the maeda pipeline on a minimal model takes gamma, not a c rule");
        if (!(built.z == pair->boundary())) throw InvalidConfigError("the maeda pipeline needs Z = C");
        r = maeda_destabilize(pair, job.gamma.value_or(default_gamma(*pair)));
      }
      break;
    case Pipeline::Theorem:
      r = theorem_check(pair, job.gamma);
      break;
  }
  if (!job.d_prime_dot_ci.empty() && job.pipeline != Pipeline::Flop) {
    r.notes.push_back("D'.C_i override ignored by the " + to_string(job.pipeline) + " pipeline");
  }
  return r;
}

RunOutput run_job(const std::string& bytes, const std::string& fallback_name, const RunOptions& options,
                  const Catalog& catalog) {
  RunOutput out;
  out.name = fallback_name;
  json doc = json::parse(bytes, nullptr, false);
  if (doc.is_discarded()) {
    out.exit_code = kParseError;
    out.document = error_doc(bytes, "parse", "input is not valid JSON", std::string(""));
    return out;
  }
  JobSpec job;
  try {
    job = parse_job(doc, &catalog);
    if (options.grid) {
      job.beta.kind = BetaMode::Kind::Grid;
      job.beta.grid = *options.grid;
    }
    if (options.gamma) job.gamma = *options.gamma;
    if (options.override_dprime) job.d_prime_dot_ci = *options.override_dprime;
  } catch (const JobParseError& e) {
    out.exit_code = kParseError;
    out.document = error_doc(bytes, "parse", e.message(), e.pointer());
    return out;
  }
  if (job.name.empty()) job.name = fallback_name;
  out.name = job.name;
  out.job = job;

  StabilityReport report;
  try {
    report = execute(job, build(job));
  } catch (const Error& e) {
    out.exit_code = kInvalidConfig;
    out.document = error_doc(bytes, e.kind(), e.what());
    out.document["job"] = to_json(job);
    return out;
  }

  json d;
  d["provenance"] = provenance(bytes);
  d["job"] = to_json(job);
  d["report"] = to_json(report);
  if (job.beta.kind == BetaMode::Kind::Point) {
    auto v = report_value(report, job.beta.point);
    d["evaluation"] = {{"beta", job.beta.point.str()}, {"F", v ? json(v->str()) : json(nullptr)}};
  }
  if (job.beta.kind == BetaMode::Kind::Grid) {
    auto rows = sample(report, job.beta.grid.points());
    d["samples"] = {{"grid", job.beta.grid.str()}, {"count", rows.size()}};
    out.csv = to_csv(rows);
  }
  out.document = d;
  out.exit_code = report.verdict == Verdict::InvalidConfig ? kInvalidConfig : kOk;
  out.report = std::move(report);
  return out;
}

int run_command(const fs::path& job_file, const fs::path& out_dir, const RunOptions& options, const Catalog& catalog,
                std::ostream& out, std::ostream& err) {
  std::string bytes;
  try {
    bytes = read_file(job_file);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kParseError;
  }
  RunOutput r = run_job(bytes, job_file.stem().string(), options, catalog);
  fs::create_directories(out_dir);
  fs::path report_path = out_dir / (r.name + ".report.json");
  write_atomic(report_path, dump(r.document));
  if (r.csv) write_atomic(out_dir / (r.name + ".samples.csv"), *r.csv);

  if (r.document.contains("error")) {
    const json& e = r.document.at("error");
    err << "error";
    if (e.contains("pointer")) err << " at " << (e.at("pointer").get<std::string>().empty() ? "/" : e.at("pointer").get<std::string>());
    err << ": " << e.at("message").get<std::string>() << "\n";
  } else {
    out << r.name << ": " << to_string(r.report->verdict) << " -> " << report_path.string() << "\n";
  }
  return r.exit_code;
}

int catalog_command(const std::vector<std::string>& args, const Catalog& catalog, std::ostream& out,
                    std::ostream& err) {
  try {
    if (args.empty() || args[0] == "list") {
      for (const auto& name : catalog.names()) {
        json entry = catalog.load(name);
        out << std::left << std::setw(12) << name << "  " << entry.value("description", "") << "\n";
      }
      return kOk;
    }
    if (args[0] == "show" && args.size() == 2) {
      out << dump(catalog.show(args[1]));
      return kOk;
    }
    err << "usage: catalog list | catalog show <name>\n";
    return kInvalidConfig;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidConfig;
  }
}

namespace {

MPoly parse_in_bc(const std::string& text) {
  MPoly p = MPoly::parse(text);
  p.declare(Symbol::beta());
  p.declare(Symbol::c());
  return p;
}

bool same_poly(MPoly a, MPoly b) {
  for (Symbol s : {Symbol::beta(), Symbol::c()}) {
    a.declare(s);
    b.declare(s);
  }
  return a == b;
}

// A rational expectation must equal the root; a polynomial one must vanish
// at it: its gcd with the defining polynomial has a root in the isolating
// interval.
bool threshold_matches(const AlgebraicRoot& root, const std::string& expected) {
  MPoly e = MPoly::parse(expected);
  if (auto q = e.as_constant()) return root.is_exact() && *root.exact_value() == *q;
  if (root.is_exact()) return evaluate(e, {{Symbol::beta(), *root.exact_value()}}).is_zero();
  UPoly g = gcd(UPoly::from_mpoly(root.defining_polynomial, Symbol::beta()), UPoly::from_mpoly(e, Symbol::beta()));
  return g.degree() > 0 && count_distinct_roots(g, root.isolating_interval) == 1;
}

std::string thresholds_text(const StabilityReport& r) {
  std::string s;
  for (const auto& t : r.thresholds) s += (s.empty() ? "" : "; ") + t.str();
  return s.empty() ? "none" : s;
}

}  // namespace

std::vector<CheckRow> check_expectations(const std::string& job_name, const RunOutput& run) {
  std::vector<CheckRow> rows;
  auto add = [&](std::string check, bool pass, std::string detail) {
    rows.push_back({job_name, std::move(check), pass, std::move(detail)});
  };
  if (!run.job || run.job->expect.is_null()) {
    add("expect", false, "no expectations");
    return rows;
  }
  const json& ex = run.job->expect;
  if (ex.contains("exit_code")) {
    int want = ex.at("exit_code").get<int>();
    add("exit_code", run.exit_code == want, "got " + std::to_string(run.exit_code));
  }
  if (!run.report) {
    std::string msg = run.document.contains("error") ? run.document.at("error").at("message").get<std::string>() : "";
    if (!ex.contains("exit_code")) add("run", false, "no report: " + msg);
    return rows;
  }
  const StabilityReport& r = *run.report;
  try {
    if (ex.contains("verdict")) {
      add("verdict", to_string(r.verdict) == ex.at("verdict").get<std::string>(), "got " + to_string(r.verdict));
    }
    if (ex.contains("futaki")) {
      MPoly want = parse_in_bc(ex.at("futaki").get<std::string>());
      add("futaki", same_poly(r.futaki.value, want * r.futaki.denominator), "got " + r.futaki.value.str());
    }
    if (ex.contains("reduced")) {
      MPoly want = parse_in_bc(ex.at("reduced").get<std::string>());
      add("reduced", r.reduced && same_poly(*r.reduced, want), "got " + (r.reduced ? r.reduced->str() : "none"));
    }
    if (ex.contains("thresholds")) {
      const json& want = ex.at("thresholds");
      bool ok = want.size() == r.thresholds.size();
      for (std::size_t i = 0; ok && i < want.size(); ++i) ok = threshold_matches(r.thresholds[i], want[i].get<std::string>());
      add("thresholds", ok, "got " + thresholds_text(r));
    }
    if (ex.contains("window")) {
      const json& w = ex.at("window");
      bool ok = !r.window.pieces.empty() && same_poly(r.window.pieces[0].lower, parse_in_bc(w.at(0).get<std::string>())) &&
                same_poly(r.window.pieces[0].upper, parse_in_bc(w.at(1).get<std::string>()));
      add("window", ok, "got " + r.window.str());
    }
    if (ex.contains("limit_at_zero")) {
      Rational want = Rational::parse(ex.at("limit_at_zero").get<std::string>());
      bool ok = r.limit_at_zero && r.limit_at_zero->as_constant() && *r.limit_at_zero->as_constant() == want;
      add("limit_at_zero", ok, "got " + (r.limit_at_zero ? r.limit_at_zero->str() : "none"));
    }
    if (ex.contains("limit_at_zero_at_most")) {
      Rational want = Rational::parse(ex.at("limit_at_zero_at_most").get<std::string>());
      bool ok = r.limit_at_zero && r.limit_at_zero->as_constant() && *r.limit_at_zero->as_constant() <= want;
      add("limit_at_zero<=" + want.str(), ok, "got " + (r.limit_at_zero ? r.limit_at_zero->str() : "none"));
    }
    if (ex.contains("beta0_positive")) {
      add("beta0", r.beta0 && r.beta0->sign() > 0, "got " + (r.beta0 ? r.beta0->str() : "none"));
    }
    if (ex.contains("witness") && ex.at("witness").get<bool>()) {
      bool ok = false;
      if (r.witness) {
        Rational f = evaluate(r.futaki.value, {{Symbol::beta(), r.witness->beta}, {Symbol::c(), r.witness->c}});
        ok = f.sign() < 0 && r.window.contains(r.witness->beta, r.witness->c);
      }
      add("witness", ok,
          r.witness ? "(b, c) = (" + r.witness->beta.str() + ", " + r.witness->c.str() + ")" : std::string("none"));
    }
  } catch (const Error& e) {
    add("expect", false, std::string("malformed expectation: ") + e.what());
  }
  return rows;
}

fs::path default_jobs_dir() {
  if (const char* env = std::getenv("FLOPSLOPE_JOBS"); env && *env) return env;
  return FLOPSLOPE_JOBS_DIR;
}

int verify_examples(const fs::path& jobs_dir, const Catalog& catalog, std::ostream& out) {
  std::vector<fs::path> files;
  if (fs::is_directory(jobs_dir)) {
    for (const auto& e : fs::directory_iterator(jobs_dir)) {
      if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<CheckRow> rows;
  for (const auto& f : files) {
    std::string name = f.stem().string();
    RunOutput run;
    try {
      run = run_job(read_file(f), name, {}, catalog);
    } catch (const std::exception& e) {
      rows.push_back({name, "run", false, e.what()});
      continue;
    }
    auto got = check_expectations(name, run);
    rows.insert(rows.end(), got.begin(), got.end());
  }
  std::size_t width = 4;
  for (const auto& row : rows) width = std::max(width, row.job.size());
  std::size_t passed = 0;
  out << std::left << std::setw(static_cast<int>(width)) << "job" << "  " << std::setw(24) << "check" << "  result\n";
  for (const auto& row : rows) {
    passed += row.pass ? 1 : 0;
    out << std::left << std::setw(static_cast<int>(width)) << row.job << "  " << std::setw(24) << row.check << "  "
        << (row.pass ? "PASS" : "FAIL");
    if (!row.pass) out << "  " << row.detail;
    out << "\n";
  }
  out << passed << "/" << rows.size() << " checks passed\n";
  return !rows.empty() && passed == rows.size() ? kOk : kFailed;
}

}  // namespace flopslope::cli
