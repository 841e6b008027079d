#include "report_io.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <sstream>
#include <unistd.h>

namespace flopslope::cli {

namespace fs = std::filesystem;

namespace {

json optional_poly(const std::optional<MPoly>& p) { return p ? json(p->str()) : json(nullptr); }

json interval_json(const Interval& i) {
  return {{"lo", i.lo().str()}, {"hi", i.hi().str()}, {"lo_open", i.lo_open()}, {"hi_open", i.hi_open()}};
}

}  // namespace

json to_json(const AlgebraicRoot& root) {
  json out;
  out["text"] = root.str();
  out["defining_polynomial"] = root.defining_polynomial.str();
  out["isolating_interval"] = interval_json(root.isolating_interval);
  out["exact"] = root.is_exact() ? json(root.exact_value()->str()) : json(nullptr);
  out["multiplicity"] = root.multiplicity;
  out["approx"] = "≈" + root.approx(12);
  return out;
}

json to_json(const RealInterval& range) {
  return {{"text", range.str()},
          {"lo", to_json(range.lo)},
          {"hi", to_json(range.hi)},
          {"lo_open", range.lo_open},
          {"hi_open", range.hi_open}};
}

json to_json(const StabilityReport& r) {
  json out;
  out["configuration"] = r.configuration;
  out["pipeline"] = r.pipeline;
  out["verdict"] = to_string(r.verdict);
  out["reason"] = r.reason;
  out["futaki"] = {{"numerator", r.futaki.value.str()},
                   {"denominator", r.futaki.denominator.str()},
                   {"branch", to_string(r.futaki.branch)},
                   {"source", to_string(r.futaki.provenance)}};
  out["c_rule"] = r.c_rule;
  out["reduced"] = optional_poly(r.reduced);
  json pieces = json::array();
  for (const auto& p : r.window.pieces) {
    pieces.push_back({{"beta_range", p.beta_range.str()}, {"lower", p.lower.str()}, {"upper", p.upper.str()}});
  }
  out["window"] = {{"unbounded", r.window.unbounded}, {"pieces", pieces}};
  out["witness"] = r.witness ? json{{"beta", r.witness->beta.str()}, {"c", r.witness->c.str()},
                                    {"value", r.witness->value.str()}}
                             : json(nullptr);
  json th = json::array();
  for (const auto& t : r.thresholds) th.push_back(to_json(t));
  out["thresholds"] = th;
  json ranges = json::array();
  for (const auto& range : r.beta_unstable_ranges) ranges.push_back(to_json(range));
  out["beta_unstable_ranges"] = ranges;
  out["beta0"] = r.beta0 ? json(r.beta0->str()) : json(nullptr);
  out["limit_at_zero"] = optional_poly(r.limit_at_zero);
  out["bound"] = optional_poly(r.bound);
  out["certificates"] = r.certificates;
  out["notes"] = r.notes;
  return out;
}

std::optional<Rational> report_value(const StabilityReport& r, const Rational& beta) {
  if (r.reduced) return evaluate(*r.reduced, {{Symbol::beta(), beta}});
  const WindowPiece* piece = r.window.at(beta);
  if (!piece) return std::nullopt;
  Rational c = partial_evaluate(piece->upper, {{Symbol::beta(), beta}}).constant_term();
  return evaluate(r.futaki.value, {{Symbol::beta(), beta}, {Symbol::c(), c}});
}

std::vector<Sample> sample(const StabilityReport& report, const std::vector<Rational>& betas) {
  std::vector<Sample> out;
  out.reserve(betas.size());
  for (const auto& b : betas) out.push_back({b, report_value(report, b)});
  return out;
}

std::string to_csv(const std::vector<Sample>& samples) {
  std::ostringstream os;
  os << "beta,F,F_approx\n";
  for (const auto& s : samples) {
    os << s.beta.str() << ',';
    if (s.value) os << s.value->str() << ",≈" << s.value->decimal(12);
    else os << ',';
    os << '\n';
  }
  return os.str();
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

void write_atomic(const fs::path& path, const std::string& bytes) {
  fs::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << bytes;
    out.flush();
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

}  // namespace flopslope::cli
