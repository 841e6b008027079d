#pragma once

#include "flopslope/analyzer/analyzer.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace flopslope::cli {

using json = nlohmann::json;

/// Schema violation at a JSON-pointer path.
class JobParseError : public Error {
 public:
  JobParseError(std::string pointer, const std::string& message)
      : Error("job-parse", pointer + ": " + message), pointer_(std::move(pointer)), message_(message) {}
  const std::string& pointer() const noexcept { return pointer_; }
  /// The message without the pointer prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  std::string pointer_;
  std::string message_;
};

enum class Pipeline { Slope, Flop, Maeda, Theorem };

std::string to_string(Pipeline p);

struct GridSpec {
  Rational lo;
  Rational hi;
  Rational step;

  std::vector<Rational> points() const;
  std::string str() const;
};

/// "lo:hi:step" with rational endpoints, lo <= hi, step > 0.
GridSpec parse_grid(const std::string& text, const std::string& pointer = "/beta/grid");

struct BetaMode {
  enum class Kind { Symbolic, Point, Grid };
  Kind kind = Kind::Symbolic;
  Rational point;
  GridSpec grid;
};

struct GeneratorSpec {
  std::string label;
  RationalVector curve;
};

struct JobSpec {
  std::string name;
  std::string minimal_model;
  std::vector<BlowupPoint> blowups;
  /// On the minimal model's basis.
  RationalVector boundary;
  /// Unset means "boundary"; otherwise a class on the minimal model's basis
  /// whose proper transform is used.
  std::optional<RationalVector> z;
  /// Unset means the engine's catalog generators.
  std::optional<std::vector<GeneratorSpec>> generators;
  /// Explicit D'.C_i values; unset entries use the default rule.
  std::vector<std::optional<Rational>> d_prime_dot_ci;
  /// Unset means c = epsilon (or the pipeline's own default).
  std::optional<MPoly> c_rule;
  BetaMode beta;
  Pipeline pipeline = Pipeline::Slope;
  std::optional<Rational> gamma;
  /// Golden values checked by verify-examples; carried verbatim.
  json expect;
};

/// Entry lookups for {"surface": {"catalog": name}}.
class Catalog;

/// Throws JobParseError; catalog references are resolved so the result
/// holds the full surface description.
JobSpec parse_job(const json& doc, const Catalog* catalog = nullptr);
/// Canonical form: every rational as a "p/q" string, polynomials in
/// canonical form, keys sorted. parse_job(to_json(j)) == j.
json to_json(const JobSpec& job);

bool operator==(const JobSpec& a, const JobSpec& b);

struct BuiltJob {
  PairPtr pair;
  /// Set when the job has blow-ups.
  std::optional<BlowupResult> blowup;
  DivisorClass z;
};

/// Builds the surface pair. Engine errors (bad classes, infinitely near
/// points) propagate as flopslope::Error.
BuiltJob build(const JobSpec& job);

// Helpers shared with the catalog and report writers.
Rational rational_at(const json& v, const std::string& pointer);
RationalVector vector_at(const json& v, const std::string& pointer, Eigen::Index rank);
json to_json(const Rational& q);
json to_json(const RationalVector& v);
/// Rank of the Picard lattice of a minimal model tag; throws JobParseError.
Eigen::Index model_rank(const std::string& tag, const std::string& pointer);

}  // namespace flopslope::cli
