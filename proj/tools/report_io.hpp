#pragma once

#include "job.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace flopslope::cli {

json to_json(const AlgebraicRoot& root);
json to_json(const RealInterval& range);
json to_json(const StabilityReport& report);

/// One row of the b-sample table.
struct Sample {
  Rational beta;
  /// Report polynomial at beta; unset when b is outside every window piece.
  std::optional<Rational> value;
};

/// The report polynomial at b: the reduced F when there is one, else F at
/// the upper end of the c-window piece covering b.
std::optional<Rational> report_value(const StabilityReport& report, const Rational& beta);
std::vector<Sample> sample(const StabilityReport& report, const std::vector<Rational>& betas);

/// "beta,F,F_approx" with exact p/q values and a "≈"-marked decimal column.
std::string to_csv(const std::vector<Sample>& samples);

/// Sorted keys, two-space indent, trailing newline.
std::string dump(const json& doc);

/// Writes through a temporary file in the same directory and renames it
/// into place.
void write_atomic(const std::filesystem::path& path, const std::string& bytes);

/// Lowercase hex SHA-256.
std::string sha256_hex(const std::string& bytes);

}  // namespace flopslope::cli
