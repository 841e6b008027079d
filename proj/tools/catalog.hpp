#pragma once

#include "job.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace flopslope::cli {

/// Unknown catalog entry.
class CatalogError : public Error {
 public:
  explicit CatalogError(const std::string& message) : Error("catalog", message) {}
};

/// Directory of surface entries, one "<name>.json" per entry, in the job
/// schema (surface, boundary, z and an optional description).
class Catalog {
 public:
  explicit Catalog(std::filesystem::path dir);
  /// FLOPSLOPE_CATALOG if set, else the bundled directory.
  static Catalog from_env();

  const std::filesystem::path& dir() const { return dir_; }
  /// Sorted entry names.
  std::vector<std::string> names() const;
  /// Raw entry document; throws CatalogError.
  json load(const std::string& name) const;
  /// Lattice, canonical class, boundary, Z and Mori generators of an entry.
  json show(const std::string& name) const;

 private:
  std::filesystem::path dir_;
};

}  // namespace flopslope::cli
