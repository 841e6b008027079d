#include "catalog.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>

#ifndef FLOPSLOPE_CATALOG_DIR
#define FLOPSLOPE_CATALOG_DIR "catalog"
#endif

namespace flopslope::cli {

namespace fs = std::filesystem;

Catalog::Catalog(fs::path dir) : dir_(std::move(dir)) {}

Catalog Catalog::from_env() {
  if (const char* env = std::getenv("FLOPSLOPE_CATALOG"); env && *env) return Catalog(env);
  return Catalog(FLOPSLOPE_CATALOG_DIR);
}

std::vector<std::string> Catalog::names() const {
  std::vector<std::string> out;
  if (!fs::is_directory(dir_)) throw CatalogError("catalog directory " + dir_.string() + " does not exist");
  for (const auto& entry : fs::directory_iterator(dir_)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") out.push_back(entry.path().stem().string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

json Catalog::load(const std::string& name) const {
  fs::path p = dir_ / (name + ".json");
  std::ifstream in(p);
  if (name.empty() || name.find('/') != std::string::npos || !in) {
    throw CatalogError("unknown catalog entry '" + name + "'");
  }
  json doc = json::parse(in, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) throw CatalogError("catalog entry '" + name + "' is not a JSON object");
  return doc;
}

json Catalog::show(const std::string& name) const {
  json entry = load(name);
  json as_job = entry;
  as_job["pipeline"] = "slope";
  BuiltJob b = build(parse_job(as_job, this));
  const SurfacePair& pair = *b.pair;
  const PicardLattice& lat = *pair.lattice();

  json out;
  out["name"] = name;
  out["description"] = entry.value("description", "");
  json gram = json::array();
  for (Eigen::Index i = 0; i < lat.rank(); ++i) gram.push_back(to_json(RationalVector(lat.gram().row(i).transpose())));
  out["lattice"] = {{"basis", lat.labels()}, {"gram", gram}, {"canonical", to_json(lat.canonical_coefficients())}};
  out["canonical"] = pair.canonical().str();
  out["boundary"] = {{"class", to_json(pair.boundary().coefficients())},
                     {"text", pair.boundary().str()},
                     {"self_intersection", intersect(pair.boundary(), pair.boundary()).str()},
                     {"genus", adjunction_genus(pair, pair.boundary()).str()}};
  out["z"] = {{"class", to_json(b.z.coefficients())},
              {"text", b.z.str()},
              {"self_intersection", intersect(b.z, b.z).str()},
              {"is_boundary", b.z == pair.boundary()}};
  json gens = json::array();
  for (const auto& g : pair.mori_generators()) {
    gens.push_back({{"label", g.label},
                    {"class", to_json(g.curve.coefficients())},
                    {"self_intersection", intersect(g.curve, g.curve).str()}});
  }
  out["mori_generators"] = gens;
  out["k_plus_c_squared"] = k_plus_c_squared(pair).str();
  AmpRegion amp = amp_region(pair);
  out["ample_region"] = amp.region ? json(amp.region->str()) : json(nullptr);
  out["asymptotically_log_fano"] = amp.asymptotically_log_fano;
  if (b.blowup) {
    out["blown_up_from"] = pair.provenance().parent->name();
    out["points"] = static_cast<int>(pair.provenance().points.size());
  }
  return out;
}

}  // namespace flopslope::cli
