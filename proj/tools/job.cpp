#include "job.hpp"

#include "catalog.hpp"

#include <set>

namespace flopslope::cli {

namespace {

const std::set<std::string> kTopKeys{"name",     "description", "surface", "boundary", "z",     "generators",
                                     "flop",     "c_rule",      "beta",    "pipeline", "gamma", "expect"};

std::string child(const std::string& pointer, const std::string& key) {
  std::string k;
  for (char ch : key) {
    if (ch == '~') {
      k += "~0";
    } else if (ch == '/') {
      k += "~1";
    } else {
      k += ch;
    }
  }
  return pointer + "/" + k;
}

std::string child(const std::string& pointer, std::size_t i) { return pointer + "/" + std::to_string(i); }

const json& require(const json& obj, const std::string& key, const std::string& pointer) {
  if (!obj.contains(key)) throw JobParseError(child(pointer, key), "required field is missing");
  return obj.at(key);
}

std::string string_at(const json& v, const std::string& pointer) {
  if (!v.is_string()) throw JobParseError(pointer, "expected a string");
  return v.get<std::string>();
}

bool bool_at(const json& v, const std::string& pointer) {
  if (!v.is_boolean()) throw JobParseError(pointer, "expected true or false");
  return v.get<bool>();
}

void only_keys(const json& obj, const std::set<std::string>& keys, const std::string& pointer) {
  if (!obj.is_object()) throw JobParseError(pointer, "expected an object");
  for (const auto& [k, _] : obj.items()) {
    if (!keys.count(k)) throw JobParseError(child(pointer, k), "unknown field");
  }
}

MPoly poly_at(const json& v, const std::string& pointer) {
  std::string text;
  if (v.is_number_integer()) {
    text = std::to_string(v.get<long long>());
  } else {
    text = string_at(v, pointer);
  }
  MPoly p;
  try {
    p = MPoly::parse(text);
  } catch (const Error& e) {
    throw JobParseError(pointer, e.what());
  }
  for (Symbol s : p.occurring_variables()) {
    if (s != Symbol::beta()) throw JobParseError(pointer, "polynomial may only involve b, found " + s.name());
  }
  p.prune_variables();
  p.declare(Symbol::beta());
  return p;
}

BlowupPoint point_at(const json& v, const std::string& pointer) {
  only_keys(v, {"on_boundary", "on_z", "tangent_dir_equals_z", "infinitely_near_to"}, pointer);
  BlowupPoint p;
  if (v.contains("on_boundary")) p.on_boundary = bool_at(v.at("on_boundary"), child(pointer, "on_boundary"));
  if (v.contains("on_z")) p.on_z = bool_at(v.at("on_z"), child(pointer, "on_z"));
  if (v.contains("tangent_dir_equals_z")) {
    p.tangent_dir_equals_z = bool_at(v.at("tangent_dir_equals_z"), child(pointer, "tangent_dir_equals_z"));
  }
  if (v.contains("infinitely_near_to")) {
    const json& n = v.at("infinitely_near_to");
    if (!n.is_number_integer()) throw JobParseError(child(pointer, "infinitely_near_to"), "expected an integer index");
    p.infinitely_near_to = n.get<int>();
  }
  return p;
}

BetaMode beta_at(const json& v, const std::string& pointer) {
  BetaMode m;
  if (v.is_string() && v.get<std::string>() == "symbolic") return m;
  if (v.is_object()) {
    only_keys(v, {"grid"}, pointer);
    m.kind = BetaMode::Kind::Grid;
    m.grid = parse_grid(string_at(require(v, "grid", pointer), child(pointer, "grid")), child(pointer, "grid"));
    return m;
  }
  m.kind = BetaMode::Kind::Point;
  m.point = rational_at(v, pointer);
  if (m.point.sign() <= 0 || m.point > 1) throw JobParseError(pointer, "b must lie in (0, 1]");
  return m;
}

Pipeline pipeline_at(const json& v, const std::string& pointer) {
  std::string s = string_at(v, pointer);
  if (s == "slope") return Pipeline::Slope;
  if (s == "flop") return Pipeline::Flop;
  if (s == "maeda") return Pipeline::Maeda;
  if (s == "theorem") return Pipeline::Theorem;
  throw JobParseError(pointer, "unknown pipeline '" + s + "' (slope, flop, maeda, theorem)");
}

// Catalog entry fields first, then the job's own fields on top.
json resolve(const json& doc, const Catalog* catalog) {
  if (!doc.contains("surface") || !doc.at("surface").is_object() || !doc.at("surface").contains("catalog")) return doc;
  const json& surf = doc.at("surface");
  if (surf.size() != 1) throw JobParseError("/surface", "a catalog reference cannot be combined with other fields");
  std::string name = string_at(surf.at("catalog"), "/surface/catalog");
  if (!catalog) throw JobParseError("/surface/catalog", "no catalog available");
  json entry;
  try {
    entry = catalog->load(name);
  } catch (const CatalogError& e) {
    throw JobParseError("/surface/catalog", e.what());
  }
  json out = doc;
  out["surface"] = entry.at("surface");
  for (const char* key : {"boundary", "z", "generators"}) {
    if (!doc.contains(key) && entry.contains(key)) out[key] = entry.at(key);
  }
  if (!doc.contains("name") && entry.contains("name")) out["name"] = entry.at("name");
  return out;
}

}  // namespace

std::string to_string(Pipeline p) {
  switch (p) {
    case Pipeline::Slope:
      return "slope";
    case Pipeline::Flop:
      return "flop";
    case Pipeline::Maeda:
      return "maeda";
    case Pipeline::Theorem:
      return "theorem";
  }
  return "?";
}

std::vector<Rational> GridSpec::points() const {
  std::vector<Rational> out;
  for (Rational x = lo; x <= hi; x += step) out.push_back(x);
  return out;
}

std::string GridSpec::str() const { return lo.str() + ":" + hi.str() + ":" + step.str(); }

GridSpec parse_grid(const std::string& text, const std::string& pointer) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == ':') {
      parts.push_back(text.substr(start, i - start));
      start = i + 1;
    }
  }
  if (parts.size() != 3) throw JobParseError(pointer, "grid descriptor must be lo:hi:step");
  GridSpec g;
  try {
    g.lo = Rational::parse(parts[0]);
    g.hi = Rational::parse(parts[1]);
    g.step = Rational::parse(parts[2]);
  } catch (const Error& e) {
    throw JobParseError(pointer, e.what());
  }
  if (g.step.sign() <= 0) throw JobParseError(pointer, "grid step must be positive");
  if (g.hi < g.lo) throw JobParseError(pointer, "grid upper end is below the lower end");
  if ((g.hi - g.lo) / g.step > Rational(100000)) throw JobParseError(pointer, "grid has more than 100000 points");
  return g;
}

Rational rational_at(const json& v, const std::string& pointer) {
  if (v.is_number_integer()) return Rational(v.get<long long>());
  if (!v.is_string()) throw JobParseError(pointer, "expected an integer or a \"p/q\" string");
  try {
    return Rational::parse(v.get<std::string>());
  } catch (const Error& e) {
    throw JobParseError(pointer, e.what());
  }
}

RationalVector vector_at(const json& v, const std::string& pointer, Eigen::Index rank) {
  if (!v.is_array()) throw JobParseError(pointer, "expected an array of coefficients");
  if (static_cast<Eigen::Index>(v.size()) != rank) {
    throw JobParseError(pointer, "expected " + std::to_string(rank) + " coefficients, got " + std::to_string(v.size()));
  }
  RationalVector out(rank);
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = rational_at(v[i], child(pointer, i));
  return out;
}

json to_json(const Rational& q) { return q.str(); }

json to_json(const RationalVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i).str());
  return out;
}

Eigen::Index model_rank(const std::string& tag, const std::string& pointer) {
  if (tag == "P2") return 1;
  if (tag.size() == 2 && tag[0] == 'F' && tag[1] >= '0' && tag[1] <= '9') return 2;
  throw JobParseError(pointer, "unknown minimal model '" + tag + "' (P2, F0..F9)");
}

JobSpec parse_job(const json& input, const Catalog* catalog) {
  if (!input.is_object()) throw JobParseError("", "job must be a JSON object");
  json doc = resolve(input, catalog);
  only_keys(doc, kTopKeys, "");
  JobSpec job;
  if (doc.contains("name")) job.name = string_at(doc.at("name"), "/name");

  const json& surf = require(doc, "surface", "");
  only_keys(surf, {"minimal_model", "blowups"}, "/surface");
  job.minimal_model = string_at(require(surf, "minimal_model", "/surface"), "/surface/minimal_model");
  Eigen::Index rank = model_rank(job.minimal_model, "/surface/minimal_model");
  if (surf.contains("blowups")) {
    const json& pts = surf.at("blowups");
    if (!pts.is_array()) throw JobParseError("/surface/blowups", "expected an array of points");
    for (std::size_t i = 0; i < pts.size(); ++i) job.blowups.push_back(point_at(pts[i], child("/surface/blowups", i)));
  }

  job.boundary = vector_at(require(doc, "boundary", ""), "/boundary", rank);
  if (doc.contains("z")) {
    const json& z = doc.at("z");
    if (!(z.is_string() && z.get<std::string>() == "boundary")) job.z = vector_at(z, "/z", rank);
  }

  if (doc.contains("generators")) {
    const json& g = doc.at("generators");
    if (!(g.is_string() && g.get<std::string>() == "catalog")) {
      if (!g.is_array()) throw JobParseError("/generators", "expected \"catalog\" or an array of generators");
      Eigen::Index final_rank = rank + static_cast<Eigen::Index>(job.blowups.size());
      std::vector<GeneratorSpec> gens;
      for (std::size_t i = 0; i < g.size(); ++i) {
        std::string p = child("/generators", i);
        only_keys(g[i], {"label", "class"}, p);
        gens.push_back({string_at(require(g[i], "label", p), child(p, "label")),
                        vector_at(require(g[i], "class", p), child(p, "class"), final_rank)});
      }
      if (gens.empty()) throw JobParseError("/generators", "generator list is empty");
      job.generators = std::move(gens);
    }
  }

  if (doc.contains("flop")) {
    const json& f = doc.at("flop");
    only_keys(f, {"d_prime_dot_ci"}, "/flop");
    if (f.contains("d_prime_dot_ci")) {
      const json& d = f.at("d_prime_dot_ci");
      if (!d.is_array()) throw JobParseError("/flop/d_prime_dot_ci", "expected an array");
      if (d.size() != job.blowups.size()) {
        throw JobParseError("/flop/d_prime_dot_ci", "expected one entry per blown-up point (" +
                                                        std::to_string(job.blowups.size()) + ")");
      }
      for (std::size_t i = 0; i < d.size(); ++i) {
        if (d[i].is_null()) {
          job.d_prime_dot_ci.push_back(std::nullopt);
        } else {
          job.d_prime_dot_ci.push_back(rational_at(d[i], child("/flop/d_prime_dot_ci", i)));
        }
      }
    }
  }

  if (doc.contains("c_rule")) {
    const json& c = doc.at("c_rule");
    if (!(c.is_string() && c.get<std::string>() == "epsilon")) job.c_rule = poly_at(c, "/c_rule");
  }
  if (doc.contains("beta")) job.beta = beta_at(doc.at("beta"), "/beta");
  job.pipeline = pipeline_at(require(doc, "pipeline", ""), "/pipeline");
  if (doc.contains("gamma")) {
    job.gamma = rational_at(doc.at("gamma"), "/gamma");
    if (job.gamma->sign() <= 0) throw JobParseError("/gamma", "gamma must be positive");
  }
  if (doc.contains("expect")) {
    if (!doc.at("expect").is_object()) throw JobParseError("/expect", "expected an object");
    job.expect = doc.at("expect");
  }
  return job;
}

json to_json(const JobSpec& job) {
  json out;
  out["name"] = job.name;
  json surf;
  surf["minimal_model"] = job.minimal_model;
  json pts = json::array();
  for (const auto& p : job.blowups) {
    json q;
    q["on_boundary"] = p.on_boundary;
    q["on_z"] = p.on_z;
    q["tangent_dir_equals_z"] = p.tangent_dir_equals_z;
    if (p.infinitely_near_to) q["infinitely_near_to"] = *p.infinitely_near_to;
    pts.push_back(q);
  }
  surf["blowups"] = pts;
  out["surface"] = surf;
  out["boundary"] = to_json(job.boundary);
  out["z"] = job.z ? to_json(*job.z) : json("boundary");
  if (job.generators) {
    json g = json::array();
    for (const auto& gen : *job.generators) g.push_back({{"label", gen.label}, {"class", to_json(gen.curve)}});
    out["generators"] = g;
  } else {
    out["generators"] = "catalog";
  }
  if (!job.d_prime_dot_ci.empty()) {
    json d = json::array();
    for (const auto& v : job.d_prime_dot_ci) d.push_back(v ? to_json(*v) : json(nullptr));
    out["flop"] = {{"d_prime_dot_ci", d}};
  }
  out["c_rule"] = job.c_rule ? json(job.c_rule->str()) : json("epsilon");
  switch (job.beta.kind) {
    case BetaMode::Kind::Symbolic:
      out["beta"] = "symbolic";
      break;
    case BetaMode::Kind::Point:
      out["beta"] = job.beta.point.str();
      break;
    case BetaMode::Kind::Grid:
      out["beta"] = {{"grid", job.beta.grid.str()}};
      break;
  }
  out["pipeline"] = to_string(job.pipeline);
  if (job.gamma) out["gamma"] = job.gamma->str();
  if (!job.expect.is_null()) out["expect"] = job.expect;
  return out;
}

bool operator==(const JobSpec& a, const JobSpec& b) { return to_json(a) == to_json(b); }

BuiltJob build(const JobSpec& job) {
  auto base = std::make_shared<const SurfacePair>(minimal_model(job.minimal_model, job.boundary));
  DivisorClass z = job.z ? base->lattice()->make_class(*job.z) : base->boundary();
  BuiltJob out;
  if (job.blowups.empty()) {
    out.pair = std::make_shared<const SurfacePair>(base->with_z(z));
    out.z = z;
  } else {
    BlowupResult b = blow_up(base, job.blowups, z);
    out.z = *b.z_transform;
    out.pair = b.pair;
    out.blowup = std::move(b);
  }
  if (job.generators) {
    std::vector<MoriGenerator> gens;
    for (const auto& g : *job.generators) gens.push_back({g.label, out.pair->lattice()->make_class(g.curve)});
    out.pair = std::make_shared<const SurfacePair>(out.pair->with_generators(std::move(gens)));
  }
  if (!job.name.empty()) out.pair = std::make_shared<const SurfacePair>(out.pair->with_name(job.name));
  return out;
}

}  // namespace flopslope::cli
