#include "tvlab/harness/serialization.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "tvlab/core/error.hpp"

namespace tvlab {

using json = nlohmann::ordered_json;

namespace {

json scalar_json(const FieldScalar& z, Field field) {
  if (field == Field::Real) return format_rational(z.re());
  return json::array({format_rational(z.re()), format_rational(z.im())});
}

FieldScalar scalar_from(const json& j) {
  if (j.is_string()) return FieldScalar(parse_rational(j.get<std::string>()));
  if (j.is_number_integer()) return FieldScalar(make_rational(j.get<std::int64_t>()));
  if (j.is_array() && j.size() == 2 && j[0].is_string() && j[1].is_string()) {
    return FieldScalar(parse_rational(j[0].get<std::string>()), parse_rational(j[1].get<std::string>()));
  }
  throw InputError("expected a rational \"p/q\" or a pair [re, im], got " + j.dump());
}

json vector_json(const Vector& v, Field field) {
  json out = json::array();
  for (const auto& z : v) out.push_back(scalar_json(z, field));
  return out;
}

Vector vector_from(const json& j) {
  if (!j.is_array()) throw InputError("expected a coordinate list, got " + j.dump());
  Vector out;
  for (const auto& x : j) out.push_back(scalar_from(x));
  return out;
}

json vectors_json(const std::vector<Vector>& vs, Field field) {
  json out = json::array();
  for (const auto& v : vs) out.push_back(vector_json(v, field));
  return out;
}

std::vector<Vector> vectors_from(const json& j) {
  if (!j.is_array()) throw InputError("expected a list of vectors");
  std::vector<Vector> out;
  for (const auto& v : j) out.push_back(vector_from(v));
  return out;
}

json matroid_json(const MatroidSpec& m) {
  json out;
  out["backend"] = m.backend;
  out["n"] = m.n;
  if (m.backend == "uniform") {
    out["rank"] = m.rank;
  } else if (m.backend == "partition") {
    out["classes"] = m.classes;
  } else if (m.backend == "linear") {
    out["field"] = std::string(to_string(m.field));
    out["columns"] = vectors_json(m.columns, m.field);
  } else if (m.backend == "explicit") {
    out["bases"] = m.bases;
  } else {
    throw InputError("unknown matroid backend '" + m.backend + "'");
  }
  return out;
}

MatroidSpec matroid_from(const json& j) {
  MatroidSpec m;
  m.backend = j.at("backend").get<std::string>();
  m.n = j.at("n").get<int>();
  if (m.backend == "uniform") {
    m.rank = j.at("rank").get<int>();
  } else if (m.backend == "partition") {
    m.classes = j.at("classes").get<std::vector<int>>();
  } else if (m.backend == "linear") {
    m.field = field_from_string(j.at("field").get<std::string>());
    m.columns = vectors_from(j.at("columns"));
  } else if (m.backend == "explicit") {
    m.bases = j.at("bases").get<std::vector<ElementSet>>();
  } else {
    throw InputError("unknown matroid backend '" + m.backend + "'");
  }
  return m;
}

template <class F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed document: ") + e.what());
  }
}

}  // namespace

MatroidSpec MatroidSpec::uniform(int n, int rank) {
  MatroidSpec m;
  m.backend = "uniform";
  m.n = n;
  m.rank = rank;
  return m;
}

MatroidSpec MatroidSpec::partition(std::vector<int> classes) {
  MatroidSpec m;
  m.backend = "partition";
  m.n = static_cast<int>(classes.size());
  m.classes = std::move(classes);
  return m;
}

MatroidSpec MatroidSpec::linear(Field field, std::vector<Vector> columns) {
  MatroidSpec m;
  m.backend = "linear";
  m.n = static_cast<int>(columns.size());
  m.field = field;
  m.columns = std::move(columns);
  return m;
}

MatroidSpec MatroidSpec::explicit_bases(int n, std::vector<ElementSet> bases) {
  MatroidSpec m;
  m.backend = "explicit";
  m.n = n;
  m.bases = std::move(bases);
  return m;
}

Matroid MatroidSpec::build() const {
  if (backend == "uniform") return Matroid::uniform(n, rank);
  if (backend == "partition") {
    if (static_cast<int>(classes.size()) != n) throw InputError("partition classes do not match n");
    return Matroid::partition(classes);
  }
  if (backend == "linear") {
    if (static_cast<int>(columns.size()) != n) throw InputError("linear matroid needs n columns");
    const std::size_t rows = columns.empty() ? 0 : columns[0].size();
    return Matroid::linear(QMatrix::from_columns(columns, rows, field));
  }
  if (backend == "explicit") return Matroid::explicit_bases(n, bases);
  throw InputError("unknown matroid backend '" + backend + "'");
}

Instance InstanceSpec::to_instance() const {
  if (schema != kSchemaVersion) throw InputError("unsupported schema version " + std::to_string(schema));
  Instance inst;
  inst.field = field;
  inst.d = d;
  inst.k = k;
  inst.r = r;
  for (const auto& verts : polytopes) inst.polytopes.emplace_back(field, d, verts);
  inst.matroid = matroid.build();
  inst.coloring = coloring;
  inst.phi = phi;
  inst.validate();
  return inst;
}

std::string instance_to_json(const InstanceSpec& spec, int indent) {
  json j;
  j["schema"] = spec.schema;
  j["field"] = std::string(to_string(spec.field));
  j["d"] = spec.d;
  j["k"] = spec.k;
  j["r"] = spec.r;
  json polys = json::array();
  for (const auto& p : spec.polytopes) polys.push_back(vectors_json(p, spec.field));
  j["polytopes"] = std::move(polys);
  j["matroid"] = matroid_json(spec.matroid);
  if (spec.coloring) j["coloring"] = *spec.coloring;
  j["phi"] = vectors_json(spec.phi, spec.field);
  json prov;
  prov["generator"] = spec.provenance.generator;
  prov["seed"] = spec.provenance.seed;
  json params = json::object();
  for (const auto& [key, value] : spec.provenance.params) params[key] = value;
  prov["params"] = std::move(params);
  if (spec.provenance.ground_truth) {
    prov["ground_truth"] = {{"base", vector_json(spec.provenance.ground_truth->base, spec.field)},
                            {"directions", vectors_json(spec.provenance.ground_truth->directions, spec.field)}};
  }
  j["provenance"] = std::move(prov);
  return j.dump(indent);
}

InstanceSpec instance_from_json(std::string_view text) {
  return guarded([&] {
    const json j = json::parse(text);
    InstanceSpec spec;
    spec.schema = j.at("schema").get<int>();
    spec.field = field_from_string(j.at("field").get<std::string>());
    spec.d = j.at("d").get<int>();
    spec.k = j.at("k").get<int>();
    spec.r = j.at("r").get<int>();
    for (const auto& p : j.at("polytopes")) spec.polytopes.push_back(vectors_from(p));
    spec.matroid = matroid_from(j.at("matroid"));
    if (j.contains("coloring")) spec.coloring = j["coloring"].get<std::vector<int>>();
    spec.phi = vectors_from(j.at("phi"));
    if (j.contains("provenance")) {
      const json& prov = j["provenance"];
      spec.provenance.generator = prov.value("generator", "");
      spec.provenance.seed = prov.value("seed", std::uint64_t{0});
      if (prov.contains("params")) {
        for (const auto& [key, value] : prov["params"].items()) {
          spec.provenance.params.emplace_back(key, value.get<std::string>());
        }
      }
      if (prov.contains("ground_truth")) {
        spec.provenance.ground_truth =
            FlatSpec{vector_from(prov["ground_truth"].at("base")), vectors_from(prov["ground_truth"].at("directions"))};
      }
    }
    spec.to_instance();
    return spec;
  });
}

std::string matroid_to_json(const MatroidSpec& spec, int indent) { return matroid_json(spec).dump(indent); }

MatroidSpec matroid_from_json(std::string_view text) {
  return guarded([&] {
    MatroidSpec m = matroid_from(json::parse(text));
    m.build();
    return m;
  });
}

std::string complex_to_json(const SimplicialComplex& k, int indent) {
  json j;
  j["vertices"] = k.vertices();
  j["facets"] = k.facets();
  return j.dump(indent);
}

SimplicialComplex complex_from_json(std::string_view text) {
  return guarded([&] {
    const json j = json::parse(text);
    auto facets = j.at("facets").get<std::vector<Face>>();
    if (j.contains("vertices")) return SimplicialComplex(j["vertices"].get<std::vector<int>>(), std::move(facets));
    return SimplicialComplex(std::move(facets));
  });
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
}

std::string digest(std::string_view text) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace tvlab
