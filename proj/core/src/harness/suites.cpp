#include "tvlab/harness/suites.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <sstream>

#include <json.hpp>

#include "tvlab/core/error.hpp"
#include "tvlab/core/linalg.hpp"
#include "tvlab/core/parallel.hpp"
#include "tvlab/core/rng.hpp"
#include "tvlab/harness/generators.hpp"
#include "tvlab/hypothesis/hypothesis.hpp"

#ifndef TVLAB_VERSION_STRING
#define TVLAB_VERSION_STRING "0.0.0"
#endif

namespace tvlab {

using json = nlohmann::ordered_json;

std::string version() { return TVLAB_VERSION_STRING; }

std::int64_t RunRecord::count(const std::string& key) const {
  for (const auto& [k, v] : counts) {
    if (k == key) return v;
  }
  throw InputError("record " + id + " has no count '" + key + "'");
}

std::size_t RunReport::tally(const std::string& conclusion) const {
  return static_cast<std::size_t>(std::count_if(records.begin(), records.end(),
                                                [&](const RunRecord& r) { return r.conclusion == conclusion; }));
}

std::size_t RunReport::violations() const {
  return static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(), [](const RunRecord& r) { return r.violation; }));
}

std::string RunReport::to_jsonl(bool timings) const {
  std::ostringstream out;
  json header{{"type", "header"}, {"suite", suite}, {"seed", seed}, {"version", version}};
  out << header.dump() << '\n';
  std::map<std::string, std::size_t> hypotheses;
  for (const auto& r : records) {
    json j{{"type", "record"}, {"id", r.id}, {"hypothesis", r.hypothesis}, {"conclusion", r.conclusion},
           {"method", r.method}, {"bound", r.bound}, {"removed_rank", r.removed_rank}};
    j["color"] = r.color ? json(*r.color) : json(nullptr);
    j["subsets_tried"] = r.subsets_tried;
    json counts = json::object();
    for (const auto& [k, v] : r.counts) counts[k] = v;
    j["counts"] = std::move(counts);
    j["note"] = r.note;
    j["digest"] = r.digest;
    j["violation"] = r.violation;
    if (timings) j["ms"] = r.millis;
    out << j.dump() << '\n';
    ++hypotheses[r.hypothesis];
  }
  json summary{{"type", "summary"},
               {"records", records.size()},
               {"pass", tally("pass")},
               {"fail", tally("fail")},
               {"inconclusive", tally("inconclusive")},
               {"violations", violations()}};
  json hyp = json::object();
  for (const auto& [k, v] : hypotheses) hyp[k] = v;
  summary["hypothesis"] = std::move(hyp);
  out << summary.dump() << '\n';
  return out.str();
}

std::vector<std::string> suite_names() {
  return {"helly", "kalai-meshulam", "holmsen", "main-theorem", "topology", "c1"};
}

namespace {

std::string numbered(const std::string& prefix, std::size_t i) {
  std::string digits = std::to_string(i);
  if (digits.size() < 4) digits.insert(0, 4 - digits.size(), '0');
  return prefix + "-" + digits;
}

std::string flat_text(const Flat& flat) {
  std::string out = "base";
  for (const auto& z : flat.base()) out += " " + format_scalar(z);
  for (const auto& dir : flat.directions()) {
    out += " dir";
    for (const auto& z : dir) out += " " + format_scalar(z);
  }
  return out;
}

std::string set_text(const ElementSet& s) {
  std::string out;
  for (int e : s) out += (out.empty() ? "" : ",") + std::to_string(e);
  return "{" + out + "}";
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

std::vector<Vector> sign_candidates(Field field, int m) {
  std::vector<FieldScalar> values{FieldScalar(1), FieldScalar(-1)};
  if (field == Field::Complex) {
    values.emplace_back(0, 1);
    values.emplace_back(0, -1);
  }
  values.emplace_back(0);
  std::vector<Vector> out;
  std::vector<std::size_t> digit(static_cast<std::size_t>(m), 0);
  while (true) {
    Vector z;
    for (std::size_t dgt : digit) z.push_back(values[dgt]);
    if (!std::all_of(z.begin(), z.end(), [](const FieldScalar& x) { return x.is_zero(); })) out.push_back(z);
    int j = m - 1;
    while (j >= 0 && ++digit[static_cast<std::size_t>(j)] == values.size()) {
      digit[static_cast<std::size_t>(j)] = 0;
      --j;
    }
    if (j < 0) break;
  }
  return out;
}

/// Random frames v; every set whose pairing with some sign vector is positive
/// on all vertices gets that vector, and (c1) is checked on a greedy
/// independent set of the signed sets.
RunRecord evaluate_c1(const SuiteInstance& item) {
  const Instance inst = item.spec.to_instance();
  RunRecord rec;
  rec.id = item.id;
  rec.method = "sign-lp";
  const int m = inst.d - inst.k;
  const std::size_t lifted = static_cast<std::size_t>(inst.d + 1);
  const auto candidates = sign_candidates(inst.field, m);
  Rng rng(derive_seed(item.spec.provenance.seed, 0xc1));
  const int frames = 6;
  std::int64_t signed_sets = 0;
  std::int64_t checks = 0;
  std::int64_t failures = 0;
  std::int64_t shadow_mismatch = 0;
  std::string trace;
  for (int f = 0; f < frames; ++f) {
    std::vector<Vector> frame;
    do {
      frame.clear();
      for (int j = 0; j < m; ++j) {
        Vector v;
        for (std::size_t c = 0; c < lifted; ++c) {
          if (inst.field == Field::Real) {
            v.emplace_back(rng.uniform_int(-3, 3));
          } else {
            const auto re = rng.uniform_int(-3, 3);
            v.emplace_back(make_rational(re), make_rational(rng.uniform_int(-3, 3)));
          }
        }
        frame.push_back(std::move(v));
      }
    } while (rank(QMatrix::from_columns(frame, lifted, inst.field)) != static_cast<std::size_t>(m));

    const ElementSet shadow = compute_shadow_set(frame, inst);
    ElementSet sigma;
    ElementSet signed_here;
    std::vector<Vector> zs;
    for (int i = 0; i < static_cast<int>(inst.size()); ++i) {
      const Polytope& p = inst.polytopes[static_cast<std::size_t>(i)];
      for (const auto& z : candidates) {
        const bool positive = std::all_of(p.vertices().begin(), p.vertices().end(),
                                          [&](const Vector& v) { return sign_pairing(frame, z, v) > 0; });
        if (!positive) continue;
        signed_here.push_back(i);
        ElementSet grown = sigma;
        grown.push_back(i);
        if (inst.matroid.is_independent(grown)) {
          sigma = std::move(grown);
          zs.push_back(z);
        }
        break;
      }
    }
    signed_sets += static_cast<std::int64_t>(signed_here.size());
    // A positive pairing keeps the set off the orthocomplement; for one real
    // frame vector the converse holds too.
    const bool subset = std::includes(shadow.begin(), shadow.end(), signed_here.begin(), signed_here.end());
    if (!subset || (inst.field == Field::Real && m == 1 && signed_here != shadow)) ++shadow_mismatch;
    if (sigma.empty()) continue;
    ++checks;
    const C1Result c1 = c1_holds(inst, sigma, zs);
    trace += set_text(sigma) + (c1.holds ? "+" : "-");
    if (!c1.holds) ++failures;
  }
  rec.hypothesis = shadow_mismatch == 0 ? "signed" : "shadow-mismatch";
  rec.conclusion = failures == 0 && shadow_mismatch == 0 ? "pass" : "fail";
  rec.violation = rec.conclusion == "fail";
  rec.counts = {{"frames", frames}, {"signed_sets", signed_sets}, {"c1_checks", checks},
                {"c1_failures", failures}, {"shadow_mismatch", shadow_mismatch}};
  rec.digest = digest(trace);
  return rec;
}

}  // namespace

std::vector<SuiteInstance> suite_instances(const SuiteConfig& config) {
  std::vector<SuiteInstance> out;
  auto count_or = [&](std::size_t fallback) { return config.count.value_or(fallback); };
  auto seed_of = [&](std::uint64_t part, std::size_t i) { return derive_seed(config.seed, part * 1000003 + i); };
  const std::string& s = config.suite;
  if (s == "helly") {
    for (std::size_t i = 0; i < count_or(200); ++i) {
      ColorfulParams p;
      p.d = 1 + static_cast<int>(i % 2);
      out.push_back({numbered("helly", i), generate_colorful_instance(seed_of(1, i), p)});
    }
  } else if (s == "kalai-meshulam") {
    for (std::size_t i = 0; i < count_or(100); ++i) {
      out.push_back({numbered("km", i), generate_matroid_helly_instance(seed_of(2, i), {})});
    }
  } else if (s == "holmsen") {
    for (std::size_t i = 0; i < count_or(100); ++i) {
      HolmsenParams p;
      p.r = static_cast<int>(i % 2);
      p.n = 4 + static_cast<int>(i % 3);
      out.push_back({numbered("holmsen", i), generate_holmsen_instance(seed_of(3, i), p)});
    }
  } else if (s == "main-theorem") {
    for (std::size_t i = 0; i < count_or(100); ++i) {
      PiercedParams p;  // R, d = 2, k = 1, r = 1
      out.push_back({numbered("main-a", i), generate_pierced_instance(seed_of(4, i), p)});
    }
    for (std::size_t i = 0; i < count_or(50); ++i) {
      PiercedParams p;
      p.d = 3;
      p.n = 5;
      p.vertices = 4;
      out.push_back({numbered("main-b", i), generate_pierced_instance(seed_of(5, i), p)});
    }
    for (std::size_t i = 0; i < count_or(50); ++i) {
      PiercedParams p;
      p.field = Field::Complex;
      p.d = 1;
      p.k = 0;
      p.r = 0;
      p.n = 4;
      out.push_back({numbered("main-c", i), generate_pierced_instance(seed_of(6, i), p)});
    }
  } else if (s == "c1") {
    for (std::size_t i = 0; i < count_or(100); ++i) {
      PiercedParams p;
      p.r = 0;
      p.n = 5;
      p.outliers = 2;
      if (i % 2 == 1) {
        p.field = Field::Complex;
        p.d = 1;
        p.k = 0;
        p.n = 4;
      }
      out.push_back({numbered("c1", i), generate_pierced_instance(seed_of(7, i), p)});
    }
  } else if (s == "topology") {
    throw InputError("the topology suite runs over the matroid fleet, not instances");
  } else {
    throw InputError("unknown suite '" + s + "'");
  }
  return out;
}

RunRecord evaluate_instance(const std::string& suite, const SuiteInstance& item, const SuiteConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  if (suite == "c1") {
    RunRecord rec = evaluate_c1(item);
    rec.millis = elapsed_ms(start);
    return rec;
  }
  const Instance inst = item.spec.to_instance();
  CheckReport check;
  if (suite == "helly") {
    check = check_colorful_helly(inst);
  } else if (suite == "kalai-meshulam") {
    check = check_matroid_intersections(inst);
  } else if (suite == "holmsen") {
    check = check_holmsen(inst);
  } else if (suite == "main-theorem") {
    check = check_models_dependencies(inst, {config.samples, derive_seed(item.spec.provenance.seed, 0x6d64), 1});
  } else {
    throw InputError("unknown suite '" + suite + "'");
  }
  const ConclusionReport conc = verify_theorem_conclusion(inst, config.budget, 1);

  RunRecord rec;
  rec.id = item.id;
  rec.hypothesis = to_string(check.verdict);
  rec.conclusion = to_string(conc.verdict);
  rec.method = conc.method;
  rec.bound = conc.bound;
  rec.removed_rank = conc.removed_rank;
  rec.color = conc.color;
  rec.subsets_tried = conc.subsets_tried;
  rec.counts = {{"sets", static_cast<std::int64_t>(inst.size())},
                {"samples", static_cast<std::int64_t>(check.samples)},
                {"kept", static_cast<std::int64_t>(conc.kept.size())}};
  rec.violation = conc.verdict == ConclusionVerdict::Fail && check.holds();
  if (!check.holds()) rec.note = "premise refuted on " + set_text(check.refutation->sets);
  rec.digest = digest(set_text(conc.removed) + (conc.flat ? flat_text(*conc.flat) : ""));
  rec.millis = elapsed_ms(start);
  return rec;
}

RunRecord evaluate_topology(const FleetEntry& entry, int max_size) {
  const auto start = std::chrono::steady_clock::now();
  const Matroid m = entry.spec.build();
  if (m.has_loops()) throw InputError("fleet matroid " + entry.name + " has loops");
  const int n = m.size();
  const int rho = m.rank();
  const auto group = matroid_automorphisms(m);
  const auto reps = size_vector_orbits(n, max_size, group);

  std::int64_t min_conn = 1 << 20;
  std::int64_t below = 0;
  std::int64_t join_mismatch = 0;
  std::int64_t rank_changed = 0;
  std::string trace;
  for (const auto& sizes : reps) {
    const SimplicialComplex join = matroidal_join_discrete(m, sizes);
    const Matroid ext = m.parallel_extension(sizes);
    if (ext.rank() != rho) ++rank_changed;
    if (independence_complex(ext).facets() != join.facets()) ++join_mismatch;
    const Connectivity conn = homological_connectivity(join);
    min_conn = std::min<std::int64_t>(min_conn, conn.value);
    if (!conn.at_least(rho - 2)) ++below;
    trace += std::to_string(conn.value) + (conn.through_top ? "t" : "") + ";";
  }

  // Axioms by brute force on one extension with at most 10 elements.
  std::vector<int> grow(static_cast<std::size_t>(n), 1);
  for (int e = 0, total = n; e < n && total < 10; ++e) {
    const int extra = std::min(max_size - 1, 10 - total);
    grow[static_cast<std::size_t>(e)] += extra;
    total += extra;
  }
  const Matroid ext = m.parallel_extension(grow);
  const MatroidCheckReport axioms = verify_matroid_axioms(ext, 12);

  RunRecord rec;
  rec.id = "topology-" + entry.name;
  rec.hypothesis = "loopless";
  rec.method = "homology";
  rec.bound = rho - 2;
  rec.counts = {{"n", n},
                {"rank", rho},
                {"automorphisms", static_cast<std::int64_t>(group.size())},
                {"size_vectors", static_cast<std::int64_t>(reps.size())},
                {"min_connectivity", min_conn},
                {"below_bound", below},
                {"join_mismatch", join_mismatch},
                {"rank_changed", rank_changed + (ext.rank() != rho ? 1 : 0)},
                {"axiom_ground", ext.size()},
                {"axioms_ok", axioms.pass ? 1 : 0}};
  const bool ok = below == 0 && join_mismatch == 0 && rank_changed == 0 && ext.rank() == rho && axioms.pass;
  rec.conclusion = ok ? "pass" : "fail";
  rec.violation = !ok;
  rec.note = m.describe();
  if (!axioms.pass) rec.note += "; axiom violated: " + axioms.violated;
  rec.digest = digest(trace);
  rec.millis = elapsed_ms(start);
  return rec;
}

RunReport run_suite(const SuiteConfig& config) {
  RunReport report;
  report.suite = config.suite;
  report.seed = config.seed;
  report.version = version();
  if (config.suite == "topology") {
    auto fleet = matroid_fleet(config.seed);
    if (config.count && *config.count < fleet.size()) fleet.resize(*config.count);
    report.records.resize(fleet.size());
    parallel_for(fleet.size(), config.jobs,
                 [&](std::size_t i) { report.records[i] = evaluate_topology(fleet[i], config.max_size); });
    return report;
  }
  const auto items = suite_instances(config);
  report.records.resize(items.size());
  parallel_for(items.size(), config.jobs,
               [&](std::size_t i) { report.records[i] = evaluate_instance(config.suite, items[i], config); });
  return report;
}

}  // namespace tvlab
