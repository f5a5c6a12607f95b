// tvlab: generate instances, check premises, search transversals, verify
// conclusions and run experiment suites.
//
// Exit codes: 0 pass/holds, 1 negative answer (refuted, not found,
// inconclusive), 2 theorem-violation fail, 3 input or internal error.

#include <cctype>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "tvlab/core/error.hpp"
#include "tvlab/harness/generators.hpp"
#include "tvlab/harness/suites.hpp"
#include "tvlab/hypothesis/hypothesis.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace tvlab;

namespace {

enum Exit { kOk = 0, kNegative = 1, kViolation = 2, kInputError = 3 };

struct Globals {
  int jobs = 1;
  std::optional<std::uint64_t> seed;
  std::string output;
  std::string format = "text";
};

void emit(const Globals& g, const json& j, const std::string& text) {
  std::string body = g.format == "json" ? j.dump(2) + "\n" : text;
  if (g.output.empty()) {
    std::cout << body;
  } else {
    write_text_file(g.output, body);
  }
}

json vec_json(const Vector& v) {
  json out = json::array();
  for (const auto& z : v) out.push_back(format_scalar(z));
  return out;
}

json flat_json(const Flat& f) {
  json dirs = json::array();
  for (const auto& d : f.directions()) dirs.push_back(vec_json(d));
  return {{"base", vec_json(f.base())}, {"directions", std::move(dirs)}};
}

std::string flat_line(const Flat& f) { return flat_json(f).dump(); }

std::string set_line(const ElementSet& s) { return json(s).dump(); }

/// "U(2,4)" -> "U_2_4": safe in file names.
std::string file_stem(const std::string& name) {
  std::string out;
  for (char c : name) out += std::isalnum(static_cast<unsigned char>(c)) || c == '-' ? c : '_';
  while (!out.empty() && out.back() == '_') out.pop_back();
  return out;
}

std::vector<int> parse_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw InputError("");
    } catch (const std::exception&) {
      throw InputError("bad integer list '" + text + "'");
    }
  }
  return out;
}

int cmd_generate(const Globals& g, const std::string& suite, const std::string& out_dir,
                 std::optional<std::size_t> count) {
  SuiteConfig config;
  config.suite = suite;
  config.seed = g.seed.value_or(0);
  config.count = count;
  fs::create_directories(out_dir);
  std::vector<std::string> written;
  if (suite == "topology") {
    auto fleet = matroid_fleet(config.seed);
    if (count && *count < fleet.size()) fleet.resize(*count);
    for (const auto& e : fleet) {
      const fs::path path = fs::path(out_dir) / ("matroid-" + file_stem(e.name) + ".json");
      write_text_file(path, matroid_to_json(e.spec) + "\n");
      written.push_back(path.string());
    }
  } else {
    for (const auto& item : suite_instances(config)) {
      const fs::path path = fs::path(out_dir) / (item.id + ".json");
      write_text_file(path, instance_to_json(item.spec) + "\n");
      written.push_back(path.string());
    }
  }
  std::string text;
  for (const auto& w : written) text += w + "\n";
  emit(g, json{{"suite", suite}, {"seed", config.seed}, {"files", written}}, text);
  return kOk;
}

int cmd_check(const Globals& g, const std::string& file, const std::string& condition, std::size_t samples) {
  InstanceSpec spec = instance_from_json(read_text_file(file));
  const Instance inst = spec.to_instance();
  if (condition == "c1") {
    if (g.seed) spec.provenance.seed = *g.seed;
    SuiteConfig config;
    const RunRecord rec = evaluate_instance("c1", {file, spec}, config);
    json j{{"condition", "c1"}, {"verdict", rec.conclusion == "pass" ? "HOLDS" : "REFUTED"}};
    for (const auto& [k, v] : rec.counts) j[k] = v;
    std::string text = "c1: " + j["verdict"].get<std::string>() + "\n";
    for (const auto& [k, v] : rec.counts) text += "  " + k + " = " + std::to_string(v) + "\n";
    emit(g, j, text);
    return rec.conclusion == "pass" ? kOk : kNegative;
  }
  CheckReport report;
  if (condition == "helly") {
    report = check_colorful_helly(inst, g.jobs);
  } else if (condition == "matroid") {
    report = check_matroid_intersections(inst, g.jobs);
  } else if (condition == "holmsen") {
    report = check_holmsen(inst, g.jobs);
  } else if (condition == "models-deps") {
    report = check_models_dependencies(inst, {samples, g.seed.value_or(0), g.jobs});
  } else {
    throw InputError("unknown condition '" + condition + "'");
  }
  json j{{"condition", condition}, {"verdict", to_string(report.verdict)}, {"samples", report.samples},
         {"seed", report.seed}, {"log", report.log}};
  std::string text = condition + ": " + to_string(report.verdict) + "\n";
  if (report.refutation) {
    const Refutation& ref = *report.refutation;
    json rj{{"sets", ref.sets}};
    text += "  refuted on sets " + set_line(ref.sets) + "\n";
    if (ref.tuple) {
      json rows = json::array();
      for (const auto& row : ref.tuple->rows) rows.push_back(vec_json(row));
      rj["tuple"] = rows;
      text += "  dependency rows " + rows.dump() + "\n";
    }
    if (ref.partition) {
      rj["partition"] = {ref.partition->first, ref.partition->second};
      text += "  partition " + set_line(ref.partition->first) + " | " + set_line(ref.partition->second) + "\n";
    }
    json cert = json::array();
    for (const auto& y : ref.lp.certificate) cert.push_back(format_rational(y));
    rj["certificate"] = std::move(cert);
    j["refutation"] = std::move(rj);
  }
  if (report.verdict == Verdict::HoldsSampled) text += "  sampled tuples: " + std::to_string(report.samples) + "\n";
  emit(g, j, text);
  return report.holds() ? kOk : kNegative;
}

int cmd_find(const Globals& g, const std::string& file, const std::string& subset_text, int budget) {
  const Instance inst = instance_from_json(read_text_file(file)).to_instance();
  std::vector<int> subset;
  if (subset_text.empty()) {
    for (std::size_t i = 0; i < inst.size(); ++i) subset.push_back(static_cast<int>(i));
  } else {
    subset = parse_list(subset_text);
  }
  HeuristicBudget b;
  b.restarts = budget;
  b.seed = g.seed.value_or(0);
  const TransversalResult r = find_transversal(inst, subset, b);
  json j{{"verdict", to_string(r.verdict)}, {"method", r.method}};
  std::string text = to_string(r.verdict) + " (" + r.method + ")\n";
  if (r.flat) {
    j["flat"] = flat_json(*r.flat);
    text += "  flat " + flat_line(*r.flat) + "\n";
  }
  if (!r.candidates.empty()) {
    j["candidate_directions"] = r.candidates.size();
    text += "  candidate directions checked: " + std::to_string(r.candidates.size()) + "\n";
  }
  if (!r.note.empty()) {
    j["note"] = r.note;
    text += "  " + r.note + "\n";
  }
  emit(g, j, text);
  return r.verdict == FindVerdict::Found ? kOk : kNegative;
}

int cmd_verify(const Globals& g, const std::string& file, int budget) {
  const Instance inst = instance_from_json(read_text_file(file)).to_instance();
  HeuristicBudget b;
  b.restarts = budget;
  b.seed = g.seed.value_or(0);
  const ConclusionReport r = verify_theorem_conclusion(inst, b, g.jobs);
  json j{{"verdict", to_string(r.verdict)}, {"bound", r.bound}, {"kept", r.kept}, {"removed", r.removed},
         {"removed_rank", r.removed_rank}, {"method", r.method}, {"subsets_tried", r.subsets_tried}};
  std::string text = to_string(r.verdict) + ": bound " + std::to_string(r.bound);
  if (r.verdict == ConclusionVerdict::Pass) {
    text += ", removed " + set_line(r.removed) + " of rank " + std::to_string(r.removed_rank) + " (" + r.method + ")\n";
    if (r.flat) {
      j["flat"] = flat_json(*r.flat);
      text += "  flat " + flat_line(*r.flat) + "\n";
    }
    if (r.color) {
      j["color"] = *r.color;
      text += "  color class " + std::to_string(*r.color) + " survives\n";
    }
  } else {
    text += ", " + std::to_string(r.subsets_tried) + " subfamilies tried\n";
  }
  emit(g, j, text);
  switch (r.verdict) {
    case ConclusionVerdict::Pass: return kOk;
    case ConclusionVerdict::Fail: return kViolation;
    case ConclusionVerdict::Inconclusive: return kNegative;
  }
  return kNegative;
}

std::pair<json, std::string> homology_output(const HomologyProfile& h) {
  json degrees = json::array();
  std::string text;
  for (std::size_t d = 0; d < h.degrees.size(); ++d) {
    json torsion = json::array();
    std::string tors;
    for (const auto& t : h.degrees[d].torsion) {
      torsion.push_back(t.str());
      tors += " + Z/" + t.str();
    }
    degrees.push_back({{"degree", d}, {"betti", h.degrees[d].betti}, {"torsion", torsion}});
    text += "  H~_" + std::to_string(d) + " = Z^" + std::to_string(h.degrees[d].betti) + tors + "\n";
  }
  return {degrees, text};
}

int cmd_topology(const Globals& g, const std::string& file, const std::string& sizes_text) {
  const MatroidSpec spec = matroid_from_json(read_text_file(file));
  const Matroid m = spec.build();
  const std::vector<int> sizes = parse_list(sizes_text);
  const SimplicialComplex join = matroidal_join_discrete(m, sizes);
  const HomologyProfile h = reduced_homology(join);
  const Connectivity c = homological_connectivity(h);
  const bool ok = c.at_least(m.rank() - 2);
  auto [degrees, lines] = homology_output(h);
  json j{{"matroid", m.describe()},
         {"rank", m.rank()},
         {"facets", join.facets().size()},
         {"dimension", join.dimension()},
         {"homology", degrees},
         {"connectivity", c.value},
         {"through_top", c.through_top},
         {"required", m.rank() - 2},
         {"ok", ok}};
  std::string text = m.describe() + ", join of dimension " + std::to_string(join.dimension()) + " with " +
                     std::to_string(join.facets().size()) + " facets\n" + lines +
                     "  connectivity " + std::to_string(c.value) + (c.through_top ? " (all vanish)" : "") +
                     ", required " + std::to_string(m.rank() - 2) + (ok ? ": ok" : ": VIOLATED") + "\n";
  emit(g, j, text);
  return ok ? kOk : kViolation;
}

int cmd_homology(const Globals& g, const std::string& file) {
  const SimplicialComplex k = complex_from_json(read_text_file(file));
  const HomologyProfile h = reduced_homology(k);
  const Connectivity c = homological_connectivity(h);
  auto [degrees, lines] = homology_output(h);
  json j{{"dimension", k.dimension()}, {"f_vector", k.f_vector()}, {"homology", degrees},
         {"connectivity", c.value}, {"through_top", c.through_top}};
  emit(g, j, "dimension " + std::to_string(k.dimension()) + "\n" + lines + "  connectivity " +
                 std::to_string(c.value) + "\n");
  return kOk;
}

int cmd_run(const Globals& g, const std::string& suite, std::optional<std::size_t> count, std::size_t samples,
            int budget, bool timings) {
  SuiteConfig config;
  config.suite = suite;
  config.seed = g.seed.value_or(0);
  config.count = count;
  config.jobs = g.jobs;
  config.samples = samples;
  config.budget.restarts = budget;
  const RunReport report = run_suite(config);
  const std::string jsonl = report.to_jsonl(timings);
  if (!g.output.empty()) {
    write_text_file(g.output, jsonl);
  } else if (g.format == "json") {
    std::cout << jsonl;
  }
  if (g.format == "text") {
    std::cout << suite << ": " << report.records.size() << " records, " << report.tally("pass") << " pass, "
              << report.tally("fail") << " fail, " << report.tally("inconclusive") << " inconclusive, "
              << report.violations() << " violations\n";
    for (const auto& r : report.records) {
      if (r.conclusion != "pass") std::cout << "  " << r.id << ": " << r.conclusion << " " << r.note << "\n";
    }
  }
  return report.violations() ? kViolation : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"transversal lab: exact premise checks and transversal search"};
  app.set_version_flag("--version", version());
  app.require_subcommand(1);
  Globals g;
  app.add_option("--jobs", g.jobs, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Seed for every random choice");
  app.add_option("--output", g.output, "Write the result to this file instead of stdout");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "text"}));

  std::string suite;
  std::string out_dir;
  std::string instance;
  std::string condition;
  std::string subset;
  std::string matroid;
  std::string sizes;
  std::string complex;
  std::optional<std::size_t> count;
  std::size_t samples = 8;
  int budget = 6;
  bool no_timings = false;

  auto* gen = app.add_subcommand("generate", "Write the instances of a suite as JSON files");
  gen->add_option("--suite", suite)->required()->check(CLI::IsMember(suite_names()));
  gen->add_option("--out", out_dir, "Output directory")->required();
  gen->add_option("--count", count, "Instances (per part for main-theorem)");

  auto* check = app.add_subcommand("check", "Check a premise on an instance");
  check->add_option("--instance", instance)->required();
  check->add_option("--condition", condition)
      ->required()
      ->check(CLI::IsMember({"helly", "matroid", "holmsen", "models-deps", "c1"}));
  check->add_option("--samples", samples, "Random tuples per independent set (models-deps)");

  auto* find = app.add_subcommand("find", "Search a transversal of a subfamily");
  find->add_option("--instance", instance)->required();
  find->add_option("--subset", subset, "Comma-separated set indices (default: all)");
  find->add_option("--budget", budget, "Restarts of the floating-point search")->check(CLI::NonNegativeNumber);

  auto* verify = app.add_subcommand("verify-theorem", "Look for a subfamily with a transversal within the rank bound");
  verify->add_option("--instance", instance)->required();
  verify->add_option("--budget", budget, "Restarts of the floating-point search")->check(CLI::NonNegativeNumber);

  auto* topo = app.add_subcommand("topology", "Homology of a matroidal join of discrete spaces");
  topo->add_option("--matroid", matroid)->required();
  topo->add_option("--sizes", sizes, "Points per element, comma-separated")->required();

  auto* hom = app.add_subcommand("homology", "Reduced integer homology of a simplicial complex");
  hom->add_option("--complex", complex)->required();

  auto* run = app.add_subcommand("run", "Run an experiment suite and write a JSONL report");
  run->add_option("--suite", suite)->required()->check(CLI::IsMember(suite_names()));
  run->add_option("--count", count, "Instances (per part for main-theorem)");
  run->add_option("--samples", samples, "Random tuples per independent set (main-theorem)");
  run->add_option("--budget", budget, "Restarts of the floating-point search")->check(CLI::NonNegativeNumber);
  run->add_flag("--no-timings", no_timings, "Leave out per-record times (byte-stable output)");

  for (auto* sub : {gen, check, find, verify, topo, hom, run}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*gen) return cmd_generate(g, suite, out_dir, count);
    if (*check) return cmd_check(g, instance, condition, samples);
    if (*find) return cmd_find(g, instance, subset, budget);
    if (*verify) return cmd_verify(g, instance, budget);
    if (*topo) return cmd_topology(g, matroid, sizes);
    if (*hom) return cmd_homology(g, complex);
    if (*run) return cmd_run(g, suite, count, samples, budget, !no_timings);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
