#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tvlab/harness/fleet.hpp"
#include "tvlab/harness/serialization.hpp"
#include "tvlab/transversal/transversal.hpp"

namespace tvlab {

/// Library version, e.g. "0.1.0".
std::string version();

struct SuiteConfig {
  std::string suite;  // helly | kalai-meshulam | holmsen | main-theorem | topology | c1
  std::uint64_t seed = 0;
  /// Instances per suite (per part for main-theorem; fleet prefix for
  /// topology). Unset means the suite default; 0 gives an empty report.
  std::optional<std::size_t> count;
  int jobs = 1;
  std::size_t samples = 8;
  HeuristicBudget budget;
  int max_size = 3;  // topology: discrete sizes 1..max_size
};

struct RunRecord {
  std::string id;
  std::string hypothesis;  // verdict of the premise check
  std::string conclusion;  // pass | fail | inconclusive
  std::string method;
  int bound = 0;
  int removed_rank = 0;
  std::optional<int> color;
  std::size_t subsets_tried = 0;
  std::vector<std::pair<std::string, std::int64_t>> counts;
  std::string note;
  std::string digest;
  double millis = 0;
  /// Theorem-violation alarm: the premise held but the conclusion failed.
  bool violation = false;

  std::int64_t count(const std::string& key) const;
};

struct RunReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::string version;
  std::vector<RunRecord> records;

  std::size_t tally(const std::string& conclusion) const;
  std::size_t violations() const;
  /// Header line, one line per record, summary line. Without timings the
  /// output depends only on the configuration.
  std::string to_jsonl(bool timings = true) const;
};

std::vector<std::string> suite_names();

/// A generated instance with its record id and, for main-theorem, the part.
struct SuiteInstance {
  std::string id;
  InstanceSpec spec;
};

/// Instances of a geometric suite in order. Throws InputError for topology
/// and unknown names.
std::vector<SuiteInstance> suite_instances(const SuiteConfig& config);

/// Premise check plus conclusion (or the c1 check) for one instance.
RunRecord evaluate_instance(const std::string& suite, const SuiteInstance& item, const SuiteConfig& config);

/// Connectivity of every orbit of discrete-size vectors, parallel-extension
/// axioms and join-versus-independence-complex agreement for one matroid.
RunRecord evaluate_topology(const FleetEntry& entry, int max_size);

/// Runs instances concurrently (config.jobs) and keeps records in order.
RunReport run_suite(const SuiteConfig& config);

}  // namespace tvlab
