#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tvlab/complexes/complex.hpp"
#include "tvlab/geometry/geometry.hpp"

namespace tvlab {

inline constexpr int kSchemaVersion = 1;

/// Serializable description of a matroid backend.
struct MatroidSpec {
  std::string backend = "uniform";  // uniform | partition | linear | explicit
  int n = 0;
  int rank = 0;                    // uniform
  std::vector<int> classes;        // partition: class of each element
  Field field = Field::Real;       // linear
  std::vector<Vector> columns;     // linear: one column per element
  std::vector<ElementSet> bases;   // explicit

  Matroid build() const;
  friend bool operator==(const MatroidSpec&, const MatroidSpec&) = default;

  static MatroidSpec uniform(int n, int rank);
  static MatroidSpec partition(std::vector<int> classes);
  static MatroidSpec linear(Field field, std::vector<Vector> columns);
  static MatroidSpec explicit_bases(int n, std::vector<ElementSet> bases);
};

struct FlatSpec {
  Vector base;
  std::vector<Vector> directions;
  friend bool operator==(const FlatSpec&, const FlatSpec&) = default;
};

struct Provenance {
  std::string generator;
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, std::string>> params;
  std::optional<FlatSpec> ground_truth;
  friend bool operator==(const Provenance&, const Provenance&) = default;
};

/// On-disk form of an Instance. Polytopes keep their vertex lists verbatim.
struct InstanceSpec {
  int schema = kSchemaVersion;
  Field field = Field::Real;
  int d = 1;
  int k = 0;
  int r = 0;
  std::vector<std::vector<Vector>> polytopes;
  MatroidSpec matroid;
  std::optional<std::vector<int>> coloring;
  std::vector<Vector> phi;
  Provenance provenance;

  /// Builds and validates. Throws InputError.
  Instance to_instance() const;
  friend bool operator==(const InstanceSpec&, const InstanceSpec&) = default;
};

std::string instance_to_json(const InstanceSpec& spec, int indent = 2);
/// Throws InputError on malformed documents or invalid instances.
InstanceSpec instance_from_json(std::string_view text);

std::string matroid_to_json(const MatroidSpec& spec, int indent = 2);
MatroidSpec matroid_from_json(std::string_view text);

/// {"vertices": [...], "facets": [[...], ...]}
std::string complex_to_json(const SimplicialComplex& k, int indent = 2);
SimplicialComplex complex_from_json(std::string_view text);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

/// 64-bit FNV-1a of the text, as 16 hex digits.
std::string digest(std::string_view text);

}  // namespace tvlab
