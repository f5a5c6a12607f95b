#pragma once

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tvlab/core/matrix.hpp"

namespace tvlab {

/// Sorted list of ground-set element ids.
using ElementSet = std::vector<int>;

/// A matroid on the ordered ground set {0, ..., n-1}, given by an independence
/// oracle. Values are immutable and cheap to copy (shared backend).
///
/// Backends: uniform U(r, n), partition (one element per class), linear
/// (column vectors of a matrix over Q or Q[i]), explicit list of bases. Minors
/// and parallel extensions are oracle views over a parent matroid.
class Matroid {
 public:
  enum class Kind { Uniform, Partition, Linear, Explicit, Derived };

  /// U(rank, n). Requires 1 <= rank <= n (rank 0 would make every element a loop),
  /// or n == 0 with rank 0.
  static Matroid uniform(int n, int rank);
  /// Partition matroid: element e lies in class class_of[e]; independent sets
  /// take at most one element per class. Class ids must be 0..c-1, all used.
  static Matroid partition(std::vector<int> class_of);
  /// Consecutive classes of the given sizes.
  static Matroid partition_from_sizes(std::span<const int> sizes);
  /// Column matroid of m; element e is column e. Zero columns are loops.
  static Matroid linear(QMatrix columns);
  /// Independent sets are the subsets of the listed bases.
  static Matroid explicit_bases(int n, std::vector<ElementSet> bases);

  int size() const;
  Kind kind() const;
  /// Rank of the whole ground set.
  int rank() const;

  bool is_independent(std::span<const int> set) const;
  /// Greedy rank, scanning elements in ascending id order. Throws InputError on
  /// unknown ids.
  int rank(std::span<const int> set) const;
  bool is_loop(int e) const;
  bool has_loops() const;

  Matroid deletion(int e) const;
  /// Matroid on ground minus e, sigma independent iff sigma + e independent.
  /// Throws InputError if e is a loop.
  Matroid link(int e) const;
  /// Element e is replaced by multiplicities[e] mutually parallel copies. Copies
  /// of element 0 come first, then those of element 1, and so on.
  Matroid parallel_extension(std::span<const int> multiplicities) const;
  /// Restriction to the given elements, renumbered in ascending order.
  Matroid restriction(std::span<const int> keep) const;

  /// For derived matroids built by parallel_extension: original element of each copy.
  const std::vector<int>& origin() const;

  /// Short human-readable description of the backend.
  std::string describe() const;

  struct Backend;

 private:
  explicit Matroid(std::shared_ptr<const Backend> b);
  std::shared_ptr<const Backend> impl_;
};

struct MatroidCheckReport {
  bool pass = true;
  std::string violated;  // "empty", "downward-closure", "basis-exchange", "augmentation"
  std::optional<std::pair<ElementSet, ElementSet>> witness;
};

/// Brute-force axiom check over all subsets. Throws InputError when the ground
/// set exceeds `cap` elements.
MatroidCheckReport verify_matroid_axioms(const Matroid& m, int cap = 12);

/// Nonempty independent sets of size <= max_card, ordered by size then
/// lexicographically.
std::vector<ElementSet> enumerate_independent_sets(const Matroid& m, int max_card);

/// Bases (maximal independent sets), lexicographic.
std::vector<ElementSet> enumerate_bases(const Matroid& m);

}  // namespace tvlab
