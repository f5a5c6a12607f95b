#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tvlab/geometry/geometry.hpp"

namespace tvlab {

enum class FindVerdict { Found, NotFoundExact, Inconclusive };
std::string to_string(FindVerdict v);

struct TransversalResult {
  FindVerdict verdict = FindVerdict::Inconclusive;
  std::string method;
  std::optional<Flat> flat;
  /// Found: a point of flat and set for each index of the subset (real coordinates).
  std::vector<RealVector> witnesses;
  /// NotFoundExact from the planar line search: every normal direction tried.
  std::vector<RealVector> candidates;
  /// NotFoundExact from the point search: the infeasible LP.
  std::optional<LPResult> lp;
  std::string note;
};

/// Common point of the sets in `subset` (k = 0). Exact both ways.
TransversalResult find_point_transversal(const Instance& inst, std::span<const int> subset);

/// Exact line transversal in the real plane. Tries the normals of all lines
/// through two vertices plus the axis normals.
TransversalResult find_line_transversal_2d(const Instance& inst, std::span<const int> subset);

/// Exact k-flat through a chosen point of each set when |subset| <= k + 1.
TransversalResult find_affine_hull_transversal(const Instance& inst, std::span<const int> subset);

struct HeuristicBudget {
  int restarts = 6;
  int iterations = 150;
  std::uint64_t seed = 0;
};

/// Floating-point alternating search for a k-flat (nearest points, then best
/// fitting flat), followed by rational rounding of the directions and an exact
/// LP for the base point. Found only after exact verification; never claims
/// nonexistence. k = 0 delegates to the point search.
TransversalResult find_k_flat_heuristic(const Instance& inst, std::span<const int> subset,
                                        const HeuristicBudget& budget);

/// Best available finder for the instance's k, d and field.
TransversalResult find_transversal(const Instance& inst, std::span<const int> subset,
                                   const HeuristicBudget& budget);

/// field_factor * (d - k) * (r + 1).
int conclusion_bound(const Instance& inst);

enum class ConclusionVerdict { Pass, Fail, Inconclusive };
std::string to_string(ConclusionVerdict v);

struct ConclusionReport {
  ConclusionVerdict verdict = ConclusionVerdict::Inconclusive;
  ElementSet kept;     // G
  ElementSet removed;  // F \ G
  std::optional<Flat> flat;
  int removed_rank = 0;
  int bound = 0;
  std::optional<int> color;  // a color class contained in G (colored instances)
  std::string method;
  std::size_t subsets_tried = 0;
};

/// Looks for G with rank(F \ G) <= bound that has a k-transversal, trying
/// removed sets in order of increasing size, lexicographic within a size.
ConclusionReport verify_theorem_conclusion(const Instance& inst, const HeuristicBudget& budget = {},
                                           int jobs = 1);

}  // namespace tvlab
