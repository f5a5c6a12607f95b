#pragma once

#include <cstdint>
#include <optional>

#include "tvlab/core/rng.hpp"
#include "tvlab/harness/serialization.hpp"

namespace tvlab {

struct PiercedParams {
  Field field = Field::Real;
  int d = 2;
  int k = 1;
  int r = 1;
  int n = 6;
  int vertices = 3;  // per set
  int spread = 4;    // coordinates of the flat and its points lie in [-spread, spread]
  /// Sets placed away from the flat (not pierced). They come last.
  int outliers = 0;
  /// Defaults to U(n, min(n, d + 1)).
  std::optional<MatroidSpec> matroid;
};

/// Samples a rational k-flat V and puts a point q_i of V inside each set (as
/// the vertex centroid); phi(F_i) is the first r internal coordinates of q_i.
/// V is recorded as ground truth.
InstanceSpec generate_pierced_instance(std::uint64_t seed, const PiercedParams& params);

struct ColorfulParams {
  int d = 1;
  int sets_min = 2;  // sets per class, drawn uniformly from [sets_min, sets_max]
  int sets_max = 4;
  bool hypothesis_true = true;
  int spread = 6;
};

/// d + 1 color classes with the partition matroid. hypothesis_true: one class
/// shares a point, the other sets are simplices inflated until every colorful
/// tuple meets. Otherwise one colorful tuple is planted as the facets of a
/// simplex (any d of them meet, all d + 1 do not) and every other set is a
/// big simplex, so the planted tuple is the only one that fails.
InstanceSpec generate_colorful_instance(std::uint64_t seed, const ColorfulParams& params);

struct MatroidFamilyParams {
  int d = 2;
  int n_min = 4;
  int n_max = 8;
  int max_rank = 4;
  int spread = 6;
};

/// Random loopless matroid (uniform, partition or linear backend) on n <= 8
/// elements and random simplices, inflated until every independent set meets.
InstanceSpec generate_matroid_helly_instance(std::uint64_t seed, const MatroidFamilyParams& params);

struct HolmsenParams {
  int r = 1;
  int n = 5;
  int outliers = 1;
  int max_rank = 3;
  int spread = 5;
};

/// d = 2, k = 1: triangles around points of a line (phi = line coordinate for
/// r = 1, empty for r = 0) plus outliers, inflated about their centroids until
/// the hull-splitting premise holds for every independent bipartition.
InstanceSpec generate_holmsen_instance(std::uint64_t seed, const HolmsenParams& params);

/// Random loopless matroid on n elements of rank <= max_rank, cycling through
/// the uniform, partition and linear backends by `variant`.
MatroidSpec random_matroid(Rng& rng, int n, int max_rank, int variant);

}  // namespace tvlab
