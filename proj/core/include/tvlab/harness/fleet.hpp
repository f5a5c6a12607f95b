#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tvlab/harness/serialization.hpp"

namespace tvlab {

struct FleetEntry {
  std::string name;
  MatroidSpec spec;
};

/// Loopless matroids on at most 8 elements of rank at most 4: all uniform
/// matroids, partition matroids, a few classical named ones (Fano, non-Fano,
/// M(K4), the rank-3 whirl, Vamos) and seeded random linear matroids.
std::vector<FleetEntry> matroid_fleet(std::uint64_t seed = 0);

/// Permutations p of the ground set that map bases to bases, found by brute
/// force (fine for n <= 8). The identity comes first.
std::vector<std::vector<int>> matroid_automorphisms(const Matroid& m);

/// One representative per orbit of {1, ..., max_size}^n under the group,
/// the lexicographically smallest vector of each orbit, in lexicographic order.
std::vector<std::vector<int>> size_vector_orbits(int n, int max_size, const std::vector<std::vector<int>>& group);

}  // namespace tvlab
