#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tvlab/geometry/geometry.hpp"

namespace tvlab {

/// d - k affine dependencies of the phi-images of sigma (one row per
/// dependency, row entries in the order of sigma).
struct DependencyTuple {
  ElementSet sigma;
  std::vector<Vector> rows;

  friend bool operator==(const DependencyTuple&, const DependencyTuple&) = default;
};

/// r_F >= 0 and q_F in F for each F in sigma, q_F given by barycentric weights
/// over the vertices of F.
struct PullbackWitness {
  RealVector r;
  std::vector<RealVector> weights;
  std::vector<Vector> points;
};

struct PullbackResult {
  bool feasible = false;
  std::optional<PullbackWitness> witness;
  LPResult lp;  // carries the Farkas certificate when infeasible
};

/// Is there a nontrivial pullback of the tuple to dependencies among points of
/// the sets? Throws InputError when the tuple does not fit the instance.
PullbackResult pullback_feasible(const Instance& inst, const DependencyTuple& t);

enum class Verdict { HoldsExact, HoldsSampled, Refuted };
std::string to_string(Verdict v);

struct Refutation {
  ElementSet sets;
  std::optional<DependencyTuple> tuple;
  std::optional<std::pair<ElementSet, ElementSet>> partition;
  LPResult lp;
};

struct CheckReport {
  Verdict verdict = Verdict::HoldsExact;
  /// Tuples tested on sets where the test is not exact.
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> log;
  std::optional<Refutation> refutation;

  bool holds() const { return verdict != Verdict::Refuted; }
};

struct SamplingPolicy {
  std::size_t samples = 8;  // random tuples per sigma with kernel dimension >= 2
  std::uint64_t seed = 0;
  int jobs = 1;
};

/// Dependency-modeling premise over every independent set. Exact when every
/// kernel has dimension <= 1, sampled otherwise; refutations are always exact.
CheckReport check_models_dependencies(const Instance& inst, const SamplingPolicy& policy);

/// All colorful tuples intersect. Needs a coloring with exactly d + 1 classes.
CheckReport check_colorful_helly(const Instance& inst, int jobs = 1);

/// Every independent set of the matroid has a common point.
CheckReport check_matroid_intersections(const Instance& inst, int jobs = 1);

/// For each independent set and bipartition G1 | G2: if the phi-image hulls
/// meet, the hulls of the unions of sets must meet. Real instances only.
CheckReport check_holmsen(const Instance& inst, int jobs = 1);

struct C1Result {
  bool holds = false;
  RealVector a;              // witness weights when (c1) fails
  std::vector<Vector> points;  // q_l when (c1) fails
  LPResult lp;
};

/// Condition (c1) for sigma and sign vectors z (one per element of sigma, each
/// with d - k entries of modulus 0 or 1, not all zero): every family
/// sum_l a_l z_jl = 0, sum_l a_l z_jl q_l = 0 in F^d with a_l >= 0 and q_l in
/// F_l is trivial.
C1Result c1_holds(const Instance& inst, const ElementSet& sigma, std::span<const Vector> z);

/// Pairing used by the sign condition: Re sum_j z_j <v_j, (q, 1)>.
Rational sign_pairing(std::span<const Vector> frame, const Vector& z, const Vector& q);

/// Rational points on the unit circle (Pythagorean parameterization) plus the
/// real units; `count` extra points beyond {1, -1, i, -i}.
std::vector<FieldScalar> unit_circle_points(std::size_t count);

}  // namespace tvlab
