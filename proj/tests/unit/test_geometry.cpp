#include <gtest/gtest.h>

#include <random>

#include "tvlab/core/error.hpp"
#include "tvlab/core/linalg.hpp"
#include "tvlab/geometry/geometry.hpp"

using namespace tvlab;

namespace {

Rational q(long p, long d = 1) { return make_rational(p, d); }

Polytope interval(Rational a, Rational b) {
  return Polytope(Field::Real, 1, {{FieldScalar(a)}, {FieldScalar(b)}});
}

Polytope poly2(std::initializer_list<std::pair<Rational, Rational>> pts) {
  std::vector<Vector> v;
  for (const auto& [x, y] : pts) v.push_back({FieldScalar(x), FieldScalar(y)});
  return Polytope(Field::Real, 2, v);
}

Polytope pt2(Rational x, Rational y) { return poly2({{x, y}}); }

}  // namespace

TEST(PolytopesIntersect, Intervals) {
  std::vector<Polytope> parts{interval(0, 1), interval(q(1, 2), 2), interval(q(4, 5), 3)};
  LPResult r = polytopes_intersect(parts);
  ASSERT_TRUE(r.feasible);
  ASSERT_EQ(r.point.size(), 1u);
  EXPECT_GE(r.point[0], q(4, 5));
  EXPECT_LE(r.point[0], 1);

  std::vector<Polytope> apart{interval(0, 1), interval(2, 3)};
  LPResult no = polytopes_intersect(apart);
  EXPECT_FALSE(no.feasible);
  EXPECT_TRUE(is_farkas_certificate(*no.system, no.certificate));
}

TEST(PolytopesIntersect, TrianglesSharingAVertex) {
  std::vector<Polytope> parts{poly2({{0, 0}, {1, 0}, {0, 1}}), poly2({{1, 0}, {2, 0}, {2, 1}})};
  LPResult r = polytopes_intersect(parts);
  ASSERT_TRUE(r.feasible);
  EXPECT_EQ(r.point, (RealVector{1, 0}));
  std::vector<Polytope> mixed{interval(0, 1), pt2(0, 0)};
  EXPECT_THROW(polytopes_intersect(mixed), InputError);
}

TEST(PolytopesIntersect, PermutationInvariantAndMonotone) {
  std::mt19937_64 gen(19);
  std::uniform_int_distribution<int> coord(-4, 4);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<Polytope> parts;
    for (int i = 0; i < 3; ++i) {
      std::vector<Vector> v;
      for (int j = 0; j < 3; ++j) v.push_back({FieldScalar(coord(gen)), FieldScalar(coord(gen))});
      parts.emplace_back(Field::Real, 2, v);
    }
    const bool base = polytopes_intersect(parts).feasible;
    std::vector<Polytope> rev(parts.rbegin(), parts.rend());
    EXPECT_EQ(polytopes_intersect(rev).feasible, base);
    std::vector<Polytope> more = parts;
    more.push_back(pt2(coord(gen), coord(gen)));
    if (!base) EXPECT_FALSE(polytopes_intersect(more).feasible);
  }
}

TEST(HullsOfUnions, Examples) {
  std::vector<Polytope> g1{pt2(0, 0), pt2(2, 0)};
  std::vector<Polytope> g2{pt2(1, -1), pt2(1, 1)};
  LPResult r = hulls_of_unions_intersect(g1, g2);
  ASSERT_TRUE(r.feasible);
  EXPECT_EQ(r.point, (RealVector{1, 0}));

  std::vector<Polytope> a{interval(0, 0)};
  std::vector<Polytope> b{interval(1, 1)};
  EXPECT_FALSE(hulls_of_unions_intersect(a, b).feasible);

  std::vector<Polytope> tri{poly2({{0, 0}, {3, 1}, {1, 4}})};
  EXPECT_TRUE(hulls_of_unions_intersect(tri, tri).feasible);
}

TEST(FlatMeetsPolytope, Examples) {
  Polytope tri = poly2({{0, -1}, {1, -1}, {0, 1}});
  Flat axis(Field::Real, {0, 0}, {{1, 0}});
  EXPECT_TRUE(flat_meets_polytope(axis, tri).feasible);
  Flat high(Field::Real, {0, 2}, {{1, 0}});
  LPResult no = flat_meets_polytope(high, tri);
  ASSERT_FALSE(no.feasible);
  EXPECT_TRUE(is_farkas_certificate(*no.system, no.certificate));
  Flat corner(Field::Real, {1, -1}, {});
  EXPECT_TRUE(flat_meets_polytope(corner, tri).feasible);
  EXPECT_THROW(Flat(Field::Real, {0, 0}, {{1, 1}, {2, 2}}), InputError);
}

TEST(FlatMeetsPolytope, ComplexLineUsesBothRealDirections) {
  // The C-line through 0 spanned by (1, 1) contains (i, i).
  Polytope p = Polytope::point(Field::Complex, {FieldScalar(0, 1), FieldScalar(0, 1)});
  Flat line(Field::Complex, {0, 0}, {{1, 1}});
  EXPECT_TRUE(flat_meets_polytope(line, p).feasible);
  Polytope off = Polytope::point(Field::Complex, {FieldScalar(0, 1), FieldScalar(1)});
  EXPECT_FALSE(flat_meets_polytope(line, off).feasible);
}

TEST(FlatMeetsPolytope, AgreesWithIntersectionForPoints) {
  std::mt19937_64 gen(29);
  std::uniform_int_distribution<int> coord(-3, 3);
  for (int trial = 0; trial < 50; ++trial) {
    Polytope p = poly2({{coord(gen), coord(gen)}, {coord(gen), coord(gen)}, {coord(gen), coord(gen)}});
    Vector x{FieldScalar(coord(gen)), FieldScalar(coord(gen))};
    Flat f(Field::Real, x, {});
    std::vector<Polytope> parts{p, Polytope::point(Field::Real, x)};
    EXPECT_EQ(flat_meets_polytope(f, p).feasible, polytopes_intersect(parts).feasible);
  }
}

TEST(AffineDependencyKernel, Examples) {
  std::vector<Vector> pts{{0}, {1}, {2}};
  auto k = affine_dependency_kernel(pts, Field::Real);
  ASSERT_EQ(k.size(), 1u);
  EXPECT_EQ(k[0], (Vector{1, -2, 1}));
  std::vector<Vector> one{{5}};
  EXPECT_TRUE(affine_dependency_kernel(one, Field::Real).empty());
  std::vector<Vector> cpts{{0}, {FieldScalar(0, 1)}};
  EXPECT_TRUE(affine_dependency_kernel(cpts, Field::Complex).empty());
}

TEST(AffineDependencyKernel, DimensionMatchesAffineRank) {
  std::mt19937_64 gen(31);
  std::uniform_int_distribution<int> coord(-2, 2);
  std::uniform_int_distribution<int> count(1, 6);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t r = static_cast<std::size_t>(trial % 3);
    std::vector<Vector> pts(static_cast<std::size_t>(count(gen)));
    for (auto& p : pts) {
      for (std::size_t c = 0; c < r; ++c) p.emplace_back(coord(gen));
    }
    // Affine rank by brute force: rank of differences from the first point.
    QMatrix diff(r, pts.size());
    for (std::size_t i = 1; i < pts.size(); ++i) {
      for (std::size_t c = 0; c < r; ++c) diff.set(c, i, pts[i][c] - pts[0][c]);
    }
    const std::size_t affine_rank = r == 0 ? 0 : rank(diff);
    auto k = affine_dependency_kernel(pts, Field::Real);
    EXPECT_EQ(k.size(), pts.size() - 1 - affine_rank);
    for (const auto& a : k) {
      FieldScalar sum;
      Vector weighted(r);
      for (std::size_t i = 0; i < pts.size(); ++i) {
        sum += a[i];
        for (std::size_t c = 0; c < r; ++c) weighted[c] += a[i] * pts[i][c];
      }
      EXPECT_TRUE(sum.is_zero());
      for (const auto& w : weighted) EXPECT_TRUE(w.is_zero());
    }
  }
}

TEST(ShadowSet, Examples) {
  Instance inst;
  inst.d = 1;
  inst.polytopes = {interval(-1, 1), interval(2, 3), interval(-3, -1)};
  inst.matroid = Matroid::uniform(3, 1);
  inst.phi.assign(3, Vector{});
  std::vector<Vector> e2{{0, 1}};
  EXPECT_EQ(compute_shadow_set(e2, inst), (ElementSet{0, 1, 2}));
  std::vector<Vector> e1{{1, 0}};
  EXPECT_EQ(compute_shadow_set(e1, inst), (ElementSet{1, 2}));
  std::vector<Vector> dep{{1, 0}, {2, 0}};
  EXPECT_THROW(compute_shadow_set(dep, inst), InputError);
}

TEST(ShadowSet, HyperplaneMissesAndSignInvariance) {
  // d = 2, k = 1: v = (a, b, c) cuts the plane in the line a x + b y + c = 0.
  Instance inst;
  inst.d = 2;
  inst.k = 1;
  inst.polytopes = {poly2({{0, 0}, {1, 0}}), poly2({{3, 3}, {4, 3}}), poly2({{0, 2}, {2, 0}})};
  inst.matroid = Matroid::uniform(3, 2);
  inst.phi.assign(3, Vector{});
  std::vector<Vector> v{{1, 1, -2}};
  // Independent per-set check: sign of a x + b y + c at the vertices.
  ElementSet expected;
  for (std::size_t i = 0; i < inst.polytopes.size(); ++i) {
    bool pos = false;
    bool neg = false;
    for (const auto& x : inst.polytopes[i].vertices()) {
      FieldScalar val = x[0] + x[1] - FieldScalar(2);
      if (val.re() >= 0) pos = true;
      if (val.re() <= 0) neg = true;
    }
    if (!(pos && neg)) expected.push_back(static_cast<int>(i));
  }
  EXPECT_EQ(compute_shadow_set(v, inst), expected);
  std::vector<Vector> flipped{{-1, -1, 2}};
  EXPECT_EQ(compute_shadow_set(flipped, inst), expected);
}
