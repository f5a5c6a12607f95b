#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "tvlab/core/error.hpp"
#include "tvlab/transversal/transversal.hpp"

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

Polytope hexagon(Rational cx, Rational cy, Rational s) {
  return poly2({{cx + 2 * s, cy}, {cx + s, cy + 2 * s}, {cx - s, cy + 2 * s},
                {cx - 2 * s, cy}, {cx - s, cy - 2 * s}, {cx + s, cy - 2 * s}});
}

Instance make(Field field, int d, int k, int r, std::vector<Polytope> sets, std::optional<Matroid> m = {}) {
  Instance inst;
  inst.field = field;
  inst.d = d;
  inst.k = k;
  inst.r = r;
  inst.polytopes = std::move(sets);
  const int n = static_cast<int>(inst.polytopes.size());
  inst.matroid = m ? *m : Matroid::uniform(n, n);
  inst.phi.assign(inst.polytopes.size(), Vector(static_cast<std::size_t>(r)));
  inst.validate();
  return inst;
}

std::vector<int> all(const Instance& inst) {
  std::vector<int> out(inst.size());
  std::iota(out.begin(), out.end(), 0);
  return out;
}

// Brute-force oracle: 10^4 rational directions spread over the half circle.
bool grid_finds_line(const Instance& inst) {
  const int steps = 10000;
  for (int i = 0; i < steps; ++i) {
    const double t = M_PI * i / steps;
    const Rational ux = make_rational(std::lround(std::cos(t) * 1e6), 1000000);
    const Rational uy = make_rational(std::lround(std::sin(t) * 1e6), 1000000);
    std::optional<Rational> lo;
    std::optional<Rational> hi;
    for (const auto& p : inst.polytopes) {
      std::optional<Rational> a;
      std::optional<Rational> b;
      for (const auto& v : p.vertices()) {
        Rational val = ux * v[0].re() + uy * v[1].re();
        if (!a || val < *a) a = val;
        if (!b || val > *b) b = val;
      }
      if (!lo || *a > *lo) lo = *a;
      if (!hi || *b < *hi) hi = *b;
    }
    if (*lo <= *hi) return true;
  }
  return false;
}

}  // namespace

TEST(PointTransversal, Examples) {
  Instance nested = make(Field::Real, 1, 0, 0, {interval(0, 10), interval(2, 8), interval(3, 4)});
  TransversalResult r = find_point_transversal(nested, all(nested));
  ASSERT_EQ(r.verdict, FindVerdict::Found);
  EXPECT_EQ(r.flat->dim(), 0);

  Instance apart = make(Field::Real, 2, 0, 0, {poly2({{0, 0}, {1, 0}, {0, 1}}), poly2({{3, 3}, {4, 3}, {3, 4}})});
  TransversalResult no = find_point_transversal(apart, all(apart));
  ASSERT_EQ(no.verdict, FindVerdict::NotFoundExact);
  ASSERT_TRUE(no.lp.has_value());
  EXPECT_TRUE(is_farkas_certificate(*no.lp->system, no.lp->certificate));

  const std::vector<int> one{1};
  EXPECT_EQ(find_point_transversal(apart, one).verdict, FindVerdict::Found);
  EXPECT_THROW(find_point_transversal(apart, std::vector<int>{}), InputError);
}

TEST(LineTransversal2d, Examples) {
  Instance segs = make(Field::Real, 2, 1, 0,
                       {poly2({{0, 0}, {1, 0}}), poly2({{3, 0}, {4, 0}}), poly2({{7, 0}, {8, 0}})});
  TransversalResult r = find_line_transversal_2d(segs, all(segs));
  ASSERT_EQ(r.verdict, FindVerdict::Found);
  ASSERT_EQ(r.flat->dim(), 1);
  EXPECT_TRUE(r.flat->directions()[0][1].is_zero());
  EXPECT_TRUE(r.flat->base()[1].is_zero());

  Instance hexes = make(Field::Real, 2, 1, 0, {hexagon(0, 0, 1), hexagon(20, 0, 1), hexagon(10, 18, 1)});
  TransversalResult no = find_line_transversal_2d(hexes, all(hexes));
  EXPECT_EQ(no.verdict, FindVerdict::NotFoundExact);
  EXPECT_FALSE(no.candidates.empty());
  EXPECT_FALSE(grid_finds_line(hexes));
  // Any two of them do have a line.
  const std::vector<int> pair{0, 2};
  EXPECT_EQ(find_line_transversal_2d(hexes, pair).verdict, FindVerdict::Found);

  const std::vector<int> one{1};
  EXPECT_EQ(find_line_transversal_2d(hexes, one).verdict, FindVerdict::Found);
  Instance wrong = make(Field::Real, 3, 1, 0, {Polytope::point(Field::Real, {0, 0, 0})});
  EXPECT_THROW(find_line_transversal_2d(wrong, all(wrong)), InputError);
}

TEST(LineTransversal2d, AgreesWithDirectionGrid) {
  std::mt19937_64 gen(53);
  std::uniform_int_distribution<int> center(-12, 12);
  std::uniform_int_distribution<int> size(1, 3);
  std::uniform_int_distribution<int> count(3, 4);
  int found = 0;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Polytope> sets;
    const int n = count(gen);
    for (int i = 0; i < n; ++i) sets.push_back(hexagon(center(gen), center(gen), size(gen)));
    Instance inst = make(Field::Real, 2, 1, 0, sets);
    TransversalResult r = find_line_transversal_2d(inst, all(inst));
    const bool grid = grid_finds_line(inst);
    if (r.verdict == FindVerdict::NotFoundExact) {
      EXPECT_FALSE(grid) << "trial " << trial;
    } else {
      ++found;
      EXPECT_TRUE(grid) << "trial " << trial;
      for (const auto& p : inst.polytopes) EXPECT_TRUE(flat_meets_polytope(*r.flat, p).feasible);
    }
  }
  EXPECT_GT(found, 10);
  EXPECT_LT(found, 90);
}

TEST(AffineHullTransversal, SmallSubfamilies) {
  Instance inst = make(Field::Real, 3, 1, 0,
                       {Polytope::point(Field::Real, {0, 0, 0}), Polytope::point(Field::Real, {1, 2, 3}),
                        Polytope::point(Field::Real, {5, 5, 5})});
  const std::vector<int> two{0, 1};
  TransversalResult r = find_affine_hull_transversal(inst, two);
  ASSERT_EQ(r.verdict, FindVerdict::Found);
  EXPECT_EQ(r.flat->directions()[0], (Vector{1, 2, 3}));
  EXPECT_THROW(find_affine_hull_transversal(inst, all(inst)), InputError);
}

TEST(HeuristicTransversal, PiercedFamilyInThreeSpace) {
  // Tetrahedra around points of the line (t, 2t + 1, -t / 2).
  std::mt19937_64 gen(59);
  std::uniform_int_distribution<int> jitter(-3, 3);
  std::vector<Polytope> sets;
  for (long t = -2; t <= 3; ++t) {
    const Rational x = q(t);
    const Rational y = q(2 * t + 1);
    const Rational z = q(-t, 2);
    std::vector<Vector> v;
    Vector sum{0, 0, 0};
    for (int j = 0; j < 3; ++j) {
      Vector delta{FieldScalar(q(jitter(gen), 4)), FieldScalar(q(jitter(gen), 4)), FieldScalar(q(jitter(gen), 4))};
      for (int c = 0; c < 3; ++c) sum[static_cast<std::size_t>(c)] += delta[static_cast<std::size_t>(c)];
      v.push_back({x + delta[0].re(), y + delta[1].re(), z + delta[2].re()});
    }
    v.push_back({x - sum[0].re(), y - sum[1].re(), z - sum[2].re()});
    sets.emplace_back(Field::Real, 3, v);
  }
  Instance inst = make(Field::Real, 3, 1, 0, sets);
  TransversalResult r = find_k_flat_heuristic(inst, all(inst), {});
  ASSERT_EQ(r.verdict, FindVerdict::Found) << r.note;
  for (const auto& p : inst.polytopes) EXPECT_TRUE(flat_meets_polytope(*r.flat, p).feasible);
}

TEST(HeuristicTransversal, ComplexLine) {
  // Points (t, (1 + i) t + i) of a C-line in C^2, each blown up to a small simplex.
  std::vector<Polytope> sets;
  for (long t = 0; t < 5; ++t) {
    const FieldScalar z1(q(t), q(t % 2));
    const FieldScalar z2 = FieldScalar(1, 1) * z1 + FieldScalar(0, 1);
    std::vector<Vector> v{{z1 + FieldScalar(q(1, 3)), z2},
                          {z1 - FieldScalar(q(1, 3)), z2 + FieldScalar(0, q(1, 3))},
                          {z1, z2 - FieldScalar(0, q(1, 3))}};
    sets.emplace_back(Field::Complex, 2, v);
  }
  Instance inst = make(Field::Complex, 2, 1, 0, sets);
  TransversalResult r = find_k_flat_heuristic(inst, all(inst), {});
  ASSERT_EQ(r.verdict, FindVerdict::Found) << r.note;
  for (const auto& p : inst.polytopes) EXPECT_TRUE(flat_meets_polytope(*r.flat, p).feasible);
}

TEST(HeuristicTransversal, BudgetAndDelegation) {
  Instance inst = make(Field::Real, 3, 1, 0,
                       {Polytope::point(Field::Real, {0, 0, 0}), Polytope::point(Field::Real, {1, 0, 0}),
                        Polytope::point(Field::Real, {2, 0, 0})});
  HeuristicBudget zero{0, 10, 1};
  EXPECT_EQ(find_k_flat_heuristic(inst, all(inst), zero).verdict, FindVerdict::Inconclusive);

  Instance points = make(Field::Real, 1, 0, 0, {interval(0, 2), interval(1, 3)});
  TransversalResult r = find_k_flat_heuristic(points, all(points), {});
  EXPECT_EQ(r.verdict, FindVerdict::Found);
  EXPECT_EQ(r.method, "point-lp");
}

TEST(HeuristicTransversal, NeverClaimsNonexistence) {
  // Four points in general position in R^3 have no common line.
  Instance inst = make(Field::Real, 3, 1, 0,
                       {Polytope::point(Field::Real, {0, 0, 0}), Polytope::point(Field::Real, {1, 0, 0}),
                        Polytope::point(Field::Real, {0, 1, 0}), Polytope::point(Field::Real, {0, 0, 1})});
  EXPECT_EQ(find_k_flat_heuristic(inst, all(inst), {2, 40, 3}).verdict, FindVerdict::Inconclusive);
}

TEST(TheoremConclusion, Bounds) {
  EXPECT_EQ(conclusion_bound(make(Field::Real, 2, 0, 0, {poly2({{0, 0}})})), 2);
  EXPECT_EQ(conclusion_bound(make(Field::Real, 2, 1, 1, {poly2({{0, 0}})})), 2);
  EXPECT_EQ(conclusion_bound(make(Field::Complex, 1, 0, 0, {Polytope::point(Field::Complex, {0})})), 2);
}

TEST(TheoremConclusion, ColorfulHellyReportsAClass) {
  // Class 0 shares the point 1; class 1 does not have a common point.
  std::vector<int> colors{0, 0, 1, 1};
  Instance inst = make(Field::Real, 1, 0, 0, {interval(0, 2), interval(1, 3), interval(0, 1), interval(2, 3)},
                       Matroid::partition(colors));
  inst.coloring = colors;
  ConclusionReport r = verify_theorem_conclusion(inst);
  ASSERT_EQ(r.verdict, ConclusionVerdict::Pass);
  EXPECT_LE(r.removed_rank, r.bound);
  ASSERT_TRUE(r.color.has_value());
  EXPECT_EQ(*r.color, 0);
}

TEST(TheoremConclusion, FailsOnlyWithExactEvidence) {
  // Three far-apart points in the line with a rank-3 matroid and bound 1:
  // removing any rank-1 set leaves two disjoint points.
  Instance inst = make(Field::Real, 1, 0, 0,
                       {Polytope::point(Field::Real, {0}), Polytope::point(Field::Real, {5}),
                        Polytope::point(Field::Real, {9})});
  ConclusionReport r = verify_theorem_conclusion(inst);
  EXPECT_EQ(r.verdict, ConclusionVerdict::Fail);
  EXPECT_GT(r.subsets_tried, 1u);
}

TEST(TheoremConclusion, MonotoneInBound) {
  std::mt19937_64 gen(61);
  std::uniform_int_distribution<int> center(-8, 8);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Polytope> sets;
    for (int i = 0; i < 5; ++i) sets.push_back(hexagon(center(gen), center(gen), 1));
    Instance low = make(Field::Real, 2, 1, 0, sets, Matroid::uniform(5, 4));
    Instance high = make(Field::Real, 2, 1, 1, sets, Matroid::uniform(5, 4));
    ConclusionReport a = verify_theorem_conclusion(low);
    ConclusionReport b = verify_theorem_conclusion(high);
    EXPECT_EQ(a.bound, 1);
    EXPECT_EQ(b.bound, 2);
    if (a.verdict == ConclusionVerdict::Pass) EXPECT_EQ(b.verdict, ConclusionVerdict::Pass);
    EXPECT_LE(b.removed.size(), std::max<std::size_t>(a.removed.size(), b.removed.size()));
  }
}
