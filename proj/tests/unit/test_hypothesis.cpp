#include <gtest/gtest.h>

#include <random>

#include "tvlab/core/error.hpp"
#include "tvlab/hypothesis/hypothesis.hpp"

using namespace tvlab;

namespace {

Rational q(long p, long d = 1) { return make_rational(p, d); }

Polytope interval(Rational a, Rational b) {
  return Polytope(Field::Real, 1, {{FieldScalar(a)}, {FieldScalar(b)}});
}

Polytope pt2(Rational x, Rational y) { return Polytope::point(Field::Real, {x, y}); }

Instance make(int d, int k, int r, std::vector<Polytope> sets, Matroid m, std::vector<Vector> phi = {}) {
  Instance inst;
  inst.d = d;
  inst.k = k;
  inst.r = r;
  inst.polytopes = std::move(sets);
  inst.matroid = std::move(m);
  inst.phi = phi.empty() ? std::vector<Vector>(inst.polytopes.size(), Vector(static_cast<std::size_t>(r)))
                         : std::move(phi);
  inst.validate();
  return inst;
}

Instance colored(int d, std::vector<Polytope> sets, std::vector<int> coloring) {
  Instance inst = make(d, 0, 0, std::move(sets), Matroid::partition(coloring));
  inst.coloring = coloring;
  inst.validate();
  return inst;
}

// Three singletons with x-coordinate phi; the middle one sits at height h.
Instance three_points(long h) {
  return make(2, 1, 1, {pt2(0, 0), pt2(1, h), pt2(2, 0)}, Matroid::uniform(3, 3), {{0}, {1}, {2}});
}

}  // namespace

TEST(Pullback, CollinearSingletons) {
  Instance inst = three_points(0);
  PullbackResult r = pullback_feasible(inst, {{0, 1, 2}, {{1, -2, 1}}});
  ASSERT_TRUE(r.feasible);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(r.witness->r, (RealVector{q(1, 3), q(1, 3), q(1, 3)}));
  EXPECT_EQ(r.witness->points[1], (Vector{1, 0}));
}

TEST(Pullback, LiftedMiddlePointIsInfeasible) {
  Instance inst = three_points(5);
  PullbackResult r = pullback_feasible(inst, {{0, 1, 2}, {{1, -2, 1}}});
  ASSERT_FALSE(r.feasible);
  EXPECT_TRUE(is_farkas_certificate(*r.lp.system, r.lp.certificate));
}

TEST(Pullback, RejectsMalformedTuples) {
  Instance inst = three_points(0);
  EXPECT_THROW(pullback_feasible(inst, {{0, 1, 2}, {{1, 1, 1}}}), InputError);
  EXPECT_THROW(pullback_feasible(inst, {{0, 1, 2}, {{0, 0, 0}}}), InputError);
  EXPECT_THROW(pullback_feasible(inst, {{0, 1}, {{1, -2, 1}}}), InputError);
  EXPECT_THROW(pullback_feasible(inst, {{0, 1, 2}, {{1, -2, 1}, {1, -2, 1}}}), InputError);
}

TEST(ModelsDependencies, Examples) {
  CheckReport ok = check_models_dependencies(three_points(0), {});
  EXPECT_EQ(ok.verdict, Verdict::HoldsExact);

  CheckReport bad = check_models_dependencies(three_points(5), {});
  ASSERT_EQ(bad.verdict, Verdict::Refuted);
  ASSERT_TRUE(bad.refutation && bad.refutation->tuple);
  EXPECT_EQ(bad.refutation->tuple->sigma, (ElementSet{0, 1, 2}));
  EXPECT_EQ(bad.refutation->tuple->rows, (std::vector<Vector>{{1, -2, 1}}));
  // The refutation re-verifies bit for bit.
  PullbackResult again = pullback_feasible(three_points(5), *bad.refutation->tuple);
  EXPECT_FALSE(again.feasible);
  EXPECT_EQ(again.lp.certificate, bad.refutation->lp.certificate);

  // Affinely independent images everywhere: every kernel vanishes.
  Instance vac = make(2, 1, 1, {pt2(0, 0), pt2(5, 5), pt2(1, 7)}, Matroid::uniform(3, 2), {{0}, {1}, {2}});
  CheckReport v = check_models_dependencies(vac, {});
  EXPECT_EQ(v.verdict, Verdict::HoldsExact);
  for (const auto& line : v.log) EXPECT_NE(line.find("vacuous"), std::string::npos);
}

TEST(ModelsDependencies, LargeKernelIsSampled) {
  // r = 0 gives sets of size m an (m - 1)-dimensional kernel. Identical sets
  // make every tuple pull back (r constant, one common point).
  const Polytope tri(Field::Real, 2, {{0, 0}, {4, 0}, {0, 4}});
  Instance inst = make(2, 1, 0, {tri, tri, tri, tri}, Matroid::uniform(4, 4));
  CheckReport r = check_models_dependencies(inst, {4, 99, 1});
  EXPECT_EQ(r.verdict, Verdict::HoldsSampled);
  EXPECT_GT(r.samples, 0u);
  EXPECT_EQ(r.seed, 99u);
}

TEST(ModelsDependencies, PiercedFamilyHolds) {
  // Sets around points (t, t/2 + 1) of a line, phi = t.
  std::vector<Polytope> sets;
  std::vector<Vector> phi;
  for (long t = 0; t < 5; ++t) {
    Rational y = q(t, 2) + 1;
    sets.emplace_back(Field::Real, 2,
                      std::vector<Vector>{{q(t) - 1, y}, {q(t) + 1, y + 1}, {q(t), y - 1}});
    phi.push_back({q(t)});
  }
  Instance inst = make(2, 1, 1, sets, Matroid::uniform(5, 3), phi);
  EXPECT_EQ(check_models_dependencies(inst, {}).verdict, Verdict::HoldsExact);
}

TEST(ModelsDependencies, RowScalingInvariance) {
  std::mt19937_64 gen(37);
  std::uniform_int_distribution<int> coord(-3, 3);
  std::uniform_int_distribution<int> scale(1, 5);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<Polytope> sets;
    for (int i = 0; i < 4; ++i) {
      sets.emplace_back(Field::Real, 2,
                        std::vector<Vector>{{coord(gen), coord(gen)}, {coord(gen), coord(gen)}});
    }
    Instance inst = make(2, 0, 0, sets, Matroid::uniform(4, 4));
    // d - k = 2 rows from the 3-dimensional kernel of four constant images.
    std::vector<Vector> pts(4, Vector{});
    auto basis = affine_dependency_kernel(pts, Field::Real);
    ASSERT_EQ(basis.size(), 3u);
    DependencyTuple t{{0, 1, 2, 3}, {basis[trial % 3], basis[(trial + 1) % 3]}};
    DependencyTuple scaled = t;
    const long s0 = scale(gen) * (trial % 2 ? -1 : 1);
    const long s1 = scale(gen);
    for (auto& x : scaled.rows[0]) x = x * FieldScalar(s0);
    for (auto& x : scaled.rows[1]) x = x * FieldScalar(s1);
    EXPECT_EQ(pullback_feasible(inst, t).feasible, pullback_feasible(inst, scaled).feasible);
  }
}

TEST(ModelsDependencies, RelabelingEquivariance) {
  std::mt19937_64 gen(41);
  std::uniform_int_distribution<int> coord(-3, 3);
  for (int trial = 0; trial < 15; ++trial) {
    std::vector<Polytope> sets;
    std::vector<Vector> phi;
    std::vector<int> colors{0, 0, 1, 1, 2};
    for (int i = 0; i < 5; ++i) {
      sets.emplace_back(Field::Real, 2,
                        std::vector<Vector>{{coord(gen), coord(gen)}, {coord(gen), coord(gen)},
                                            {coord(gen), coord(gen)}});
      phi.push_back({coord(gen) % 2});
    }
    Instance a = make(2, 1, 1, sets, Matroid::partition(colors), phi);
    std::vector<std::size_t> perm{4, 2, 0, 3, 1};
    std::vector<Polytope> psets;
    std::vector<Vector> pphi;
    std::vector<int> pcolors;
    for (auto p : perm) {
      psets.push_back(sets[p]);
      pphi.push_back(phi[p]);
      pcolors.push_back(colors[p]);
    }
    Instance b = make(2, 1, 1, psets, Matroid::partition(pcolors), pphi);
    EXPECT_EQ(check_models_dependencies(a, {}).verdict, check_models_dependencies(b, {}).verdict);
  }
}

TEST(ColorfulHelly, Examples) {
  EXPECT_EQ(check_colorful_helly(colored(1, {interval(0, 1), interval(2, 3), interval(0, 3)}, {0, 0, 1})).verdict,
            Verdict::HoldsExact);
  CheckReport bad = check_colorful_helly(colored(1, {interval(0, 1), interval(2, 3)}, {0, 1}));
  ASSERT_EQ(bad.verdict, Verdict::Refuted);
  EXPECT_EQ(bad.refutation->sets, (ElementSet{0, 1}));
  EXPECT_TRUE(is_farkas_certificate(*bad.refutation->lp.system, bad.refutation->lp.certificate));
  EXPECT_EQ(check_colorful_helly(colored(1, {interval(0, 2), interval(1, 3), interval(1, 1)}, {0, 1, 1})).verdict,
            Verdict::HoldsExact);
  EXPECT_THROW(check_colorful_helly(colored(1, {interval(0, 1)}, {0})), InputError);
}

TEST(ColorfulHelly, IdenticalClassesMatchClassicalHelly) {
  std::mt19937_64 gen(43);
  std::uniform_int_distribution<int> coord(0, 8);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Polytope> base;
    for (int i = 0; i < 3; ++i) {
      int a = coord(gen);
      int b = coord(gen);
      base.push_back(interval(std::min(a, b), std::max(a, b)));
    }
    std::vector<Polytope> sets;
    std::vector<int> colors;
    for (int c = 0; c < 2; ++c) {
      for (const auto& p : base) {
        sets.push_back(p);
        colors.push_back(c);
      }
    }
    // Helly premise for d = 1: every pair (and every singleton) intersects.
    bool premise = true;
    for (std::size_t i = 0; i < base.size(); ++i) {
      for (std::size_t j = i + 1; j < base.size(); ++j) {
        std::vector<Polytope> pair{base[i], base[j]};
        premise = premise && polytopes_intersect(pair).feasible;
      }
    }
    EXPECT_EQ(check_colorful_helly(colored(1, sets, colors)).holds(), premise);
  }
}

TEST(MatroidIntersections, Examples) {
  EXPECT_EQ(check_matroid_intersections(
                make(1, 0, 0, {interval(0, 2), interval(1, 3), interval(q(3, 2), 4)}, Matroid::uniform(3, 2)))
                .verdict,
            Verdict::HoldsExact);
  CheckReport bad = check_matroid_intersections(
      make(1, 0, 0, {interval(0, 1), interval(q(9, 10), 2), interval(q(3, 2), 3)}, Matroid::uniform(3, 3)));
  ASSERT_EQ(bad.verdict, Verdict::Refuted);
  EXPECT_EQ(bad.refutation->sets, (ElementSet{0, 2}));
  EXPECT_EQ(check_matroid_intersections(
                make(1, 0, 0, {interval(0, 1), interval(5, 6)}, Matroid::uniform(2, 1)))
                .verdict,
            Verdict::HoldsExact);
}

TEST(Holmsen, Examples) {
  // r = 0: every independent split of sets must have meeting hulls.
  Instance apart = make(2, 1, 0, {pt2(0, 0), pt2(3, 3)}, Matroid::uniform(2, 2));
  CheckReport bad = check_holmsen(apart);
  ASSERT_EQ(bad.verdict, Verdict::Refuted);
  ASSERT_TRUE(bad.refutation->partition);
  EXPECT_EQ(bad.refutation->partition->first, (ElementSet{0}));
  EXPECT_EQ(bad.refutation->partition->second, (ElementSet{1}));

  // Sets on the x-axis, phi = their position: image hulls meet only when the
  // set hulls do.
  std::vector<Polytope> sets;
  std::vector<Vector> phi;
  for (long x = 0; x < 4; ++x) {
    sets.push_back(Polytope(Field::Real, 2, {{q(x), 0}, {q(x) + q(1, 2), 0}}));
    phi.push_back({q(x)});
  }
  EXPECT_EQ(check_holmsen(make(2, 1, 1, sets, Matroid::uniform(4, 3), phi)).verdict, Verdict::HoldsExact);

  EXPECT_EQ(check_holmsen(make(2, 1, 0, {pt2(0, 0), pt2(3, 3)}, Matroid::uniform(2, 1))).verdict,
            Verdict::HoldsExact);
}

TEST(C1, Examples) {
  Instance inst = make(1, 0, 0, {interval(0, 2), interval(1, 3), interval(5, 6)}, Matroid::uniform(3, 2));
  std::vector<Vector> one{{1}};
  EXPECT_TRUE(c1_holds(inst, {0}, one).holds);

  std::vector<Vector> opposite{{1}, {-1}};
  C1Result meet = c1_holds(inst, {0, 1}, opposite);
  ASSERT_FALSE(meet.holds);
  EXPECT_EQ(meet.a, (RealVector{q(1, 2), q(1, 2)}));
  EXPECT_EQ(meet.points[0], meet.points[1]);

  EXPECT_TRUE(c1_holds(inst, {0, 2}, opposite).holds);

  std::vector<Vector> bad{{2}, {-1}};
  EXPECT_THROW(c1_holds(inst, {0, 1}, bad), InputError);
  // Each z_l must be nonzero.
  std::vector<Vector> zero{{0}, {1}};
  EXPECT_THROW(c1_holds(inst, {0, 1}, zero), InputError);
}

TEST(C1, SignConditionImpliesC1) {
  std::mt19937_64 gen(47);
  std::uniform_int_distribution<int> coord(-4, 4);
  const std::vector<Vector> signs{{1}, {-1}};
  int tested = 0;
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<Polytope> sets;
    for (int i = 0; i < 3; ++i) {
      sets.emplace_back(Field::Real, 2,
                        std::vector<Vector>{{coord(gen), coord(gen)}, {coord(gen), coord(gen)}});
    }
    Instance inst = make(2, 1, 1, sets, Matroid::uniform(3, 3), {{0}, {1}, {2}});
    std::vector<Vector> frame{{coord(gen), coord(gen), coord(gen)}};
    if (frame[0][0].is_zero() && frame[0][1].is_zero() && frame[0][2].is_zero()) continue;
    ElementSet sigma;
    std::vector<Vector> z;
    for (int i = 0; i < 3; ++i) {
      for (const auto& s : signs) {
        bool positive = true;
        for (const auto& v : sets[static_cast<std::size_t>(i)].vertices()) {
          positive = positive && sign_pairing(frame, s, v) > 0;
        }
        if (positive) {
          sigma.push_back(i);
          z.push_back(s);
          break;
        }
      }
    }
    if (sigma.empty()) continue;
    ++tested;
    EXPECT_TRUE(c1_holds(inst, sigma, z).holds);
  }
  EXPECT_GT(tested, 20);
}

TEST(C1, UnitCirclePointsHaveModulusOne) {
  auto pts = unit_circle_points(12);
  EXPECT_EQ(pts.size(), 16u);
  for (const auto& z : pts) EXPECT_EQ(z.norm2(), 1);
}
