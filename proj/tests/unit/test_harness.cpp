#include <gtest/gtest.h>

#include <set>

#include "tvlab/core/error.hpp"
#include "tvlab/harness/generators.hpp"
#include "tvlab/harness/suites.hpp"
#include "tvlab/hypothesis/hypothesis.hpp"

using namespace tvlab;

namespace {

InstanceSpec varied_spec(std::uint64_t seed) {
  switch (seed % 5) {
    case 0: return generate_pierced_instance(seed, {});
    case 1: {
      PiercedParams p;
      p.field = Field::Complex;
      p.d = 2;
      p.k = 1;
      p.r = 1;
      p.n = 3;
      p.outliers = 1;
      return generate_pierced_instance(seed, p);
    }
    case 2: {
      ColorfulParams p;
      p.d = 1 + static_cast<int>(seed % 2);
      p.hypothesis_true = seed % 3 != 0;
      return generate_colorful_instance(seed, p);
    }
    case 3: return generate_matroid_helly_instance(seed, {2, 3, 5, 3, 4});
    default: {
      InstanceSpec s = generate_holmsen_instance(seed, {static_cast<int>(seed % 2), 4, 1, 2, 3});
      if (seed % 3 == 0) s.matroid = MatroidSpec::explicit_bases(4, {{0, 2}, {0, 3}, {1, 2}, {1, 3}});
      return s;
    }
  }
}

std::vector<int> all(std::size_t n) {
  std::vector<int> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<int>(i);
  return out;
}

}  // namespace

TEST(Serialization, RoundTripsRandomSpecs) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const InstanceSpec spec = varied_spec(seed);
    const std::string text = instance_to_json(spec);
    const InstanceSpec back = instance_from_json(text);
    EXPECT_EQ(back, spec) << "seed " << seed;
    EXPECT_EQ(instance_to_json(back), text);
  }
}

TEST(Serialization, RationalsAreStrings) {
  const std::string text = instance_to_json(generate_pierced_instance(3, {}), -1);
  EXPECT_NE(text.find("\"polytopes\":[[[\""), std::string::npos);
  const std::string tail = R"(,"matroid":{"backend":"uniform","n":1,"rank":1},"phi":[[]]})";
  const std::string head = R"({"schema":1,"field":"R","d":1,"k":0,"r":0,"polytopes":)";
  EXPECT_NO_THROW(instance_from_json(head + R"([[["1/2"]]])" + tail));
  EXPECT_THROW(instance_from_json(head + "[[[0.5]]]" + tail), InputError);
  EXPECT_THROW(instance_from_json(head + R"([[["1/0"]]])" + tail), InputError);
}

TEST(Serialization, ComplexScalarsArePairs) {
  PiercedParams p;
  p.field = Field::Complex;
  p.d = 1;
  p.k = 0;
  p.r = 0;
  p.n = 2;
  const std::string text = instance_to_json(generate_pierced_instance(5, p), -1);
  EXPECT_NE(text.find("\"polytopes\":[[[[\""), std::string::npos);
}

TEST(Serialization, RejectsMalformedDocuments) {
  const std::string good = instance_to_json(generate_pierced_instance(2, {}));
  EXPECT_NO_THROW(instance_from_json(good));
  EXPECT_THROW(instance_from_json("{"), InputError);
  EXPECT_THROW(instance_from_json("{}"), InputError);
  std::string schema = good;
  schema.replace(schema.find("\"schema\": 1"), 11, "\"schema\": 2");
  EXPECT_THROW(instance_from_json(schema), InputError);
  std::string field = good;
  field.replace(field.find("\"field\": \"R\""), 12, "\"field\": \"Q\"");
  EXPECT_THROW(instance_from_json(field), InputError);
  std::string dims = good;
  dims.replace(dims.find("\"k\": 1"), 6, "\"k\": 2");
  EXPECT_THROW(instance_from_json(dims), InputError);
}

TEST(Serialization, MatroidAndComplexDocuments) {
  for (const auto& m : {MatroidSpec::uniform(4, 2), MatroidSpec::partition({0, 1, 0}),
                        MatroidSpec::linear(Field::Complex, {{FieldScalar(1, 1)}, {FieldScalar(0, 2)}}),
                        MatroidSpec::explicit_bases(3, {{0, 1}, {1, 2}})}) {
    EXPECT_EQ(matroid_from_json(matroid_to_json(m)), m);
  }
  EXPECT_THROW(matroid_from_json(R"({"backend":"graphic","n":3})"), InputError);
  EXPECT_THROW(matroid_from_json(R"({"backend":"uniform","n":3,"rank":5})"), InputError);

  SimplicialComplex k({{0, 1}, {1, 2, 3}, {4}});
  EXPECT_EQ(complex_from_json(complex_to_json(k)), k);
  EXPECT_EQ(complex_from_json(R"({"facets":[[2,1],[1]]})").facets(), (std::vector<Face>{{1, 2}}));
  EXPECT_THROW(complex_from_json(R"({"vertices":[0,1,5],"facets":[[0,1]]})"), InputError);
}

TEST(Serialization, Digest) {
  EXPECT_EQ(digest(""), "cbf29ce484222325");
  EXPECT_EQ(digest("a"), "af63dc4c8601ec8c");
}

TEST(PiercedGenerator, Examples) {
  PiercedParams p;
  p.n = 6;
  const Instance plane = generate_pierced_instance(1, p).to_instance();
  EXPECT_EQ(find_line_transversal_2d(plane, all(plane.size())).verdict, FindVerdict::Found);

  p.n = 1;
  const Instance single = generate_pierced_instance(1, p).to_instance();
  EXPECT_EQ(single.size(), 1u);
  EXPECT_EQ(find_line_transversal_2d(single, all(1)).verdict, FindVerdict::Found);

  PiercedParams c;
  c.field = Field::Complex;
  c.d = 1;
  c.k = 0;
  c.r = 0;
  c.n = 4;
  const Instance complex = generate_pierced_instance(1, c).to_instance();
  EXPECT_EQ(complex.size(), 4u);
  EXPECT_TRUE(polytopes_intersect(std::span<const Polytope>(complex.polytopes)).feasible);

  PiercedParams bad;
  bad.r = 2;
  EXPECT_THROW(generate_pierced_instance(1, bad), InputError);
}

TEST(PiercedGenerator, GroundTruthAndSelfTest) {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    PiercedParams p;
    p.field = seed % 2 ? Field::Complex : Field::Real;
    p.d = 2 + static_cast<int>(seed % 3 == 0);
    p.n = 5;
    p.outliers = static_cast<int>(seed % 3);
    const InstanceSpec spec = generate_pierced_instance(seed, p);
    const Instance inst = spec.to_instance();
    const FlatSpec& g = *spec.provenance.ground_truth;
    const Flat flat(inst.field, g.base, g.directions);
    for (int i = 0; i < p.n - p.outliers; ++i) {
      EXPECT_TRUE(flat_meets_polytope(flat, inst.polytopes[static_cast<std::size_t>(i)]).feasible);
    }
    if (p.outliers == 0) {
      const CheckReport check = check_models_dependencies(inst, {4, seed, 1});
      EXPECT_TRUE(check.holds()) << "seed " << seed;
    }
  }
}

TEST(ColorfulGenerator, Premises) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    ColorfulParams p;
    p.d = 1 + static_cast<int>(seed % 2);
    const Instance yes = generate_colorful_instance(seed, p).to_instance();
    EXPECT_EQ(check_colorful_helly(yes).verdict, Verdict::HoldsExact);
    EXPECT_EQ(yes.num_colors(), p.d + 1);

    p.hypothesis_true = false;
    const InstanceSpec spec = generate_colorful_instance(seed, p);
    const CheckReport no = check_colorful_helly(spec.to_instance());
    ASSERT_EQ(no.verdict, Verdict::Refuted);
    std::string planted;
    for (int i : no.refutation->sets) planted += (planted.empty() ? "" : ",") + std::to_string(i);
    EXPECT_EQ(spec.provenance.params.back(), (std::pair<std::string, std::string>{"planted", planted}));
  }
}

TEST(ColorfulGenerator, OneSetPerClassIsClassicalHelly) {
  ColorfulParams p;
  p.d = 2;
  p.sets_min = 1;
  p.sets_max = 1;
  const Instance inst = generate_colorful_instance(4, p).to_instance();
  EXPECT_EQ(inst.size(), 3u);
  EXPECT_EQ(check_colorful_helly(inst).verdict, Verdict::HoldsExact);
  EXPECT_TRUE(polytopes_intersect(std::span<const Polytope>(inst.polytopes)).feasible);
}

TEST(MatroidGenerators, Honesty) {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const InstanceSpec km = generate_matroid_helly_instance(seed, {});
    const Instance a = km.to_instance();
    EXPECT_EQ(check_matroid_intersections(a).verdict, Verdict::HoldsExact);
    EXPECT_LE(a.matroid.rank(), 4);
    EXPECT_FALSE(a.matroid.has_loops());

    const InstanceSpec hs = generate_holmsen_instance(seed, {static_cast<int>(seed % 2), 5, 1, 3, 5});
    const Instance b = hs.to_instance();
    EXPECT_TRUE(check_holmsen(b).holds());
    const Flat line(Field::Real, hs.provenance.ground_truth->base, hs.provenance.ground_truth->directions);
    for (int i = 0; i < 4; ++i) EXPECT_TRUE(flat_meets_polytope(line, b.polytopes[static_cast<std::size_t>(i)]).feasible);
  }
}

TEST(MatroidGenerators, RandomMatroidsAreLoopless) {
  Rng rng(9);
  for (int i = 0; i < 60; ++i) {
    const int n = 1 + i % 8;
    const Matroid m = random_matroid(rng, n, 4, i).build();
    EXPECT_EQ(m.size(), n);
    EXPECT_FALSE(m.has_loops());
    EXPECT_LE(m.rank(), 4);
    EXPECT_GE(m.rank(), 1);
  }
}

TEST(Fleet, Composition) {
  const auto fleet = matroid_fleet(0);
  EXPECT_GE(fleet.size(), 100u);
  std::set<std::string> names;
  for (const auto& e : fleet) {
    const Matroid m = e.spec.build();
    EXPECT_LE(m.size(), 8) << e.name;
    EXPECT_LE(m.rank(), 4) << e.name;
    EXPECT_FALSE(m.has_loops()) << e.name;
    names.insert(e.name);
  }
  EXPECT_EQ(names.size(), fleet.size());
  EXPECT_TRUE(names.count("Fano") && names.count("Vamos") && names.count("M(K4)"));
}

TEST(Fleet, Automorphisms) {
  EXPECT_EQ(matroid_automorphisms(Matroid::uniform(3, 2)).size(), 6u);
  EXPECT_EQ(matroid_automorphisms(Matroid::partition({0, 0, 1})).size(), 2u);
  // Fano plane: GL(3, 2) has order 168.
  const auto fleet = matroid_fleet(0);
  auto fano = std::find_if(fleet.begin(), fleet.end(), [](const FleetEntry& e) { return e.name == "Fano"; });
  const auto group = matroid_automorphisms(fano->spec.build());
  EXPECT_EQ(group.size(), 168u);
  EXPECT_EQ(group.front(), (std::vector<int>{0, 1, 2, 3, 4, 5, 6}));
}

TEST(Fleet, OrbitRepresentativesCoverEveryVector) {
  const std::vector<std::vector<int>> trivial{{0, 1, 2}};
  EXPECT_EQ(size_vector_orbits(3, 3, trivial).size(), 27u);
  const auto sym = matroid_automorphisms(Matroid::uniform(4, 2));
  EXPECT_EQ(size_vector_orbits(4, 3, sym).size(), 15u);  // multisets of size 4 from 3 values

  const auto group = matroid_automorphisms(Matroid::partition({0, 0, 1, 1, 2}));
  const auto reps = size_vector_orbits(5, 3, group);
  std::set<std::vector<int>> covered;
  for (const auto& s : reps) {
    for (const auto& p : group) {
      std::vector<int> image(5);
      for (int i = 0; i < 5; ++i) image[static_cast<std::size_t>(p[static_cast<std::size_t>(i)])] = s[static_cast<std::size_t>(i)];
      covered.insert(image);
    }
  }
  EXPECT_EQ(covered.size(), 243u);
  EXPECT_TRUE(std::is_sorted(reps.begin(), reps.end()));
}

TEST(Suites, EmptySuite) {
  SuiteConfig c;
  c.suite = "helly";
  c.count = 0;
  const RunReport r = run_suite(c);
  EXPECT_TRUE(r.records.empty());
  EXPECT_EQ(r.violations(), 0u);
  const std::string text = r.to_jsonl(false);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 2);
}

TEST(Suites, UnknownSuite) {
  SuiteConfig c;
  c.suite = "nope";
  EXPECT_THROW(run_suite(c), InputError);
  c.suite = "topology";
  EXPECT_THROW(suite_instances(c), InputError);
}

TEST(Suites, DeterministicAcrossRunsAndJobs) {
  for (const std::string name : {"helly", "kalai-meshulam", "holmsen", "main-theorem", "c1", "topology"}) {
    SuiteConfig c;
    c.suite = name;
    c.seed = 17;
    c.count = 4;
    const std::string first = run_suite(c).to_jsonl(false);
    c.jobs = 3;
    const RunReport again = run_suite(c);
    EXPECT_EQ(again.to_jsonl(false), first) << name;
    EXPECT_EQ(again.violations(), 0u) << name;
    c.seed = 18;
    if (name != "topology") EXPECT_NE(run_suite(c).to_jsonl(false), first) << name;
  }
}

TEST(Suites, RecordsCarryTheConclusion) {
  SuiteConfig c;
  c.suite = "helly";
  c.count = 6;
  for (const auto& rec : run_suite(c).records) {
    EXPECT_EQ(rec.conclusion, "pass");
    EXPECT_EQ(rec.hypothesis, "HOLDS_EXACT");
    ASSERT_TRUE(rec.color.has_value());
    EXPECT_LE(rec.removed_rank, rec.bound);
  }
  c.suite = "topology";
  c.count = 3;
  const RunReport topo = run_suite(c);
  ASSERT_EQ(topo.records.size(), 3u);
  EXPECT_EQ(topo.records[0].id, "topology-U(1,1)");
  EXPECT_EQ(topo.records[0].count("size_vectors"), 3);
  EXPECT_THROW(topo.records[0].count("missing"), InputError);
}
