#include "tvlab/harness/generators.hpp"

#include <algorithm>
#include <numeric>

#include "tvlab/core/error.hpp"
#include "tvlab/core/linalg.hpp"
#include "tvlab/hypothesis/hypothesis.hpp"

namespace tvlab {

namespace {

constexpr int kMaxInflations = 60;

FieldScalar random_scalar(Rng& rng, Field field, std::int64_t lo, std::int64_t hi, std::int64_t den) {
  if (field == Field::Real) return FieldScalar(rng.uniform_rational(lo, hi, den));
  Rational re = rng.uniform_rational(lo, hi, den);
  return FieldScalar(std::move(re), rng.uniform_rational(lo, hi, den));
}

Vector random_vector(Rng& rng, Field field, int d, std::int64_t lo, std::int64_t hi, std::int64_t den) {
  Vector v;
  for (int c = 0; c < d; ++c) v.push_back(random_scalar(rng, field, lo, hi, den));
  return v;
}

bool all_zero(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](const FieldScalar& z) { return z.is_zero(); });
}

Vector add(const Vector& a, const Vector& b) {
  Vector out(a.size());
  for (std::size_t c = 0; c < a.size(); ++c) out[c] = a[c] + b[c];
  return out;
}

Vector sub(const Vector& a, const Vector& b) {
  Vector out(a.size());
  for (std::size_t c = 0; c < a.size(); ++c) out[c] = a[c] - b[c];
  return out;
}

Vector scale(const FieldScalar& s, const Vector& a) {
  Vector out(a.size());
  for (std::size_t c = 0; c < a.size(); ++c) out[c] = s * a[c];
  return out;
}

/// `count` vertices with centroid `center`, offsets drawn from [-size, size]
/// with denominator 4. With count = real dimension + 1 the simplex is resampled
/// until it is full-dimensional.
std::vector<Vector> blob(Rng& rng, Field field, const Vector& center, int count, std::int64_t size) {
  const int d = static_cast<int>(center.size());
  const int real_dim = d * field_factor(field);
  while (true) {
    std::vector<Vector> offsets;
    Vector sum(center.size());
    for (int j = 0; j + 1 < count; ++j) {
      offsets.push_back(random_vector(rng, field, d, -size, size, 4));
      sum = add(sum, offsets.back());
    }
    offsets.push_back(scale(FieldScalar(-1), sum));
    if (count == real_dim + 1) {
      std::vector<Vector> diffs;
      for (int j = 1; j < count; ++j) {
        RealVector x = real_coordinates(sub(offsets[static_cast<std::size_t>(j)], offsets[0]), field);
        diffs.emplace_back(x.begin(), x.end());
      }
      if (rank(QMatrix::from_columns(diffs, static_cast<std::size_t>(real_dim), Field::Real)) !=
          static_cast<std::size_t>(real_dim)) {
        continue;
      }
    }
    std::vector<Vector> verts;
    for (const auto& o : offsets) verts.push_back(add(center, o));
    return verts;
  }
}

/// Doubles a vertex list about `center`.
void dilate(std::vector<Vector>& verts, const Vector& center) {
  for (auto& v : verts) v = add(center, scale(FieldScalar(2), sub(v, center)));
}

std::vector<Polytope> polytopes_of(const InstanceSpec& spec, std::span<const int> subset) {
  std::vector<Polytope> out;
  for (int i : subset) out.emplace_back(spec.field, spec.d, spec.polytopes[static_cast<std::size_t>(i)]);
  return out;
}

/// Grows the sets of `subset` (except those flagged fixed) until they meet.
void inflate_until_meet(InstanceSpec& spec, const std::vector<Vector>& centers, std::span<const int> subset,
                        const std::vector<bool>& fixed) {
  for (int round = 0;; ++round) {
    if (polytopes_intersect(polytopes_of(spec, subset)).feasible) return;
    if (round == kMaxInflations) throw ConsistencyError("inflation did not converge");
    bool grew = false;
    for (int i : subset) {
      if (fixed[static_cast<std::size_t>(i)]) continue;
      dilate(spec.polytopes[static_cast<std::size_t>(i)], centers[static_cast<std::size_t>(i)]);
      grew = true;
    }
    if (!grew) throw ConsistencyError("cannot inflate a tuple of fixed sets");
  }
}

std::string str(std::int64_t v) { return std::to_string(v); }

}  // namespace

MatroidSpec random_matroid(Rng& rng, int n, int max_rank, int variant) {
  const int top = std::min(n, max_rank);
  const int rho = static_cast<int>(rng.uniform_int(1, top));
  switch (((variant % 3) + 3) % 3) {
    case 0:
      return MatroidSpec::uniform(n, rho);
    case 1: {
      std::vector<int> classes(static_cast<std::size_t>(n));
      for (int e = 0; e < n; ++e) classes[static_cast<std::size_t>(e)] = e < rho ? e : static_cast<int>(rng.uniform_int(0, rho - 1));
      rng.shuffle(classes);
      return MatroidSpec::partition(classes);
    }
    default: {
      while (true) {
        std::vector<Vector> cols;
        for (int e = 0; e < n; ++e) {
          Vector c;
          do {
            c = random_vector(rng, Field::Real, rho, -2, 2, 1);
          } while (all_zero(c));
          cols.push_back(std::move(c));
        }
        if (rank(QMatrix::from_columns(cols, static_cast<std::size_t>(rho), Field::Real)) ==
            static_cast<std::size_t>(rho)) {
          return MatroidSpec::linear(Field::Real, std::move(cols));
        }
      }
    }
  }
}

InstanceSpec generate_pierced_instance(std::uint64_t seed, const PiercedParams& p) {
  if (p.r < 0 || p.r > p.k || p.k >= p.d || p.n < 1 || p.vertices < 1 || p.spread < 1 || p.outliers < 0 ||
      p.outliers > p.n) {
    throw InputError("invalid pierced-generator parameters");
  }
  Rng rng(seed);
  InstanceSpec spec;
  spec.field = p.field;
  spec.d = p.d;
  spec.k = p.k;
  spec.r = p.r;

  FlatSpec flat;
  flat.base = random_vector(rng, p.field, p.d, -p.spread, p.spread, 2);
  while (true) {
    flat.directions.clear();
    for (int j = 0; j < p.k; ++j) flat.directions.push_back(random_vector(rng, p.field, p.d, -2, 2, 1));
    if (p.k == 0 || rank(QMatrix::from_columns(flat.directions, static_cast<std::size_t>(p.d), p.field)) ==
                        static_cast<std::size_t>(p.k)) {
      break;
    }
  }

  for (int i = 0; i < p.n; ++i) {
    Vector t = random_vector(rng, p.field, p.k, -p.spread, p.spread, 2);
    Vector center;
    if (i < p.n - p.outliers) {
      center = flat.base;
      for (int j = 0; j < p.k; ++j) center = add(center, scale(t[static_cast<std::size_t>(j)], flat.directions[static_cast<std::size_t>(j)]));
    } else {
      center = random_vector(rng, p.field, p.d, -2 * p.spread, 2 * p.spread, 2);
    }
    spec.polytopes.push_back(blob(rng, p.field, center, p.vertices, 1));
    spec.phi.emplace_back(t.begin(), t.begin() + p.r);
  }
  spec.matroid = p.matroid ? *p.matroid : MatroidSpec::uniform(p.n, std::min(p.n, p.d + 1));

  spec.provenance.generator = "pierced";
  spec.provenance.seed = seed;
  spec.provenance.params = {{"n", str(p.n)}, {"vertices", str(p.vertices)}, {"spread", str(p.spread)},
                            {"outliers", str(p.outliers)}};
  spec.provenance.ground_truth = std::move(flat);
  spec.to_instance();
  return spec;
}

InstanceSpec generate_colorful_instance(std::uint64_t seed, const ColorfulParams& p) {
  if (p.d < 1 || p.sets_min < 1 || p.sets_max < p.sets_min || p.spread < 1) {
    throw InputError("invalid colorful-generator parameters");
  }
  Rng rng(seed);
  const int classes = p.d + 1;
  InstanceSpec spec;
  spec.field = Field::Real;
  spec.d = p.d;
  spec.k = 0;
  spec.r = 0;
  std::vector<int> coloring;
  std::vector<std::vector<int>> members(static_cast<std::size_t>(classes));
  for (int c = 0; c < classes; ++c) {
    const int count = static_cast<int>(rng.uniform_int(p.sets_min, p.sets_max));
    for (int s = 0; s < count; ++s) {
      members[static_cast<std::size_t>(c)].push_back(static_cast<int>(coloring.size()));
      coloring.push_back(c);
    }
  }
  const int n = static_cast<int>(coloring.size());
  std::vector<Vector> centers;
  std::vector<bool> fixed(static_cast<std::size_t>(n), false);

  if (p.hypothesis_true) {
    const int designated = static_cast<int>(rng.uniform_int(0, classes - 1));
    const Vector shared = random_vector(rng, Field::Real, p.d, -p.spread, p.spread, 2);
    for (int i = 0; i < n; ++i) {
      const bool in_designated = coloring[static_cast<std::size_t>(i)] == designated;
      Vector center = in_designated ? shared : random_vector(rng, Field::Real, p.d, -p.spread, p.spread, 2);
      spec.polytopes.push_back(blob(rng, Field::Real, center, p.d + 1, 1));
      centers.push_back(std::move(center));
      fixed[static_cast<std::size_t>(i)] = in_designated;
    }
    // Mixed radix over the classes, last class fastest.
    std::vector<std::size_t> digit(static_cast<std::size_t>(classes), 0);
    while (true) {
      std::vector<int> tuple;
      for (int c = 0; c < classes; ++c) tuple.push_back(members[static_cast<std::size_t>(c)][digit[static_cast<std::size_t>(c)]]);
      std::sort(tuple.begin(), tuple.end());
      inflate_until_meet(spec, centers, tuple, fixed);
      int c = classes - 1;
      while (c >= 0 && ++digit[static_cast<std::size_t>(c)] == members[static_cast<std::size_t>(c)].size()) {
        digit[static_cast<std::size_t>(c)] = 0;
        --c;
      }
      if (c < 0) break;
    }
  } else {
    // Planted tuple: facets of the simplex conv(0, 2 e_1, ..., 2 e_d) shifted
    // by a random offset; everything else is a simplex containing the box.
    const Vector offset = random_vector(rng, Field::Real, p.d, -p.spread, p.spread, 2);
    std::vector<Vector> corners{offset};
    for (int c = 0; c < p.d; ++c) {
      Vector e = offset;
      e[static_cast<std::size_t>(c)] += FieldScalar(2);
      corners.push_back(std::move(e));
    }
    std::vector<Vector> big;
    const std::int64_t far = 4 * static_cast<std::int64_t>(p.spread) * (p.d + 1);
    big.push_back(Vector(static_cast<std::size_t>(p.d), FieldScalar(-far)));
    for (int c = 0; c < p.d; ++c) {
      Vector e(static_cast<std::size_t>(p.d), FieldScalar(-far));
      e[static_cast<std::size_t>(c)] = FieldScalar(far * (p.d + 1));
      big.push_back(std::move(e));
    }
    std::vector<int> planted;
    for (int c = 0; c < classes; ++c) {
      const auto& m = members[static_cast<std::size_t>(c)];
      planted.push_back(m[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(m.size()) - 1))]);
    }
    for (int i = 0; i < n; ++i) {
      auto it = std::find(planted.begin(), planted.end(), i);
      if (it == planted.end()) {
        spec.polytopes.push_back(big);
        continue;
      }
      const std::size_t skip = static_cast<std::size_t>(it - planted.begin());
      std::vector<Vector> facet;
      for (std::size_t v = 0; v < corners.size(); ++v) {
        if (v != skip) facet.push_back(corners[v]);
      }
      spec.polytopes.push_back(std::move(facet));
    }
    std::string planted_text;
    for (int i : planted) planted_text += (planted_text.empty() ? "" : ",") + std::to_string(i);
    spec.provenance.params.emplace_back("planted", planted_text);
  }

  spec.matroid = MatroidSpec::partition(coloring);
  spec.coloring = coloring;
  spec.phi.assign(static_cast<std::size_t>(n), Vector{});
  spec.provenance.generator = p.hypothesis_true ? "colorful-true" : "colorful-false";
  spec.provenance.seed = seed;
  spec.provenance.params.insert(spec.provenance.params.begin(),
                                {{"sets_min", str(p.sets_min)}, {"sets_max", str(p.sets_max)}});

  const Instance inst = spec.to_instance();
  const CheckReport check = check_colorful_helly(inst);
  if (check.holds() != p.hypothesis_true) throw ConsistencyError("colorful generator produced the wrong premise");
  return spec;
}

InstanceSpec generate_matroid_helly_instance(std::uint64_t seed, const MatroidFamilyParams& p) {
  if (p.d < 1 || p.n_min < 1 || p.n_max < p.n_min || p.max_rank < 1) {
    throw InputError("invalid matroid-family parameters");
  }
  Rng rng(seed);
  const int n = static_cast<int>(rng.uniform_int(p.n_min, p.n_max));
  InstanceSpec spec;
  spec.field = Field::Real;
  spec.d = p.d;
  spec.matroid = random_matroid(rng, n, p.max_rank, static_cast<int>(rng.uniform_int(0, 2)));
  std::vector<Vector> centers;
  for (int i = 0; i < n; ++i) {
    centers.push_back(random_vector(rng, Field::Real, p.d, -p.spread, p.spread, 2));
    spec.polytopes.push_back(blob(rng, Field::Real, centers.back(), p.d + 1, 1));
  }
  spec.phi.assign(static_cast<std::size_t>(n), Vector{});
  const Matroid m = spec.matroid.build();
  const std::vector<bool> fixed(static_cast<std::size_t>(n), false);
  // Intersection is monotone under growing sets, so one pass suffices.
  for (const auto& sigma : enumerate_independent_sets(m, m.rank())) inflate_until_meet(spec, centers, sigma, fixed);

  spec.provenance.generator = "matroid-helly";
  spec.provenance.seed = seed;
  spec.provenance.params = {{"n", str(n)}, {"backend", spec.matroid.backend}};
  const CheckReport check = check_matroid_intersections(spec.to_instance());
  if (check.verdict != Verdict::HoldsExact) throw ConsistencyError("matroid generator premise check failed");
  return spec;
}

InstanceSpec generate_holmsen_instance(std::uint64_t seed, const HolmsenParams& p) {
  if (p.r < 0 || p.r > 1 || p.n < 1 || p.outliers < 0 || p.outliers > p.n || p.max_rank < 1) {
    throw InputError("invalid Holmsen-generator parameters");
  }
  Rng rng(seed);
  InstanceSpec spec;
  spec.field = Field::Real;
  spec.d = 2;
  spec.k = 1;
  spec.r = p.r;
  FlatSpec line;
  line.base = random_vector(rng, Field::Real, 2, -p.spread, p.spread, 2);
  do {
    line.directions = {random_vector(rng, Field::Real, 2, -2, 2, 1)};
  } while (all_zero(line.directions[0]));

  std::vector<Vector> centers;
  for (int i = 0; i < p.n; ++i) {
    const FieldScalar t = random_scalar(rng, Field::Real, -p.spread, p.spread, 2);
    if (i < p.n - p.outliers) {
      centers.push_back(add(line.base, scale(t, line.directions[0])));
    } else {
      centers.push_back(random_vector(rng, Field::Real, 2, -2 * p.spread, 2 * p.spread, 2));
    }
    spec.polytopes.push_back(blob(rng, Field::Real, centers.back(), 3, 1));
    spec.phi.push_back(p.r == 1 ? Vector{t} : Vector{});
  }
  spec.matroid = random_matroid(rng, p.n, p.max_rank, static_cast<int>(rng.uniform_int(0, 2)));

  // The premise only gets easier as sets grow.
  for (int round = 0;; ++round) {
    const CheckReport check = check_holmsen(spec.to_instance());
    if (check.holds()) break;
    if (round == kMaxInflations) throw ConsistencyError("Holmsen inflation did not converge");
    for (int i : check.refutation->sets) {
      dilate(spec.polytopes[static_cast<std::size_t>(i)], centers[static_cast<std::size_t>(i)]);
    }
  }

  spec.provenance.generator = "holmsen";
  spec.provenance.seed = seed;
  spec.provenance.params = {{"n", str(p.n)}, {"outliers", str(p.outliers)}, {"backend", spec.matroid.backend}};
  spec.provenance.ground_truth = std::move(line);
  return spec;
}

}  // namespace tvlab
