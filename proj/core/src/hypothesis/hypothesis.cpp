#include "tvlab/hypothesis/hypothesis.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>

#include "tvlab/core/error.hpp"
#include "tvlab/core/parallel.hpp"
#include "tvlab/core/rng.hpp"

namespace tvlab {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::HoldsExact: return "HOLDS_EXACT";
    case Verdict::HoldsSampled: return "HOLDS_SAMPLED";
    case Verdict::Refuted: return "REFUTED";
  }
  return "?";
}

namespace {

std::string join(const ElementSet& s) {
  std::ostringstream out;
  for (std::size_t i = 0; i < s.size(); ++i) out << (i ? "," : "") << s[i];
  return out.str();
}

/// Adds sum_j coeffs[j] x_j = 0 split into real and imaginary parts; rows
/// that vanish identically are skipped.
void add_split(LinearSystem& s, const std::vector<FieldScalar>& coeffs, Field field) {
  for (int part = 0; part < field_factor(field); ++part) {
    LinearConstraint row;
    row.coeffs.resize(s.num_vars);
    bool any = false;
    for (std::size_t j = 0; j < s.num_vars; ++j) {
      row.coeffs[j] = part == 0 ? coeffs[j].re() : coeffs[j].im();
      any = any || row.coeffs[j] != 0;
    }
    if (!any) continue;
    row.relation = Relation::Equal;
    row.rhs = 0;
    s.add(std::move(row));
  }
}

struct Lifted {
  LinearSystem system;
  std::vector<std::size_t> first;  // first vertex variable per element of sigma
};

/// Variables lambda_{l,v} >= 0 over the vertices of each set of sigma, with
/// constraints sum_l w_l (sum_v lambda_{l,v} (v, 1)) = 0 for every weight row w.
Lifted lifted_system(const Instance& inst, const ElementSet& sigma,
                     const std::vector<std::vector<FieldScalar>>& weight_rows) {
  Lifted out;
  for (int i : sigma) {
    out.first.push_back(out.system.num_vars);
    for (std::size_t v = 0; v < inst.polytopes[static_cast<std::size_t>(i)].size(); ++v) {
      out.system.add_var(true);
    }
  }
  const std::size_t nv = out.system.num_vars;
  for (const auto& w : weight_rows) {
    for (int coord = -1; coord < inst.d; ++coord) {
      std::vector<FieldScalar> c(nv);
      for (std::size_t l = 0; l < sigma.size(); ++l) {
        if (w[l].is_zero()) continue;
        const Polytope& p = inst.polytopes[static_cast<std::size_t>(sigma[l])];
        for (std::size_t v = 0; v < p.size(); ++v) {
          c[out.first[l] + v] = coord < 0 ? w[l] : w[l] * p.vertices()[v][static_cast<std::size_t>(coord)];
        }
      }
      add_split(out.system, c, inst.field);
    }
  }
  return out;
}

void add_normalization(Lifted& lifted, const Instance& inst, const ElementSet& sigma,
                       const std::vector<bool>& in_support) {
  LinearConstraint c;
  c.coeffs.assign(lifted.system.num_vars, Rational(0));
  for (std::size_t l = 0; l < sigma.size(); ++l) {
    if (!in_support[l]) continue;
    for (std::size_t v = 0; v < inst.polytopes[static_cast<std::size_t>(sigma[l])].size(); ++v) {
      c.coeffs[lifted.first[l] + v] = 1;
    }
  }
  c.relation = Relation::Equal;
  c.rhs = 1;
  lifted.system.add(std::move(c));
}

/// Splits lambda into total weight, barycentric weights and points.
void decode(const Instance& inst, const ElementSet& sigma, const Lifted& lifted,
            const RealVector& solution, RealVector& totals, std::vector<RealVector>* weights,
            std::vector<Vector>& points) {
  for (std::size_t l = 0; l < sigma.size(); ++l) {
    const Polytope& p = inst.polytopes[static_cast<std::size_t>(sigma[l])];
    Rational total = 0;
    for (std::size_t v = 0; v < p.size(); ++v) total += solution[lifted.first[l] + v];
    RealVector bary(p.size(), Rational(0));
    if (total == 0) {
      bary[0] = 1;
    } else {
      for (std::size_t v = 0; v < p.size(); ++v) bary[v] = solution[lifted.first[l] + v] / total;
    }
    Vector q(static_cast<std::size_t>(inst.d));
    for (std::size_t v = 0; v < p.size(); ++v) {
      if (bary[v] == 0) continue;
      for (std::size_t t = 0; t < q.size(); ++t) q[t] += FieldScalar(bary[v]) * p.vertices()[v][t];
    }
    totals.push_back(total);
    if (weights) weights->push_back(std::move(bary));
    points.push_back(std::move(q));
  }
}

void check_sigma(const Instance& inst, const ElementSet& sigma) {
  if (sigma.empty()) throw InputError("empty set of indices");
  ElementSet sorted = sigma;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InputError("repeated index in a set of indices");
  }
  for (int i : sigma) {
    if (i < 0 || static_cast<std::size_t>(i) >= inst.size()) throw InputError("index out of range");
  }
}

void check_tuple(const Instance& inst, const DependencyTuple& t) {
  check_sigma(inst, t.sigma);
  if (inst.phi.size() != inst.size()) throw InputError("phi missing on some element");
  if (t.rows.size() != static_cast<std::size_t>(inst.d - inst.k)) {
    throw InputError("dependency tuple needs d - k rows");
  }
  bool nontrivial = false;
  for (const auto& row : t.rows) {
    if (row.size() != t.sigma.size()) throw InputError("dependency row of the wrong length");
    FieldScalar sum;
    Vector weighted(static_cast<std::size_t>(inst.r));
    for (std::size_t l = 0; l < row.size(); ++l) {
      if (inst.field == Field::Real && !row[l].is_real()) throw InputError("complex dependency over R");
      nontrivial = nontrivial || !row[l].is_zero();
      sum += row[l];
      const Vector& p = inst.phi[static_cast<std::size_t>(t.sigma[l])];
      for (std::size_t c = 0; c < weighted.size(); ++c) weighted[c] += row[l] * p[c];
    }
    bool dependency = sum.is_zero();
    for (const auto& w : weighted) dependency = dependency && w.is_zero();
    if (!dependency) throw InputError("row is not an affine dependency of the phi-images");
  }
  if (!nontrivial) throw InputError("dependency tuple is trivial");
}

void record_first(std::atomic<std::size_t>& first, std::size_t i) {
  std::size_t cur = first.load();
  while (i < cur && !first.compare_exchange_weak(cur, i)) {
  }
}

Vector combination(const std::vector<Vector>& basis, const std::vector<FieldScalar>& coeffs) {
  Vector out(basis[0].size());
  for (std::size_t b = 0; b < basis.size(); ++b) {
    if (coeffs[b].is_zero()) continue;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += coeffs[b] * basis[b][i];
  }
  return out;
}

/// Grid rows: coefficient vectors in {-1,0,1}^D with first nonzero entry +1.
std::vector<Vector> grid_rows(const std::vector<Vector>& basis) {
  std::vector<Vector> rows;
  const std::size_t dim = basis.size();
  std::vector<int> c(dim, -1);
  while (true) {
    auto nz = std::find_if(c.begin(), c.end(), [](int x) { return x != 0; });
    if (nz != c.end() && *nz == 1) {
      std::vector<FieldScalar> coeffs(c.begin(), c.end());
      rows.push_back(combination(basis, coeffs));
    }
    std::size_t pos = dim;
    while (pos > 0 && c[pos - 1] == 1) c[--pos] = -1;
    if (pos == 0) break;
    ++c[pos - 1];
  }
  return rows;
}

struct SigmaOutcome {
  bool exact = true;
  std::size_t tested = 0;
  std::string log;
  std::optional<Refutation> refutation;
};

constexpr std::size_t kGridTupleCap = 4096;

SigmaOutcome check_sigma_dependencies(const Instance& inst, const ElementSet& sigma, Rng& rng,
                                      std::size_t samples) {
  SigmaOutcome out;
  std::vector<Vector> pts;
  for (int i : sigma) pts.push_back(inst.phi[static_cast<std::size_t>(i)]);
  const auto basis = affine_dependency_kernel(pts, inst.field);
  const std::size_t rows_needed = static_cast<std::size_t>(inst.d - inst.k);
  std::ostringstream log;
  log << "sigma " << join(sigma) << ": dim K = " << basis.size();

  auto test = [&](std::vector<Vector> rows) {
    DependencyTuple t{sigma, std::move(rows)};
    PullbackResult r = pullback_feasible(inst, t);
    if (!r.feasible) out.refutation = Refutation{sigma, std::move(t), std::nullopt, std::move(r.lp)};
    return r.feasible;
  };

  if (basis.empty()) {
    log << ", vacuous";
    out.log = log.str();
    return out;
  }
  if (basis.size() == 1) {
    // Scaling a row never changes feasibility, so one tuple decides sigma.
    test(std::vector<Vector>(rows_needed, basis[0]));
    log << (out.refutation ? ", refuted" : ", exact");
    out.log = log.str();
    return out;
  }

  out.exact = false;
  // Tuples only matter as sets of rows up to scaling: enumerate nonempty sets
  // of at most d - k grid rows, padding by repeating the last row.
  const auto grid = grid_rows(basis);
  std::vector<std::size_t> pick;
  std::size_t grid_tested = 0;
  for (std::size_t size = 1; size <= std::min(rows_needed, grid.size()); ++size) {
    pick.resize(size);
    for (std::size_t i = 0; i < size; ++i) pick[i] = i;
    while (true) {
      if (grid_tested == kGridTupleCap) break;
      std::vector<Vector> rows;
      for (auto p : pick) rows.push_back(grid[p]);
      while (rows.size() < rows_needed) rows.push_back(rows.back());
      ++grid_tested;
      if (!test(std::move(rows))) {
        out.tested = grid_tested;
        log << ", refuted on grid tuple " << grid_tested;
        out.log = log.str();
        return out;
      }
      std::size_t i = size;
      while (i > 0 && pick[i - 1] == grid.size() - size + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < size; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  for (std::size_t s = 0; s < samples; ++s) {
    std::vector<Vector> rows;
    bool nonzero = false;
    while (!nonzero) {
      rows.clear();
      for (std::size_t j = 0; j < rows_needed; ++j) {
        std::vector<FieldScalar> coeffs;
        for (std::size_t b = 0; b < basis.size(); ++b) {
          Rational re = rng.uniform_rational(-3, 3, 4);
          Rational im = inst.field == Field::Complex ? rng.uniform_rational(-3, 3, 4) : Rational(0);
          coeffs.emplace_back(re, im);
        }
        rows.push_back(combination(basis, coeffs));
        for (const auto& z : rows.back()) nonzero = nonzero || !z.is_zero();
      }
    }
    if (!test(std::move(rows))) {
      out.tested = grid_tested + s + 1;
      log << ", refuted on sample " << s;
      out.log = log.str();
      return out;
    }
  }
  out.tested = grid_tested + samples;
  log << ", " << grid_tested << " grid tuples";
  if (grid_tested == kGridTupleCap) log << " (capped)";
  log << " + " << samples << " samples";
  out.log = log.str();
  return out;
}

/// Shared driver: runs `body` per item with a first-failure cutoff and
/// assembles the report in item order.
template <class Body>
CheckReport run_checks(std::size_t n, int jobs, Body&& body) {
  std::vector<SigmaOutcome> outcomes(n);
  std::atomic<std::size_t> first_fail{SIZE_MAX};
  parallel_for(n, jobs, [&](std::size_t i) {
    if (i > first_fail.load()) return;
    outcomes[i] = body(i);
    if (outcomes[i].refutation) record_first(first_fail, i);
  });
  CheckReport report;
  for (std::size_t i = 0; i < n; ++i) {
    auto& o = outcomes[i];
    if (!o.log.empty()) report.log.push_back(o.log);
    if (!o.exact) {
      report.verdict = Verdict::HoldsSampled;
      report.samples += o.tested;
    }
    if (o.refutation) {
      report.verdict = Verdict::Refuted;
      report.refutation = std::move(o.refutation);
      break;
    }
  }
  return report;
}

std::vector<const Polytope*> sets_of(const Instance& inst, const ElementSet& idx) {
  std::vector<const Polytope*> out;
  for (int i : idx) out.push_back(&inst.polytopes[static_cast<std::size_t>(i)]);
  return out;
}

}  // namespace

PullbackResult pullback_feasible(const Instance& inst, const DependencyTuple& t) {
  check_tuple(inst, t);
  std::vector<std::vector<FieldScalar>> weight_rows(t.rows.begin(), t.rows.end());
  Lifted lifted = lifted_system(inst, t.sigma, weight_rows);
  std::vector<bool> support(t.sigma.size(), false);
  for (const auto& row : t.rows) {
    for (std::size_t l = 0; l < row.size(); ++l) support[l] = support[l] || !row[l].is_zero();
  }
  add_normalization(lifted, inst, t.sigma, support);

  PullbackResult out;
  out.lp = lp_feasible(lifted.system);
  out.feasible = out.lp.feasible;
  if (out.feasible) {
    PullbackWitness w;
    decode(inst, t.sigma, lifted, out.lp.solution, w.r, &w.weights, w.points);
    out.witness = std::move(w);
  }
  return out;
}

CheckReport check_models_dependencies(const Instance& inst, const SamplingPolicy& policy) {
  inst.validate();
  const auto sigmas = enumerate_independent_sets(inst.matroid, inst.matroid.rank());
  CheckReport report = run_checks(sigmas.size(), policy.jobs, [&](std::size_t i) {
    Rng rng(derive_seed(policy.seed, i));
    return check_sigma_dependencies(inst, sigmas[i], rng, policy.samples);
  });
  report.seed = policy.seed;
  return report;
}

CheckReport check_colorful_helly(const Instance& inst, int jobs) {
  inst.validate();
  if (!inst.coloring) throw InputError("colorful Helly check needs a coloring");
  const int colors = inst.num_colors();
  if (colors != inst.d + 1) throw InputError("colorful Helly check needs exactly d + 1 classes");
  std::vector<std::vector<int>> classes;
  std::size_t total = 1;
  for (int c = 0; c < colors; ++c) {
    classes.push_back(inst.color_class(c));
    if (classes.back().empty()) throw InputError("empty color class");
    total *= classes.back().size();
  }
  return run_checks(total, jobs, [&](std::size_t idx) {
    // Mixed radix with the last class varying fastest (lexicographic order).
    ElementSet tuple(classes.size());
    for (std::size_t c = classes.size(); c-- > 0;) {
      tuple[c] = classes[c][idx % classes[c].size()];
      idx /= classes[c].size();
    }
    SigmaOutcome o;
    auto parts = sets_of(inst, tuple);
    LPResult r = polytopes_intersect(std::span<const Polytope* const>(parts));
    if (!r.feasible) {
      o.refutation = Refutation{tuple, std::nullopt, std::nullopt, std::move(r)};
      o.log = "tuple " + join(tuple) + ": empty intersection";
    }
    return o;
  });
}

CheckReport check_matroid_intersections(const Instance& inst, int jobs) {
  inst.validate();
  const auto sigmas = enumerate_independent_sets(inst.matroid, inst.matroid.rank());
  return run_checks(sigmas.size(), jobs, [&](std::size_t i) {
    SigmaOutcome o;
    auto parts = sets_of(inst, sigmas[i]);
    LPResult r = polytopes_intersect(std::span<const Polytope* const>(parts));
    if (!r.feasible) {
      o.refutation = Refutation{sigmas[i], std::nullopt, std::nullopt, std::move(r)};
      o.log = "sigma " + join(sigmas[i]) + ": empty intersection";
    }
    return o;
  });
}

CheckReport check_holmsen(const Instance& inst, int jobs) {
  inst.validate();
  if (inst.field != Field::Real) throw InputError("the hull-implication check is for real instances");
  const auto sigmas = enumerate_independent_sets(inst.matroid, inst.matroid.rank());
  std::vector<Polytope> images;
  for (const auto& p : inst.phi) images.push_back(Polytope::point(Field::Real, p));

  return run_checks(sigmas.size(), jobs, [&](std::size_t i) {
    SigmaOutcome o;
    const ElementSet& sigma = sigmas[i];
    if (sigma.size() < 2) return o;
    // G1 always holds the first element, so each unordered split appears once.
    const std::uint32_t full = (1u << sigma.size()) - 1;
    for (std::uint32_t mask = 1; mask < full; mask += 2) {
      ElementSet g1;
      ElementSet g2;
      for (std::size_t l = 0; l < sigma.size(); ++l) ((mask >> l) & 1u ? g1 : g2).push_back(sigma[l]);
      std::vector<const Polytope*> i1;
      std::vector<const Polytope*> i2;
      for (int e : g1) i1.push_back(&images[static_cast<std::size_t>(e)]);
      for (int e : g2) i2.push_back(&images[static_cast<std::size_t>(e)]);
      if (!hulls_of_unions_intersect(std::span<const Polytope* const>(i1),
                                     std::span<const Polytope* const>(i2))
               .feasible) {
        continue;
      }
      auto s1 = sets_of(inst, g1);
      auto s2 = sets_of(inst, g2);
      LPResult r = hulls_of_unions_intersect(std::span<const Polytope* const>(s1),
                                             std::span<const Polytope* const>(s2));
      if (!r.feasible) {
        o.log = "sigma " + join(sigma) + ": images of " + join(g1) + " | " + join(g2) +
                " meet but the sets do not";
        o.refutation = Refutation{sigma, std::nullopt, std::make_pair(g1, g2), std::move(r)};
        return o;
      }
    }
    return o;
  });
}

C1Result c1_holds(const Instance& inst, const ElementSet& sigma, std::span<const Vector> z) {
  check_sigma(inst, sigma);
  const std::size_t rows = static_cast<std::size_t>(inst.d - inst.k);
  if (z.size() != sigma.size()) throw InputError("need one sign vector per element");
  for (const auto& zl : z) {
    if (zl.size() != rows) throw InputError("sign vector needs d - k entries");
    bool nonzero = false;
    for (const auto& e : zl) {
      const Rational n = e.norm2();
      if (n != 0 && n != 1) throw InputError("sign vector entries must have modulus 0 or 1");
      if (inst.field == Field::Real && !e.is_real()) throw InputError("complex sign over R");
      nonzero = nonzero || n != 0;
    }
    if (!nonzero) throw InputError("zero sign vector");
  }
  // Row j carries the weights z_{j,l}; a_l is the total lambda mass of set l.
  std::vector<std::vector<FieldScalar>> weight_rows(rows, std::vector<FieldScalar>(sigma.size()));
  for (std::size_t j = 0; j < rows; ++j) {
    for (std::size_t l = 0; l < sigma.size(); ++l) weight_rows[j][l] = z[l][j];
  }
  Lifted lifted = lifted_system(inst, sigma, weight_rows);
  add_normalization(lifted, inst, sigma, std::vector<bool>(sigma.size(), true));

  C1Result out;
  out.lp = lp_feasible(lifted.system);
  out.holds = !out.lp.feasible;
  if (!out.holds) decode(inst, sigma, lifted, out.lp.solution, out.a, nullptr, out.points);
  return out;
}

Rational sign_pairing(std::span<const Vector> frame, const Vector& z, const Vector& q) {
  if (frame.size() != z.size()) throw InputError("sign vector and frame differ in length");
  Vector lifted = q;
  lifted.emplace_back(1);
  FieldScalar acc;
  for (std::size_t j = 0; j < frame.size(); ++j) {
    if (z[j].is_zero()) continue;
    acc += z[j] * inner(frame[j], lifted);
  }
  return acc.re();
}

std::vector<FieldScalar> unit_circle_points(std::size_t count) {
  std::vector<FieldScalar> out{FieldScalar(1), FieldScalar(-1), FieldScalar(0, 1), FieldScalar(0, -1)};
  // t -> ((1 - t^2) / (1 + t^2), 2t / (1 + t^2)) for t = p / q, small p, q.
  for (long q = 2; out.size() < count + 4; ++q) {
    for (long p = 1; p < q && out.size() < count + 4; ++p) {
      if (gcd(Integer(p), Integer(q)) != 1) continue;
      for (Rational t : {make_rational(p, q), make_rational(-p, q)}) {
        if (out.size() == count + 4) break;
        const Rational den = 1 + t * t;
        out.emplace_back((1 - t * t) / den, 2 * t / den);
      }
    }
  }
  return out;
}

}  // namespace tvlab
