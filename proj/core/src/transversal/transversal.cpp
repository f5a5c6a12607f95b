#include "tvlab/transversal/transversal.hpp"

#include <algorithm>

#include "tvlab/core/error.hpp"
#include "tvlab/core/linalg.hpp"
#include "tvlab/core/parallel.hpp"

namespace tvlab {

std::string to_string(FindVerdict v) {
  switch (v) {
    case FindVerdict::Found: return "FOUND";
    case FindVerdict::NotFoundExact: return "NOT_FOUND_EXACT";
    case FindVerdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

std::string to_string(ConclusionVerdict v) {
  switch (v) {
    case ConclusionVerdict::Pass: return "pass";
    case ConclusionVerdict::Fail: return "fail";
    case ConclusionVerdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

void check_subset(const Instance& inst, std::span<const int> subset) {
  if (subset.empty()) throw InputError("empty subfamily");
  for (int i : subset) {
    if (i < 0 || static_cast<std::size_t>(i) >= inst.size()) throw InputError("index out of range");
  }
}

/// Exact verification of a candidate flat against every set of the subset.
TransversalResult verify_flat(const Instance& inst, std::span<const int> subset, Flat flat,
                              std::string method) {
  TransversalResult out;
  out.method = std::move(method);
  for (int i : subset) {
    LPResult r = flat_meets_polytope(flat, inst.polytopes[static_cast<std::size_t>(i)]);
    if (!r.feasible) {
      out.verdict = FindVerdict::Inconclusive;
      out.note = "candidate flat misses set " + std::to_string(i);
      out.witnesses.clear();
      return out;
    }
    out.witnesses.push_back(std::move(r.point));
  }
  out.verdict = FindVerdict::Found;
  out.flat = std::move(flat);
  return out;
}

/// Scales a nonzero rational vector to a primitive integer vector whose first
/// nonzero entry is positive.
RealVector primitive(RealVector u) {
  Integer g = 0;
  Integer l = 1;
  for (const auto& x : u) {
    if (x == 0) continue;
    g = gcd(g, numerator(x));
    l = lcm(l, denominator(x));
  }
  Rational scale(l, g);
  auto first = std::find_if(u.begin(), u.end(), [](const Rational& x) { return x != 0; });
  if (*first < 0) scale = -scale;
  for (auto& x : u) x *= scale;
  return u;
}

}  // namespace

TransversalResult find_point_transversal(const Instance& inst, std::span<const int> subset) {
  check_subset(inst, subset);
  std::vector<const Polytope*> parts;
  for (int i : subset) parts.push_back(&inst.polytopes[static_cast<std::size_t>(i)]);
  LPResult r = polytopes_intersect(std::span<const Polytope* const>(parts));
  TransversalResult out;
  out.method = "point-lp";
  if (!r.feasible) {
    out.verdict = FindVerdict::NotFoundExact;
    out.lp = std::move(r);
    return out;
  }
  out.verdict = FindVerdict::Found;
  out.flat = Flat(inst.field, from_real_coordinates(r.point, inst.field), {});
  out.witnesses.assign(subset.size(), r.point);
  return out;
}

TransversalResult find_line_transversal_2d(const Instance& inst, std::span<const int> subset) {
  check_subset(inst, subset);
  if (inst.field != Field::Real || inst.d != 2) throw InputError("planar line search needs d = 2 over R");

  std::vector<RealVector> verts;
  for (int i : subset) {
    const Polytope& p = inst.polytopes[static_cast<std::size_t>(i)];
    for (std::size_t v = 0; v < p.size(); ++v) verts.push_back(p.real_vertex(v));
  }
  std::vector<RealVector> normals{{1, 0}, {0, 1}};
  for (std::size_t a = 0; a < verts.size(); ++a) {
    for (std::size_t b = a + 1; b < verts.size(); ++b) {
      if (verts[a] == verts[b]) continue;
      normals.push_back(primitive({verts[a][1] - verts[b][1], verts[b][0] - verts[a][0]}));
    }
  }
  std::sort(normals.begin() + 2, normals.end());
  normals.erase(std::unique(normals.begin() + 2, normals.end()), normals.end());
  normals.erase(std::remove_if(normals.begin() + 2, normals.end(),
                               [](const RealVector& u) {
                                 return (u[0] == 1 && u[1] == 0) || (u[0] == 0 && u[1] == 1);
                               }),
                normals.end());

  for (const auto& u : normals) {
    // Lines {<u, x> = c} meet every set iff max_F min <u, F> <= min_F max <u, F>.
    std::optional<Rational> lo;
    std::optional<Rational> hi;
    for (int i : subset) {
      const Polytope& p = inst.polytopes[static_cast<std::size_t>(i)];
      std::optional<Rational> pmin;
      std::optional<Rational> pmax;
      for (const auto& x : p.vertices()) {
        Rational val = u[0] * x[0].re() + u[1] * x[1].re();
        if (!pmin || val < *pmin) pmin = val;
        if (!pmax || val > *pmax) pmax = val;
      }
      if (!lo || *pmin > *lo) lo = *pmin;
      if (!hi || *pmax < *hi) hi = *pmax;
    }
    if (*lo > *hi) continue;
    const Rational norm2 = u[0] * u[0] + u[1] * u[1];
    Vector base{FieldScalar(*lo * u[0] / norm2), FieldScalar(*lo * u[1] / norm2)};
    Vector dir{FieldScalar(-u[1]), FieldScalar(u[0])};
    TransversalResult out = verify_flat(inst, subset, Flat(Field::Real, base, {dir}), "line-2d");
    if (out.verdict != FindVerdict::Found) throw ConsistencyError("interval test and LP disagree");
    return out;
  }
  TransversalResult out;
  out.method = "line-2d";
  out.verdict = FindVerdict::NotFoundExact;
  out.candidates = std::move(normals);
  return out;
}

TransversalResult find_affine_hull_transversal(const Instance& inst, std::span<const int> subset) {
  check_subset(inst, subset);
  if (subset.size() > static_cast<std::size_t>(inst.k) + 1) {
    throw InputError("affine hull search needs at most k + 1 sets");
  }
  const std::size_t d = static_cast<std::size_t>(inst.d);
  const Vector& base = inst.polytopes[static_cast<std::size_t>(subset[0])].vertices()[0];
  std::vector<Vector> dirs;
  auto try_add = [&](Vector v) {
    if (dirs.size() == static_cast<std::size_t>(inst.k)) return;
    dirs.push_back(std::move(v));
    if (rank(QMatrix::from_columns(dirs, d, inst.field)) != dirs.size()) dirs.pop_back();
  };
  for (std::size_t s = 1; s < subset.size(); ++s) {
    const Vector& p = inst.polytopes[static_cast<std::size_t>(subset[s])].vertices()[0];
    Vector diff(d);
    for (std::size_t c = 0; c < d; ++c) diff[c] = p[c] - base[c];
    try_add(std::move(diff));
  }
  for (std::size_t c = 0; c < d; ++c) {
    Vector e(d);
    e[c] = 1;
    try_add(std::move(e));
  }
  return verify_flat(inst, subset, Flat(inst.field, base, dirs), "affine-hull");
}

TransversalResult find_transversal(const Instance& inst, std::span<const int> subset,
                                   const HeuristicBudget& budget) {
  if (inst.k == 0) return find_point_transversal(inst, subset);
  if (inst.field == Field::Real && inst.d == 2 && inst.k == 1) return find_line_transversal_2d(inst, subset);
  if (subset.size() <= static_cast<std::size_t>(inst.k) + 1) return find_affine_hull_transversal(inst, subset);
  return find_k_flat_heuristic(inst, subset, budget);
}

int conclusion_bound(const Instance& inst) {
  return field_factor(inst.field) * (inst.d - inst.k) * (inst.r + 1);
}

ConclusionReport verify_theorem_conclusion(const Instance& inst, const HeuristicBudget& budget, int jobs) {
  inst.validate();
  const int n = static_cast<int>(inst.size());
  ConclusionReport report;
  report.bound = conclusion_bound(inst);

  // Removed sets S in order of increasing size, lexicographic within a size.
  std::vector<ElementSet> removals;
  for (int size = 0; size <= n; ++size) {
    ElementSet s(static_cast<std::size_t>(size));
    for (int i = 0; i < size; ++i) s[static_cast<std::size_t>(i)] = i;
    while (true) {
      if (inst.matroid.rank(s) <= report.bound) removals.push_back(s);
      int i = size;
      while (i > 0 && s[static_cast<std::size_t>(i - 1)] == n - size + i - 1) --i;
      if (i == 0) break;
      ++s[static_cast<std::size_t>(i - 1)];
      for (int j = i; j < size; ++j) s[static_cast<std::size_t>(j)] = s[static_cast<std::size_t>(j - 1)] + 1;
    }
  }

  auto kept_of = [&](const ElementSet& removed) {
    ElementSet kept;
    for (int i = 0, j = 0; i < n; ++i) {
      if (j < static_cast<int>(removed.size()) && removed[static_cast<std::size_t>(j)] == i) {
        ++j;
      } else {
        kept.push_back(i);
      }
    }
    return kept;
  };

  bool inconclusive = false;
  const std::size_t batch = static_cast<std::size_t>(std::max(1, jobs));
  for (std::size_t start = 0; start < removals.size(); start += batch) {
    const std::size_t count = std::min(batch, removals.size() - start);
    std::vector<TransversalResult> results(count);
    parallel_for(count, jobs, [&](std::size_t b) {
      ElementSet kept = kept_of(removals[start + b]);
      if (kept.empty()) {
        results[b].verdict = FindVerdict::Found;
        results[b].method = "empty";
        return;
      }
      results[b] = find_transversal(inst, kept, budget);
    });
    for (std::size_t b = 0; b < count; ++b) {
      ++report.subsets_tried;
      if (results[b].verdict == FindVerdict::Inconclusive) inconclusive = true;
      if (results[b].verdict != FindVerdict::Found) continue;
      report.verdict = ConclusionVerdict::Pass;
      report.removed = removals[start + b];
      report.kept = kept_of(report.removed);
      report.removed_rank = inst.matroid.rank(report.removed);
      report.flat = std::move(results[b].flat);
      report.method = results[b].method;
      if (inst.coloring) {
        for (int c = 0; c < inst.num_colors(); ++c) {
          const auto cls = inst.color_class(c);
          if (!cls.empty() && std::includes(report.kept.begin(), report.kept.end(), cls.begin(), cls.end())) {
            report.color = c;
            break;
          }
        }
      }
      return report;
    }
  }
  report.verdict = inconclusive ? ConclusionVerdict::Inconclusive : ConclusionVerdict::Fail;
  return report;
}

}  // namespace tvlab
