#include "tvlab/geometry/geometry.hpp"

#include <algorithm>

#include "tvlab/core/error.hpp"
#include "tvlab/core/linalg.hpp"

namespace tvlab {

RealVector real_coordinates(std::span<const FieldScalar> p, Field field) {
  RealVector out;
  out.reserve(p.size() * static_cast<std::size_t>(field_factor(field)));
  for (const auto& z : p) {
    out.push_back(z.re());
    if (field == Field::Complex) out.push_back(z.im());
  }
  return out;
}

Vector from_real_coordinates(std::span<const Rational> x, Field field) {
  Vector out;
  if (field == Field::Real) {
    for (const auto& v : x) out.emplace_back(v);
  } else {
    if (x.size() % 2 != 0) throw InputError("odd number of real coordinates for a complex point");
    for (std::size_t i = 0; i < x.size(); i += 2) out.emplace_back(x[i], x[i + 1]);
  }
  return out;
}

FieldScalar inner(std::span<const FieldScalar> u, std::span<const FieldScalar> v) {
  if (u.size() != v.size()) throw InputError("inner product of vectors of different length");
  FieldScalar acc;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!u[i].is_zero() && !v[i].is_zero()) acc += u[i].conj() * v[i];
  }
  return acc;
}

// ---------------------------------------------------------------------------

Polytope::Polytope(Field field, int dim, std::vector<Vector> vertices) : field_(field), dim_(dim) {
  if (dim < 0) throw InputError("negative polytope dimension");
  if (vertices.empty()) throw InputError("polytope needs at least one vertex");
  for (auto& v : vertices) {
    if (static_cast<int>(v.size()) != dim) throw InputError("vertex of the wrong dimension");
    if (field == Field::Real) {
      for (const auto& z : v) {
        if (!z.is_real()) throw InputError("complex coordinate in a real polytope");
      }
    }
    if (std::find(vertices_.begin(), vertices_.end(), v) == vertices_.end()) {
      vertices_.push_back(std::move(v));
    }
  }
}

Polytope Polytope::point(Field field, Vector p) {
  const int dim = static_cast<int>(p.size());
  return Polytope(field, dim, {std::move(p)});
}

RealVector Polytope::real_vertex(std::size_t v) const {
  return real_coordinates(vertices_.at(v), field_);
}

Flat::Flat(Field field, Vector base, std::vector<Vector> directions)
    : field_(field), base_(std::move(base)), directions_(std::move(directions)) {
  for (const auto& dir : directions_) {
    if (dir.size() != base_.size()) throw InputError("flat direction of the wrong length");
  }
  if (directions_.size() > base_.size()) throw InputError("too many flat directions");
  if (!directions_.empty()) {
    QMatrix m = QMatrix::from_columns(directions_, base_.size(), field_);
    if (rank(m) != directions_.size()) throw InputError("flat directions are linearly dependent");
  }
}

// ---------------------------------------------------------------------------

void Instance::validate() const {
  if (!(0 <= r && r <= k && k < d)) throw InputError("instance needs 0 <= r <= k < d");
  if (polytopes.empty()) throw InputError("instance has no sets");
  for (const auto& p : polytopes) {
    if (p.dim() != d || p.field() != field) throw InputError("set does not live in the ambient space");
  }
  if (matroid.size() != static_cast<int>(polytopes.size())) {
    throw InputError("matroid ground set does not match the family");
  }
  if (phi.size() != polytopes.size()) throw InputError("phi missing on some element");
  for (const auto& v : phi) {
    if (static_cast<int>(v.size()) != r) throw InputError("phi value of the wrong dimension");
    if (field == Field::Real) {
      for (const auto& z : v) {
        if (!z.is_real()) throw InputError("complex phi value in a real instance");
      }
    }
  }
  if (coloring) {
    if (coloring->size() != polytopes.size()) throw InputError("coloring does not cover the family");
    Matroid expected = Matroid::partition(*coloring);
    if (matroid.kind() != Matroid::Kind::Partition || matroid.describe() != expected.describe()) {
      throw InputError("coloring and matroid disagree");
    }
  }
}

int Instance::num_colors() const {
  if (!coloring) return 0;
  int c = 0;
  for (int v : *coloring) c = std::max(c, v + 1);
  return c;
}

std::vector<int> Instance::color_class(int color) const {
  std::vector<int> out;
  if (!coloring) return out;
  for (std::size_t i = 0; i < coloring->size(); ++i) {
    if ((*coloring)[i] == color) out.push_back(static_cast<int>(i));
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

void check_same_space(std::span<const Polytope* const> parts) {
  for (const auto* p : parts) {
    if (p->dim() != parts[0]->dim() || p->field() != parts[0]->field()) {
      throw InputError("polytopes live in different spaces");
    }
  }
}

/// Adds lambda >= 0 over the vertices of p with sum 1; returns first var index.
std::size_t add_barycentric(LinearSystem& s, const Polytope& p) {
  std::size_t first = s.num_vars;
  for (std::size_t v = 0; v < p.size(); ++v) s.add_var(true);
  LinearConstraint c;
  c.coeffs.assign(s.num_vars, Rational(0));
  for (std::size_t v = 0; v < p.size(); ++v) c.coeffs[first + v] = 1;
  c.relation = Relation::Equal;
  c.rhs = 1;
  s.add(std::move(c));
  return first;
}

RealVector combine(const LPResult& r, const std::vector<const Polytope*>& parts,
                   const std::vector<std::size_t>& first) {
  RealVector point(static_cast<std::size_t>(parts[0]->real_dim()), Rational(0));
  for (std::size_t k = 0; k < parts.size(); ++k) {
    for (std::size_t v = 0; v < parts[k]->size(); ++v) {
      const Rational& w = r.solution[first[k] + v];
      if (w == 0) continue;
      RealVector x = parts[k]->real_vertex(v);
      for (std::size_t c = 0; c < x.size(); ++c) point[c] += w * x[c];
    }
  }
  return point;
}

std::vector<const Polytope*> pointers(std::span<const Polytope> ps) {
  std::vector<const Polytope*> out;
  for (const auto& p : ps) out.push_back(&p);
  return out;
}

}  // namespace

LPResult polytopes_intersect(std::span<const Polytope* const> parts) {
  if (parts.empty()) throw InputError("intersection of an empty list");
  check_same_space(parts);
  const std::size_t dim = static_cast<std::size_t>(parts[0]->real_dim());

  LinearSystem s(dim, false);  // x: the common point
  std::vector<std::size_t> first;
  for (const auto* p : parts) first.push_back(add_barycentric(s, *p));
  for (std::size_t k = 0; k < parts.size(); ++k) {
    std::vector<RealVector> verts;
    for (std::size_t v = 0; v < parts[k]->size(); ++v) verts.push_back(parts[k]->real_vertex(v));
    for (std::size_t c = 0; c < dim; ++c) {
      LinearConstraint row;
      row.coeffs.assign(s.num_vars, Rational(0));
      row.coeffs[c] = -1;
      for (std::size_t v = 0; v < verts.size(); ++v) row.coeffs[first[k] + v] = verts[v][c];
      row.relation = Relation::Equal;
      row.rhs = 0;
      s.add(std::move(row));
    }
  }
  LPResult r = lp_feasible(s);
  if (r.feasible) r.point.assign(r.solution.begin(), r.solution.begin() + static_cast<std::ptrdiff_t>(dim));
  return r;
}

LPResult polytopes_intersect(std::span<const Polytope> parts) {
  auto ptrs = pointers(parts);
  return polytopes_intersect(std::span<const Polytope* const>(ptrs));
}

LPResult hulls_of_unions_intersect(std::span<const Polytope* const> g1,
                                   std::span<const Polytope* const> g2) {
  if (g1.empty() || g2.empty()) throw InputError("hull of an empty union");
  std::vector<const Polytope*> all(g1.begin(), g1.end());
  all.insert(all.end(), g2.begin(), g2.end());
  check_same_space(all);
  const std::size_t dim = static_cast<std::size_t>(all[0]->real_dim());

  LinearSystem s;
  std::vector<std::size_t> first;
  for (const auto* p : all) {
    first.push_back(s.num_vars);
    for (std::size_t v = 0; v < p->size(); ++v) s.add_var(true);
  }
  for (int side = 0; side < 2; ++side) {
    LinearConstraint c;
    c.coeffs.assign(s.num_vars, Rational(0));
    std::size_t from = side == 0 ? 0 : g1.size();
    std::size_t to = side == 0 ? g1.size() : all.size();
    for (std::size_t k = from; k < to; ++k) {
      for (std::size_t v = 0; v < all[k]->size(); ++v) c.coeffs[first[k] + v] = 1;
    }
    c.relation = Relation::Equal;
    c.rhs = 1;
    s.add(std::move(c));
  }
  std::vector<std::vector<RealVector>> verts(all.size());
  for (std::size_t k = 0; k < all.size(); ++k) {
    for (std::size_t v = 0; v < all[k]->size(); ++v) verts[k].push_back(all[k]->real_vertex(v));
  }
  for (std::size_t c = 0; c < dim; ++c) {
    LinearConstraint row;
    row.coeffs.assign(s.num_vars, Rational(0));
    for (std::size_t k = 0; k < all.size(); ++k) {
      const int sgn = k < g1.size() ? 1 : -1;
      for (std::size_t v = 0; v < verts[k].size(); ++v) row.coeffs[first[k] + v] = sgn * verts[k][v][c];
    }
    row.relation = Relation::Equal;
    row.rhs = 0;
    s.add(std::move(row));
  }
  LPResult r = lp_feasible(s);
  if (r.feasible) {
    std::vector<const Polytope*> left(g1.begin(), g1.end());
    std::vector<std::size_t> lf(first.begin(), first.begin() + static_cast<std::ptrdiff_t>(g1.size()));
    r.point = combine(r, left, lf);
  }
  return r;
}

LPResult hulls_of_unions_intersect(std::span<const Polytope> g1, std::span<const Polytope> g2) {
  auto a = pointers(g1);
  auto b = pointers(g2);
  return hulls_of_unions_intersect(std::span<const Polytope* const>(a),
                                   std::span<const Polytope* const>(b));
}

LPResult flat_meets_polytope(const Flat& flat, const Polytope& p) {
  if (flat.ambient_dim() != p.dim() || flat.field() != p.field()) {
    throw InputError("flat and polytope live in different spaces");
  }
  const Field field = p.field();
  const std::size_t dim = static_cast<std::size_t>(p.real_dim());

  // Real direction vectors: each F-direction w contributes w (and i*w over C).
  std::vector<RealVector> dirs;
  for (const auto& w : flat.directions()) {
    dirs.push_back(real_coordinates(w, field));
    if (field == Field::Complex) {
      Vector iw;
      for (const auto& z : w) iw.push_back(z * FieldScalar(0, 1));
      dirs.push_back(real_coordinates(iw, field));
    }
  }
  LinearSystem s(dirs.size(), false);
  std::size_t first = add_barycentric(s, p);
  RealVector base = real_coordinates(flat.base(), field);
  std::vector<RealVector> verts;
  for (std::size_t v = 0; v < p.size(); ++v) verts.push_back(p.real_vertex(v));
  for (std::size_t c = 0; c < dim; ++c) {
    LinearConstraint row;
    row.coeffs.assign(s.num_vars, Rational(0));
    for (std::size_t i = 0; i < dirs.size(); ++i) row.coeffs[i] = -dirs[i][c];
    for (std::size_t v = 0; v < verts.size(); ++v) row.coeffs[first + v] = verts[v][c];
    row.relation = Relation::Equal;
    row.rhs = base[c];
    s.add(std::move(row));
  }
  LPResult r = lp_feasible(s);
  if (r.feasible) r.point = combine(r, {&p}, {first});
  return r;
}

std::vector<Vector> affine_dependency_kernel(std::span<const Vector> points, Field field) {
  if (points.empty()) throw InputError("affine dependency kernel of no points");
  const std::size_t r = points[0].size();
  QMatrix lifted(r + 1, points.size(), field);
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != r) throw InputError("points of different dimension");
    lifted.set(0, i, 1);
    for (std::size_t c = 0; c < r; ++c) lifted.set(c + 1, i, points[i][c]);
  }
  return kernel_basis(lifted);
}

ElementSet compute_shadow_set(std::span<const Vector> frame, const Instance& inst) {
  const std::size_t lifted_dim = static_cast<std::size_t>(inst.d) + 1;
  for (const auto& v : frame) {
    if (v.size() != lifted_dim) throw InputError("frame vector must live in F^{d+1}");
  }
  if (!frame.empty()) {
    QMatrix m = QMatrix::from_columns(frame, lifted_dim, inst.field);
    if (rank(m) != frame.size()) throw InputError("frame vectors are linearly dependent");
  }

  ElementSet out;
  for (std::size_t i = 0; i < inst.polytopes.size(); ++i) {
    const Polytope& p = inst.polytopes[i];
    LinearSystem s;
    std::size_t first = add_barycentric(s, p);
    for (const auto& v : frame) {
      // <v, (q, 1)> for each vertex q, split into real and imaginary parts.
      std::vector<FieldScalar> values;
      for (const auto& q : p.vertices()) {
        Vector lifted = q;
        lifted.emplace_back(1);
        values.push_back(inner(v, lifted));
      }
      for (int part = 0; part < field_factor(inst.field); ++part) {
        LinearConstraint row;
        row.coeffs.assign(s.num_vars, Rational(0));
        for (std::size_t t = 0; t < values.size(); ++t) {
          row.coeffs[first + t] = part == 0 ? values[t].re() : values[t].im();
        }
        row.relation = Relation::Equal;
        row.rhs = 0;
        s.add(std::move(row));
      }
    }
    if (!lp_feasible(s).feasible) out.push_back(static_cast<int>(i));
  }
  return out;
}

}  // namespace tvlab
