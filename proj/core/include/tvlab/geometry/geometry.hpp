#pragma once

#include <optional>
#include <span>
#include <vector>

#include "tvlab/geometry/lp.hpp"
#include "tvlab/matroid/matroid.hpp"

namespace tvlab {

/// Coordinates of a point of F^d as 2d (complex) or d (real) rationals.
/// Complex coordinates are interleaved: Re z_1, Im z_1, Re z_2, ...
RealVector real_coordinates(std::span<const FieldScalar> p, Field field);
Vector from_real_coordinates(std::span<const Rational> x, Field field);

/// Convex hull of finitely many points of F^d (V-representation).
class Polytope {
 public:
  Polytope() = default;
  /// Removes repeated vertices (first occurrence kept). Throws InputError on an
  /// empty vertex list, mixed dimensions or complex data in a real polytope.
  Polytope(Field field, int dim, std::vector<Vector> vertices);

  static Polytope point(Field field, Vector p);

  Field field() const { return field_; }
  int dim() const { return dim_; }
  int real_dim() const { return dim_ * field_factor(field_); }
  const std::vector<Vector>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  /// Real coordinates of vertex v.
  RealVector real_vertex(std::size_t v) const;

  friend bool operator==(const Polytope&, const Polytope&) = default;

 private:
  Field field_ = Field::Real;
  int dim_ = 0;
  std::vector<Vector> vertices_;
};

/// F-affine flat base + span_F(directions).
class Flat {
 public:
  Flat() = default;
  /// Throws InputError when directions are F-linearly dependent or of the wrong length.
  Flat(Field field, Vector base, std::vector<Vector> directions);

  Field field() const { return field_; }
  int ambient_dim() const { return static_cast<int>(base_.size()); }
  int dim() const { return static_cast<int>(directions_.size()); }
  const Vector& base() const { return base_; }
  const std::vector<Vector>& directions() const { return directions_; }

  friend bool operator==(const Flat&, const Flat&) = default;

 private:
  Field field_ = Field::Real;
  Vector base_;
  std::vector<Vector> directions_;
};

/// A family F_0..F_n in F^d together with a matroid on the index set, an
/// optional coloring, and the map phi : index -> F^r.
struct Instance {
  Field field = Field::Real;
  int d = 1;
  int k = 0;
  int r = 0;
  std::vector<Polytope> polytopes;
  std::optional<std::vector<int>> coloring;
  Matroid matroid = Matroid::uniform(0, 0);
  std::vector<Vector> phi;

  std::size_t size() const { return polytopes.size(); }
  /// Checks 0 <= r <= k < d, dimensions, phi coverage and, when a coloring is
  /// present, that the matroid is its partition matroid. Throws InputError.
  void validate() const;
  /// Indices of the sets with the given color.
  std::vector<int> color_class(int color) const;
  int num_colors() const;
};

/// Is there a common point? The witness point is the common point (real coordinates).
LPResult polytopes_intersect(std::span<const Polytope> parts);
LPResult polytopes_intersect(std::span<const Polytope* const> parts);

/// conv(union G1) meets conv(union G2)?
LPResult hulls_of_unions_intersect(std::span<const Polytope* const> g1,
                                   std::span<const Polytope* const> g2);
LPResult hulls_of_unions_intersect(std::span<const Polytope> g1, std::span<const Polytope> g2);

/// Does the flat meet P? The point is a common point (real coordinates).
LPResult flat_meets_polytope(const Flat& flat, const Polytope& p);

/// Basis of {a in F^m : sum a_i = 0, sum a_i p_i = 0}.
std::vector<Vector> affine_dependency_kernel(std::span<const Vector> points, Field field);

/// Indices i such that F_i x {1} misses the F-orthogonal complement of
/// span(frame) in F^{d+1}. Frame vectors need only be linearly independent.
ElementSet compute_shadow_set(std::span<const Vector> frame, const Instance& inst);

/// Hermitian form sum conj(u_t) v_t (the dot product over R).
FieldScalar inner(std::span<const FieldScalar> u, std::span<const FieldScalar> v);

}  // namespace tvlab
