#pragma once

#include <span>
#include <vector>

#include "tvlab/core/linalg.hpp"
#include "tvlab/matroid/matroid.hpp"

namespace tvlab {

using Face = std::vector<int>;

/// Finite abstract simplicial complex stored by its facets. Facets are sorted,
/// nonempty, inclusion-maximal and listed in lexicographic order; the vertex
/// list is exactly the union of the facets.
class SimplicialComplex {
 public:
  SimplicialComplex() = default;
  /// Canonicalizes: sorts vertices inside facets, drops non-maximal faces.
  explicit SimplicialComplex(std::vector<Face> facets);
  /// Also checks that `vertices` equals the union of the facets.
  SimplicialComplex(std::vector<int> vertices, std::vector<Face> facets);

  const std::vector<int>& vertices() const { return vertices_; }
  const std::vector<Face>& facets() const { return facets_; }
  bool empty() const { return facets_.empty(); }
  /// Largest facet size minus one; -1 for the empty complex.
  int dimension() const;

  /// All nonempty faces of dimension `dim`, lexicographically sorted.
  std::vector<Face> faces(int dim) const;
  /// Face counts f_0, ..., f_dim.
  std::vector<std::size_t> f_vector() const;

  friend bool operator==(const SimplicialComplex&, const SimplicialComplex&) = default;

 private:
  std::vector<int> vertices_;
  std::vector<Face> facets_;
};

/// Reduced integer homology in one degree: Z^betti plus torsion Z/t_i.
struct HomologyGroup {
  std::size_t betti = 0;
  std::vector<Integer> torsion;  // invariant factors > 1

  bool vanishes() const { return betti == 0 && torsion.empty(); }
  friend bool operator==(const HomologyGroup&, const HomologyGroup&) = default;
};

/// Reduced homology in degrees 0..dim K.
struct HomologyProfile {
  std::vector<HomologyGroup> degrees;
  friend bool operator==(const HomologyProfile&, const HomologyProfile&) = default;
};

/// Complex of independent sets; facets are the bases. Throws InputError if M
/// has loops.
SimplicialComplex independence_complex(const Matroid& m);

/// Matroidal join of discrete spaces: element i contributes sizes[i] points,
/// numbered consecutively (points of element 0 first). A face picks one point
/// for each element of an independent set. Checked internally against
/// independence_complex(parallel_extension(m, sizes)).
SimplicialComplex matroidal_join_discrete(const Matroid& m, std::span<const int> sizes);

/// Boundary map C_dim -> C_{dim-1} with rows and columns in lexicographic face
/// order and sign (-1)^position. For dim == 0 this is the augmentation.
SparseZMatrix boundary_matrix(const SimplicialComplex& k, int dim);

/// Throws InputError for the empty complex.
HomologyProfile reduced_homology(const SimplicialComplex& k);

/// Homological connectivity: the largest c with reduced H_i = 0 for all i <= c.
struct Connectivity {
  /// -1 when reduced H_0 is nonzero (disconnected); otherwise the largest
  /// vanishing degree, capped at dim K.
  int value = -1;
  /// All reduced homology vanishes through the top degree.
  bool through_top = false;

  bool at_least(int c) const { return through_top || value >= c; }
};

Connectivity homological_connectivity(const SimplicialComplex& k);
Connectivity homological_connectivity(const HomologyProfile& h);

}  // namespace tvlab
