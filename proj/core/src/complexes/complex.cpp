#include "tvlab/complexes/complex.hpp"

#include <algorithm>

#include "tvlab/core/error.hpp"

namespace tvlab {

namespace {

bool is_subset(const Face& small, const Face& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

std::vector<Face> canonical_facets(std::vector<Face> facets) {
  for (auto& f : facets) {
    std::sort(f.begin(), f.end());
    if (f.empty()) throw InputError("empty facet");
    if (std::adjacent_find(f.begin(), f.end()) != f.end()) {
      throw InputError("facet with repeated vertex");
    }
  }
  std::sort(facets.begin(), facets.end());
  facets.erase(std::unique(facets.begin(), facets.end()), facets.end());

  std::size_t max_size = 0;
  for (const auto& f : facets) max_size = std::max(max_size, f.size());
  std::vector<Face> kept;
  kept.reserve(facets.size());
  for (const auto& f : facets) {
    if (f.size() == max_size) {
      kept.push_back(f);
      continue;
    }
    bool covered = std::any_of(facets.begin(), facets.end(), [&](const Face& g) {
      return g.size() > f.size() && is_subset(f, g);
    });
    if (!covered) kept.push_back(f);
  }
  return kept;
}

std::vector<int> union_of(const std::vector<Face>& facets) {
  std::vector<int> v;
  for (const auto& f : facets) v.insert(v.end(), f.begin(), f.end());
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

void add_subsets_of_size(const Face& facet, std::size_t size, std::vector<Face>& out) {
  if (size > facet.size()) return;
  std::vector<bool> pick(facet.size(), false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(size), true);
  do {
    Face f;
    f.reserve(size);
    for (std::size_t i = 0; i < facet.size(); ++i) {
      if (pick[i]) f.push_back(facet[i]);
    }
    out.push_back(std::move(f));
  } while (std::prev_permutation(pick.begin(), pick.end()));
}

std::size_t index_of(const std::vector<Face>& sorted, const Face& f) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), f);
  if (it == sorted.end() || *it != f) throw ConsistencyError("face missing from complex");
  return static_cast<std::size_t>(it - sorted.begin());
}

SparseZMatrix boundary_from_faces(const std::vector<Face>& lower, const std::vector<Face>& upper) {
  SparseZMatrix m;
  m.rows = lower.size();
  m.cols = upper.size();
  m.entries.reserve(upper.size() * (upper.empty() ? 0 : upper[0].size()));
  Face sub;
  for (std::size_t c = 0; c < upper.size(); ++c) {
    const Face& tau = upper[c];
    for (std::size_t i = 0; i < tau.size(); ++i) {
      sub.assign(tau.begin(), tau.end());
      sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(i));
      m.entries.push_back({index_of(lower, sub), c, (i % 2 == 0) ? 1L : -1L});
    }
  }
  return m;
}

}  // namespace

SimplicialComplex::SimplicialComplex(std::vector<Face> facets)
    : facets_(canonical_facets(std::move(facets))) {
  vertices_ = union_of(facets_);
}

SimplicialComplex::SimplicialComplex(std::vector<int> vertices, std::vector<Face> facets)
    : SimplicialComplex(std::move(facets)) {
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  if (vertices != vertices_) throw InputError("vertex list does not match the facets");
}

int SimplicialComplex::dimension() const {
  std::size_t m = 0;
  for (const auto& f : facets_) m = std::max(m, f.size());
  return static_cast<int>(m) - 1;
}

std::vector<Face> SimplicialComplex::faces(int dim) const {
  std::vector<Face> out;
  if (dim < 0) return out;
  for (const auto& f : facets_) add_subsets_of_size(f, static_cast<std::size_t>(dim) + 1, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::size_t> SimplicialComplex::f_vector() const {
  std::vector<std::size_t> f;
  for (int d = 0; d <= dimension(); ++d) f.push_back(faces(d).size());
  return f;
}

SimplicialComplex independence_complex(const Matroid& m) {
  if (m.has_loops()) throw InputError("independence complex requires a loopless matroid");
  std::vector<Face> facets = enumerate_bases(m);
  for (const auto& b : facets) {
    if (static_cast<int>(b.size()) != m.rank()) {
      throw ConsistencyError("maximal independent sets of unequal size");
    }
  }
  if (m.rank() == 0) facets.clear();
  return SimplicialComplex(std::move(facets));
}

SimplicialComplex matroidal_join_discrete(const Matroid& m, std::span<const int> sizes) {
  if (static_cast<int>(sizes.size()) != m.size()) {
    throw InputError("matroidal join needs one size per element");
  }
  for (int s : sizes) {
    if (s < 1) throw InputError("matroidal join sizes must be >= 1");
  }
  if (m.has_loops()) throw InputError("matroidal join requires a loopless matroid");

  std::vector<int> offset(sizes.size() + 1, 0);
  for (std::size_t i = 0; i < sizes.size(); ++i) offset[i + 1] = offset[i] + sizes[i];

  std::vector<Face> facets;
  for (const auto& basis : enumerate_bases(m)) {
    if (basis.empty()) continue;
    // Odometer over one point per element of the basis.
    std::vector<int> pick(basis.size(), 0);
    for (;;) {
      Face f(basis.size());
      for (std::size_t j = 0; j < basis.size(); ++j) {
        f[j] = offset[static_cast<std::size_t>(basis[j])] + pick[j];
      }
      facets.push_back(std::move(f));
      std::size_t j = 0;
      while (j < basis.size()) {
        if (++pick[j] < sizes[static_cast<std::size_t>(basis[j])]) break;
        pick[j] = 0;
        ++j;
      }
      if (j == basis.size()) break;
    }
  }
  SimplicialComplex join(std::move(facets));

  SimplicialComplex check = independence_complex(m.parallel_extension(sizes));
  if (!(check == join)) {
    throw ConsistencyError("matroidal join differs from the parallel extension's complex");
  }
  return join;
}

SparseZMatrix boundary_matrix(const SimplicialComplex& k, int dim) {
  if (dim < 0 || dim > k.dimension()) {
    SparseZMatrix empty;
    empty.rows = dim <= 0 ? 1 : k.faces(dim - 1).size();
    empty.cols = 0;
    return empty;
  }
  if (dim == 0) {
    auto verts = k.faces(0);
    SparseZMatrix aug;
    aug.rows = 1;
    aug.cols = verts.size();
    for (std::size_t c = 0; c < verts.size(); ++c) aug.entries.push_back({0, c, 1});
    return aug;
  }
  return boundary_from_faces(k.faces(dim - 1), k.faces(dim));
}

HomologyProfile reduced_homology(const SimplicialComplex& k) {
  if (k.empty()) throw InputError("reduced homology of the empty complex");
  const int top = k.dimension();

  std::vector<std::vector<Face>> faces(static_cast<std::size_t>(top) + 1);
  for (int d = 0; d <= top; ++d) faces[static_cast<std::size_t>(d)] = k.faces(d);

  // factors[d] = invariant factors of the boundary C_d -> C_{d-1}, d = 0..top.
  std::vector<std::vector<Integer>> factors(static_cast<std::size_t>(top) + 2);
  factors[0] = {Integer(1)};  // augmentation of a nonempty complex
  for (int d = 1; d <= top; ++d) {
    factors[static_cast<std::size_t>(d)] = smith_normal_form(
        boundary_from_faces(faces[static_cast<std::size_t>(d) - 1], faces[static_cast<std::size_t>(d)]));
  }

  HomologyProfile h;
  Integer euler_faces = -1;
  Integer euler_betti = 0;
  for (int d = 0; d <= top; ++d) {
    const auto du = static_cast<std::size_t>(d);
    const std::size_t chains = faces[du].size();
    const std::size_t rank_out = factors[du].size();
    const std::size_t rank_in = factors[du + 1].size();
    if (rank_out + rank_in > chains) throw ConsistencyError("boundary ranks exceed chain rank");
    HomologyGroup g;
    g.betti = chains - rank_out - rank_in;
    for (const auto& f : factors[du + 1]) {
      if (f > 1) g.torsion.push_back(f);
    }
    euler_faces += (d % 2 == 0 ? 1 : -1) * static_cast<long>(chains);
    euler_betti += (d % 2 == 0 ? 1 : -1) * static_cast<long>(g.betti);
    h.degrees.push_back(std::move(g));
  }
  if (euler_faces != euler_betti) throw ConsistencyError("Euler characteristic mismatch");
  return h;
}

Connectivity homological_connectivity(const HomologyProfile& h) {
  Connectivity c;
  c.value = -1;
  for (std::size_t d = 0; d < h.degrees.size(); ++d) {
    if (!h.degrees[d].vanishes()) return c;
    c.value = static_cast<int>(d);
  }
  c.through_top = true;
  return c;
}

Connectivity homological_connectivity(const SimplicialComplex& k) {
  return homological_connectivity(reduced_homology(k));
}

}  // namespace tvlab
