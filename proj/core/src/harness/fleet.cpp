#include "tvlab/harness/fleet.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "tvlab/core/linalg.hpp"
#include "tvlab/core/rng.hpp"
#include "tvlab/harness/generators.hpp"

namespace tvlab {

namespace {

std::vector<ElementSet> k_subsets(int n, int k) {
  std::vector<ElementSet> out;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
    if (std::popcount(mask) != k) continue;
    ElementSet s;
    for (int e = 0; e < n; ++e) {
      if (mask & (std::uint32_t{1} << e)) s.push_back(e);
    }
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ElementSet> bases_avoiding(int n, int k, const std::vector<ElementSet>& dependent) {
  std::vector<ElementSet> out;
  for (auto& s : k_subsets(n, k)) {
    if (std::find(dependent.begin(), dependent.end(), s) == dependent.end()) out.push_back(std::move(s));
  }
  return out;
}

/// Integer partitions of n into at most `parts` parts, largest part first.
void partitions(int n, int max_part, int parts, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  if (parts == 0) return;
  for (int p = std::min(n, max_part); p >= 1; --p) {
    cur.push_back(p);
    partitions(n - p, p, parts - 1, cur, out);
    cur.pop_back();
  }
}

std::uint32_t mask_of(const ElementSet& s) {
  std::uint32_t m = 0;
  for (int e : s) m |= std::uint32_t{1} << e;
  return m;
}

}  // namespace

std::vector<FleetEntry> matroid_fleet(std::uint64_t seed) {
  std::vector<FleetEntry> fleet;
  for (int n = 1; n <= 8; ++n) {
    for (int r = 1; r <= std::min(4, n); ++r) {
      fleet.push_back({"U(" + std::to_string(r) + "," + std::to_string(n) + ")", MatroidSpec::uniform(n, r)});
    }
  }

  for (int n = 2; n <= 8; ++n) {
    std::vector<std::vector<int>> parts;
    std::vector<int> cur;
    partitions(n, n, 4, cur, parts);
    for (const auto& sizes : parts) {
      if (sizes.size() == 1 || sizes.size() == static_cast<std::size_t>(n)) continue;  // uniform already
      std::vector<int> classes;
      std::string name = "P(";
      for (std::size_t c = 0; c < sizes.size(); ++c) {
        classes.insert(classes.end(), static_cast<std::size_t>(sizes[c]), static_cast<int>(c));
        name += (c ? "," : "") + std::to_string(sizes[c]);
      }
      fleet.push_back({name + ")", MatroidSpec::partition(classes)});
    }
  }

  const std::vector<ElementSet> fano_lines{{0, 1, 2}, {0, 3, 4}, {0, 5, 6}, {1, 3, 5}, {1, 4, 6}, {2, 3, 6}, {2, 4, 5}};
  fleet.push_back({"Fano", MatroidSpec::explicit_bases(7, bases_avoiding(7, 3, fano_lines))});
  fleet.push_back({"non-Fano", MatroidSpec::linear(Field::Real, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0},
                                                                  {1, 0, 1}, {0, 1, 1}, {1, 1, 1}})});
  const MatroidSpec k4 =
      MatroidSpec::linear(Field::Real, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, -1, 0}, {1, 0, -1}, {0, 1, -1}});
  fleet.push_back({"M(K4)", k4});
  std::vector<ElementSet> whirl = enumerate_bases(k4.build());
  whirl.push_back({3, 4, 5});
  std::sort(whirl.begin(), whirl.end());
  fleet.push_back({"W3", MatroidSpec::explicit_bases(6, whirl)});
  fleet.push_back({"Vamos", MatroidSpec::explicit_bases(8, bases_avoiding(8, 4,
                                                                          {{0, 1, 2, 3},
                                                                           {0, 1, 4, 5},
                                                                           {0, 1, 6, 7},
                                                                           {2, 3, 4, 5},
                                                                           {2, 3, 6, 7}}))});

  // Random linear matroids: small entries give repeated columns and
  // nontrivial circuits.
  Rng rng(derive_seed(seed, 0x666c656574ULL));
  for (int i = 0; i < 30; ++i) {
    const int n = static_cast<int>(rng.uniform_int(3, 8));
    const int rho = static_cast<int>(rng.uniform_int(2, std::min(4, n)));
    while (true) {
      std::vector<Vector> cols;
      for (int e = 0; e < n; ++e) {
        Vector c;
        do {
          c.clear();
          for (int j = 0; j < rho; ++j) c.push_back(FieldScalar(rng.uniform_int(-1, 1)));
        } while (std::all_of(c.begin(), c.end(), [](const FieldScalar& z) { return z.is_zero(); }));
        cols.push_back(std::move(c));
      }
      if (rank(QMatrix::from_columns(cols, static_cast<std::size_t>(rho), Field::Real)) ==
          static_cast<std::size_t>(rho)) {
        fleet.push_back({"L" + std::to_string(i) + "(" + std::to_string(rho) + "," + std::to_string(n) + ")",
                         MatroidSpec::linear(Field::Real, std::move(cols))});
        break;
      }
    }
  }
  return fleet;
}

std::vector<std::vector<int>> matroid_automorphisms(const Matroid& m) {
  const int n = m.size();
  std::vector<bool> is_basis(std::size_t{1} << n, false);
  const auto bases = enumerate_bases(m);
  std::vector<std::uint32_t> masks;
  for (const auto& b : bases) {
    masks.push_back(mask_of(b));
    is_basis[masks.back()] = true;
  }
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> group;
  do {
    bool ok = true;
    for (std::uint32_t b : masks) {
      std::uint32_t image = 0;
      for (int e = 0; e < n; ++e) {
        if (b & (std::uint32_t{1} << e)) image |= std::uint32_t{1} << p[static_cast<std::size_t>(e)];
      }
      if (!is_basis[image]) {
        ok = false;
        break;
      }
    }
    if (ok) group.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return group;
}

std::vector<std::vector<int>> size_vector_orbits(int n, int max_size,
                                                 const std::vector<std::vector<int>>& group) {
  std::size_t total = 1;
  for (int i = 0; i < n; ++i) total *= static_cast<std::size_t>(max_size);
  auto encode = [&](const std::vector<int>& s) {
    std::size_t code = 0;
    for (int x : s) code = code * static_cast<std::size_t>(max_size) + static_cast<std::size_t>(x - 1);
    return code;
  };
  std::vector<bool> seen(total, false);
  std::vector<std::vector<int>> reps;
  std::vector<int> s(static_cast<std::size_t>(n), 1);
  std::vector<int> image(static_cast<std::size_t>(n));
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t rest = code;
    for (int i = n - 1; i >= 0; --i) {
      s[static_cast<std::size_t>(i)] = static_cast<int>(rest % static_cast<std::size_t>(max_size)) + 1;
      rest /= static_cast<std::size_t>(max_size);
    }
    if (seen[code]) continue;
    reps.push_back(s);
    for (const auto& p : group) {
      for (int i = 0; i < n; ++i) image[static_cast<std::size_t>(p[static_cast<std::size_t>(i)])] = s[static_cast<std::size_t>(i)];
      seen[encode(image)] = true;
    }
  }
  return reps;
}

}  // namespace tvlab
