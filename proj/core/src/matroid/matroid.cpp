#include "tvlab/matroid/matroid.hpp"

#include <algorithm>
#include <cstdint>
#include <sstream>

#include "tvlab/core/error.hpp"
#include "tvlab/core/linalg.hpp"

namespace tvlab {

namespace {

constexpr int kTableLimit = 20;

ElementSet normalize(std::span<const int> set, int n) {
  ElementSet s(set.begin(), set.end());
  std::sort(s.begin(), s.end());
  for (int e : s) {
    if (e < 0 || e >= n) throw InputError("unknown element id " + std::to_string(e));
  }
  return s;
}

std::uint32_t to_mask(std::span<const int> s) {
  std::uint32_t mask = 0;
  for (int e : s) mask |= std::uint32_t{1} << e;
  return mask;
}

}  // namespace

struct Matroid::Backend {
  virtual ~Backend() = default;
  virtual Kind kind() const = 0;
  /// `set` is sorted, in range, possibly with duplicates.
  virtual bool independent(std::span<const int> set) const = 0;
  virtual std::string describe() const = 0;

  int n = 0;
  int full_rank = 0;
  std::vector<int> origin;  // identity unless derived by parallel extension
};

namespace {

bool has_duplicates(std::span<const int> s) {
  return std::adjacent_find(s.begin(), s.end()) != s.end();
}

struct UniformBackend final : Matroid::Backend {
  int r = 0;
  Matroid::Kind kind() const override { return Matroid::Kind::Uniform; }
  bool independent(std::span<const int> s) const override {
    return !has_duplicates(s) && static_cast<int>(s.size()) <= r;
  }
  std::string describe() const override {
    return "U(" + std::to_string(r) + "," + std::to_string(n) + ")";
  }
};

struct PartitionBackend final : Matroid::Backend {
  std::vector<int> class_of;
  Matroid::Kind kind() const override { return Matroid::Kind::Partition; }
  bool independent(std::span<const int> s) const override {
    if (has_duplicates(s)) return false;
    std::vector<int> seen;
    seen.reserve(s.size());
    for (int e : s) seen.push_back(class_of[e]);
    std::sort(seen.begin(), seen.end());
    return !has_duplicates(seen);
  }
  std::string describe() const override {
    std::ostringstream os;
    os << "partition(";
    for (std::size_t i = 0; i < class_of.size(); ++i) os << (i ? "," : "") << class_of[i];
    os << ")";
    return os.str();
  }
};

/// Independence by subset table when the ground set is small.
struct TabledBackend : Matroid::Backend {
  std::vector<bool> table;  // indexed by subset mask; empty when n > kTableLimit

  bool independent(std::span<const int> s) const override {
    if (has_duplicates(s)) return false;
    if (!table.empty()) return table[to_mask(s)];
    return compute(s);
  }
  virtual bool compute(std::span<const int> s) const = 0;

  void build_table() {
    if (n > kTableLimit) return;
    const std::uint32_t total = std::uint32_t{1} << n;
    table.assign(total, false);
    table[0] = true;
    ElementSet members;
    for (std::uint32_t mask = 1; mask < total; ++mask) {
      int top = 31 - __builtin_clz(mask);
      std::uint32_t rest = mask & ~(std::uint32_t{1} << top);
      if (!table[rest]) continue;
      members.clear();
      for (int e = 0; e < n; ++e) {
        if (mask & (std::uint32_t{1} << e)) members.push_back(e);
      }
      table[mask] = compute(members);
    }
  }
};

struct LinearBackend final : TabledBackend {
  QMatrix columns;
  Matroid::Kind kind() const override { return Matroid::Kind::Linear; }
  bool compute(std::span<const int> s) const override {
    if (s.empty()) return true;
    if (s.size() > columns.rows()) return false;
    QMatrix sub(columns.rows(), s.size(), columns.field());
    for (std::size_t j = 0; j < s.size(); ++j) {
      for (std::size_t i = 0; i < columns.rows(); ++i) {
        sub.set(i, j, columns(i, static_cast<std::size_t>(s[j])));
      }
    }
    return rank(sub) == s.size();
  }
  std::string describe() const override {
    return "linear(" + std::to_string(columns.rows()) + "x" + std::to_string(columns.cols()) + ")";
  }
};

struct ExplicitBackend final : TabledBackend {
  std::vector<ElementSet> bases;
  Matroid::Kind kind() const override { return Matroid::Kind::Explicit; }
  bool compute(std::span<const int> s) const override {
    if (s.empty()) return true;
    return std::any_of(bases.begin(), bases.end(), [&](const ElementSet& b) {
      return std::includes(b.begin(), b.end(), s.begin(), s.end());
    });
  }
  std::string describe() const override {
    return "explicit(" + std::to_string(bases.size()) + " bases)";
  }
};

/// sigma independent iff origins are distinct and origin(sigma) + forced is
/// independent in the parent. Covers deletion, link, restriction and parallel
/// extension.
struct DerivedBackend final : Matroid::Backend {
  std::shared_ptr<const Matroid::Backend> parent;
  std::vector<int> parent_of;  // new element -> parent element
  ElementSet forced;           // parent elements always added (sorted)
  std::string how;

  Matroid::Kind kind() const override { return Matroid::Kind::Derived; }
  bool independent(std::span<const int> s) const override {
    ElementSet mapped;
    mapped.reserve(s.size() + forced.size());
    for (int e : s) mapped.push_back(parent_of[e]);
    mapped.insert(mapped.end(), forced.begin(), forced.end());
    std::sort(mapped.begin(), mapped.end());
    if (has_duplicates(mapped)) return false;
    return parent->independent(mapped);
  }
  std::string describe() const override { return how + "[" + parent->describe() + "]"; }
};

int greedy_rank(const Matroid::Backend& b, std::span<const int> set) {
  ElementSet chosen;
  for (int e : set) {
    if (!chosen.empty() && chosen.back() == e) continue;
    chosen.push_back(e);
    if (!b.independent(chosen)) chosen.pop_back();
  }
  return static_cast<int>(chosen.size());
}

template <typename B>
std::shared_ptr<const Matroid::Backend> finish(std::shared_ptr<B> b) {
  if (b->origin.empty()) {
    b->origin.resize(static_cast<std::size_t>(b->n));
    for (int i = 0; i < b->n; ++i) b->origin[static_cast<std::size_t>(i)] = i;
  }
  ElementSet all(static_cast<std::size_t>(b->n));
  for (int i = 0; i < b->n; ++i) all[static_cast<std::size_t>(i)] = i;
  b->full_rank = greedy_rank(*b, all);
  return b;
}

}  // namespace

Matroid::Matroid(std::shared_ptr<const Backend> b) : impl_(std::move(b)) {}

Matroid Matroid::uniform(int n, int rank) {
  if (n < 0 || rank < 0 || rank > n) throw InputError("uniform matroid needs 0 <= rank <= n");
  if (n > 0 && rank == 0) throw InputError("uniform matroid of rank 0 consists of loops");
  auto b = std::make_shared<UniformBackend>();
  b->n = n;
  b->r = rank;
  return Matroid(finish(b));
}

Matroid Matroid::partition(std::vector<int> class_of) {
  int classes = 0;
  for (int c : class_of) {
    if (c < 0) throw InputError("negative class id");
    classes = std::max(classes, c + 1);
  }
  std::vector<bool> used(static_cast<std::size_t>(classes), false);
  for (int c : class_of) used[static_cast<std::size_t>(c)] = true;
  if (std::find(used.begin(), used.end(), false) != used.end()) {
    throw InputError("partition matroid has an empty class");
  }
  auto b = std::make_shared<PartitionBackend>();
  b->n = static_cast<int>(class_of.size());
  b->class_of = std::move(class_of);
  return Matroid(finish(b));
}

Matroid Matroid::partition_from_sizes(std::span<const int> sizes) {
  std::vector<int> class_of;
  for (std::size_t c = 0; c < sizes.size(); ++c) {
    if (sizes[c] < 1) throw InputError("partition class sizes must be positive");
    class_of.insert(class_of.end(), static_cast<std::size_t>(sizes[c]), static_cast<int>(c));
  }
  return partition(std::move(class_of));
}

Matroid Matroid::linear(QMatrix columns) {
  auto b = std::make_shared<LinearBackend>();
  b->n = static_cast<int>(columns.cols());
  b->columns = std::move(columns);
  b->build_table();
  return Matroid(finish(b));
}

Matroid Matroid::explicit_bases(int n, std::vector<ElementSet> bases) {
  if (n < 0) throw InputError("negative ground set size");
  for (auto& basis : bases) {
    std::sort(basis.begin(), basis.end());
    if (has_duplicates(basis)) throw InputError("basis with repeated element");
    for (int e : basis) {
      if (e < 0 || e >= n) throw InputError("basis element out of range");
    }
  }
  std::sort(bases.begin(), bases.end());
  bases.erase(std::unique(bases.begin(), bases.end()), bases.end());
  auto b = std::make_shared<ExplicitBackend>();
  b->n = n;
  b->bases = std::move(bases);
  b->build_table();
  return Matroid(finish(b));
}

int Matroid::size() const { return impl_->n; }
Matroid::Kind Matroid::kind() const { return impl_->kind(); }
int Matroid::rank() const { return impl_->full_rank; }
const std::vector<int>& Matroid::origin() const { return impl_->origin; }
std::string Matroid::describe() const { return impl_->describe(); }

bool Matroid::is_independent(std::span<const int> set) const {
  return impl_->independent(normalize(set, impl_->n));
}

int Matroid::rank(std::span<const int> set) const {
  return greedy_rank(*impl_, normalize(set, impl_->n));
}

bool Matroid::is_loop(int e) const {
  const int single[1] = {e};
  return !is_independent(single);
}

bool Matroid::has_loops() const {
  for (int e = 0; e < size(); ++e) {
    if (is_loop(e)) return true;
  }
  return false;
}

Matroid Matroid::restriction(std::span<const int> keep) const {
  ElementSet k = normalize(keep, impl_->n);
  k.erase(std::unique(k.begin(), k.end()), k.end());
  auto b = std::make_shared<DerivedBackend>();
  b->parent = impl_;
  b->n = static_cast<int>(k.size());
  b->parent_of = k;
  b->how = "restrict";
  for (int e : k) b->origin.push_back(impl_->origin[static_cast<std::size_t>(e)]);
  return Matroid(finish(b));
}

Matroid Matroid::deletion(int e) const {
  if (e < 0 || e >= size()) throw InputError("unknown element id " + std::to_string(e));
  ElementSet keep;
  for (int i = 0; i < size(); ++i) {
    if (i != e) keep.push_back(i);
  }
  return restriction(keep);
}

Matroid Matroid::link(int e) const {
  if (e < 0 || e >= size()) throw InputError("unknown element id " + std::to_string(e));
  if (is_loop(e)) throw InputError("cannot take the link of loop " + std::to_string(e));
  auto b = std::make_shared<DerivedBackend>();
  b->parent = impl_;
  b->forced = {e};
  b->how = "link";
  for (int i = 0; i < size(); ++i) {
    if (i == e) continue;
    b->parent_of.push_back(i);
    b->origin.push_back(impl_->origin[static_cast<std::size_t>(i)]);
  }
  b->n = static_cast<int>(b->parent_of.size());
  return Matroid(finish(b));
}

Matroid Matroid::parallel_extension(std::span<const int> multiplicities) const {
  if (static_cast<int>(multiplicities.size()) != size()) {
    throw InputError("parallel extension needs one multiplicity per element");
  }
  for (std::size_t e = 0; e < multiplicities.size(); ++e) {
    if (multiplicities[e] < 1) throw InputError("parallel extension multiplicity must be >= 1");
    if (multiplicities[e] > 1 && is_loop(static_cast<int>(e))) {
      throw InputError("parallel extension of a loop");
    }
  }
  auto b = std::make_shared<DerivedBackend>();
  b->parent = impl_;
  b->how = "parallel";
  for (std::size_t e = 0; e < multiplicities.size(); ++e) {
    for (int c = 0; c < multiplicities[e]; ++c) b->parent_of.push_back(static_cast<int>(e));
  }
  b->origin = b->parent_of;
  b->n = static_cast<int>(b->parent_of.size());
  return Matroid(finish(b));
}

// ---------------------------------------------------------------------------

namespace {

void enumerate_rec(const Matroid& m, int max_card, ElementSet& cur, int next,
                   std::vector<ElementSet>& out) {
  if (static_cast<int>(cur.size()) == max_card) return;
  for (int e = next; e < m.size(); ++e) {
    cur.push_back(e);
    if (m.is_independent(cur)) {
      out.push_back(cur);
      enumerate_rec(m, max_card, cur, e + 1, out);
    }
    cur.pop_back();
  }
}

bool size_then_lex(const ElementSet& a, const ElementSet& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

}  // namespace

std::vector<ElementSet> enumerate_independent_sets(const Matroid& m, int max_card) {
  if (max_card < 0) throw InputError("max_card must be nonnegative");
  std::vector<ElementSet> out;
  ElementSet cur;
  enumerate_rec(m, max_card, cur, 0, out);
  std::sort(out.begin(), out.end(), size_then_lex);
  return out;
}

std::vector<ElementSet> enumerate_bases(const Matroid& m) {
  std::vector<ElementSet> all = enumerate_independent_sets(m, m.size());
  std::vector<ElementSet> bases;
  for (auto& s : all) {
    if (static_cast<int>(s.size()) == m.rank()) bases.push_back(std::move(s));
  }
  if (m.rank() == 0) bases.push_back({});
  return bases;
}

MatroidCheckReport verify_matroid_axioms(const Matroid& m, int cap) {
  const int n = m.size();
  if (n > cap) throw InputError("ground set of " + std::to_string(n) + " exceeds cap " + std::to_string(cap));
  MatroidCheckReport report;
  if (!m.is_independent(ElementSet{})) {
    report.pass = false;
    report.violated = "empty";
    report.witness = std::make_pair(ElementSet{}, ElementSet{});
    return report;
  }

  const std::uint32_t total = std::uint32_t{1} << n;
  std::vector<bool> indep(total);
  std::vector<ElementSet> sets(total);
  for (std::uint32_t mask = 0; mask < total; ++mask) {
    for (int e = 0; e < n; ++e) {
      if (mask & (std::uint32_t{1} << e)) sets[mask].push_back(e);
    }
    indep[mask] = m.is_independent(sets[mask]);
  }

  for (std::uint32_t mask = 1; mask < total; ++mask) {
    if (!indep[mask]) continue;
    for (int e : sets[mask]) {
      std::uint32_t sub = mask & ~(std::uint32_t{1} << e);
      if (!indep[sub]) {
        report.pass = false;
        report.violated = "downward-closure";
        report.witness = std::make_pair(sets[mask], sets[sub]);
        return report;
      }
    }
  }

  // Basis exchange on maximal independent sets.
  std::vector<std::uint32_t> maximal;
  for (std::uint32_t mask = 0; mask < total; ++mask) {
    if (!indep[mask]) continue;
    bool is_max = true;
    for (int e = 0; e < n && is_max; ++e) {
      std::uint32_t bit = std::uint32_t{1} << e;
      if (!(mask & bit) && indep[mask | bit]) is_max = false;
    }
    if (is_max) maximal.push_back(mask);
  }
  std::sort(maximal.begin(), maximal.end(),
            [&](std::uint32_t a, std::uint32_t b) { return sets[a] < sets[b]; });
  for (std::uint32_t b1 : maximal) {
    for (std::uint32_t b2 : maximal) {
      if (b1 == b2) continue;
      for (int x : sets[b1 & ~b2]) {
        bool found = false;
        for (int y : sets[b2 & ~b1]) {
          std::uint32_t swapped = (b1 & ~(std::uint32_t{1} << x)) | (std::uint32_t{1} << y);
          if (indep[swapped] &&
              std::find(maximal.begin(), maximal.end(), swapped) != maximal.end()) {
            found = true;
            break;
          }
        }
        if (!found) {
          report.pass = false;
          report.violated = "basis-exchange";
          report.witness = std::make_pair(sets[b1], sets[b2]);
          return report;
        }
      }
    }
  }

  // Augmentation: |I| < |J| implies I + e independent for some e in J \ I.
  for (std::uint32_t i = 0; i < total; ++i) {
    if (!indep[i]) continue;
    for (std::uint32_t j = 0; j < total; ++j) {
      if (!indep[j] || sets[j].size() <= sets[i].size()) continue;
      bool found = false;
      for (int e : sets[j & ~i]) {
        if (indep[i | (std::uint32_t{1} << e)]) {
          found = true;
          break;
        }
      }
      if (!found) {
        report.pass = false;
        report.violated = "augmentation";
        report.witness = std::make_pair(sets[i], sets[j]);
        return report;
      }
    }
  }
  return report;
}

}  // namespace tvlab
