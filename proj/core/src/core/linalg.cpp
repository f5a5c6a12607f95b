#include "tvlab/core/linalg.hpp"

#include <algorithm>
#include <cstdint>
#include <utility>

#include "tvlab/core/error.hpp"

namespace tvlab {

RowEchelon row_echelon(const QMatrix& m) {
  QMatrix a = m;
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t sel = row;
    while (sel < a.rows() && a(sel, col).is_zero()) ++sel;
    if (sel == a.rows()) continue;
    if (sel != row) {
      for (std::size_t c = col; c < a.cols(); ++c) {
        FieldScalar tmp = a(row, c);
        a.set(row, c, a(sel, c));
        a.set(sel, c, std::move(tmp));
      }
    }
    FieldScalar inv = a(row, col).inverse();
    for (std::size_t c = col; c < a.cols(); ++c) {
      if (!a(row, c).is_zero()) a.set(row, c, a(row, c) * inv);
    }
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == row || a(r, col).is_zero()) continue;
      FieldScalar f = a(r, col);
      for (std::size_t c = col; c < a.cols(); ++c) {
        if (!a(row, c).is_zero()) a.set(r, c, a(r, c) - f * a(row, c));
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(a), std::move(pivots)};
}

std::size_t rank(const QMatrix& m) { return row_echelon(m).pivot_columns.size(); }

std::vector<Vector> kernel_basis(const QMatrix& m) {
  auto [rref, pivots] = row_echelon(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;

  std::vector<Vector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector v(m.cols());
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -rref(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

// ---------------------------------------------------------------------------
// Smith normal form

namespace {

struct Overflow {};

inline std::int64_t checked_sub_mul(std::int64_t a, std::int64_t f, std::int64_t b) {
  std::int64_t prod = 0;
  std::int64_t out = 0;
  if (__builtin_mul_overflow(f, b, &prod) || __builtin_sub_overflow(a, prod, &out)) {
    throw Overflow{};
  }
  return out;
}

inline Integer checked_sub_mul(const Integer& a, const Integer& f, const Integer& b) {
  return a - f * b;
}

inline bool is_unit(std::int64_t v) { return v == 1 || v == -1; }
inline bool is_unit(const Integer& v) { return v == 1 || v == -1; }

template <typename T>
struct SparseRows {
  using Row = std::vector<std::pair<std::size_t, T>>;
  std::vector<Row> rows;
  std::vector<std::vector<std::size_t>> col_rows;

  const T* find(std::size_t r, std::size_t c) const {
    const Row& row = rows[r];
    auto it = std::lower_bound(row.begin(), row.end(), c,
                               [](const auto& e, std::size_t col) { return e.first < col; });
    if (it == row.end() || it->first != c) return nullptr;
    return &it->second;
  }
};

// Row r <- row r - factor * pivot row, keeping entries sorted and nonzero.
template <typename T>
void subtract_row(SparseRows<T>& m, std::size_t r, const T& factor, std::size_t pivot_row) {
  const auto& src = m.rows[pivot_row];
  auto& dst = m.rows[r];
  typename SparseRows<T>::Row merged;
  merged.reserve(dst.size() + src.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < dst.size() || j < src.size()) {
    if (j == src.size() || (i < dst.size() && dst[i].first < src[j].first)) {
      merged.push_back(std::move(dst[i++]));
    } else if (i == dst.size() || src[j].first < dst[i].first) {
      T v = checked_sub_mul(T(0), factor, src[j].second);
      m.col_rows[src[j].first].push_back(r);
      merged.emplace_back(src[j].first, std::move(v));
      ++j;
    } else {
      T v = checked_sub_mul(dst[i].second, factor, src[j].second);
      if (v != 0) merged.emplace_back(dst[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  dst = std::move(merged);
}

// Elementary reduction with smallest-pivot selection; returns the nonzero
// diagonal in divisibility order.
std::vector<Integer> dense_snf(std::vector<std::vector<Integer>> a) {
  const std::size_t m = a.size();
  const std::size_t n = m == 0 ? 0 : a[0].size();
  std::vector<Integer> factors;

  auto swap_cols = [&](std::size_t x, std::size_t y) {
    if (x == y) return;
    for (auto& row : a) std::swap(row[x], row[y]);
  };

  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    // Smallest nonzero magnitude in the trailing block.
    std::size_t pr = m;
    std::size_t pc = n;
    for (std::size_t i = t; i < m; ++i) {
      for (std::size_t j = t; j < n; ++j) {
        if (a[i][j] != 0 && (pr == m || abs(a[i][j]) < abs(a[pr][pc]))) {
          pr = i;
          pc = j;
        }
      }
    }
    if (pr == m) break;
    std::swap(a[t], a[pr]);
    swap_cols(t, pc);

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (a[i][t] == 0) continue;
        Integer q = a[i][t] / a[t][t];
        if (q != 0) {
          for (std::size_t j = t; j < n; ++j) {
            if (a[t][j] != 0) a[i][j] -= q * a[t][j];
          }
        }
        if (a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (a[t][j] == 0) continue;
        Integer q = a[t][j] / a[t][t];
        if (q != 0) {
          for (std::size_t i = t; i < m; ++i) {
            if (a[i][t] != 0) a[i][j] -= q * a[i][t];
          }
        }
        if (a[t][j] != 0) clean = false;
      }
      if (!clean) {
        // A remainder is smaller than the pivot; move the smallest to (t, t).
        std::size_t br = t;
        std::size_t bc = t;
        for (std::size_t i = t + 1; i < m; ++i) {
          if (a[i][t] != 0 && abs(a[i][t]) < abs(a[br][bc])) {
            br = i;
            bc = t;
          }
        }
        for (std::size_t j = t + 1; j < n; ++j) {
          if (a[t][j] != 0 && abs(a[t][j]) < abs(a[br][bc])) {
            br = t;
            bc = j;
          }
        }
        std::swap(a[t], a[br]);
        swap_cols(t, bc);
        continue;
      }
      // Row and column are clear; enforce divisibility of the trailing block.
      bool divisible = true;
      for (std::size_t i = t + 1; i < m && divisible; ++i) {
        for (std::size_t j = t + 1; j < n; ++j) {
          if (a[i][j] % a[t][t] != 0) {
            for (std::size_t c = t; c < n; ++c) a[t][c] += a[i][c];
            divisible = false;
            break;
          }
        }
      }
      if (divisible) break;
    }
    factors.push_back(abs(a[t][t]));
  }
  return factors;
}

template <typename T>
std::vector<Integer> sparse_snf(const SparseZMatrix& input) {
  SparseRows<T> m;
  m.rows.resize(input.rows);
  m.col_rows.resize(input.cols);
  {
    std::vector<std::vector<std::pair<std::size_t, long>>> tmp(input.rows);
    for (const auto& e : input.entries) {
      if (e.row >= input.rows || e.col >= input.cols) throw InputError("sparse entry out of range");
      if (e.value != 0) tmp[e.row].emplace_back(e.col, e.value);
    }
    for (std::size_t r = 0; r < input.rows; ++r) {
      auto& row = tmp[r];
      std::sort(row.begin(), row.end());
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (!m.rows[r].empty() && m.rows[r].back().first == row[i].first) {
          m.rows[r].back().second += T(row[i].second);
          if (m.rows[r].back().second == 0) m.rows[r].pop_back();
        } else {
          m.rows[r].emplace_back(row[i].first, T(row[i].second));
        }
      }
      for (const auto& [c, v] : m.rows[r]) m.col_rows[c].push_back(r);
    }
  }

  std::vector<bool> row_alive(input.rows, true);
  std::vector<bool> col_alive(input.cols, true);
  std::size_t units = 0;

  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t c = 0; c < input.cols; ++c) {
      if (!col_alive[c]) continue;
      auto& rows_here = m.col_rows[c];
      std::sort(rows_here.begin(), rows_here.end());
      rows_here.erase(std::unique(rows_here.begin(), rows_here.end()), rows_here.end());
      std::size_t best = input.rows;
      std::vector<std::size_t> live;
      for (std::size_t r : rows_here) {
        if (!row_alive[r]) continue;
        const T* v = m.find(r, c);
        if (v == nullptr) continue;
        live.push_back(r);
        if (is_unit(*v) && (best == input.rows || m.rows[r].size() < m.rows[best].size())) {
          best = r;
        }
      }
      rows_here = live;
      if (live.empty()) {
        col_alive[c] = false;
        continue;
      }
      if (best == input.rows) continue;
      const T pivot = *m.find(best, c);
      for (std::size_t r : live) {
        if (r == best) continue;
        T factor = *m.find(r, c);
        if (pivot == -1) factor = -factor;
        subtract_row(m, r, factor, best);
      }
      row_alive[best] = false;
      col_alive[c] = false;
      ++units;
      progress = true;
    }
  }

  std::vector<std::size_t> rows_left;
  std::vector<std::size_t> col_index(input.cols, input.cols);
  std::size_t ncols = 0;
  for (std::size_t r = 0; r < input.rows; ++r) {
    if (!row_alive[r] || m.rows[r].empty()) continue;
    rows_left.push_back(r);
    for (const auto& [c, v] : m.rows[r]) {
      if (col_index[c] == input.cols) col_index[c] = ncols++;
    }
  }
  std::vector<std::vector<Integer>> dense(rows_left.size(), std::vector<Integer>(ncols));
  for (std::size_t i = 0; i < rows_left.size(); ++i) {
    for (const auto& [c, v] : m.rows[rows_left[i]]) dense[i][col_index[c]] = Integer(v);
  }

  std::vector<Integer> factors(units, Integer(1));
  auto rest = dense_snf(std::move(dense));
  factors.insert(factors.end(), rest.begin(), rest.end());
  return factors;
}

void check_divisibility(const std::vector<Integer>& f) {
  for (std::size_t i = 0; i + 1 < f.size(); ++i) {
    if (f[i] <= 0 || f[i + 1] % f[i] != 0) {
      throw ConsistencyError("Smith normal form divisibility chain violated");
    }
  }
}

}  // namespace

std::vector<Integer> smith_normal_form(const SparseZMatrix& m) {
  std::vector<Integer> out;
  try {
    out = sparse_snf<std::int64_t>(m);
  } catch (const Overflow&) {
    out = sparse_snf<Integer>(m);
  }
  check_divisibility(out);
  return out;
}

std::vector<Integer> smith_normal_form(const ZMatrix& m) {
  std::vector<std::vector<Integer>> a(m.rows(), std::vector<Integer>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) a[r][c] = m(r, c);
  }
  auto out = dense_snf(std::move(a));
  check_divisibility(out);
  return out;
}

}  // namespace tvlab
