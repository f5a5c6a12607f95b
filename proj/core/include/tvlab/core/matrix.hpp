#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "tvlab/core/scalar.hpp"

namespace tvlab {

using Vector = std::vector<FieldScalar>;
using RealVector = std::vector<Rational>;

/// Dense row-major matrix over Q or Q[i].
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols, Field field = Field::Real);
  QMatrix(std::initializer_list<std::initializer_list<FieldScalar>> rows,
          Field field = Field::Real);

  /// Builds a matrix whose columns are the given vectors (all of length `rows`).
  static QMatrix from_columns(std::span<const Vector> columns, std::size_t rows, Field field);
  static QMatrix identity(std::size_t n, Field field = Field::Real);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Field field() const { return field_; }

  const FieldScalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, FieldScalar v);

  Vector column(std::size_t c) const;
  Vector apply(std::span<const FieldScalar> v) const;

  friend bool operator==(const QMatrix&, const QMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Field field_ = Field::Real;
  std::vector<FieldScalar> data_;
};

/// Dense integer matrix; the input type of smith_normal_form.
class ZMatrix {
 public:
  ZMatrix() = default;
  ZMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  ZMatrix(std::initializer_list<std::initializer_list<long>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  friend bool operator==(const ZMatrix&, const ZMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// Integer matrix in coordinate form, used for boundary maps. Entries with the
/// same (row, col) are not merged; callers insert each position once.
struct SparseZMatrix {
  struct Entry {
    std::size_t row;
    std::size_t col;
    long value;
  };
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Entry> entries;

  ZMatrix to_dense() const;
};

}  // namespace tvlab
