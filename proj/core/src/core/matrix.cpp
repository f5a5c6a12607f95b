#include "tvlab/core/matrix.hpp"

#include "tvlab/core/error.hpp"

namespace tvlab {

QMatrix::QMatrix(std::size_t rows, std::size_t cols, Field field)
    : rows_(rows), cols_(cols), field_(field), data_(rows * cols) {}

QMatrix::QMatrix(std::initializer_list<std::initializer_list<FieldScalar>> rows, Field field)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()), field_(field) {
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw InputError("ragged matrix literal");
    for (const auto& v : row) {
      if (field_ == Field::Real && !v.is_real()) {
        throw InputError("complex entry in a real matrix");
      }
      data_.push_back(v);
    }
  }
}

QMatrix QMatrix::from_columns(std::span<const Vector> columns, std::size_t rows, Field field) {
  QMatrix m(rows, columns.size(), field);
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows) throw InputError("column length mismatch");
    for (std::size_t r = 0; r < rows; ++r) m.set(r, c, columns[c][r]);
  }
  return m;
}

QMatrix QMatrix::identity(std::size_t n, Field field) {
  QMatrix m(n, n, field);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

void QMatrix::set(std::size_t r, std::size_t c, FieldScalar v) {
  if (field_ == Field::Real && !v.is_real()) throw InputError("complex entry in a real matrix");
  data_[r * cols_ + c] = std::move(v);
}

Vector QMatrix::column(std::size_t c) const {
  Vector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

Vector QMatrix::apply(std::span<const FieldScalar> v) const {
  if (v.size() != cols_) throw InputError("matrix-vector size mismatch");
  Vector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    FieldScalar acc;
    for (std::size_t c = 0; c < cols_; ++c) {
      if (!v[c].is_zero()) acc += (*this)(r, c) * v[c];
    }
    out[r] = std::move(acc);
  }
  return out;
}

ZMatrix::ZMatrix(std::initializer_list<std::initializer_list<long>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw InputError("ragged matrix literal");
    for (long v : row) data_.emplace_back(v);
  }
}

ZMatrix SparseZMatrix::to_dense() const {
  ZMatrix m(rows, cols);
  for (const auto& e : entries) m(e.row, e.col) += e.value;
  return m;
}

}  // namespace tvlab
