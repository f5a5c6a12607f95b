#pragma once

#include <vector>

#include "tvlab/core/matrix.hpp"

namespace tvlab {

/// Reduced row echelon form computed natively over the matrix field.
struct RowEchelon {
  QMatrix reduced;
  std::vector<std::size_t> pivot_columns;
};

RowEchelon row_echelon(const QMatrix& m);

std::size_t rank(const QMatrix& m);

/// Basis of the right null space {v : m v = 0}, one vector per free column of
/// the reduced echelon form. Empty when m has full column rank.
std::vector<Vector> kernel_basis(const QMatrix& m);

/// Nonzero invariant factors d_1 | d_2 | ... | d_k of m, k = rank(m), all > 0.
std::vector<Integer> smith_normal_form(const ZMatrix& m);
std::vector<Integer> smith_normal_form(const SparseZMatrix& m);

}  // namespace tvlab
