#include "pdlwb/linear.hpp"

#include <utility>

namespace pdlwb {

std::optional<Matrix> inverse(const Matrix& a) {
  const std::size_t n = a.size();
  Matrix work = a;
  Matrix inv = identity_matrix(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && sgn(work[pivot][col]) == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(work[pivot], work[col]);
    std::swap(inv[pivot], inv[col]);
    const Rational scale = 1 / work[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      work[col][j] *= scale;
      inv[col][j] *= scale;
    }
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || sgn(work[row][col]) == 0) continue;
      const Rational factor = work[row][col];
      for (std::size_t j = 0; j < n; ++j) {
        if (sgn(work[col][j]) != 0) work[row][j] -= factor * work[col][j];
        if (sgn(inv[col][j]) != 0) inv[row][j] -= factor * inv[col][j];
      }
    }
  }
  return inv;
}

std::optional<Matrix> m_matrix_inverse(const Matrix& b) {
  const std::size_t n = b.size();
  Matrix m = identity_matrix(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] -= b[i][j];
  }
  auto inv = inverse(m);
  if (!inv) return std::nullopt;
  for (const auto& row : *inv) {
    for (const auto& x : row) {
      if (sgn(x) < 0) return std::nullopt;
    }
  }
  return inv;
}

}  // namespace pdlwb
