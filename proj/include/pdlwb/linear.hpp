#pragma once

#include <optional>

#include "pdlwb/model.hpp"

namespace pdlwb {

/// Exact inverse by Gauss-Jordan elimination; nullopt when a is singular.
std::optional<Matrix> inverse(const Matrix& a);

/// For nonnegative b: spectral radius < 1 iff I - b is nonsingular with an
/// entrywise nonnegative inverse. Returns that inverse, or nullopt.
std::optional<Matrix> m_matrix_inverse(const Matrix& b);

}  // namespace pdlwb
