#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "entaudit/gauss.hpp"
#include "entaudit/scaled_vector.hpp"

namespace entaudit {

// Numerical rank of a complex matrix: count of singular values above
// rel_threshold * (largest singular value). Used as the floating cross-check
// of the exact elimination; the two paths share no code.
std::size_t float_rank(const std::vector<std::complex<double>>& data, std::size_t rows,
                       std::size_t cols, double rel_threshold = 1e-9);

std::size_t float_rank(const ExactMatrix& m, double rel_threshold = 1e-9);

// Schmidt rank of an amplitude vector via SVD of its reshaped coefficient
// matrix (same bit conventions as reshape_to_matrix).
std::size_t float_schmidt_rank(const std::vector<std::complex<double>>& amps,
                               const std::vector<std::size_t>& left,
                               double rel_threshold = 1e-9);

}  // namespace entaudit
