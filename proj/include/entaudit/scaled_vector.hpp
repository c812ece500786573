#pragma once

#include <cstddef>
#include <vector>

#include "entaudit/gauss.hpp"

namespace entaudit {

// Amplitude vector of an n-qubit state, stored as Gaussian integers with one
// shared scale: the represented vector is entries * 2^(-half_power/2). Every
// gate in the exact set multiplies by a sqrt(2)-rescaled integer matrix and
// bumps half_power, so circuit outputs stay integral throughout.
//
// Basis convention used everywhere in this library: qubit 0 is the most
// significant bit of the amplitude index.
struct ScaledVector {
    std::vector<GaussInt> entries;
    long half_power = 0;

    std::size_t n_qubits() const;
    bool is_zero() const;

    // Squared norm of the raw integer entries (not of the represented state).
    mpz_class raw_norm2() const;
};

// Coefficient matrix of v under the bipartition (left positions | rest).
// Rows are indexed by the left qubits in ascending position order, columns by
// the remaining qubits, both in lexicographic basis order; the global scale is
// irrelevant to rank and is dropped. Throws "degenerate bipartition" if left
// is empty or contains every qubit.
ExactMatrix reshape_to_matrix(const ScaledVector& v, std::vector<std::size_t> left_positions);

// Schmidt rank of the represented state across the bipartition; exact.
std::size_t schmidt_rank_exact(const ScaledVector& v, const std::vector<std::size_t>& left);

// Same, but only decides whether the rank reaches `k` (cheaper).
bool schmidt_rank_at_least(const ScaledVector& v, const std::vector<std::size_t>& left,
                           std::size_t k);

// Structural equality after aligning the scales. When the half_power gap is
// even the smaller-k side is multiplied by 2^(gap/2) and entries are compared;
// an odd gap would require a factor sqrt(2), which no pair of nonzero
// Gaussian-integer vectors can absorb (sqrt(2) is not in Q(i)), so the
// comparison is decided on the doubled vectors: only two zero vectors match.
bool equal_states_strict(const ScaledVector& a, const ScaledVector& b);

// True iff a and b represent the same ray: entries proportional by some
// nonzero complex constant. Decided by cross-multiplication, so scales never
// need aligning.
bool proportional(const ScaledVector& a, const ScaledVector& b);

// True iff the represented states are equal up to a positive real rescaling,
// i.e. same state including its global phase once both sides are normalized.
bool equal_up_to_scale(const ScaledVector& a, const ScaledVector& b);

}  // namespace entaudit
