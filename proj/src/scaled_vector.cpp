#include "entaudit/scaled_vector.hpp"

#include <algorithm>
#include <bit>

namespace entaudit {

std::size_t ScaledVector::n_qubits() const {
    const std::size_t len = entries.size();
    if (len == 0 || (len & (len - 1)) != 0)
        throw std::logic_error("entry count is not a power of two");
    return static_cast<std::size_t>(std::countr_zero(len));
}

bool ScaledVector::is_zero() const {
    for (const auto& e : entries)
        if (!e.is_zero()) return false;
    return true;
}

mpz_class ScaledVector::raw_norm2() const {
    mpz_class s = 0;
    for (const auto& e : entries) s += e.norm();
    return s;
}

ExactMatrix reshape_to_matrix(const ScaledVector& v, std::vector<std::size_t> left) {
    const std::size_t n = v.n_qubits();
    std::sort(left.begin(), left.end());
    left.erase(std::unique(left.begin(), left.end()), left.end());
    if (left.empty() || left.size() >= n)
        throw std::invalid_argument("degenerate bipartition");
    for (std::size_t q : left)
        if (q >= n) throw std::invalid_argument("qubit position out of range");

    std::vector<std::size_t> right;
    for (std::size_t q = 0; q < n; ++q)
        if (!std::binary_search(left.begin(), left.end(), q)) right.push_back(q);

    ExactMatrix m(std::size_t{1} << left.size(), std::size_t{1} << right.size());
    for (std::size_t x = 0; x < v.entries.size(); ++x) {
        std::size_t r = 0, c = 0;
        for (std::size_t q : left) r = (r << 1) | ((x >> (n - 1 - q)) & 1);
        for (std::size_t q : right) c = (c << 1) | ((x >> (n - 1 - q)) & 1);
        m.at(r, c) = v.entries[x];
    }
    return m;
}

std::size_t schmidt_rank_exact(const ScaledVector& v, const std::vector<std::size_t>& left) {
    if (v.is_zero()) throw std::invalid_argument("schmidt rank of the zero vector");
    return rank_exact(reshape_to_matrix(v, left));
}

bool schmidt_rank_at_least(const ScaledVector& v, const std::vector<std::size_t>& left,
                           std::size_t k) {
    if (v.is_zero()) throw std::invalid_argument("schmidt rank of the zero vector");
    return rank_at_least(reshape_to_matrix(v, left), k);
}

bool equal_states_strict(const ScaledVector& a, const ScaledVector& b) {
    if (a.entries.size() != b.entries.size()) return false;
    if (a.is_zero() && b.is_zero()) return true;
    const long gap = b.half_power - a.half_power;
    if (gap % 2 != 0) return false;  // sqrt(2) misalignment, nonzero sides can't match
    mpz_class scale_a = 1, scale_b = 1;
    if (gap > 0)
        mpz_mul_2exp(scale_a.get_mpz_t(), scale_a.get_mpz_t(), static_cast<unsigned long>(gap / 2));
    else if (gap < 0)
        mpz_mul_2exp(scale_b.get_mpz_t(), scale_b.get_mpz_t(), static_cast<unsigned long>(-gap / 2));
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
        if (a.entries[i].re * scale_a != b.entries[i].re * scale_b) return false;
        if (a.entries[i].im * scale_a != b.entries[i].im * scale_b) return false;
    }
    return true;
}

bool proportional(const ScaledVector& a, const ScaledVector& b) {
    if (a.entries.size() != b.entries.size()) return false;
    std::size_t p = a.entries.size();
    for (std::size_t i = 0; i < a.entries.size(); ++i)
        if (!a.entries[i].is_zero()) {
            p = i;
            break;
        }
    if (p == a.entries.size()) return b.is_zero();
    if (b.entries[p].is_zero()) return false;
    // a[p]*b[i] == b[p]*a[i] for all i.
    for (std::size_t i = 0; i < a.entries.size(); ++i)
        if (a.entries[p] * b.entries[i] != b.entries[p] * a.entries[i]) return false;
    return true;
}

bool equal_up_to_scale(const ScaledVector& a, const ScaledVector& b) {
    if (!proportional(a, b)) return false;
    if (a.is_zero()) return true;
    std::size_t p = 0;
    while (a.entries[p].is_zero()) ++p;
    // Proportionality constant c = b[p]/a[p] must be a positive real, i.e.
    // b[p] * conj(a[p]) lies on the positive real axis.
    const GaussInt w = b.entries[p] * a.entries[p].conj();
    return sgn(w.im) == 0 && sgn(w.re) > 0;
}

}  // namespace entaudit
