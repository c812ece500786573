#include "entaudit/gauss.hpp"

namespace entaudit {

std::string GaussInt::str() const {
    std::string s = re.get_str();
    if (sgn(im) >= 0) s += "+";
    s += im.get_str() + "i";
    return s;
}

GaussInt div_exact(const GaussInt& a, const GaussInt& b) {
    if (b.is_zero()) throw std::invalid_argument("gaussian division by zero");
    // a/b = a * conj(b) / |b|^2; both component divisions must be exact.
    const mpz_class n = b.norm();
    const GaussInt p = a * b.conj();
    mpz_class qr, rr, qi, ri;
    mpz_tdiv_qr(qr.get_mpz_t(), rr.get_mpz_t(), p.re.get_mpz_t(), n.get_mpz_t());
    mpz_tdiv_qr(qi.get_mpz_t(), ri.get_mpz_t(), p.im.get_mpz_t(), n.get_mpz_t());
    if (sgn(rr) != 0 || sgn(ri) != 0)
        throw std::logic_error("inexact gaussian division");
    return {qr, qi};
}

ExactMatrix ExactMatrix::transposed() const {
    ExactMatrix t(cols, rows);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) t.at(c, r) = at(r, c);
    return t;
}

namespace {

// Bareiss elimination with row and column swaps so that the pivot block stays
// in the leading position. Divisions by the previous pivot are exact by
// Sylvester's determinant identity, which holds over any integral domain.
// Returns the number of pivots found, stopping early once max_pivots is hit.
std::size_t bareiss_pivots(ExactMatrix w, std::size_t max_pivots) {
    const std::size_t n = w.rows, m = w.cols;
    GaussInt prev(1);
    std::size_t k = 0;
    while (k < n && k < m && k < max_pivots) {
        // First nonzero of the trailing block in column order.
        std::size_t pr = n, pc = m;
        for (std::size_t c = k; c < m && pc == m; ++c)
            for (std::size_t r = k; r < n; ++r)
                if (!w.at(r, c).is_zero()) {
                    pr = r;
                    pc = c;
                    break;
                }
        if (pc == m) break;
        if (pr != k)
            for (std::size_t c = 0; c < m; ++c) std::swap(w.at(k, c), w.at(pr, c));
        if (pc != k)
            for (std::size_t r = 0; r < n; ++r) std::swap(w.at(r, k), w.at(r, pc));

        const GaussInt pivot = w.at(k, k);
        for (std::size_t r = k + 1; r < n; ++r) {
            for (std::size_t c = k + 1; c < m; ++c) {
                GaussInt num = pivot * w.at(r, c) - w.at(r, k) * w.at(k, c);
                w.at(r, c) = div_exact(num, prev);
            }
            w.at(r, k) = GaussInt(0);
        }
        prev = pivot;
        ++k;
    }
    return k;
}

}  // namespace

std::size_t rank_exact(const ExactMatrix& m) {
    if (m.rows == 0 || m.cols == 0) return 0;
    // Eliminating the short side is cheaper; rank is transpose-invariant.
    if (m.rows > m.cols) return bareiss_pivots(m.transposed(), m.cols);
    return bareiss_pivots(m, m.rows);
}

bool rank_at_least(const ExactMatrix& m, std::size_t k) {
    if (k == 0) return true;
    if (m.rows == 0 || m.cols == 0) return false;
    if (k > m.rows || k > m.cols) return false;
    if (m.rows > m.cols) return bareiss_pivots(m.transposed(), k) >= k;
    return bareiss_pivots(m, k) >= k;
}

}  // namespace entaudit
