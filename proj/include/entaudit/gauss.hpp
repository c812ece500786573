#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace entaudit {

// Gaussian integer a + b*i with arbitrary-precision components.
struct GaussInt {
    mpz_class re;
    mpz_class im;

    GaussInt() : re(0), im(0) {}
    GaussInt(long r) : re(r), im(0) {}
    GaussInt(long r, long i) : re(r), im(i) {}
    GaussInt(mpz_class r, mpz_class i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }

    GaussInt conj() const { return {re, -im}; }

    // |z|^2 = re^2 + im^2, always a nonnegative rational integer.
    mpz_class norm() const { return re * re + im * im; }

    friend GaussInt operator+(const GaussInt& a, const GaussInt& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GaussInt operator-(const GaussInt& a, const GaussInt& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend GaussInt operator-(const GaussInt& a) { return {-a.re, -a.im}; }
    friend GaussInt operator*(const GaussInt& a, const GaussInt& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend bool operator==(const GaussInt& a, const GaussInt& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussInt& a, const GaussInt& b) { return !(a == b); }

    std::string str() const;
};

// Exact quotient a / b in Z[i]; throws if b is zero or does not divide a.
GaussInt div_exact(const GaussInt& a, const GaussInt& b);

// Dense row-major matrix over Z[i].
struct ExactMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<GaussInt> data;

    ExactMatrix() = default;
    ExactMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}

    GaussInt& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    const GaussInt& at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

    ExactMatrix transposed() const;
};

// Rank over the fraction field Q(i), computed by fraction-free (Bareiss)
// elimination with full pivoting; every intermediate division is exact in
// Z[i], so no rounding enters anywhere.
std::size_t rank_exact(const ExactMatrix& m);

// True iff rank_exact(m) >= k; stops eliminating as soon as k pivots are found.
bool rank_at_least(const ExactMatrix& m, std::size_t k);

}  // namespace entaudit
