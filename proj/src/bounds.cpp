#include "entaudit/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace entaudit {

std::size_t CutAssignment::edge_count(int m) {
    const std::size_t n = static_cast<std::size_t>(2 * m);
    return n * (n - 1) / 2;
}

std::size_t CutAssignment::edge_index(int m, int a, int b) {
    if (a > b) std::swap(a, b);
    const int n = 2 * m;
    // Edges (a, a+1..n-1) come after all edges with smaller first vertex.
    return static_cast<std::size_t>(a * n - a * (a + 1) / 2 + (b - a - 1));
}

void CutAssignment::validate() const {
    if (m < 1) throw std::invalid_argument("m must be >= 1");
    if (d < 2) throw std::invalid_argument("d must be >= 2");
    if (caps.size() != edge_count(m))
        throw std::invalid_argument("assignment must cover every edge of the complete graph");
    for (long c : caps)
        if (c < 1) throw std::invalid_argument("capacities must be >= 1");
}

mpz_class CutAssignment::load_of(int party) const {
    mpz_class load = 1;
    for (int other = 0; other < n_parties(); ++other)
        if (other != party) load *= caps[edge_index(m, party, other)];
    return load;
}

mpz_class CutAssignment::max_load() const {
    mpz_class best = 0;
    for (int p = 0; p < n_parties(); ++p) best = std::max(best, load_of(p));
    return best;
}

namespace {

mpz_class pow_mpz(long base, unsigned long exp) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), exp);
    return r;
}

// Visits each balanced bipartition once by pinning party 0 to the left side.
template <typename Fn>
void for_each_balanced_cut(int m, Fn&& fn) {
    const int n = 2 * m;
    std::vector<int> side{0};
    const std::function<bool(int)> rec = [&](int next) -> bool {
        if (static_cast<int>(side.size()) == m) return fn(side);
        for (int v = next; v < n; ++v) {
            side.push_back(v);
            if (!rec(v + 1)) return false;
            side.pop_back();
        }
        return true;
    };
    rec(1);
}

}  // namespace

CutCheck cut_condition_holds(const CutAssignment& a) {
    a.validate();
    const mpz_class need = pow_mpz(a.d, static_cast<unsigned long>(a.m));
    CutCheck result;
    result.holds = true;
    for_each_balanced_cut(a.m, [&](const std::vector<int>& side) {
        std::vector<bool> left(static_cast<std::size_t>(a.n_parties()), false);
        for (int v : side) left[static_cast<std::size_t>(v)] = true;
        mpz_class prod = 1;
        for (int x = 0; x < a.n_parties(); ++x)
            for (int y = x + 1; y < a.n_parties(); ++y)
                if (left[static_cast<std::size_t>(x)] != left[static_cast<std::size_t>(y)])
                    prod *= a.caps[CutAssignment::edge_index(a.m, x, y)];
        if (prod < need) {
            result.holds = false;
            result.violated_cut = side;
            return false;  // stop at the first (lex-least) violated cut
        }
        return true;
    });
    return result;
}

double local_dim_lower_bound(int m, long d) {
    if (m < 1 || d < 2) throw std::invalid_argument("need m >= 1 and d >= 2");
    return std::pow(static_cast<double>(d), 2.0 - 1.0 / static_cast<double>(m));
}

long ceil_root(long d, int m) {
    if (m < 1 || d < 1) throw std::invalid_argument("need m >= 1 and d >= 1");
    long k = 1;
    for (;;) {
        mpz_class p = pow_mpz(k, static_cast<unsigned long>(m));
        if (p >= d) return k;
        ++k;
    }
}

BruteForceResult brute_force_min_max_load(int m, long d, long cap) {
    if (m < 1 || d < 2 || cap < 1) throw std::invalid_argument("need m >= 1, d >= 2, cap >= 1");
    const std::size_t edges = CutAssignment::edge_count(m);
    const double space = std::pow(static_cast<double>(cap), static_cast<double>(edges));
    if (space > 1e8)
        throw std::invalid_argument(
            "search space exceeds the guard; use the symmetric assignment check instead");

    const mpz_class bound_rhs = pow_mpz(d, static_cast<unsigned long>(2 * m - 1));

    BruteForceResult result;
    result.all_passing_meet_bound = true;
    CutAssignment a;
    a.m = m;
    a.d = d;
    a.caps.assign(edges, 1);

    bool done = false;
    while (!done) {
        ++result.n_searched;
        if (cut_condition_holds(a).holds) {
            ++result.n_passing;
            const mpz_class load = a.max_load();
            mpz_class load_pow;
            mpz_pow_ui(load_pow.get_mpz_t(), load.get_mpz_t(), static_cast<unsigned long>(m));
            if (load_pow < bound_rhs) result.all_passing_meet_bound = false;
            if (result.n_passing == 1 || load < result.min_max_load) {
                result.min_max_load = load;
                result.witness = a;
            }
        }
        // Odometer: the last edge spins fastest, so assignments appear in
        // lexicographic order and ties keep the first (lex-least) witness.
        done = true;
        for (std::size_t i = edges; i-- > 0;) {
            if (a.caps[i] < cap) {
                ++a.caps[i];
                std::fill(a.caps.begin() + static_cast<std::ptrdiff_t>(i) + 1, a.caps.end(), 1);
                done = false;
                break;
            }
        }
    }
    if (result.n_passing == 0)
        throw std::runtime_error("no assignment within the capacity limit satisfies the cuts");
    return result;
}

SymmetricCheck symmetric_assignment_check(int m, long d) {
    if (m < 1 || m > 8 || d < 2 || d > 64)
        throw std::invalid_argument("symmetric check supports m <= 8 and d <= 64");
    SymmetricCheck r;
    r.cap = ceil_root(d, m);
    CutAssignment a;
    a.m = m;
    a.d = d;
    a.caps.assign(CutAssignment::edge_count(m), r.cap);
    r.holds = cut_condition_holds(a).holds;
    mpz_class load;
    mpz_ui_pow_ui(load.get_mpz_t(), static_cast<unsigned long>(r.cap),
                  static_cast<unsigned long>(2 * m - 1));
    r.per_party_load = load;
    r.load_to_bound_ratio = load.get_d() / local_dim_lower_bound(m, d);
    return r;
}

}  // namespace entaudit
