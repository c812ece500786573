#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

namespace entaudit {

// Capacities of maximally entangled pairs on the complete graph over 2m
// parties of local qudit size d. Edges are in lexicographic order over
// (a, b), 0 <= a < b < 2m; capacity 1 means no entanglement on that edge.
struct CutAssignment {
    int m = 1;
    long d = 2;
    std::vector<long> caps;

    static std::size_t edge_count(int m);
    static std::size_t edge_index(int m, int a, int b);

    void validate() const;
    int n_parties() const { return 2 * m; }
    mpz_class load_of(int party) const;      // prod of caps at the party
    mpz_class max_load() const;
};

struct CutCheck {
    bool holds = false;
    // Smallest-lex m-subset (containing party 0) whose crossing product falls
    // short, when the condition fails.
    std::optional<std::vector<int>> violated_cut;
};

// For every balanced bipartition of the 2m parties, the product of crossing
// capacities must reach d^m. Exact big-integer comparison.
CutCheck cut_condition_holds(const CutAssignment& a);

// d^(2 - 1/m): the least possible largest local dimension for any assignment
// satisfying the cut condition.
double local_dim_lower_bound(int m, long d);

// Smallest integer k with k^m >= d, by pure integer search.
long ceil_root(long d, int m);

struct BruteForceResult {
    mpz_class min_max_load;           // over assignments passing the cut condition
    CutAssignment witness;            // lexicographically first achiever
    std::size_t n_passing = 0;
    std::size_t n_searched = 0;
    bool all_passing_meet_bound = false;  // max_load^m >= d^(2m-1) for every pass
};

// Exhausts caps in [1, cap]^edges; guarded to cap^edges <= 1e8.
BruteForceResult brute_force_min_max_load(int m, long d, long cap);

struct SymmetricCheck {
    long cap = 0;              // ceil(d^(1/m))
    mpz_class per_party_load;  // cap^(2m-1)
    bool holds = false;
    double load_to_bound_ratio = 0.0;
};

// The uniform assignment with every capacity ceil(d^(1/m)); nearly saturates
// the lower bound.
SymmetricCheck symmetric_assignment_check(int m, long d);

}  // namespace entaudit
