#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "entaudit/pure_state.hpp"
#include "entaudit/target_circuit.hpp"

namespace entaudit {

// Per-party local dimension budget.
struct Configuration {
    std::map<Party, long> dims;

    static Configuration d0();  // (4,4,4,4,4,4,4,2) for v1..v8
    static Configuration d1();  // (4,2,2,2) for v1..v4
    static Configuration by_name(const std::string& name);  // "d0", "d1", "two44"

    long dim_of(const Party& p) const;
    // Qubit slots a party can hold; dims must be powers of two.
    int slots_of(const Party& p) const;
    void validate() const;
};

Configuration read_config_file(const std::string& path);

// A bipartite-entanglement distribution: each edge carries a maximally
// entangled state of Schmidt rank cap (>= 2).
struct CapEdge {
    Party a, b;
    long cap = 2;
};

struct ResourceGraph {
    std::vector<Party> parties;
    std::vector<CapEdge> edges;  // kept sorted by (min, max) endpoint ids

    bool is_connected() const;
    bool is_tree() const;
    // prod of caps over edges at p (1 when isolated).
    mpz_class load_of(const Party& p) const;
    bool fits(const Configuration& config) const;
    std::string str() const;
};

ResourceGraph read_resource_graph_file(const std::string& path);

// Eq-style feasibility of preparing `target` (one qubit per party) from
// maximally entangled pairs along an acyclic distribution: every edge capacity
// must reach the target's Schmidt rank across the bipartition the edge induces.
struct EdgeFeasibility {
    CapEdge edge;
    std::size_t required_rank = 0;  // R_e of the target
    bool ok = false;
};

struct TreeFeasibilityReport {
    bool feasible = false;
    std::vector<EdgeFeasibility> edges;
};

// Throws if the distribution has a cycle: the rank condition characterizes
// feasibility for tree distributions only.
TreeFeasibilityReport tree_feasible(const ResourceGraph& tree, const PureState& target);

// All connected distributions (caps >= 2) whose per-party load stays within
// the configuration, deduplicated by sorted edge list. Guarded to <= 10
// parties.
std::vector<ResourceGraph> enumerate_admissible_distributions(const Configuration& config);

// One line-topology resource tree u1-u2-...-u7-v8 and the outcome of checking
// the pi/4 target against it.
struct LineTreeRecord {
    std::array<int, kNumGates> order{};   // permutation of 1..7
    std::array<std::size_t, kNumGates> prefix_ranks{};
    std::size_t max_rank = 0;
    int witness_prefix = 0;  // 1-based prefix length of the first rank > 2 cut, 0 if none
    bool violated = false;   // true when some cut exceeds capacity 2
};

struct Prop2Report {
    GateLayout layout;
    bool pass = false;  // every line tree has a violated cut
    std::size_t n_trees = 0;
    std::size_t n_violated = 0;
    std::vector<LineTreeRecord> records;  // ordered by lexicographic permutation
    // Exact rank per party subset of {v1..v7} (bitmask index, bit k-1 = vk);
    // filled for every nonempty mask.
    std::vector<std::size_t> subset_ranks;
};

// Builds the pi/4 target exactly and checks all 5040 permutations; `alpha`
// can be overridden (the all-zero tuple makes every tree feasible, a useful
// sanity inversion). Deterministic output, parallel-safe.
Prop2Report verify_prop2(const GateLayout& layout,
                         const AlphaTuple& alpha = AlphaTuple::quarter_pi());

// Decision-only variant used by the layout search: stops at the first
// permutation with no rank>2 prefix cut. Ranks are only resolved up to 3.
bool prop2_holds(const GateLayout& layout);

// Introduction warm-up: GHZ3 and W from the two-Bell-pair line, plus the
// impossibility of any connected distribution under dims (2,2,2).
struct WarmupReport {
    TreeFeasibilityReport ghz;
    TreeFeasibilityReport w;
    std::size_t n_distributions_222 = 0;
    bool pass = false;
};

WarmupReport ghz_w_warmup();

}  // namespace entaudit
