#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "entaudit/pure_state.hpp"

namespace entaudit {

constexpr int kNumParties = 8;
constexpr int kNumGates = 7;

// Connectivity of the seven two-qubit ZZ-phase gates acting on one qubit per
// party v1..v8. The multigraph formed by the pairs must be connected (with
// seven edges on eight vertices that forces a spanning tree).
struct GateLayout {
    std::array<std::pair<int, int>, kNumGates> pairs;  // party ids, 1-based

    void validate() const;  // throws on self-pairs or a disconnected multigraph
    bool is_spanning_tree() const;
    std::string str() const;
};

// The seven gate angles, each in [0, 2*pi).
struct AlphaTuple {
    std::array<double, kNumGates> alphas{};

    static AlphaTuple zeros();
    static AlphaTuple quarter_pi();
    void validate() const;
    bool exact_capable() const;  // every angle in {0, pi/4}
};

// Target qubit of party k (1-based): slot 0.
QubitLabel target_qubit(int party_id);

// psi(alpha) = prod_i exp(i alpha_i Z Z on pairs[i]) |+>^(x8), one qubit per
// party. Exact mode requires every alpha in {0, pi/4}; with all angles pi/4
// the result carries half_power 15 and purely Gaussian-integer entries.
PureState build_target_state(const GateLayout& layout, const AlphaTuple& alpha, Backend backend);

// The connectivity shipped with this repository. Found by
// search_default_layout and frozen; regenerate with the search-layout command.
GateLayout default_layout();

struct LayoutSearchResult {
    GateLayout layout;
    std::size_t trees_enumerated = 0;   // spanning trees visited before the hit
    std::size_t classes_checked = 0;    // isomorphism classes actually decided
};

// Enumerates spanning-tree layouts on v1..v8 in canonical order (sorted edge
// lists, lexicographic) and returns the first whose pi/4 target state defeats
// every one of the 5040 line-tree resource distributions (some prefix cut of
// exact Schmidt rank > 2 for each). Pass/fail depends only on the tree shape
// with v8 marked, so isomorphic candidates are decided once.
LayoutSearchResult search_default_layout();

GateLayout read_layout_file(const std::string& path);
void write_layout_file(const GateLayout& layout, const std::string& path);

}  // namespace entaudit
