#pragma once

#include <map>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "entaudit/feasibility.hpp"
#include "entaudit/pure_state.hpp"
#include "entaudit/target_circuit.hpp"

namespace entaudit {

// One step of a communication-round protocol. Local gates touch a single
// party's slots; Send is one round of quantum communication (the source slot
// is reset afterwards and may be reused).
struct AllocPlus {
    Party party;
    int slot = 0;
};
struct LocalCZ {
    Party party;
    int slot_a = 0, slot_b = 0;
};
struct LocalXRot {
    Party party;
    int slot = 0;
    double alpha = 0.0;
};
struct LocalPauli {
    Party party;
    int slot = 0;
    char axis = 'z';  // 'x' or 'z'
};
struct MeasureCorrect {
    Party party;
    int slot = 0;
    std::vector<QubitLabel> corrections;  // Z on these when the outcome is 1
};
struct Send {
    Party from;
    int from_slot = 0;
    Party to;
    int to_slot = 0;
};

using ProtocolStep = std::variant<AllocPlus, LocalCZ, LocalXRot, LocalPauli, MeasureCorrect, Send>;
using ProtocolScript = std::vector<ProtocolStep>;

std::string step_text(const ProtocolStep& step);
ProtocolScript read_script_file(const std::string& path);
void write_script_file(const ProtocolScript& script, const std::string& path);

bool script_exact_capable(const ProtocolScript& script);

struct TraceEntry {
    std::size_t step_index = 0;
    std::string text;
    std::map<Party, int> occupancy;  // after the step
    std::optional<int> outcome;      // measurement steps
    // After each Send: Schmidt rank across {party} vs rest, 1 when the party
    // holds no qubit (or all of them).
    std::map<Party, std::size_t> party_ranks;
};

struct RunResult {
    PureState state;
    std::vector<TraceEntry> trace;
    std::size_t n_sends = 0;
};

// Simulates the script on a global state, re-validating slot occupancy
// against the configuration at every step. Throws std::runtime_error naming
// the step and party on any violation.
RunResult run_protocol(const ProtocolScript& script, const Configuration& config,
                       std::optional<Backend> backend = std::nullopt);

// Emits a script preparing the 15-qubit resource graph state of `layout`
// within the d0 budgets (two live qubits at v1..v7, one at v8). The layout
// must be a spanning tree with gate i acting on party v_i, which every
// canonically indexed tree satisfies; the tree is rooted at v8 and grown
// outward, each target visiting its children's freshly allocated auxiliaries
// before settling. Validity is certified by run_protocol, not assumed.
ProtocolScript derive_phires_script(const GateLayout& layout);

struct LastRoundBound {
    std::size_t rank = 0;
    long bound = 0;
    bool ok = false;
};

// Runs the script and checks the final Schmidt rank across cut_party against
// dims[cut_party] / 2 (at least one qubit just left, so at most half the
// dimension remains). The script must end with a Send from cut_party.
LastRoundBound check_last_round_bound(const ProtocolScript& script, const Configuration& config,
                                      const Party& cut_party);

// Seeded generator of valid scripts under `config` that end with a Send from
// `final_sender`; gates stay in the exact set so ranks are certified exactly.
ProtocolScript random_valid_script(const Configuration& config, const Party& final_sender,
                                   std::mt19937& rng, std::size_t max_steps = 40);

}  // namespace entaudit
