#pragma once

#include <string>
#include <utility>
#include <vector>

#include "entaudit/pure_state.hpp"
#include "entaudit/target_circuit.hpp"

namespace entaudit {

enum class VertexKind { Target, Auxiliary };

struct GraphVertex {
    QubitLabel label;
    VertexKind kind = VertexKind::Target;
};

// A simple graph over labeled qubits. Targets survive the preparation
// protocol; auxiliaries get rotated, measured and corrected away.
struct StateGraph {
    std::vector<GraphVertex> vertices;
    std::vector<std::pair<QubitLabel, QubitLabel>> edges;

    void validate() const;  // simple graph over declared vertices
    // Additionally: every auxiliary has degree exactly 2 with target
    // neighbors, the shape the measurement protocol relies on.
    void validate_for_mbqc() const;

    std::vector<QubitLabel> labels() const;
    std::vector<QubitLabel> targets() const;
    std::vector<QubitLabel> auxiliaries() const;
    std::vector<QubitLabel> neighbors(const QubitLabel& v) const;
    bool has_vertex(const QubitLabel& v) const;
};

StateGraph read_graph_file(const std::string& path);
void write_graph_file(const StateGraph& g, const std::string& path);

// |+> on every vertex, then CZ along every edge.
PureState build_graph_state(const StateGraph& g, Backend backend);

// Defining stabilizer identity at v: X_v (prod_{u in N(v)} Z_u) |G> == |G>,
// checked exactly.
bool check_stabilizer(const StateGraph& g, const QubitLabel& v);

struct MeasurementPlan {
    // (auxiliary, angle) processed in order; outcome 1 triggers Pauli Z on
    // every neighbor of the measured vertex.
    std::vector<std::pair<QubitLabel, double>> steps;

    static MeasurementPlan for_resource_graph(const StateGraph& g, const AlphaTuple& alpha);
    bool exact_capable() const;
};

// Runs the measurement protocol on the graph state: per step, exp(i*alpha*X)
// on the auxiliary, Z measurement, Z corrections on its neighbors for outcome
// 1. `branch_bits` fixes each measurement outcome (bit i = outcome of step i);
// the protocol is deterministic, so every branch yields the same final state.
// Zero-probability branches throw.
PureState mbqc_prepare(const StateGraph& g, const MeasurementPlan& plan, unsigned branch_bits,
                       Backend backend);

// Measurement phase alone, applied to an already prepared copy of the graph
// state (e.g. one distributed by a communication protocol). `prepared` must
// hold exactly the graph's qubits.
PureState mbqc_measure_out(const StateGraph& g, const PureState& prepared,
                           const MeasurementPlan& plan, unsigned branch_bits);

// The 15-qubit resource graph of a seven-gate layout: target qubits (vk, 0)
// for k = 1..8 plus auxiliaries (vi, 1) for i = 1..7, auxiliary i adjacent to
// the two targets of gate i.
StateGraph layout_to_resource_graph(const GateLayout& layout);

}  // namespace entaudit
