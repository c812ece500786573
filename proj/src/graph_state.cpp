#include "entaudit/graph_state.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace entaudit {

void StateGraph::validate() const {
    std::set<QubitLabel> seen;
    for (const auto& v : vertices)
        if (!seen.insert(v.label).second)
            throw std::invalid_argument("duplicate vertex " + v.label.name());
    std::set<std::pair<QubitLabel, QubitLabel>> edge_set;
    for (const auto& [a, b] : edges) {
        if (a == b) throw std::invalid_argument("self-loop at " + a.name());
        if (!seen.count(a) || !seen.count(b))
            throw std::invalid_argument("edge endpoint not declared as a vertex");
        auto key = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
        if (!edge_set.insert(key).second)
            throw std::invalid_argument("repeated edge " + a.name() + "-" + b.name());
    }
}

void StateGraph::validate_for_mbqc() const {
    validate();
    for (const auto& v : vertices) {
        if (v.kind != VertexKind::Auxiliary) continue;
        const auto nb = neighbors(v.label);
        if (nb.size() != 2)
            throw std::invalid_argument("auxiliary " + v.label.name() +
                                        " must have degree exactly 2");
        for (const auto& u : nb)
            for (const auto& w : vertices)
                if (w.label == u && w.kind != VertexKind::Target)
                    throw std::invalid_argument("auxiliary " + v.label.name() +
                                                " must neighbor targets only");
    }
}

std::vector<QubitLabel> StateGraph::labels() const {
    std::vector<QubitLabel> out;
    for (const auto& v : vertices) out.push_back(v.label);
    return out;
}

std::vector<QubitLabel> StateGraph::targets() const {
    std::vector<QubitLabel> out;
    for (const auto& v : vertices)
        if (v.kind == VertexKind::Target) out.push_back(v.label);
    return out;
}

std::vector<QubitLabel> StateGraph::auxiliaries() const {
    std::vector<QubitLabel> out;
    for (const auto& v : vertices)
        if (v.kind == VertexKind::Auxiliary) out.push_back(v.label);
    return out;
}

std::vector<QubitLabel> StateGraph::neighbors(const QubitLabel& v) const {
    std::vector<QubitLabel> out;
    for (const auto& [a, b] : edges) {
        if (a == v) out.push_back(b);
        if (b == v) out.push_back(a);
    }
    return out;
}

bool StateGraph::has_vertex(const QubitLabel& v) const {
    return std::any_of(vertices.begin(), vertices.end(),
                       [&](const GraphVertex& g) { return g.label == v; });
}

StateGraph read_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path + ": cannot open graph file");
    StateGraph g;
    std::string line;
    int lineno = 0;
    bool have_targets = false, have_aux = false;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;
        try {
            if (first == "targets:") {
                std::string tok;
                while (ls >> tok) g.vertices.push_back({parse_qubit_label(tok), VertexKind::Target});
                have_targets = true;
            } else if (first == "aux:") {
                std::string tok;
                while (ls >> tok)
                    g.vertices.push_back({parse_qubit_label(tok), VertexKind::Auxiliary});
                have_aux = true;
            } else {
                std::string second;
                if (!(ls >> second))
                    throw std::invalid_argument("expected an edge '<qubit> <qubit>'");
                g.edges.emplace_back(parse_qubit_label(first), parse_qubit_label(second));
            }
        } catch (const std::invalid_argument& e) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    if (!have_targets || !have_aux)
        throw std::runtime_error(path + ": missing 'targets:' or 'aux:' line");
    g.validate();
    return g;
}

void write_graph_file(const StateGraph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error(path + ": cannot write graph file");
    out << "targets:";
    for (const auto& v : g.targets()) out << " " << v.name();
    out << "\naux:";
    for (const auto& v : g.auxiliaries()) out << " " << v.name();
    out << "\n";
    for (const auto& [a, b] : g.edges) out << a.name() << " " << b.name() << "\n";
}

PureState build_graph_state(const StateGraph& g, Backend backend) {
    g.validate();
    PureState s = init_plus(g.labels(), backend);
    for (const auto& [a, b] : g.edges) s = apply_cz(s, a, b);
    return s;
}

bool check_stabilizer(const StateGraph& g, const QubitLabel& v) {
    if (!g.has_vertex(v)) throw std::invalid_argument("no vertex " + v.name());
    const PureState state = build_graph_state(g, Backend::Exact);
    PureState moved = apply_pauli_x(state, v);
    for (const auto& u : g.neighbors(v)) moved = apply_pauli_z(moved, u);
    return equal_states_strict(moved.exact(), state.exact());
}

MeasurementPlan MeasurementPlan::for_resource_graph(const StateGraph& g,
                                                    const AlphaTuple& alpha) {
    MeasurementPlan plan;
    const auto aux = g.auxiliaries();
    if (aux.size() != static_cast<std::size_t>(kNumGates))
        throw std::invalid_argument("resource graph must carry exactly seven auxiliaries");
    for (int i = 0; i < kNumGates; ++i)
        plan.steps.emplace_back(aux[static_cast<std::size_t>(i)], alpha.alphas[i]);
    return plan;
}

bool MeasurementPlan::exact_capable() const {
    return std::all_of(steps.begin(), steps.end(), [](const auto& s) {
        return s.second == 0.0 || s.second == kQuarterPi;
    });
}

PureState mbqc_measure_out(const StateGraph& g, const PureState& prepared,
                           const MeasurementPlan& plan, unsigned branch_bits) {
    g.validate_for_mbqc();
    {
        std::set<QubitLabel> planned;
        for (const auto& [label, _] : plan.steps) planned.insert(label);
        for (const auto& a : g.auxiliaries())
            if (!planned.count(a))
                throw std::invalid_argument("plan omits auxiliary " + a.name());
        if (planned.size() != plan.steps.size() || planned.size() != g.auxiliaries().size())
            throw std::invalid_argument("plan must measure each auxiliary exactly once");
    }
    if (prepared.n_qubits() != g.vertices.size())
        throw std::invalid_argument("prepared state does not match the graph's qubits");

    PureState s = prepared;
    for (std::size_t i = 0; i < plan.steps.size(); ++i) {
        const auto& [aux, angle] = plan.steps[i];
        const auto nb = g.neighbors(aux);
        s = apply_x_rotation(s, aux, angle);
        const MeasureResult r = measure_z(s, aux);
        const bool take_one = (branch_bits >> i) & 1u;
        const auto& branch = take_one ? r.post1 : r.post0;
        if (!branch)
            throw std::runtime_error("requested measurement branch has probability zero");
        s = *branch;
        if (take_one)
            for (const auto& u : nb) s = apply_pauli_z(s, u);
    }
    return s;
}

PureState mbqc_prepare(const StateGraph& g, const MeasurementPlan& plan, unsigned branch_bits,
                       Backend backend) {
    return mbqc_measure_out(g, build_graph_state(g, backend), plan, branch_bits);
}

StateGraph layout_to_resource_graph(const GateLayout& layout) {
    layout.validate();
    StateGraph g;
    for (int k = 1; k <= kNumParties; ++k)
        g.vertices.push_back({{Party{k}, 0}, VertexKind::Target});
    for (int i = 1; i <= kNumGates; ++i)
        g.vertices.push_back({{Party{i}, 1}, VertexKind::Auxiliary});
    for (int i = 0; i < kNumGates; ++i) {
        const QubitLabel aux{Party{i + 1}, 1};
        g.edges.emplace_back(aux, QubitLabel{Party{layout.pairs[i].first}, 0});
        g.edges.emplace_back(aux, QubitLabel{Party{layout.pairs[i].second}, 0});
    }
    g.validate();
    return g;
}

}  // namespace entaudit
