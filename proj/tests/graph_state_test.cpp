#include <doctest.h>

#include <filesystem>
#include <random>

#include "entaudit/graph_state.hpp"

using namespace entaudit;

namespace {

// The three-vertex example: one auxiliary adjacent to two targets.
StateGraph fig2_graph() {
    StateGraph g;
    g.vertices = {{{Party{1}, 0}, VertexKind::Auxiliary},
                  {{Party{2}, 0}, VertexKind::Target},
                  {{Party{3}, 0}, VertexKind::Target}};
    g.edges = {{{Party{1}, 0}, {Party{2}, 0}}, {{Party{1}, 0}, {Party{3}, 0}}};
    return g;
}

PureState two_qubit_zz(double alpha, Backend backend) {
    const std::vector<QubitLabel> labels{{Party{2}, 0}, {Party{3}, 0}};
    return apply_zz_phase(init_plus(labels, backend), labels[0], labels[1], alpha);
}

}  // namespace

TEST_CASE("graph state construction") {
    StateGraph pair;
    pair.vertices = {{{Party{1}, 0}, VertexKind::Target}, {{Party{2}, 0}, VertexKind::Target}};
    pair.edges = {{{Party{1}, 0}, {Party{2}, 0}}};
    const PureState s = build_graph_state(pair, Backend::Exact);
    CHECK(s.exact().entries ==
          std::vector<GaussInt>{GaussInt(1), GaussInt(1), GaussInt(1), GaussInt(-1)});
    CHECK(s.exact().half_power == 2);

    StateGraph edgeless;
    edgeless.vertices = pair.vertices;
    const PureState p = build_graph_state(edgeless, Backend::Exact);
    for (const auto& e : p.exact().entries) CHECK(e == GaussInt(1));

    StateGraph bad = pair;
    bad.edges.push_back(bad.edges.front());
    CHECK_THROWS_AS(build_graph_state(bad, Backend::Exact), std::invalid_argument);
}

TEST_CASE("stabilizer identity holds at every vertex") {
    const StateGraph fig2 = fig2_graph();
    for (const auto& v : fig2.vertices) CHECK(check_stabilizer(fig2, v.label));

    const StateGraph res = layout_to_resource_graph(default_layout());
    for (const auto& v : res.vertices) CHECK(check_stabilizer(res, v.label));

    // A sign-flipped operator is not a stabilizer: -X_v prod Z_u negates the
    // state instead of fixing it.
    const PureState state = build_graph_state(fig2, Backend::Exact);
    PureState moved = apply_pauli_x(state, {Party{1}, 0});
    for (const auto& u : fig2.neighbors({Party{1}, 0})) moved = apply_pauli_z(moved, u);
    ScaledVector negated = moved.exact();
    for (auto& e : negated.entries) e = -e;
    CHECK_FALSE(equal_states_strict(negated, state.exact()));
}

TEST_CASE("measuring the rotated auxiliary leaves the two-qubit phase state") {
    const StateGraph fig2 = fig2_graph();
    std::mt19937 rng(4);
    std::uniform_real_distribution<double> dist(0.0, 2.0 * kPi);

    // Both branches, 50 random angles, floating backend.
    for (int t = 0; t < 50; ++t) {
        const double alpha = dist(rng);
        MeasurementPlan plan;
        plan.steps = {{{Party{1}, 0}, alpha}};
        const PureState expected = two_qubit_zz(alpha, Backend::Floating);
        for (unsigned branch = 0; branch < 2; ++branch) {
            const PureState got = mbqc_prepare(fig2, plan, branch, Backend::Floating);
            CHECK(std::abs(overlap(got, expected)) >= 1.0 - 1e-9);
        }
    }

    // Exact at pi/4 and 0, phase included.
    for (const double alpha : {0.0, kQuarterPi}) {
        MeasurementPlan plan;
        plan.steps = {{{Party{1}, 0}, alpha}};
        const PureState expected = two_qubit_zz(alpha, Backend::Exact);
        for (unsigned branch = 0; branch < 2; ++branch)
            CHECK(same_state_exact(mbqc_prepare(fig2, plan, branch, Backend::Exact), expected));
    }
}

TEST_CASE("corrections commute past later protocol steps") {
    // Measure the auxiliary of a two-gate chain either correcting eagerly or
    // after the other auxiliary is processed; same final state.
    const GateLayout layout = default_layout();
    const StateGraph res = layout_to_resource_graph(layout);
    const AlphaTuple alpha = AlphaTuple::quarter_pi();
    const MeasurementPlan plan = MeasurementPlan::for_resource_graph(res, alpha);

    // Eager corrections (the library's behavior), outcome pattern 0b11.
    const PureState eager = mbqc_prepare(res, plan, 0b0000011u, Backend::Exact);

    // Deferred: take outcome-1 branches for steps 0 and 1, apply both
    // corrections only after both measurements.
    PureState s = build_graph_state(res, Backend::Exact);
    std::vector<QubitLabel> pending;
    for (std::size_t i = 0; i < plan.steps.size(); ++i) {
        const auto& [aux, angle] = plan.steps[i];
        const auto nb = res.neighbors(aux);
        s = apply_x_rotation(s, aux, angle);
        const MeasureResult r = measure_z(s, aux);
        const bool take_one = i < 2;
        s = take_one ? *r.post1 : *r.post0;
        if (take_one) pending.insert(pending.end(), nb.begin(), nb.end());
        if (i == 3)  // flush mid-protocol, after two further measurements
            for (; !pending.empty(); pending.pop_back()) s = apply_pauli_z(s, pending.back());
    }
    for (; !pending.empty(); pending.pop_back()) s = apply_pauli_z(s, pending.back());
    CHECK(same_state_exact(s, eager));
}

TEST_CASE("plan order does not matter") {
    const StateGraph res = layout_to_resource_graph(default_layout());
    const AlphaTuple alpha = AlphaTuple::quarter_pi();
    const MeasurementPlan plan = MeasurementPlan::for_resource_graph(res, alpha);
    MeasurementPlan reversed;
    reversed.steps.assign(plan.steps.rbegin(), plan.steps.rend());
    const PureState a = mbqc_prepare(res, plan, 0u, Backend::Exact);
    const PureState b = mbqc_prepare(res, reversed, 0u, Backend::Exact);
    CHECK(same_state_exact(a, b));

    MeasurementPlan incomplete = plan;
    incomplete.steps.pop_back();
    CHECK_THROWS_AS(mbqc_prepare(res, incomplete, 0u, Backend::Exact), std::invalid_argument);
}

TEST_CASE("resource graph of a layout") {
    const StateGraph res = layout_to_resource_graph(default_layout());
    CHECK(res.vertices.size() == 15);
    CHECK(res.edges.size() == 14);
    // Auxiliary degree-2 shape and per-party occupancy: v1..v7 hold two
    // qubits, v8 one.
    CHECK_NOTHROW(res.validate_for_mbqc());
    for (int k = 1; k <= 7; ++k) {
        int held = 0;
        for (const auto& v : res.vertices)
            if (v.label.party == Party{k}) ++held;
        CHECK(held == 2);
    }
    int v8_held = 0;
    for (const auto& v : res.vertices)
        if (v.label.party == Party{8}) ++v8_held;
    CHECK(v8_held == 1);

    // Subdividing the edges of a spanning tree keeps it a tree: 15 vertices,
    // 14 edges, connected (every auxiliary bridges its two targets).
    std::size_t reachable = 1;
    std::vector<QubitLabel> stack{res.vertices.front().label};
    std::vector<QubitLabel> seen{res.vertices.front().label};
    while (!stack.empty()) {
        const QubitLabel v = stack.back();
        stack.pop_back();
        for (const auto& u : res.neighbors(v))
            if (std::find(seen.begin(), seen.end(), u) == seen.end()) {
                seen.push_back(u);
                stack.push_back(u);
                ++reachable;
            }
    }
    CHECK(reachable == 15);
}

TEST_CASE("graph files round-trip") {
    const auto path = std::filesystem::temp_directory_path() / "entaudit_graph_test.txt";
    const StateGraph res = layout_to_resource_graph(default_layout());
    write_graph_file(res, path.string());
    const StateGraph back = read_graph_file(path.string());
    CHECK(back.vertices.size() == res.vertices.size());
    CHECK(back.edges.size() == res.edges.size());
    CHECK(same_state_exact(build_graph_state(back, Backend::Exact).sorted_by_label(),
                           build_graph_state(res, Backend::Exact).sorted_by_label()));
    std::filesystem::remove(path);
}
