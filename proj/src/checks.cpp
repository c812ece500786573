#include "entaudit/checks.hpp"

#include <algorithm>
#include <numeric>

#include "entaudit/graph_state.hpp"
#include "entaudit/parallel.hpp"

namespace entaudit {

namespace {

std::vector<unsigned> sample_branch_patterns(std::size_t count, std::mt19937& rng) {
    std::vector<unsigned> all(1u << kNumGates);
    std::iota(all.begin(), all.end(), 0u);
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(std::min(count, all.size()));
    return all;
}

}  // namespace

Prop1Check check_prop1(const GateLayout& layout, std::size_t n_random_tuples,
                       std::size_t n_branch_samples, unsigned seed) {
    const StateGraph graph = layout_to_resource_graph(layout);
    std::mt19937 rng(seed);

    Prop1Check result;
    result.pass = true;
    result.n_branches_each = n_branch_samples;

    const auto check_tuple = [&](const AlphaTuple& alpha, bool exact) {
        ++result.n_tuples;
        const MeasurementPlan plan = MeasurementPlan::for_resource_graph(graph, alpha);
        const Backend backend = exact ? Backend::Exact : Backend::Floating;
        const PureState target = build_target_state(layout, alpha, backend);
        const auto patterns = sample_branch_patterns(n_branch_samples, rng);
        for (unsigned pattern : patterns) {
            const PureState got = mbqc_prepare(graph, plan, pattern, backend);
            if (exact) {
                ++result.n_exact_comparisons;
                if (!same_state_exact(got, target)) result.pass = false;
            } else {
                ++result.n_float_comparisons;
                const double ov = std::abs(overlap(got, target));
                result.min_overlap = std::min(result.min_overlap, ov);
                if (ov < 1.0 - 1e-9) result.pass = false;
            }
        }
    };

    check_tuple(AlphaTuple::zeros(), true);
    check_tuple(AlphaTuple::quarter_pi(), true);

    std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
    for (std::size_t i = 0; i < n_random_tuples; ++i) {
        AlphaTuple alpha;
        for (auto& a : alpha.alphas) a = angle(rng);
        check_tuple(alpha, false);
    }
    return result;
}

Prop3Check check_prop3(const GateLayout& layout) {
    Prop3Check result;
    const ProtocolScript script = derive_phires_script(layout);
    result.n_steps = script.size();
    for (const auto& s : script) {
        if (std::holds_alternative<LocalCZ>(s)) ++result.n_czs;
        if (std::holds_alternative<Send>(s)) ++result.n_sends;
    }

    const Configuration d0 = Configuration::d0();
    const StateGraph graph = layout_to_resource_graph(layout);
    const MeasurementPlan plan_pi4 =
        MeasurementPlan::for_resource_graph(graph, AlphaTuple::quarter_pi());
    const MeasurementPlan plan_zero =
        MeasurementPlan::for_resource_graph(graph, AlphaTuple::zeros());

    // Exact distribution run; any capacity violation throws out of here.
    const RunResult run = run_protocol(script, d0, Backend::Exact);
    const PureState expected = build_graph_state(graph, Backend::Exact);
    result.state_matches_graph =
        same_state_exact(run.state.sorted_by_label(), expected.sorted_by_label());

    // Measuring the distributed copy must land on the circuit outputs.
    const PureState prepared = run.state.sorted_by_label();
    AlphaTuple alternating;  // a mixed member of {0, pi/4}^7
    for (int i = 0; i < kNumGates; ++i)
        alternating.alphas[static_cast<std::size_t>(i)] = (i % 2) ? 0.0 : kQuarterPi;
    const MeasurementPlan plan_alt = MeasurementPlan::for_resource_graph(graph, alternating);
    const PureState via_zero = mbqc_measure_out(graph, prepared, plan_zero, 0u);
    const PureState via_pi4 = mbqc_measure_out(graph, prepared, plan_pi4, 0b1010101u);
    const PureState via_alt = mbqc_measure_out(graph, prepared, plan_alt, 0b0011110u);
    result.chain_exact_ok =
        same_state_exact(via_zero,
                         build_target_state(layout, AlphaTuple::zeros(), Backend::Exact)) &&
        same_state_exact(via_pi4,
                         build_target_state(layout, AlphaTuple::quarter_pi(), Backend::Exact)) &&
        same_state_exact(via_alt, build_target_state(layout, alternating, Backend::Exact));

    // Floating chain with an asymmetric tuple.
    AlphaTuple mixed;
    for (int i = 0; i < kNumGates; ++i)
        mixed.alphas[static_cast<std::size_t>(i)] = 0.3 + 0.5 * static_cast<double>(i);
    const RunResult run_f = run_protocol(script, d0, Backend::Floating);
    const MeasurementPlan plan_mixed = MeasurementPlan::for_resource_graph(graph, mixed);
    const PureState via_mixed =
        mbqc_measure_out(graph, run_f.state.sorted_by_label(), plan_mixed, 0b0110011u);
    const PureState target_mixed = build_target_state(layout, mixed, Backend::Floating);
    result.chain_float_ok = std::abs(overlap(via_mixed, target_mixed)) >= 1.0 - 1e-9;

    result.pass = result.state_matches_graph && result.chain_exact_ok && result.chain_float_ok;
    return result;
}

DynamicCheck check_dynamic(const Configuration& config, const Party& sender,
                           std::size_t n_scripts, unsigned seed) {
    DynamicCheck result;
    result.n_scripts = n_scripts;
    result.bound = config.dim_of(sender) / 2;

    std::vector<std::size_t> ranks(n_scripts, 0);
    parallel_for(n_scripts, [&](std::size_t i) {
        std::seed_seq seq{seed, static_cast<unsigned>(i)};
        std::mt19937 rng(seq);
        const ProtocolScript script = random_valid_script(config, sender, rng);
        ranks[i] = check_last_round_bound(script, config, sender).rank;
    });
    result.max_rank_seen = ranks.empty() ? 0 : *std::max_element(ranks.begin(), ranks.end());

    // Fixed two-party (4,4) cases: an entangling script capped at rank 2 and a
    // product one at rank 1.
    const Configuration two = Configuration::by_name("two44");
    const Party v1{1}, v2{2};
    ProtocolScript entangling{AllocPlus{v1, 0}, AllocPlus{v1, 1}, LocalCZ{v1, 0, 1},
                              LocalXRot{v1, 0, kQuarterPi}, Send{v1, 1, v2, 0}};
    ProtocolScript product{AllocPlus{v1, 0}, AllocPlus{v1, 1}, Send{v1, 1, v2, 0}};
    const LastRoundBound b1 = check_last_round_bound(entangling, two, v1);
    const LastRoundBound b2 = check_last_round_bound(product, two, v1);
    result.two_party_ok = b1.ok && b1.rank == 2 && b2.ok && b2.rank == 1;

    result.pass = result.two_party_ok &&
                  static_cast<long>(result.max_rank_seen) <= result.bound;
    return result;
}

}  // namespace entaudit
