// Acceptance suite: one line per criterion, nonzero exit when any fails.
// Run directly or through ctest (registered as test name "acceptance").

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>

#include "entaudit/bounds.hpp"
#include "entaudit/checks.hpp"
#include "entaudit/feasibility.hpp"
#include "entaudit/float_rank.hpp"
#include "entaudit/graph_state.hpp"
#include "entaudit/parallel.hpp"
#include "entaudit/protocol.hpp"
#include "entaudit/report.hpp"
#include "entaudit/target_circuit.hpp"

using namespace entaudit;

namespace {

int failures = 0;

void criterion(int number, const std::string& name, const std::function<bool()>& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    std::string error;
    try {
        ok = fn();
    } catch (const std::exception& e) {
        error = e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << number << ": " << name << " ("
              << secs << " s)";
    if (!error.empty()) std::cout << " — " << error;
    std::cout << std::endl;
    if (!ok) ++failures;
}

bool require(bool cond, const char* what) {
    if (!cond) throw std::runtime_error(what);
    return true;
}

}  // namespace

int main() {
    const GateLayout layout = default_layout();

    // Shared by criteria 1 and 2.
    Prop2Report prop2;

    criterion(1, "every line-topology pair distribution is defeated (5040 trees, exact)", [&] {
        const auto t0 = std::chrono::steady_clock::now();
        prop2 = verify_prop2(layout);
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        require(prop2.n_trees == 5040, "expected 5040 line trees");
        require(prop2.n_violated == 5040, "some tree had no rank>2 prefix cut");
        for (const auto& rec : prop2.records) {
            require(rec.violated && rec.witness_prefix >= 1, "missing witness cut");
            require(rec.prefix_ranks[rec.witness_prefix - 1] >= 3, "witness rank below 3");
        }
        require(secs < 120.0, "exceeded the two-minute budget");
        return prop2.pass;
    });

    criterion(2, "rescaled pi/4 state is integral at half_power 15; ranks match SVD", [&] {
        const PureState psi = build_target_state(layout, AlphaTuple::quarter_pi(),
                                                 Backend::Exact);
        require(psi.exact().half_power == 15, "half_power must be 15");
        require(psi.exact().entries.size() == 256, "expected 256 amplitudes");
        // Integrality is the storage format; each amplitude is a product of
        // seven factors 1 +- i, so every norm is exactly 2^7.
        for (const auto& e : psi.exact().entries)
            require(e.norm() == 128, "amplitude norm differs from 2^7");
        const PureState psif = build_target_state(layout, AlphaTuple::quarter_pi(),
                                                  Backend::Floating);
        require(!prop2.subset_ranks.empty(), "criterion 1 must have produced subset ranks");
        for (unsigned mask = 1; mask < (1u << 7); ++mask) {
            std::vector<std::size_t> left;
            for (int k = 1; k <= 7; ++k)
                if (mask & (1u << (k - 1))) left.push_back(static_cast<std::size_t>(k - 1));
            require(prop2.subset_ranks[mask] ==
                        float_schmidt_rank(psif.amplitudes(), left, 1e-9),
                    "exact and SVD ranks disagree");
        }
        return true;
    });

    criterion(3, "measurement protocol reproduces the target family (22 tuples x 16 branches)",
              [&] {
                  const auto t0 = std::chrono::steady_clock::now();
                  const Prop1Check check = check_prop1(layout, 20, 16, 11);
                  const double secs = std::chrono::duration<double>(
                                          std::chrono::steady_clock::now() - t0)
                                          .count();
                  require(check.n_tuples == 22, "expected 20 random + 2 exact tuples");
                  require(check.n_exact_comparisons == 32, "expected 2 x 16 exact comparisons");
                  require(check.n_float_comparisons == 320, "expected 20 x 16 float comparisons");
                  require(check.min_overlap >= 1.0 - 1e-9, "overlap fell below 1 - 1e-9");
                  require(secs < 60.0, "exceeded the one-minute budget");
                  return check.pass;
              });

    criterion(4, "distribution protocol prepares the resource state under d0 and chains", [&] {
        const Prop3Check check = check_prop3(layout);
        require(check.state_matches_graph, "distributed state differs from the graph state");
        require(check.chain_exact_ok, "exact chain failed to reproduce the targets");
        require(check.chain_float_ok, "floating chain failed to reproduce the targets");
        require(check.n_czs == 14, "expected 14 CZ steps");
        require(check.n_sends <= 14, "expected at most 14 sends");
        return check.pass;
    });

    criterion(5, "500 fuzzed d1 scripts ending with a send from v1 stay at rank <= 2", [&] {
        const DynamicCheck check = check_dynamic(Configuration::d1(), Party{1}, 500, 7);
        require(check.n_scripts == 500, "expected 500 scripts");
        require(check.max_rank_seen <= 2, "a script exceeded rank 2 across v1");
        require(check.two_party_ok, "fixed two-party (4,4) case failed");
        return check.pass;
    });

    criterion(6, "d0 admits exactly 5040 distributions, all capacity-2 lines ending at v8", [&] {
        const auto graphs = enumerate_admissible_distributions(Configuration::d0());
        require(graphs.size() == 5040, "expected 5040 distributions");
        for (const auto& g : graphs) {
            require(g.edges.size() == 7 && g.is_tree(), "expected a spanning tree");
            std::map<Party, int> degree;
            for (const auto& e : g.edges) {
                require(e.cap == 2, "expected capacity 2 everywhere");
                ++degree[e.a];
                ++degree[e.b];
            }
            require(degree[Party{8}] == 1, "v8 must be an endpoint");
            for (const auto& [p, deg] : degree) require(deg <= 2, "expected a path");
        }
        return true;
    });

    criterion(7, "cut-product bound verified exhaustively at desk scale", [&] {
        const auto t0 = std::chrono::steady_clock::now();
        for (const auto& [m, d, cap] :
             {std::tuple<int, long, long>{1, 2, 4}, {1, 3, 4}, {2, 2, 4}}) {
            const BruteForceResult r = brute_force_min_max_load(m, d, cap);
            require(r.all_passing_meet_bound, "an assignment beat the lower bound");
            require(r.n_passing > 0, "search found no valid assignment");
        }
        const SymmetricCheck sym = symmetric_assignment_check(2, 4);
        require(sym.cap == 2, "symmetric capacity should be 2");
        require(sym.per_party_load == 8, "symmetric load should be 8");
        require(sym.holds, "symmetric condition should hold");
        // Equality 16 >= 16: each balanced cut of the four-party complete
        // graph crosses four edges.
        mpz_class cut_product;
        mpz_ui_pow_ui(cut_product.get_mpz_t(), static_cast<unsigned long>(sym.cap), 4);
        mpz_class need;
        mpz_ui_pow_ui(need.get_mpz_t(), 4, 2);
        require(cut_product == need, "condition should hold with equality");
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        require(secs < 60.0, "exceeded the one-minute budget");
        return true;
    });

    criterion(8, "GHZ and W fit the two-Bell-pair line; nothing fits (2,2,2)", [&] {
        const WarmupReport w = ghz_w_warmup();
        require(w.ghz.feasible, "GHZ should be feasible");
        require(w.w.feasible, "W should be feasible");
        require(w.n_distributions_222 == 0, "no connected distribution fits (2,2,2)");
        return w.pass;
    });

    criterion(9, "invariant suites: stabilizers, monotonicity, symmetry, determinism", [&] {
        // Stabilizer identity, exact, on small and resource graphs.
        const StateGraph res = layout_to_resource_graph(layout);
        for (const auto& v : res.vertices)
            require(check_stabilizer(res, v.label), "stabilizer identity failed");

        // Rank monotonicity across measurement branches, 100 random states.
        std::mt19937 rng(404);
        std::normal_distribution<double> gauss;
        int checked = 0;
        while (checked < 100) {
            std::vector<QubitLabel> labels;
            for (int k = 1; k <= 4; ++k) labels.push_back({Party{k}, 0});
            std::vector<std::complex<double>> amps(16);
            for (auto& a : amps) a = {gauss(rng), gauss(rng)};
            const PureState s = PureState::from_amplitudes(labels, amps);
            const std::size_t measured =
                std::uniform_int_distribution<std::size_t>(0, 3)(rng);
            std::vector<std::size_t> left_before;
            for (std::size_t q = 0; q < 4; ++q)
                if (q != measured && (rng() & 1)) left_before.push_back(q);
            if (left_before.empty() || left_before.size() == 3) continue;
            std::vector<std::size_t> left_after;
            for (std::size_t q : left_before) left_after.push_back(q > measured ? q - 1 : q);
            const std::size_t before = float_schmidt_rank(s.amplitudes(), left_before);
            const MeasureResult r = measure_z(s, s.labels()[measured]);
            for (const auto& post : {r.post0, r.post1}) {
                if (!post) continue;
                require(float_schmidt_rank(post->amplitudes(), left_after) <= before,
                        "rank grew under a measurement branch");
            }
            ++checked;
        }

        // Bipartition symmetry on the pi/4 state.
        const PureState psi = build_target_state(layout, AlphaTuple::quarter_pi(),
                                                 Backend::Exact);
        for (unsigned mask = 1; mask < 255; mask += 13) {
            std::vector<std::size_t> left, right;
            for (std::size_t q = 0; q < 8; ++q)
                ((mask >> q) & 1 ? left : right).push_back(q);
            if (left.empty() || right.empty()) continue;
            require(schmidt_rank_exact(psi.exact(), left) ==
                        schmidt_rank_exact(psi.exact(), right),
                    "rank differed across complementary cuts");
        }

        // Report byte-determinism under a fixed seed, across worker counts.
        const auto render = [&] {
            const DynamicCheck check = check_dynamic(Configuration::d1(), Party{1}, 40, 7);
            RunReport rep;
            rep.command = "check-dynamic";
            rep.inputs = {{"config", "d1"}, {"fuzz", 40}, {"seed", 7}};
            rep.records = {{"max_rank_seen", check.max_rank_seen},
                           {"two_party_cases_ok", check.two_party_ok}};
            rep.pass = check.pass;
            return strip_report_header(rep.full_text(1.0));
        };
        set_max_threads(1);
        const std::string serial = render();
        set_max_threads(2);
        const std::string parallel = render();
        set_max_threads(0);
        require(serial == parallel, "report bodies differed across worker counts");
        require(render() == serial, "report bodies differed across runs");
        return true;
    });

    std::cout << (failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL") << " (" << failures
              << " failing criteria)" << std::endl;
    return failures == 0 ? 0 : 1;
}
