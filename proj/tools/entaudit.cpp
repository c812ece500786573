// entaudit: exact certification of multiparty entanglement distribution
// under per-party memory limits. See README.md for the command catalogue.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>

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

struct Common {
    std::string out_path;
    std::string layout_path;
    std::string config_name = "d0";
};

GateLayout load_layout(const Common& c) {
    return c.layout_path.empty() ? default_layout() : read_layout_file(c.layout_path);
}

Configuration load_config(const std::string& name_or_path) {
    try {
        return Configuration::by_name(name_or_path);
    } catch (const std::invalid_argument&) {
        return read_config_file(name_or_path);
    }
}

int emit(const RunReport& report, const std::string& out_path, double wall_ms) {
    const std::string text = report.full_text(wall_ms);
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error(out_path + ": cannot write report");
        out << text;
        std::cout << (report.pass ? "PASS" : "FAIL") << " (report written to " << out_path
                  << ")\n";
    }
    return report.exit_code();
}

json layout_json(const GateLayout& layout) {
    json edges = json::array();
    for (const auto& [a, b] : layout.pairs)
        edges.push_back({{"a", "v" + std::to_string(a)}, {"b", "v" + std::to_string(b)}});
    return edges;
}

json config_json(const Configuration& config) {
    json j = json::object();
    for (const auto& [p, d] : config.dims) j[p.name()] = d;
    return j;
}

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

int cmd_verify_prop1(const Common& common, std::size_t tuples, std::size_t branches,
                     unsigned seed) {
    const auto t0 = Clock::now();
    const GateLayout layout = load_layout(common);
    const Prop1Check check = check_prop1(layout, tuples, branches, seed);
    RunReport report;
    report.command = "verify-prop1";
    report.inputs = {{"layout", layout_json(layout)},
                     {"random_tuples", tuples},
                     {"branch_samples", branches},
                     {"seed", seed}};
    report.records = {{"tuples_checked", check.n_tuples},
                      {"exact_comparisons", check.n_exact_comparisons},
                      {"float_comparisons", check.n_float_comparisons},
                      {"min_overlap", check.min_overlap}};
    report.pass = check.pass;
    return emit(report, common.out_path, ms_since(t0));
}

int cmd_verify_prop2(const Common& common, bool alpha_zero, bool summary_only) {
    const auto t0 = Clock::now();
    const GateLayout layout = load_layout(common);
    const AlphaTuple alpha = alpha_zero ? AlphaTuple::zeros() : AlphaTuple::quarter_pi();
    const Prop2Report rep = verify_prop2(layout, alpha);

    RunReport report;
    report.command = "verify-prop2";
    report.inputs = {{"layout", layout_json(layout)},
                     {"alpha", alpha_zero ? "zeros" : "pi/4"}};
    json records = json::array();
    for (const auto& r : rep.records) {
        json rec;
        std::string perm;
        for (int u : r.order) perm += (perm.empty() ? "v" : " v") + std::to_string(u);
        rec["permutation"] = perm;
        rec["prefix_ranks"] = r.prefix_ranks;
        rec["witness_prefix"] = r.witness_prefix;
        rec["violated"] = r.violated;
        records.push_back(rec);
    }
    report.records = {{"trees", rep.n_trees},
                      {"trees_violated", rep.n_violated},
                      {"per_tree", summary_only ? json("omitted (--summary)") : records}};
    // The pi/4 target must defeat every tree; the all-zero sanity inversion
    // must defeat none.
    report.pass = alpha_zero ? rep.n_violated == 0 : rep.pass;
    return emit(report, common.out_path, ms_since(t0));
}

int cmd_verify_prop3(const Common& common, const std::string& write_script) {
    const auto t0 = Clock::now();
    const GateLayout layout = load_layout(common);
    if (!write_script.empty()) write_script_file(derive_phires_script(layout), write_script);
    const Prop3Check check = check_prop3(layout);
    RunReport report;
    report.command = "verify-prop3";
    report.inputs = {{"layout", layout_json(layout)}, {"config", "d0"}};
    report.records = {{"steps", check.n_steps},
                      {"cz_gates", check.n_czs},
                      {"sends", check.n_sends},
                      {"state_matches_graph", check.state_matches_graph},
                      {"chain_exact_ok", check.chain_exact_ok},
                      {"chain_float_ok", check.chain_float_ok}};
    report.pass = check.pass;
    return emit(report, common.out_path, ms_since(t0));
}

int cmd_check_dynamic(const Common& common, std::size_t fuzz, unsigned seed) {
    const auto t0 = Clock::now();
    const Configuration config = load_config(common.config_name);
    const DynamicCheck check = check_dynamic(config, Party{1}, fuzz, seed);
    RunReport report;
    report.command = "check-dynamic";
    report.inputs = {{"config", config_json(config)}, {"fuzz", fuzz}, {"seed", seed}};
    report.records = {{"scripts", check.n_scripts},
                      {"max_rank_seen", check.max_rank_seen},
                      {"bound", check.bound},
                      {"two_party_cases_ok", check.two_party_ok}};
    report.pass = check.pass;
    return emit(report, common.out_path, ms_since(t0));
}

int cmd_bound(const Common& common, int m, long d, bool brute, long cap) {
    const auto t0 = Clock::now();
    RunReport report;
    report.command = "bound";
    report.inputs = {{"m", m}, {"d", d}, {"brute_force", brute}, {"cap", cap}};
    const SymmetricCheck sym = symmetric_assignment_check(m, d);
    report.records = {{"lower_bound", local_dim_lower_bound(m, d)},
                      {"symmetric_capacity", sym.cap},
                      {"symmetric_load", sym.per_party_load.get_str()},
                      {"symmetric_condition_holds", sym.holds},
                      {"load_to_bound_ratio", sym.load_to_bound_ratio}};
    report.pass = sym.holds;
    if (brute) {
        const BruteForceResult bf = brute_force_min_max_load(m, d, cap);
        report.records["brute_force"] = {
            {"assignments_searched", bf.n_searched},
            {"assignments_passing", bf.n_passing},
            {"min_max_load", bf.min_max_load.get_str()},
            {"witness_caps", bf.witness.caps},
            {"all_passing_meet_bound", bf.all_passing_meet_bound}};
        report.pass = report.pass && bf.all_passing_meet_bound;
    }
    return emit(report, common.out_path, ms_since(t0));
}

int cmd_warmup(const Common& common) {
    const auto t0 = Clock::now();
    const WarmupReport w = ghz_w_warmup();
    RunReport report;
    report.command = "warmup";
    report.inputs = json::object();
    const auto edges_json = [](const TreeFeasibilityReport& r) {
        json out = json::array();
        for (const auto& e : r.edges)
            out.push_back({{"edge", e.edge.a.name() + "-" + e.edge.b.name()},
                           {"capacity", e.edge.cap},
                           {"required_rank", e.required_rank},
                           {"ok", e.ok}});
        return out;
    };
    report.records = {{"ghz_feasible", w.ghz.feasible},
                      {"ghz_edges", edges_json(w.ghz)},
                      {"w_feasible", w.w.feasible},
                      {"w_edges", edges_json(w.w)},
                      {"distributions_under_222", w.n_distributions_222}};
    report.pass = w.pass;
    return emit(report, common.out_path, ms_since(t0));
}

int cmd_search_layout(const Common& common, const std::string& write_path) {
    const auto t0 = Clock::now();
    const LayoutSearchResult found = search_default_layout();
    if (!write_path.empty()) write_layout_file(found.layout, write_path);
    RunReport report;
    report.command = "search-layout";
    report.inputs = json::object();
    report.records = {{"layout", layout_json(found.layout)},
                      {"trees_enumerated", found.trees_enumerated},
                      {"classes_checked", found.classes_checked},
                      {"matches_shipped_default", found.layout.pairs == default_layout().pairs}};
    report.pass = true;
    return emit(report, common.out_path, ms_since(t0));
}

int cmd_run_protocol(const Common& common, const std::string& script_path) {
    const auto t0 = Clock::now();
    const ProtocolScript script = read_script_file(script_path);
    const Configuration config = load_config(common.config_name);
    const RunResult run = run_protocol(script, config);
    RunReport report;
    report.command = "run-protocol";
    report.inputs = {{"script", script_path}, {"config", config_json(config)}};
    json trace = json::array();
    for (const auto& e : run.trace) {
        json t = {{"step", e.step_index + 1}, {"op", e.text}};
        json occ = json::object();
        for (const auto& [p, n] : e.occupancy) occ[p.name()] = n;
        t["occupancy"] = occ;
        if (e.outcome) t["outcome"] = *e.outcome;
        if (!e.party_ranks.empty()) {
            json ranks = json::object();
            for (const auto& [p, r] : e.party_ranks) ranks[p.name()] = r;
            t["party_ranks"] = ranks;
        }
        trace.push_back(t);
    }
    report.records = {{"steps", script.size()},
                      {"sends", run.n_sends},
                      {"final_qubits", run.state.n_qubits()},
                      {"trace", trace}};
    report.pass = true;
    return emit(report, common.out_path, ms_since(t0));
}

int cmd_feasibility(const Common& common, const std::string& tree_path,
                    const std::string& target_name) {
    const auto t0 = Clock::now();
    RunReport report;
    report.command = "feasibility";
    if (!tree_path.empty()) {
        const ResourceGraph tree = read_resource_graph_file(tree_path);
        PureState target;
        if (target_name == "ghz" || target_name == "w") {
            std::vector<QubitLabel> labels;
            for (const auto& p : tree.parties) labels.push_back({p, 0});
            if (labels.size() > 16) throw std::invalid_argument("too many parties for a target");
            const std::size_t dim = std::size_t{1} << labels.size();
            ScaledVector v;
            v.entries.assign(dim, GaussInt(0));
            if (target_name == "ghz") {
                v.entries.front() = GaussInt(1);
                v.entries.back() = GaussInt(1);
            } else {
                for (std::size_t q = 0; q < labels.size(); ++q)
                    v.entries[std::size_t{1} << q] = GaussInt(1);
            }
            target = PureState::from_exact(labels, v);
        } else if (target_name == "psi-pi4") {
            target = build_target_state(load_layout(common), AlphaTuple::quarter_pi(),
                                        Backend::Exact);
        } else {
            throw std::invalid_argument("unknown target '" + target_name +
                                        "' (expected ghz, w or psi-pi4)");
        }
        const TreeFeasibilityReport r = tree_feasible(tree, target);
        json edges = json::array();
        for (const auto& e : r.edges)
            edges.push_back({{"edge", e.edge.a.name() + "-" + e.edge.b.name()},
                             {"capacity", e.edge.cap},
                             {"required_rank", e.required_rank},
                             {"ok", e.ok}});
        report.inputs = {{"tree", tree_path}, {"target", target_name}};
        report.records = {{"edges", edges}, {"feasible", r.feasible}};
        report.pass = r.feasible;
        return emit(report, common.out_path, ms_since(t0));
    }
    const Configuration config = load_config(common.config_name);
    const auto graphs = enumerate_admissible_distributions(config);
    json list = json::array();
    for (const auto& g : graphs) list.push_back(g.str());
    report.inputs = {{"config", config_json(config)}};
    report.records = {{"count", graphs.size()},
                      {"distributions", graphs.size() <= 64 ? list : json("omitted (large)")}};
    report.pass = true;
    return emit(report, common.out_path, ms_since(t0));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact verification toolkit for size-limited entanglement distribution"};
    app.require_subcommand(1);
    Common common;

    std::size_t tuples = 20, branches = 16, fuzz = 500;
    unsigned seed1 = 11, seed_dyn = 7;
    bool alpha_zero = false, summary_only = false, brute = false;
    int bound_m = 1;
    long bound_d = 2, cap = 4;
    std::string write_path, script_path, script_out, tree_path, target_name = "ghz";

    auto* p1 = app.add_subcommand("verify-prop1", "measurement protocol reproduces the targets");
    p1->add_option("--layout", common.layout_path, "layout file (7 lines 'vi vj')");
    p1->add_option("--tuples", tuples, "random angle tuples");
    p1->add_option("--branches", branches, "measurement branch samples per tuple");
    p1->add_option("--seed", seed1, "rng seed");
    p1->add_option("--out", common.out_path, "write report here");

    auto* p2 = app.add_subcommand("verify-prop2",
                                  "no line-topology pair distribution stores the pi/4 target");
    p2->add_option("--layout", common.layout_path, "layout file");
    p2->add_flag("--alpha-zero", alpha_zero, "sanity inversion: all-zero angles");
    p2->add_flag("--summary", summary_only, "omit the 5040 per-tree records");
    p2->add_option("--out", common.out_path, "write report here");

    auto* p3 = app.add_subcommand("verify-prop3",
                                  "communication protocol prepares the resource state under d0");
    p3->add_option("--layout", common.layout_path, "layout file");
    p3->add_option("--write-script", script_out, "also write the derived script here");
    p3->add_option("--out", common.out_path, "write report here");

    auto* dyn = app.add_subcommand("check-dynamic", "fuzzed last-round Schmidt-rank bound");
    dyn->add_option("--config", common.config_name, "d0|d1|two44 or a config file")
        ->default_val("d1");
    dyn->add_option("--fuzz", fuzz, "number of random scripts");
    dyn->add_option("--seed", seed_dyn, "rng seed");
    dyn->add_option("--out", common.out_path, "write report here");

    auto* bnd = app.add_subcommand("bound", "cut-product bound on complete-graph distributions");
    bnd->add_option("--m", bound_m, "half the party count")->required();
    bnd->add_option("--d", bound_d, "local qudit size")->required();
    bnd->add_flag("--brute-force", brute, "exhaust assignments up to --cap");
    bnd->add_option("--cap", cap, "capacity limit for the brute force");
    bnd->add_option("--out", common.out_path, "write report here");

    auto* warm = app.add_subcommand("warmup", "three-party GHZ/W storage warm-up");
    warm->add_option("--out", common.out_path, "write report here");

    auto* search = app.add_subcommand("search-layout", "canonical search for a passing layout");
    search->add_option("--write", write_path, "also write the layout file here");
    search->add_option("--out", common.out_path, "write report here");

    auto* runp = app.add_subcommand("run-protocol", "simulate a protocol script");
    runp->add_option("script", script_path, "script file")->required();
    runp->add_option("--config", common.config_name, "d0|d1|two44 or a config file")->required();
    runp->add_option("--out", common.out_path, "write report here");

    auto* feas = app.add_subcommand("feasibility",
                                    "enumerate admissible distributions or check one tree");
    feas->add_option("--config", common.config_name, "d0|d1|two44 or a config file");
    feas->add_option("--tree", tree_path, "resource tree file ('vi vj cap' lines)");
    feas->add_option("--target", target_name, "ghz|w|psi-pi4 (with --tree)");
    feas->add_option("--layout", common.layout_path, "layout for psi-pi4 targets");
    feas->add_option("--out", common.out_path, "write report here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
        app.exit(e);
        return 2;
    }

    try {
        if (p1->parsed()) return cmd_verify_prop1(common, tuples, branches, seed1);
        if (p2->parsed()) return cmd_verify_prop2(common, alpha_zero, summary_only);
        if (p3->parsed()) return cmd_verify_prop3(common, script_out);
        if (dyn->parsed()) return cmd_check_dynamic(common, fuzz, seed_dyn);
        if (bnd->parsed()) return cmd_bound(common, bound_m, bound_d, brute, cap);
        if (warm->parsed()) return cmd_warmup(common);
        if (search->parsed()) return cmd_search_layout(common, write_path);
        if (runp->parsed()) return cmd_run_protocol(common, script_path);
        if (feas->parsed()) return cmd_feasibility(common, tree_path, target_name);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
