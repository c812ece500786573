#include "entaudit/feasibility.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>

#include "entaudit/parallel.hpp"

namespace entaudit {

Configuration Configuration::d0() {
    Configuration c;
    for (int k = 1; k <= 7; ++k) c.dims[Party{k}] = 4;
    c.dims[Party{8}] = 2;
    return c;
}

Configuration Configuration::d1() {
    Configuration c;
    c.dims[Party{1}] = 4;
    for (int k = 2; k <= 4; ++k) c.dims[Party{k}] = 2;
    return c;
}

Configuration Configuration::by_name(const std::string& name) {
    if (name == "d0") return d0();
    if (name == "d1") return d1();
    if (name == "two44") {
        Configuration c;
        c.dims[Party{1}] = 4;
        c.dims[Party{2}] = 4;
        return c;
    }
    throw std::invalid_argument("unknown configuration preset '" + name + "'");
}

long Configuration::dim_of(const Party& p) const {
    const auto it = dims.find(p);
    if (it == dims.end()) throw std::invalid_argument("party " + p.name() + " not in configuration");
    return it->second;
}

int Configuration::slots_of(const Party& p) const {
    const long d = dim_of(p);
    int s = 0;
    long v = 1;
    while (v < d) {
        v *= 2;
        ++s;
    }
    if (v != d)
        throw std::invalid_argument("dimension of " + p.name() + " is not a power of two");
    return s;
}

void Configuration::validate() const {
    if (dims.empty()) throw std::invalid_argument("empty configuration");
    for (const auto& [p, d] : dims)
        if (d < 1) throw std::invalid_argument("dimension of " + p.name() + " must be >= 1");
}

Configuration read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path + ": cannot open configuration file");
    Configuration c;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string party;
        long dim;
        if (!(ls >> party)) continue;
        if (!(ls >> dim))
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": expected '<party> <dimension>'");
        try {
            c.dims[parse_party(party)] = dim;
        } catch (const std::invalid_argument& e) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    c.validate();
    return c;
}

bool ResourceGraph::is_connected() const {
    if (parties.empty()) return false;
    std::map<Party, std::vector<Party>> adj;
    for (const auto& p : parties) adj[p];
    for (const auto& e : edges) {
        adj[e.a].push_back(e.b);
        adj[e.b].push_back(e.a);
    }
    std::vector<Party> stack{parties.front()};
    std::map<Party, bool> seen{{parties.front(), true}};
    while (!stack.empty()) {
        const Party v = stack.back();
        stack.pop_back();
        for (const Party& u : adj[v])
            if (!seen[u]) {
                seen[u] = true;
                stack.push_back(u);
            }
    }
    return std::all_of(parties.begin(), parties.end(), [&](const Party& p) { return seen[p]; });
}

bool ResourceGraph::is_tree() const {
    return is_connected() && edges.size() + 1 == parties.size();
}

mpz_class ResourceGraph::load_of(const Party& p) const {
    mpz_class load = 1;
    for (const auto& e : edges)
        if (e.a == p || e.b == p) load *= e.cap;
    return load;
}

bool ResourceGraph::fits(const Configuration& config) const {
    return std::all_of(parties.begin(), parties.end(), [&](const Party& p) {
        return load_of(p) <= config.dim_of(p);
    });
}

std::string ResourceGraph::str() const {
    std::string s;
    for (const auto& e : edges) {
        if (!s.empty()) s += " ";
        s += e.a.name() + "-" + e.b.name() + ":" + std::to_string(e.cap);
    }
    return s;
}

ResourceGraph read_resource_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path + ": cannot open resource graph file");
    ResourceGraph g;
    std::map<Party, bool> present;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string ta, tb;
        long cap;
        if (!(ls >> ta)) continue;
        if (!(ls >> tb >> cap))
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": expected '<party> <party> <capacity>'");
        if (cap < 2)
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": capacity must be >= 2");
        try {
            CapEdge e{parse_party(ta), parse_party(tb), cap};
            present[e.a] = present[e.b] = true;
            g.edges.push_back(e);
        } catch (const std::invalid_argument& e) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    for (const auto& [p, _] : present) g.parties.push_back(p);
    return g;
}

namespace {

std::size_t qubit_of_party(const PureState& target, const Party& p) {
    std::optional<std::size_t> pos;
    for (std::size_t i = 0; i < target.labels().size(); ++i)
        if (target.labels()[i].party == p) {
            if (pos) throw std::invalid_argument("target holds several qubits at " + p.name());
            pos = i;
        }
    if (!pos) throw std::invalid_argument("target holds no qubit at " + p.name());
    return *pos;
}

}  // namespace

TreeFeasibilityReport tree_feasible(const ResourceGraph& tree, const PureState& target) {
    if (!tree.is_connected() || tree.edges.size() + 1 != tree.parties.size())
        throw std::invalid_argument(
            "the rank feasibility condition applies to tree distributions only");
    if (tree.parties.size() != target.n_qubits())
        throw std::invalid_argument("target must hold exactly one qubit per party");

    TreeFeasibilityReport report;
    report.feasible = true;
    for (std::size_t cut = 0; cut < tree.edges.size(); ++cut) {
        // Component of edge.a once the edge is deleted.
        std::map<Party, std::vector<Party>> adj;
        for (std::size_t j = 0; j < tree.edges.size(); ++j) {
            if (j == cut) continue;
            adj[tree.edges[j].a].push_back(tree.edges[j].b);
            adj[tree.edges[j].b].push_back(tree.edges[j].a);
        }
        std::vector<Party> side{tree.edges[cut].a};
        std::map<Party, bool> seen{{tree.edges[cut].a, true}};
        for (std::size_t i = 0; i < side.size(); ++i)
            for (const Party& u : adj[side[i]])
                if (!seen[u]) {
                    seen[u] = true;
                    side.push_back(u);
                }

        std::vector<std::size_t> positions;
        for (const Party& p : side) positions.push_back(qubit_of_party(target, p));

        EdgeFeasibility ef;
        ef.edge = tree.edges[cut];
        ef.required_rank = schmidt_rank_exact(target.exact(), positions);
        ef.ok = static_cast<long>(ef.required_rank) <= ef.edge.cap;
        report.feasible = report.feasible && ef.ok;
        report.edges.push_back(ef);
    }
    return report;
}

std::vector<ResourceGraph> enumerate_admissible_distributions(const Configuration& config) {
    config.validate();
    if (config.dims.size() > 10)
        throw std::invalid_argument("enumeration is guarded to at most 10 parties");

    std::vector<Party> parties;
    for (const auto& [p, _] : config.dims) parties.push_back(p);
    std::sort(parties.begin(), parties.end());
    const std::size_t n = parties.size();

    std::vector<std::pair<std::size_t, std::size_t>> all_edges;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) all_edges.emplace_back(a, b);

    long max_cap = 2;
    for (const auto& [_, d] : config.dims) max_cap = std::max(max_cap, d);

    std::vector<ResourceGraph> out;
    std::vector<CapEdge> chosen;
    std::vector<mpz_class> load(n, 1);

    const auto emit = [&] {
        ResourceGraph g;
        g.parties = parties;
        g.edges = chosen;
        if (g.is_connected()) out.push_back(g);
    };

    const std::function<void(std::size_t)> recurse = [&](std::size_t idx) {
        if (idx == all_edges.size()) {
            emit();
            return;
        }
        const auto [a, b] = all_edges[idx];
        recurse(idx + 1);  // edge absent
        for (long cap = 2; cap <= max_cap; ++cap) {
            if (load[a] * cap > config.dim_of(parties[a])) break;
            if (load[b] * cap > config.dim_of(parties[b])) continue;
            load[a] *= cap;
            load[b] *= cap;
            chosen.push_back({parties[a], parties[b], cap});
            recurse(idx + 1);
            chosen.pop_back();
            load[a] /= cap;
            load[b] /= cap;
        }
    };
    recurse(0);

    // Canonical report order: by sorted edge list.
    std::sort(out.begin(), out.end(), [](const ResourceGraph& x, const ResourceGraph& y) {
        const auto key = [](const ResourceGraph& g) {
            std::vector<std::tuple<int, int, long>> k;
            for (const auto& e : g.edges)
                k.emplace_back(std::min(e.a.id, e.b.id), std::max(e.a.id, e.b.id), e.cap);
            std::sort(k.begin(), k.end());
            return k;
        };
        return key(x) < key(y);
    });
    return out;
}

namespace {

std::vector<std::size_t> mask_positions(unsigned mask) {
    std::vector<std::size_t> pos;
    for (int k = 1; k <= kNumGates; ++k)
        if (mask & (1u << (k - 1))) pos.push_back(static_cast<std::size_t>(k - 1));
    return pos;
}

}  // namespace

Prop2Report verify_prop2(const GateLayout& layout, const AlphaTuple& alpha) {
    Prop2Report report;
    report.layout = layout;

    const PureState psi = build_target_state(layout, alpha, Backend::Exact);
    const ScaledVector& v = psi.exact();

    // Rank across every nonempty subset of {v1..v7}; prefix cuts of all 5040
    // permutations index into this table, so each rank is eliminated once.
    const unsigned n_masks = 1u << kNumGates;
    report.subset_ranks.assign(n_masks, 0);
    parallel_for(n_masks - 1, [&](std::size_t i) {
        const unsigned mask = static_cast<unsigned>(i) + 1;
        report.subset_ranks[mask] = schmidt_rank_exact(v, mask_positions(mask));
    });

    std::array<int, kNumGates> perm;
    std::iota(perm.begin(), perm.end(), 1);
    do {
        LineTreeRecord rec;
        rec.order = perm;
        unsigned mask = 0;
        for (int j = 0; j < kNumGates; ++j) {
            mask |= 1u << (perm[j] - 1);
            rec.prefix_ranks[j] = report.subset_ranks[mask];
            rec.max_rank = std::max(rec.max_rank, rec.prefix_ranks[j]);
            if (rec.witness_prefix == 0 && rec.prefix_ranks[j] > 2) rec.witness_prefix = j + 1;
        }
        rec.violated = rec.witness_prefix != 0;
        report.records.push_back(rec);
    } while (std::next_permutation(perm.begin(), perm.end()));

    report.n_trees = report.records.size();
    report.n_violated = static_cast<std::size_t>(
        std::count_if(report.records.begin(), report.records.end(),
                      [](const LineTreeRecord& r) { return r.violated; }));
    report.pass = report.n_violated == report.n_trees;
    return report;
}

bool prop2_holds(const GateLayout& layout) {
    const PureState psi = build_target_state(layout, AlphaTuple::quarter_pi(), Backend::Exact);
    const ScaledVector& v = psi.exact();

    // Lazily decided "some prefix cut exceeds rank 2" per party subset.
    const unsigned n_masks = 1u << kNumGates;
    std::vector<signed char> gt2(n_masks, -1);
    const auto rank_gt2 = [&](unsigned mask) {
        if (gt2[mask] < 0)
            gt2[mask] = schmidt_rank_at_least(v, mask_positions(mask), 3) ? 1 : 0;
        return gt2[mask] == 1;
    };

    std::array<int, kNumGates> perm;
    std::iota(perm.begin(), perm.end(), 1);
    do {
        unsigned mask = 0;
        bool witnessed = false;
        for (int j = 0; j < kNumGates && !witnessed; ++j) {
            mask |= 1u << (perm[j] - 1);
            witnessed = rank_gt2(mask);
        }
        if (!witnessed) return false;  // this line tree could store the target
    } while (std::next_permutation(perm.begin(), perm.end()));
    return true;
}

WarmupReport ghz_w_warmup() {
    WarmupReport report;

    std::vector<QubitLabel> labels{{Party{1}, 0}, {Party{2}, 0}, {Party{3}, 0}};
    ScaledVector ghz{{GaussInt(1), GaussInt(0), GaussInt(0), GaussInt(0), GaussInt(0),
                      GaussInt(0), GaussInt(0), GaussInt(1)},
                     0};
    ScaledVector w{{GaussInt(0), GaussInt(1), GaussInt(1), GaussInt(0), GaussInt(1),
                    GaussInt(0), GaussInt(0), GaussInt(0)},
                   0};

    ResourceGraph line;
    line.parties = {Party{1}, Party{2}, Party{3}};
    line.edges = {{Party{1}, Party{2}, 2}, {Party{2}, Party{3}, 2}};

    report.ghz = tree_feasible(line, PureState::from_exact(labels, ghz));
    report.w = tree_feasible(line, PureState::from_exact(labels, w));

    Configuration qubit_each;
    for (int k = 1; k <= 3; ++k) qubit_each.dims[Party{k}] = 2;
    report.n_distributions_222 = enumerate_admissible_distributions(qubit_each).size();

    report.pass = report.ghz.feasible && report.w.feasible && report.n_distributions_222 == 0;
    return report;
}

}  // namespace entaudit
