#include "entaudit/protocol.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "entaudit/float_rank.hpp"

namespace entaudit {

namespace {

std::string angle_text(double alpha) {
    if (alpha == kQuarterPi) return "pi/4";
    std::ostringstream os;
    os.precision(17);
    os << alpha;
    return os.str();
}

double parse_angle(const std::string& tok) {
    if (tok == "pi/4") return kQuarterPi;
    std::size_t used = 0;
    const double v = std::stod(tok, &used);
    if (used != tok.size()) throw std::invalid_argument("bad angle '" + tok + "'");
    return v;
}

}  // namespace

std::string step_text(const ProtocolStep& step) {
    std::ostringstream os;
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, AllocPlus>)
                os << "alloc " << s.party.name() << " " << s.slot;
            else if constexpr (std::is_same_v<T, LocalCZ>)
                os << "cz " << s.party.name() << " " << s.slot_a << " " << s.slot_b;
            else if constexpr (std::is_same_v<T, LocalXRot>)
                os << "xrot " << s.party.name() << " " << s.slot << " " << angle_text(s.alpha);
            else if constexpr (std::is_same_v<T, LocalPauli>)
                os << "pauli " << s.party.name() << " " << s.slot << " " << s.axis;
            else if constexpr (std::is_same_v<T, MeasureCorrect>) {
                os << "measure " << s.party.name() << " " << s.slot << " zcorrect";
                for (const auto& t : s.corrections) os << " " << t.party.name() << " " << t.slot;
            } else if constexpr (std::is_same_v<T, Send>)
                os << "send " << s.from.name() << " " << s.from_slot << " " << s.to.name() << " "
                   << s.to_slot;
        },
        step);
    return os.str();
}

ProtocolScript read_script_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path + ": cannot open script file");
    ProtocolScript script;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string op;
        if (!(ls >> op)) continue;
        if (op[0] == '#') continue;
        const auto fail = [&](const std::string& msg) -> void {
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": " + msg);
        };
        const auto no_trailing = [&] {
            std::string extra;
            if (ls >> extra) fail("unexpected trailing token '" + extra + "'");
        };
        try {
            if (op == "alloc") {
                std::string p;
                int slot;
                if (!(ls >> p >> slot)) fail("expected 'alloc <party> <slot>'");
                no_trailing();
                script.push_back(AllocPlus{parse_party(p), slot});
            } else if (op == "cz") {
                std::string p;
                std::string a, b;
                if (!(ls >> p >> a >> b)) fail("expected 'cz <party> <slot> <slot>'");
                if ((!a.empty() && a[0] == 'v') || (!b.empty() && b[0] == 'v'))
                    fail("local gates act on a single party's slots");
                no_trailing();
                script.push_back(LocalCZ{parse_party(p), std::stoi(a), std::stoi(b)});
            } else if (op == "xrot") {
                std::string p, angle;
                int slot;
                if (!(ls >> p >> slot >> angle)) fail("expected 'xrot <party> <slot> <angle>'");
                no_trailing();
                script.push_back(LocalXRot{parse_party(p), slot, parse_angle(angle)});
            } else if (op == "pauli") {
                std::string p, axis;
                int slot;
                if (!(ls >> p >> slot >> axis)) fail("expected 'pauli <party> <slot> <x|z>'");
                if (axis != "x" && axis != "z") fail("pauli axis must be x or z");
                no_trailing();
                script.push_back(LocalPauli{parse_party(p), slot, axis[0]});
            } else if (op == "measure") {
                std::string p, kw;
                int slot;
                if (!(ls >> p >> slot >> kw) || kw != "zcorrect")
                    fail("expected 'measure <party> <slot> zcorrect [targets...]'");
                MeasureCorrect mc{parse_party(p), slot, {}};
                std::vector<std::string> rest;
                std::string tok;
                while (ls >> tok) rest.push_back(tok);
                if (rest.size() % 2 != 0) fail("correction targets come as '<party> <slot>' pairs");
                for (std::size_t i = 0; i < rest.size(); i += 2)
                    mc.corrections.push_back({parse_party(rest[i]), std::stoi(rest[i + 1])});
                script.push_back(mc);
            } else if (op == "send") {
                std::string pf, pt;
                int sf, st;
                if (!(ls >> pf >> sf >> pt >> st))
                    fail("expected 'send <party> <slot> <party> <slot>'");
                no_trailing();
                script.push_back(Send{parse_party(pf), sf, parse_party(pt), st});
            } else {
                fail("unknown step '" + op + "'");
            }
        } catch (const std::invalid_argument& e) {
            fail(e.what());
        } catch (const std::out_of_range&) {
            fail("numeric field out of range");
        }
    }
    return script;
}

void write_script_file(const ProtocolScript& script, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error(path + ": cannot write script file");
    for (const auto& s : script) out << step_text(s) << "\n";
}

bool script_exact_capable(const ProtocolScript& script) {
    for (const auto& step : script)
        if (const auto* x = std::get_if<LocalXRot>(&step))
            if (x->alpha != 0.0 && x->alpha != kQuarterPi) return false;
    return true;
}

namespace {

struct Registers {
    const Configuration& config;
    std::map<Party, std::set<int>> occupied;

    explicit Registers(const Configuration& c) : config(c) {}

    void check_slot_range(const Party& p, int slot, std::size_t step) const {
        const int slots = config.slots_of(p);
        if (slot < 0 || slot >= slots)
            throw std::runtime_error("step " + std::to_string(step + 1) + ": party " + p.name() +
                                     " capacity exceeded (slot " + std::to_string(slot) + " of " +
                                     std::to_string(slots) + ")");
    }
    void require_occupied(const Party& p, int slot, std::size_t step) const {
        check_slot_range(p, slot, step);
        const auto it = occupied.find(p);
        if (it == occupied.end() || !it->second.count(slot))
            throw std::runtime_error("step " + std::to_string(step + 1) + ": slot " +
                                     QubitLabel{p, slot}.name() + " holds no qubit");
    }
    void require_free(const Party& p, int slot, std::size_t step) const {
        check_slot_range(p, slot, step);
        const auto it = occupied.find(p);
        if (it != occupied.end() && it->second.count(slot))
            throw std::runtime_error("step " + std::to_string(step + 1) + ": slot " +
                                     QubitLabel{p, slot}.name() + " is already occupied");
    }
    std::map<Party, int> snapshot() const {
        std::map<Party, int> occ;
        for (const auto& [p, _] : config.dims) occ[p] = 0;
        for (const auto& [p, slots] : occupied) occ[p] = static_cast<int>(slots.size());
        return occ;
    }
};

std::size_t party_cut_rank(const PureState& state, const Party& p) {
    std::vector<std::size_t> positions;
    for (std::size_t i = 0; i < state.labels().size(); ++i)
        if (state.labels()[i].party == p) positions.push_back(i);
    if (positions.empty() || positions.size() == state.n_qubits()) return 1;
    if (state.backend() == Backend::Exact)
        return schmidt_rank_exact(state.exact(), positions);
    return float_schmidt_rank(state.amplitudes(), positions);
}

}  // namespace

RunResult run_protocol(const ProtocolScript& script, const Configuration& config,
                       std::optional<Backend> backend) {
    config.validate();
    const Backend mode = backend.value_or(script_exact_capable(script) ? Backend::Exact
                                                                       : Backend::Floating);
    if (mode == Backend::Exact && !script_exact_capable(script))
        throw std::invalid_argument("exact mode supports alpha in {0, pi/4} only");

    RunResult result;
    result.state = PureState::empty(mode);
    Registers regs(config);

    for (std::size_t i = 0; i < script.size(); ++i) {
        TraceEntry entry;
        entry.step_index = i;
        entry.text = step_text(script[i]);

        std::visit(
            [&](const auto& s) {
                using T = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<T, AllocPlus>) {
                    regs.require_free(s.party, s.slot, i);
                    result.state = result.state.appended_plus({s.party, s.slot});
                    regs.occupied[s.party].insert(s.slot);
                } else if constexpr (std::is_same_v<T, LocalCZ>) {
                    regs.require_occupied(s.party, s.slot_a, i);
                    regs.require_occupied(s.party, s.slot_b, i);
                    result.state = apply_cz(result.state, {s.party, s.slot_a},
                                            {s.party, s.slot_b});
                } else if constexpr (std::is_same_v<T, LocalXRot>) {
                    regs.require_occupied(s.party, s.slot, i);
                    result.state = apply_x_rotation(result.state, {s.party, s.slot}, s.alpha);
                } else if constexpr (std::is_same_v<T, LocalPauli>) {
                    regs.require_occupied(s.party, s.slot, i);
                    result.state = s.axis == 'x'
                                       ? apply_pauli_x(result.state, {s.party, s.slot})
                                       : apply_pauli_z(result.state, {s.party, s.slot});
                } else if constexpr (std::is_same_v<T, MeasureCorrect>) {
                    regs.require_occupied(s.party, s.slot, i);
                    for (const auto& t : s.corrections) {
                        if (t.party == s.party && t.slot == s.slot)
                            throw std::runtime_error(
                                "step " + std::to_string(i + 1) +
                                ": correction cannot target the measured qubit");
                        regs.require_occupied(t.party, t.slot, i);
                    }
                    const MeasureResult r = measure_z(result.state, {s.party, s.slot});
                    const int outcome = r.post0 ? 0 : 1;
                    entry.outcome = outcome;
                    result.state = outcome == 0 ? *r.post0 : *r.post1;
                    if (outcome == 1)
                        for (const auto& t : s.corrections)
                            result.state = apply_pauli_z(result.state, t);
                    regs.occupied[s.party].erase(s.slot);
                } else if constexpr (std::is_same_v<T, Send>) {
                    regs.require_occupied(s.from, s.from_slot, i);
                    regs.require_free(s.to, s.to_slot, i);
                    result.state = result.state.relabeled({s.from, s.from_slot},
                                                          {s.to, s.to_slot});
                    regs.occupied[s.from].erase(s.from_slot);
                    regs.occupied[s.to].insert(s.to_slot);
                    ++result.n_sends;
                    for (const auto& [p, _] : config.dims)
                        entry.party_ranks[p] = party_cut_rank(result.state, p);
                }
            },
            script[i]);

        entry.occupancy = regs.snapshot();
        result.trace.push_back(std::move(entry));
    }
    return result;
}

ProtocolScript derive_phires_script(const GateLayout& layout) {
    layout.validate();
    if (!layout.is_spanning_tree())
        throw std::invalid_argument("resource preparation needs a spanning-tree layout");

    // Gate i must touch party v_i; with a tree that makes the other endpoint
    // v_i's parent when rooting at v8, which is exactly the orientation the
    // traversal below grows along.
    std::array<int, kNumGates + 1> parent{};
    for (int i = 1; i <= kNumGates; ++i) {
        const auto& [a, b] = layout.pairs[i - 1];
        if (a == i)
            parent[i] = b;
        else if (b == i)
            parent[i] = a;
        else
            throw std::runtime_error(
                "no schedule found by the tree traversal: gate " + std::to_string(i) +
                " does not act on party v" + std::to_string(i) +
                "; reindex the layout so each gate touches its own party");
    }
    std::array<std::vector<int>, kNumParties + 1> children;
    for (int i = 1; i <= kNumGates; ++i) children[parent[i]].push_back(i);
    for (auto& c : children) std::sort(c.begin(), c.end());

    ProtocolScript script;

    // v8's carrier qubit hops across its children's auxiliaries, then settles.
    const auto& roots = children[kNumParties];
    if (roots.empty()) throw std::logic_error("v8 is isolated in a spanning tree");
    script.push_back(AllocPlus{Party{roots[0]}, 1});
    script.push_back(AllocPlus{Party{roots[0]}, 0});
    script.push_back(LocalCZ{Party{roots[0]}, 1, 0});
    for (std::size_t j = 1; j < roots.size(); ++j) {
        script.push_back(AllocPlus{Party{roots[j]}, 1});
        script.push_back(Send{Party{roots[j - 1]}, 0, Party{roots[j]}, 0});
        script.push_back(LocalCZ{Party{roots[j]}, 1, 0});
    }
    script.push_back(Send{Party{roots.back()}, 0, Party{kNumParties}, 0});

    // grow(k): the auxiliary of k is home and already tied to the parent
    // target; pair it with k's own target, then take that target visiting.
    const std::function<void(int)> grow = [&](int k) {
        script.push_back(AllocPlus{Party{k}, 0});
        script.push_back(LocalCZ{Party{k}, 1, 0});
        for (int d : children[k]) {
            script.push_back(AllocPlus{Party{d}, 1});
            script.push_back(Send{Party{k}, 0, Party{d}, 0});
            script.push_back(LocalCZ{Party{d}, 1, 0});
            script.push_back(Send{Party{d}, 0, Party{k}, 0});
            grow(d);
        }
    };
    for (int c : roots) grow(c);
    return script;
}

LastRoundBound check_last_round_bound(const ProtocolScript& script, const Configuration& config,
                                      const Party& cut_party) {
    if (script.empty() || !std::holds_alternative<Send>(script.back()) ||
        std::get<Send>(script.back()).from != cut_party)
        throw std::invalid_argument("bound applies to last-round senders");
    const RunResult run = run_protocol(script, config);
    LastRoundBound r;
    r.bound = config.dim_of(cut_party) / 2;
    r.rank = run.trace.back().party_ranks.at(cut_party);
    r.ok = static_cast<long>(r.rank) <= r.bound;
    return r;
}

ProtocolScript random_valid_script(const Configuration& config, const Party& final_sender,
                                   std::mt19937& rng, std::size_t max_steps) {
    config.validate();
    std::vector<Party> parties;
    for (const auto& [p, _] : config.dims) parties.push_back(p);
    std::sort(parties.begin(), parties.end());

    std::map<Party, std::set<int>> occ;
    ProtocolScript script;
    const auto rand_int = [&](std::size_t n) {
        return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
    };
    const auto free_slot = [&](const Party& p) -> std::optional<int> {
        for (int s = 0; s < config.slots_of(p); ++s)
            if (!occ[p].count(s)) return s;
        return std::nullopt;
    };
    const auto random_occupied = [&]() -> std::optional<QubitLabel> {
        std::vector<QubitLabel> live;
        for (const auto& [p, slots] : occ)
            for (int s : slots) live.push_back({p, s});
        if (live.empty()) return std::nullopt;
        return live[rand_int(live.size())];
    };

    const std::size_t body_steps = 4 + rand_int(max_steps > 8 ? max_steps - 8 : 1);
    while (script.size() < body_steps) {
        switch (rand_int(6)) {
            case 0: {  // alloc
                std::vector<std::pair<Party, int>> options;
                for (const Party& p : parties)
                    if (const auto s = free_slot(p)) options.emplace_back(p, *s);
                if (options.empty()) break;
                const auto [p, s] = options[rand_int(options.size())];
                occ[p].insert(s);
                script.push_back(AllocPlus{p, s});
                break;
            }
            case 1: {  // local cz
                std::vector<Party> options;
                for (const Party& p : parties)
                    if (occ[p].size() >= 2) options.push_back(p);
                if (options.empty()) break;
                const Party p = options[rand_int(options.size())];
                std::vector<int> slots(occ[p].begin(), occ[p].end());
                const std::size_t a = rand_int(slots.size());
                std::size_t b = rand_int(slots.size() - 1);
                if (b >= a) ++b;
                script.push_back(LocalCZ{p, slots[a], slots[b]});
                break;
            }
            case 2: {  // x rotation at pi/4
                if (const auto q = random_occupied())
                    script.push_back(LocalXRot{q->party, q->slot, kQuarterPi});
                break;
            }
            case 3: {  // pauli
                if (const auto q = random_occupied())
                    script.push_back(LocalPauli{q->party, q->slot, rand_int(2) ? 'x' : 'z'});
                break;
            }
            case 4: {  // measure (keep at least two qubits alive)
                std::size_t live = 0;
                for (const auto& [_, slots] : occ) live += slots.size();
                if (live < 3) break;
                if (const auto q = random_occupied()) {
                    occ[q->party].erase(q->slot);
                    script.push_back(MeasureCorrect{q->party, q->slot, {}});
                }
                break;
            }
            case 5: {  // send
                const auto q = random_occupied();
                if (!q) break;
                std::vector<std::pair<Party, int>> dests;
                for (const Party& p : parties) {
                    if (p == q->party) continue;
                    if (const auto s = free_slot(p)) dests.emplace_back(p, *s);
                }
                if (dests.empty()) break;
                const auto [p, s] = dests[rand_int(dests.size())];
                occ[q->party].erase(q->slot);
                occ[p].insert(s);
                script.push_back(Send{q->party, q->slot, p, s});
                break;
            }
        }
    }

    // Closing moves: make sure the final sender holds a qubit and somewhere
    // can receive it, then send.
    if (occ[final_sender].empty()) {
        const auto s = free_slot(final_sender);
        occ[final_sender].insert(*s);
        script.push_back(AllocPlus{final_sender, *s});
    }
    std::optional<std::pair<Party, int>> dest;
    for (const Party& p : parties) {
        if (p == final_sender) continue;
        if (const auto s = free_slot(p)) {
            dest = {p, *s};
            break;
        }
    }
    if (!dest) {
        // Everything else is full: free a slot by measuring.
        for (const Party& p : parties) {
            if (p == final_sender || occ[p].empty()) continue;
            const int s = *occ[p].begin();
            occ[p].erase(s);
            script.push_back(MeasureCorrect{p, s, {}});
            dest = {p, s};
            break;
        }
    }
    const int src = *occ[final_sender].begin();
    script.push_back(Send{final_sender, src, dest->first, dest->second});
    return script;
}

}  // namespace entaudit
