#pragma once

#include <array>
#include <compare>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "entaudit/scaled_vector.hpp"

namespace entaudit {

// Parties are named v1, v2, ... throughout.
struct Party {
    int id = 0;

    std::string name() const { return "v" + std::to_string(id); }
    auto operator<=>(const Party&) const = default;
};

Party parse_party(const std::string& token);  // accepts "v3"

// One qubit slot held by a party. (party, slot) is unique within a state.
struct QubitLabel {
    Party party;
    int slot = 0;

    std::string name() const { return party.name() + ":" + std::to_string(slot); }
    auto operator<=>(const QubitLabel&) const = default;
};

QubitLabel parse_qubit_label(const std::string& token);  // accepts "v3:1"

enum class Backend { Exact, Floating };

struct MeasureResult;

constexpr double kPi = 3.14159265358979323846;
constexpr double kQuarterPi = kPi / 4.0;

// Dense pure state over labeled qubits. Qubit i in `labels()` order is the
// i-th most significant bit of the amplitude index. Values are immutable:
// every operation returns a new state.
class PureState {
public:
    PureState() = default;  // zero-qubit scalar state (amplitude 1, exact)

    static PureState empty(Backend backend);  // zero-qubit scalar on either backend

    static PureState plus_state(const std::vector<QubitLabel>& labels, Backend backend);

    // Wraps raw Gaussian-integer entries; the vector is treated projectively,
    // so it need not be normalized (ranks and feasibility don't care).
    static PureState from_exact(const std::vector<QubitLabel>& labels, ScaledVector v);

    // Wraps floating amplitudes, normalizing them.
    static PureState from_amplitudes(const std::vector<QubitLabel>& labels,
                                     std::vector<std::complex<double>> amps);

    Backend backend() const { return backend_; }
    std::size_t n_qubits() const { return labels_.size(); }
    const std::vector<QubitLabel>& labels() const { return labels_; }
    bool has_label(const QubitLabel& l) const;
    std::size_t position_of(const QubitLabel& l) const;  // throws if missing

    const ScaledVector& exact() const;
    const std::vector<std::complex<double>>& amplitudes() const;

    // Floating view of either backend (exact entries scaled by 2^(-k/2)).
    std::vector<std::complex<double>> to_amplitudes() const;

    PureState sorted_by_label() const;
    PureState relabeled(const QubitLabel& from, const QubitLabel& to) const;
    PureState appended_plus(const QubitLabel& l) const;  // tensor a fresh |+> at the end

private:
    std::vector<QubitLabel> labels_;
    Backend backend_ = Backend::Exact;
    ScaledVector exact_{{GaussInt(1)}, 0};
    std::vector<std::complex<double>> amps_{1.0};

    friend PureState apply_cz(const PureState&, const QubitLabel&, const QubitLabel&);
    friend PureState apply_zz_phase(const PureState&, const QubitLabel&, const QubitLabel&,
                                    double);
    friend PureState apply_x_rotation(const PureState&, const QubitLabel&, double);
    friend PureState apply_pauli_x(const PureState&, const QubitLabel&);
    friend PureState apply_pauli_z(const PureState&, const QubitLabel&);
    friend PureState apply_local_unitary(const PureState&,
                                         const QubitLabel&,
                                         const std::array<std::complex<double>, 4>&);
    friend MeasureResult measure_z(const PureState&, const QubitLabel&);
};

PureState init_plus(const std::vector<QubitLabel>& labels, Backend backend);

PureState apply_cz(const PureState& s, const QubitLabel& a, const QubitLabel& b);

// exp(i*alpha*Z(a)Z(b)). In exact mode only alpha in {0, pi/4} is
// representable: the rescaled gate sqrt(2)*exp(i pi/4 ZZ) = diag(1+i, 1-i,
// 1-i, 1+i) keeps entries integral and bumps half_power by one.
PureState apply_zz_phase(const PureState& s, const QubitLabel& a, const QubitLabel& b,
                         double alpha);

// exp(i*alpha*X). Exact mode supports {0, pi/4} via sqrt(2)*exp(i pi/4 X) = I + iX.
PureState apply_x_rotation(const PureState& s, const QubitLabel& l, double alpha);

PureState apply_pauli_x(const PureState& s, const QubitLabel& l);
PureState apply_pauli_z(const PureState& s, const QubitLabel& l);

// Arbitrary one-qubit gate, floating backend only; u is row-major
// {u00, u01, u10, u11} and must be unitary within 1e-10.
PureState apply_local_unitary(const PureState& s, const QubitLabel& l,
                              const std::array<std::complex<double>, 4>& u);

// Both outcomes of a Z measurement; the measured qubit is removed from the
// post-states and each branch is renormalized. No randomness: the caller
// chooses a branch. Zero-probability branches carry no post-state.
// Exact backend: a branch is renormalized when its raw weight is a power of
// two (every protocol in this library lands there); otherwise the entries are
// kept as-is and only the ray is meaningful.
struct MeasureResult {
    double prob0 = 0.0;
    double prob1 = 0.0;
    std::optional<PureState> post0;
    std::optional<PureState> post1;
};

MeasureResult measure_z(const PureState& s, const QubitLabel& l);

// <a|b> for same-label-order states (floating view).
std::complex<double> overlap(const PureState& a, const PureState& b);

// |<a|b>| >= 1 - tol after normalization; labels must match in order.
bool same_state_floating(const PureState& a, const PureState& b, double tol = 1e-9);

// Exact equality of the represented states, global phase included, scales
// normalized at comparison. Exact backends only.
bool same_state_exact(const PureState& a, const PureState& b);

}  // namespace entaudit
