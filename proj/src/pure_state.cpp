#include "entaudit/pure_state.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace entaudit {

namespace {

bool is_exact_angle(double alpha) { return alpha == 0.0 || alpha == kQuarterPi; }

double mpz_ratio(const mpz_class& num, const mpz_class& den) {
    mpq_class q(num, den);
    q.canonicalize();
    return q.get_d();
}

}  // namespace

Party parse_party(const std::string& token) {
    if (token.size() < 2 || token[0] != 'v')
        throw std::invalid_argument("bad party token '" + token + "' (expected like v3)");
    for (std::size_t i = 1; i < token.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(token[i])))
            throw std::invalid_argument("bad party token '" + token + "'");
    return Party{std::stoi(token.substr(1))};
}

QubitLabel parse_qubit_label(const std::string& token) {
    const auto colon = token.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("bad qubit token '" + token + "' (expected like v3:1)");
    return {parse_party(token.substr(0, colon)), std::stoi(token.substr(colon + 1))};
}

PureState PureState::empty(Backend backend) {
    PureState s;
    s.backend_ = backend;
    if (backend == Backend::Floating) {
        s.exact_ = ScaledVector{};
        s.amps_ = {1.0};
    } else {
        s.amps_.clear();
    }
    return s;
}

PureState PureState::plus_state(const std::vector<QubitLabel>& labels, Backend backend) {
    if (labels.empty()) throw std::invalid_argument("plus state needs at least one qubit");
    std::set<QubitLabel> seen(labels.begin(), labels.end());
    if (seen.size() != labels.size()) throw std::invalid_argument("duplicate qubit labels");

    PureState s;
    s.labels_ = labels;
    s.backend_ = backend;
    const std::size_t dim = std::size_t{1} << labels.size();
    if (backend == Backend::Exact) {
        s.exact_.entries.assign(dim, GaussInt(1));
        s.exact_.half_power = static_cast<long>(labels.size());
        s.amps_.clear();
    } else {
        const double a = std::pow(0.5, static_cast<double>(labels.size()) / 2.0);
        s.amps_.assign(dim, a);
        s.exact_ = ScaledVector{};
    }
    return s;
}

PureState init_plus(const std::vector<QubitLabel>& labels, Backend backend) {
    return PureState::plus_state(labels, backend);
}

PureState PureState::from_exact(const std::vector<QubitLabel>& labels, ScaledVector v) {
    if (v.entries.size() != (std::size_t{1} << labels.size()))
        throw std::invalid_argument("entry count does not match label count");
    std::set<QubitLabel> seen(labels.begin(), labels.end());
    if (seen.size() != labels.size()) throw std::invalid_argument("duplicate qubit labels");
    if (v.is_zero()) throw std::invalid_argument("exact state must be nonzero");
    PureState s;
    s.labels_ = labels;
    s.backend_ = Backend::Exact;
    s.exact_ = std::move(v);
    s.amps_.clear();
    return s;
}

PureState PureState::from_amplitudes(const std::vector<QubitLabel>& labels,
                                     std::vector<std::complex<double>> amps) {
    if (amps.size() != (std::size_t{1} << labels.size()))
        throw std::invalid_argument("amplitude count does not match label count");
    std::set<QubitLabel> seen(labels.begin(), labels.end());
    if (seen.size() != labels.size()) throw std::invalid_argument("duplicate qubit labels");
    double norm2 = 0.0;
    for (const auto& z : amps) norm2 += std::norm(z);
    if (norm2 <= 0.0) throw std::invalid_argument("floating state must be nonzero");
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& z : amps) z *= inv;
    PureState s;
    s.labels_ = labels;
    s.backend_ = Backend::Floating;
    s.exact_ = ScaledVector{};
    s.amps_ = std::move(amps);
    return s;
}

bool PureState::has_label(const QubitLabel& l) const {
    return std::find(labels_.begin(), labels_.end(), l) != labels_.end();
}

std::size_t PureState::position_of(const QubitLabel& l) const {
    const auto it = std::find(labels_.begin(), labels_.end(), l);
    if (it == labels_.end())
        throw std::invalid_argument("no qubit labeled " + l.name() + " in this state");
    return static_cast<std::size_t>(it - labels_.begin());
}

const ScaledVector& PureState::exact() const {
    if (backend_ != Backend::Exact) throw std::logic_error("state has no exact backend");
    return exact_;
}

const std::vector<std::complex<double>>& PureState::amplitudes() const {
    if (backend_ != Backend::Floating) throw std::logic_error("state has no floating backend");
    return amps_;
}

std::vector<std::complex<double>> PureState::to_amplitudes() const {
    if (backend_ == Backend::Floating) return amps_;
    std::vector<std::complex<double>> out(exact_.entries.size());
    const double scale = std::pow(2.0, -static_cast<double>(exact_.half_power) / 2.0);
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = {exact_.entries[i].re.get_d() * scale, exact_.entries[i].im.get_d() * scale};
    return out;
}

PureState PureState::sorted_by_label() const {
    std::vector<std::size_t> order(labels_.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return labels_[a] < labels_[b]; });

    const std::size_t n = labels_.size();
    PureState out;
    out.backend_ = backend_;
    out.labels_.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.labels_[i] = labels_[order[i]];

    const std::size_t dim = std::size_t{1} << n;
    const auto permute_index = [&](std::size_t x) {
        std::size_t y = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t bit = (x >> (n - 1 - order[i])) & 1;
            y |= bit << (n - 1 - i);
        }
        return y;
    };
    if (backend_ == Backend::Exact) {
        out.exact_.entries.assign(dim, GaussInt(0));
        out.exact_.half_power = exact_.half_power;
        out.amps_.clear();
        for (std::size_t x = 0; x < dim; ++x) out.exact_.entries[permute_index(x)] = exact_.entries[x];
    } else {
        out.amps_.assign(dim, 0.0);
        out.exact_ = ScaledVector{};
        for (std::size_t x = 0; x < dim; ++x) out.amps_[permute_index(x)] = amps_[x];
    }
    return out;
}

PureState PureState::relabeled(const QubitLabel& from, const QubitLabel& to) const {
    if (from != to && has_label(to))
        throw std::invalid_argument("relabel target " + to.name() + " already present");
    PureState out = *this;
    out.labels_[position_of(from)] = to;
    return out;
}

PureState PureState::appended_plus(const QubitLabel& l) const {
    if (has_label(l)) throw std::invalid_argument("label " + l.name() + " already present");
    PureState out;
    out.backend_ = backend_;
    out.labels_ = labels_;
    out.labels_.push_back(l);
    if (backend_ == Backend::Exact) {
        out.exact_.entries.resize(exact_.entries.size() * 2);
        for (std::size_t x = 0; x < exact_.entries.size(); ++x) {
            out.exact_.entries[2 * x] = exact_.entries[x];
            out.exact_.entries[2 * x + 1] = exact_.entries[x];
        }
        out.exact_.half_power = exact_.half_power + 1;
        out.amps_.clear();
    } else {
        const double r = std::sqrt(0.5);
        out.amps_.resize(amps_.size() * 2);
        for (std::size_t x = 0; x < amps_.size(); ++x) {
            out.amps_[2 * x] = amps_[x] * r;
            out.amps_[2 * x + 1] = amps_[x] * r;
        }
        out.exact_ = ScaledVector{};
    }
    return out;
}

PureState apply_cz(const PureState& s, const QubitLabel& a, const QubitLabel& b) {
    if (a == b) throw std::invalid_argument("cz needs two distinct qubits");
    const std::size_t n = s.n_qubits();
    const std::size_t pa = s.position_of(a), pb = s.position_of(b);
    PureState out = s;
    const std::size_t ma = std::size_t{1} << (n - 1 - pa);
    const std::size_t mb = std::size_t{1} << (n - 1 - pb);
    const std::size_t dim = std::size_t{1} << n;
    for (std::size_t x = 0; x < dim; ++x)
        if ((x & ma) && (x & mb)) {
            if (s.backend_ == Backend::Exact)
                out.exact_.entries[x] = -out.exact_.entries[x];
            else
                out.amps_[x] = -out.amps_[x];
        }
    return out;
}

PureState apply_zz_phase(const PureState& s, const QubitLabel& a, const QubitLabel& b,
                         double alpha) {
    if (a == b) throw std::invalid_argument("zz phase needs two distinct qubits");
    const std::size_t n = s.n_qubits();
    const std::size_t pa = s.position_of(a), pb = s.position_of(b);
    const std::size_t ma = std::size_t{1} << (n - 1 - pa);
    const std::size_t mb = std::size_t{1} << (n - 1 - pb);
    const std::size_t dim = std::size_t{1} << n;
    PureState out = s;
    if (s.backend_ == Backend::Exact) {
        if (!is_exact_angle(alpha))
            throw std::invalid_argument("exact mode supports alpha in {0, pi/4} only");
        if (alpha == 0.0) return out;
        const GaussInt even(1, 1), odd(1, -1);  // sqrt(2)*e^{+-i pi/4}
        for (std::size_t x = 0; x < dim; ++x) {
            const bool parity = ((x & ma) != 0) != ((x & mb) != 0);
            out.exact_.entries[x] = out.exact_.entries[x] * (parity ? odd : even);
        }
        out.exact_.half_power += 1;
    } else {
        const std::complex<double> even = std::polar(1.0, alpha);
        const std::complex<double> odd = std::polar(1.0, -alpha);
        for (std::size_t x = 0; x < dim; ++x) {
            const bool parity = ((x & ma) != 0) != ((x & mb) != 0);
            out.amps_[x] *= parity ? odd : even;
        }
    }
    return out;
}

PureState apply_x_rotation(const PureState& s, const QubitLabel& l, double alpha) {
    const std::size_t n = s.n_qubits();
    const std::size_t m = std::size_t{1} << (n - 1 - s.position_of(l));
    const std::size_t dim = std::size_t{1} << n;
    PureState out = s;
    if (s.backend_ == Backend::Exact) {
        if (!is_exact_angle(alpha))
            throw std::invalid_argument("exact mode supports alpha in {0, pi/4} only");
        if (alpha == 0.0) return out;
        // sqrt(2)*exp(i pi/4 X) = I + iX
        const GaussInt i_unit(0, 1);
        for (std::size_t x = 0; x < dim; ++x)
            if (!(x & m))
                out.exact_.entries[x] = s.exact_.entries[x] + i_unit * s.exact_.entries[x ^ m];
        for (std::size_t x = 0; x < dim; ++x)
            if (x & m)
                out.exact_.entries[x] = s.exact_.entries[x] + i_unit * s.exact_.entries[x ^ m];
        out.exact_.half_power += 1;
    } else {
        const double c = std::cos(alpha);
        const std::complex<double> is{0.0, std::sin(alpha)};
        for (std::size_t x = 0; x < dim; ++x)
            out.amps_[x] = c * s.amps_[x] + is * s.amps_[x ^ m];
    }
    return out;
}

PureState apply_pauli_x(const PureState& s, const QubitLabel& l) {
    const std::size_t n = s.n_qubits();
    const std::size_t m = std::size_t{1} << (n - 1 - s.position_of(l));
    PureState out = s;
    const std::size_t dim = std::size_t{1} << n;
    for (std::size_t x = 0; x < dim; ++x)
        if (!(x & m)) {
            if (s.backend_ == Backend::Exact)
                std::swap(out.exact_.entries[x], out.exact_.entries[x ^ m]);
            else
                std::swap(out.amps_[x], out.amps_[x ^ m]);
        }
    return out;
}

PureState apply_pauli_z(const PureState& s, const QubitLabel& l) {
    const std::size_t n = s.n_qubits();
    const std::size_t m = std::size_t{1} << (n - 1 - s.position_of(l));
    PureState out = s;
    const std::size_t dim = std::size_t{1} << n;
    for (std::size_t x = 0; x < dim; ++x)
        if (x & m) {
            if (s.backend_ == Backend::Exact)
                out.exact_.entries[x] = -out.exact_.entries[x];
            else
                out.amps_[x] = -out.amps_[x];
        }
    return out;
}

PureState apply_local_unitary(const PureState& s, const QubitLabel& l,
                              const std::array<std::complex<double>, 4>& u) {
    if (s.backend_ != Backend::Floating)
        throw std::invalid_argument("general one-qubit gates need the floating backend");
    // U U^dag = I within 1e-10.
    const auto c = [](std::complex<double> z) { return std::conj(z); };
    const std::complex<double> g00 = u[0] * c(u[0]) + u[1] * c(u[1]);
    const std::complex<double> g01 = u[0] * c(u[2]) + u[1] * c(u[3]);
    const std::complex<double> g11 = u[2] * c(u[2]) + u[3] * c(u[3]);
    if (std::abs(g00 - 1.0) > 1e-10 || std::abs(g11 - 1.0) > 1e-10 || std::abs(g01) > 1e-10)
        throw std::invalid_argument("gate matrix is not unitary");

    const std::size_t n = s.n_qubits();
    const std::size_t m = std::size_t{1} << (n - 1 - s.position_of(l));
    PureState out = s;
    const std::size_t dim = std::size_t{1} << n;
    for (std::size_t x = 0; x < dim; ++x)
        if (!(x & m)) {
            const auto a0 = s.amps_[x], a1 = s.amps_[x | m];
            out.amps_[x] = u[0] * a0 + u[1] * a1;
            out.amps_[x | m] = u[2] * a0 + u[3] * a1;
        }
    return out;
}

MeasureResult measure_z(const PureState& s, const QubitLabel& l) {
    const std::size_t n = s.n_qubits();
    const std::size_t p = s.position_of(l);
    const std::size_t m = std::size_t{1} << (n - 1 - p);
    const std::size_t dim = std::size_t{1} << n;
    const std::size_t half = dim / 2;

    MeasureResult res;
    std::vector<QubitLabel> rest;
    for (std::size_t i = 0; i < n; ++i)
        if (i != p) rest.push_back(s.labels()[i]);

    const auto sub_index = [&](std::size_t outcome, std::size_t y) {
        // y indexes the remaining qubits in order; reinsert the measured bit.
        const std::size_t high = y >> (n - 1 - p);
        const std::size_t low = y & (m - 1);
        return (high << (n - p)) | (outcome << (n - 1 - p)) | low;
    };

    if (s.backend() == Backend::Exact) {
        const ScaledVector& v = s.exact();
        std::array<mpz_class, 2> weight{0, 0};
        for (std::size_t x = 0; x < dim; ++x)
            weight[(x & m) ? 1 : 0] += v.entries[x].norm();
        const mpz_class total = weight[0] + weight[1];
        if (sgn(total) == 0) throw std::invalid_argument("measuring the zero state");
        res.prob0 = mpz_ratio(weight[0], total);
        res.prob1 = mpz_ratio(weight[1], total);
        for (std::size_t outcome = 0; outcome < 2; ++outcome) {
            if (sgn(weight[outcome]) == 0) continue;
            PureState post;
            post.backend_ = Backend::Exact;
            post.labels_ = rest;
            post.amps_.clear();
            post.exact_.entries.resize(half);
            for (std::size_t y = 0; y < half; ++y)
                post.exact_.entries[y] = v.entries[sub_index(outcome, y)];
            // Renormalize when the branch weight is 2^t: the post-state is
            // raw * 2^(-t/2) exactly.
            if (mpz_popcount(weight[outcome].get_mpz_t()) == 1)
                post.exact_.half_power =
                    static_cast<long>(mpz_scan1(weight[outcome].get_mpz_t(), 0));
            else
                post.exact_.half_power = v.half_power;
            if (outcome == 0)
                res.post0 = std::move(post);
            else
                res.post1 = std::move(post);
        }
    } else {
        const auto& a = s.amplitudes();
        double w0 = 0.0, w1 = 0.0;
        for (std::size_t x = 0; x < dim; ++x)
            ((x & m) ? w1 : w0) += std::norm(a[x]);
        const double total = w0 + w1;
        res.prob0 = w0 / total;
        res.prob1 = w1 / total;
        for (std::size_t outcome = 0; outcome < 2; ++outcome) {
            const double w = outcome ? w1 : w0;
            if (w <= 0.0) continue;
            PureState post;
            post.backend_ = Backend::Floating;
            post.labels_ = rest;
            post.exact_ = ScaledVector{};
            post.amps_.resize(half);
            const double inv = 1.0 / std::sqrt(w);
            for (std::size_t y = 0; y < half; ++y)
                post.amps_[y] = a[sub_index(outcome, y)] * inv;
            if (outcome == 0)
                res.post0 = std::move(post);
            else
                res.post1 = std::move(post);
        }
    }
    return res;
}

std::complex<double> overlap(const PureState& a, const PureState& b) {
    if (a.labels() != b.labels())
        throw std::invalid_argument("overlap needs identical qubit label order");
    const auto va = a.to_amplitudes();
    const auto vb = b.to_amplitudes();
    std::complex<double> s = 0.0;
    for (std::size_t i = 0; i < va.size(); ++i) s += std::conj(va[i]) * vb[i];
    return s;
}

bool same_state_floating(const PureState& a, const PureState& b, double tol) {
    const auto va = a.to_amplitudes();
    const auto vb = b.to_amplitudes();
    double na = 0.0, nb = 0.0;
    for (const auto& z : va) na += std::norm(z);
    for (const auto& z : vb) nb += std::norm(z);
    if (na == 0.0 || nb == 0.0) return false;
    return std::abs(overlap(a, b)) / std::sqrt(na * nb) >= 1.0 - tol;
}

bool same_state_exact(const PureState& a, const PureState& b) {
    if (a.labels() != b.labels()) return false;
    return equal_up_to_scale(a.exact(), b.exact());
}

}  // namespace entaudit
