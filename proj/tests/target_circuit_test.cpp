#include <doctest.h>

#include <filesystem>
#include <random>

#include "entaudit/float_rank.hpp"
#include "entaudit/target_circuit.hpp"

using namespace entaudit;

namespace {

// Independent oracle for the rescaled all-pi/4 state: amplitude at basis x is
// the product over gates of (1+i) when the two endpoint bits agree and (1-i)
// when they differ, because sqrt(2) e^{+-i pi/4} = 1 +- i and sqrt(2)|+> has
// unit entries. No gate engine involved.
GaussInt closed_form_amplitude(const GateLayout& layout, std::size_t x) {
    GaussInt amp(1, 0);
    for (const auto& [a, b] : layout.pairs) {
        const bool bit_a = (x >> (8 - a)) & 1;
        const bool bit_b = (x >> (8 - b)) & 1;
        amp = amp * (bit_a == bit_b ? GaussInt(1, 1) : GaussInt(1, -1));
    }
    return amp;
}

std::vector<std::size_t> all_positions_of_mask(unsigned mask) {
    std::vector<std::size_t> pos;
    for (int k = 1; k <= 8; ++k)
        if (mask & (1u << (k - 1))) pos.push_back(static_cast<std::size_t>(k - 1));
    return pos;
}

}  // namespace

TEST_CASE("layout validation") {
    GateLayout ok = default_layout();
    CHECK_NOTHROW(ok.validate());
    CHECK(ok.is_spanning_tree());

    GateLayout self = ok;
    self.pairs[0] = {3, 3};
    CHECK_THROWS_AS(self.validate(), std::invalid_argument);

    GateLayout disconnected = ok;
    for (auto& p : disconnected.pairs) p = {1, 2};
    CHECK_THROWS_AS(disconnected.validate(), std::invalid_argument);
}

TEST_CASE("default layout carries its own gate indexing") {
    // Gate i acts on party v_i; the distribution protocol relies on this.
    const GateLayout layout = default_layout();
    for (int i = 1; i <= kNumGates; ++i) {
        const auto& [a, b] = layout.pairs[i - 1];
        CHECK((a == i || b == i));
    }
}

TEST_CASE("all-zero angles give the product state") {
    const PureState psi = build_target_state(default_layout(), AlphaTuple::zeros(),
                                             Backend::Exact);
    CHECK(psi.exact().half_power == 8);
    for (const auto& e : psi.exact().entries) CHECK(e == GaussInt(1));
    for (unsigned mask = 1; mask < 255; ++mask)
        CHECK(schmidt_rank_exact(psi.exact(), all_positions_of_mask(mask)) == 1);
}

TEST_CASE("all-pi/4 state matches the closed-form oracle") {
    const GateLayout layout = default_layout();
    const PureState psi = build_target_state(layout, AlphaTuple::quarter_pi(), Backend::Exact);
    CHECK(psi.exact().half_power == 15);
    CHECK(psi.exact().entries.size() == 256);
    for (std::size_t x = 0; x < 256; ++x)
        CHECK(psi.exact().entries[x] == closed_form_amplitude(layout, x));
    // All bits agreeing gives (1+i)^7 = 8 - 8i.
    CHECK(psi.exact().entries[0] == GaussInt(8, -8));
}

TEST_CASE("all-pi/4 state is fully entangled") {
    const PureState psi = build_target_state(default_layout(), AlphaTuple::quarter_pi(),
                                             Backend::Exact);
    for (unsigned mask = 1; mask < 255; ++mask)
        CHECK(schmidt_rank_exact(psi.exact(), all_positions_of_mask(mask)) >= 2);
}

TEST_CASE("reshaping the pi/4 state at the half cut matches the oracle") {
    const GateLayout layout = default_layout();
    const PureState psi = build_target_state(layout, AlphaTuple::quarter_pi(), Backend::Exact);
    const ExactMatrix m = reshape_to_matrix(psi.exact(), {0, 1, 2, 3});
    REQUIRE(m.rows == 16);
    REQUIRE(m.cols == 16);
    for (std::size_t r = 0; r < 16; ++r)
        for (std::size_t c = 0; c < 16; ++c)
            CHECK(m.at(r, c) == closed_form_amplitude(layout, (r << 4) | c));
}

TEST_CASE("a single active gate entangles exactly its endpoints") {
    const GateLayout layout = default_layout();
    AlphaTuple alpha = AlphaTuple::zeros();
    alpha.alphas[0] = kQuarterPi;
    const PureState psi = build_target_state(layout, alpha, Backend::Exact);
    const auto [a, b] = layout.pairs[0];
    const unsigned pair_mask = (1u << (a - 1)) | (1u << (b - 1));
    for (unsigned mask = 1; mask < 255; ++mask) {
        const bool splits = (mask & pair_mask) != 0 && (mask & pair_mask) != pair_mask;
        CHECK(schmidt_rank_exact(psi.exact(), all_positions_of_mask(mask)) ==
              (splits ? 2u : 1u));
    }
}

TEST_CASE("commuting gate reordering leaves the state unchanged") {
    std::mt19937 rng(17);
    const GateLayout layout = default_layout();
    AlphaTuple alpha;
    for (auto& a : alpha.alphas) a = (rng() & 1) ? kQuarterPi : 0.0;
    const PureState base = build_target_state(layout, alpha, Backend::Exact);

    std::array<int, kNumGates> perm{};
    std::iota(perm.begin(), perm.end(), 0);
    for (int t = 0; t < 10; ++t) {
        std::shuffle(perm.begin(), perm.end(), rng);
        GateLayout shuffled;
        AlphaTuple shuffled_alpha;
        for (int i = 0; i < kNumGates; ++i) {
            shuffled.pairs[i] = layout.pairs[perm[i]];
            shuffled_alpha.alphas[i] = alpha.alphas[perm[i]];
        }
        const PureState got = build_target_state(shuffled, shuffled_alpha, Backend::Exact);
        CHECK(equal_states_strict(got.exact(), base.exact()));
    }
}

TEST_CASE("angles are 2*pi periodic in the floating build") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> dist(0.0, 2.0 * kPi);
    AlphaTuple alpha;
    for (auto& a : alpha.alphas) a = dist(rng);
    const PureState base = build_target_state(default_layout(), alpha, Backend::Floating);
    for (int i = 0; i < kNumGates; ++i) {
        // Adding a full 2*pi turn to any one gate leaves the output fixed;
        // the gates commute, so this is psi(alpha) == psi(alpha + 2*pi e_i).
        const PureState moved =
            apply_zz_phase(base, target_qubit(default_layout().pairs[i].first),
                           target_qubit(default_layout().pairs[i].second), 2.0 * kPi);
        CHECK(same_state_floating(moved, base, 1e-9));
    }
}

TEST_CASE("exact and floating pi/4 builds agree") {
    const PureState e = build_target_state(default_layout(), AlphaTuple::quarter_pi(),
                                           Backend::Exact);
    const PureState f = build_target_state(default_layout(), AlphaTuple::quarter_pi(),
                                           Backend::Floating);
    const auto ve = e.to_amplitudes();
    const auto vf = f.amplitudes();
    for (std::size_t i = 0; i < ve.size(); ++i) CHECK(std::abs(ve[i] - vf[i]) < 1e-12);
}

TEST_CASE("exact mode rejects generic angles") {
    AlphaTuple alpha = AlphaTuple::zeros();
    alpha.alphas[3] = 1.0;
    CHECK_THROWS_AS(build_target_state(default_layout(), alpha, Backend::Exact),
                    std::invalid_argument);
    alpha.alphas[3] = -0.1;
    CHECK_THROWS_AS(build_target_state(default_layout(), alpha, Backend::Floating),
                    std::invalid_argument);
}

TEST_CASE("layout files round-trip") {
    const auto path = std::filesystem::temp_directory_path() / "entaudit_layout_test.txt";
    write_layout_file(default_layout(), path.string());
    const GateLayout back = read_layout_file(path.string());
    CHECK(back.pairs == default_layout().pairs);
    std::filesystem::remove(path);
    CHECK_THROWS_AS(read_layout_file("/nonexistent/layout.txt"), std::runtime_error);
}
