// Copyright 2026 The wexpand Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "wexpand/state.hpp"

#include <cmath>
#include <random>

#include "gtest/gtest.h"

#include "test_util.hpp"
#include "wexpand/gates.hpp"
#include "wexpand/schemes.hpp"

using namespace wexpand;
using wexpand::testing::haar_state;
using wexpand::testing::labels;
using wexpand::testing::max_amp_diff;

namespace {

constexpr auto H = Polarization::H;
constexpr auto V = Polarization::V;
const double kS = 1.0 / std::sqrt(2.0);

}  // namespace

TEST(state, basis_state_encodes_labels) {
    PureState s = basis_state({{1, H}, {2, V}});
    ASSERT_EQ(s.num_modes(), 2u);
    EXPECT_EQ(s.amplitude(0b10), Amplitude(1));
    EXPECT_EQ(s.amplitude({{2, V}, {1, H}}), Amplitude(1));
    EXPECT_DOUBLE_EQ(s.norm_squared(), 1.0);

    PureState v = basis_state({{1, V}});
    EXPECT_EQ(v.amplitude(1), Amplitude(1));
    EXPECT_EQ(v.amplitude(0), Amplitude(0));
}

TEST(state, basis_state_rejects_duplicates_and_empty) {
    EXPECT_THROW(basis_state({{1, H}, {1, V}}), std::invalid_argument);
    EXPECT_THROW(basis_state({}), std::invalid_argument);
}

TEST(state, constructor_checks_invariants) {
    EXPECT_THROW(PureState({1, 2}, {1, 0, 0}), std::invalid_argument);
    EXPECT_THROW(PureState({1, 1}, {1, 0, 0, 0}), std::invalid_argument);
    EXPECT_THROW(PureState({1}, {1, 1}), std::invalid_argument);
    EXPECT_NO_THROW(PureState({1}, {0.5, 0}));
    std::vector<ModeId> too_many;
    for (std::size_t i = 0; i <= kMaxModes; ++i) too_many.emplace_back(static_cast<int>(i));
    EXPECT_THROW(PureState::zero(too_many), ResourceLimitError);
}

TEST(state, mode_labels_int_and_string_agree) {
    EXPECT_EQ(ModeId(2), ModeId("2"));
    EXPECT_NE(ModeId("0'"), ModeId("0"));
    EXPECT_THROW(ModeId(""), std::invalid_argument);
}

TEST(state, apply_1q_examples) {
    PureState h = basis_state({{1, H}});
    PureState x = apply_1q(h, pauli_x(), 1);
    EXPECT_EQ(x.amplitude(1), Amplitude(1));
    EXPECT_EQ(x.amplitude(0), Amplitude(0));

    PureState plus = apply_1q(h, hadamard(), 1);
    EXPECT_NEAR(std::abs(plus.amplitude(0) - kS), 0, kTolerance);
    EXPECT_NEAR(std::abs(plus.amplitude(1) - kS), 0, kTolerance);

    PureState v = basis_state({{1, V}});
    PureState back = apply_1q(apply_1q(v, hadamard(), 1), hadamard(), 1);
    EXPECT_LE(max_amp_diff(back, v), kTolerance);
}

TEST(state, apply_1q_errors) {
    PureState s = basis_state({{1, H}});
    EXPECT_THROW(apply_1q(s, pauli_x(), 7), std::invalid_argument);
    EXPECT_THROW(apply_1q(s, cnot(), 1), std::invalid_argument);
}

TEST(state, apply_1q_targets_only_its_mode) {
    PureState s = basis_state({{"a", H}, {"b", H}, {"c", H}});
    s = apply_1q(s, pauli_x(), "b");
    EXPECT_EQ(s.amplitude({{"a", H}, {"b", V}, {"c", H}}), Amplitude(1));
}

TEST(state, apply_2q_cnot_examples) {
    PureState vh = basis_state({{"a", V}, {"b", H}});
    PureState out = apply_2q(vh, cnot(), "a", "b");
    EXPECT_EQ(out.amplitude({{"a", V}, {"b", V}}), Amplitude(1));

    PureState hh = basis_state({{"a", H}, {"b", H}});
    EXPECT_EQ(apply_2q(hh, cnot(), "a", "b"), hh);

    // Control on b now: |V>_a|H>_b is untouched.
    EXPECT_EQ(apply_2q(vh, cnot(), "b", "a"), vh);
}

TEST(state, apply_2q_ch_control_second) {
    // CH(control = 2, target = 1) on |V>_1 |V>_2 -> (|H> - |V>)_1 |V>_2 / sqrt(2).
    PureState vv = basis_state({{1, V}, {2, V}});
    PureState out = apply_2q(vv, ch_direct(), 1, 2);
    EXPECT_NEAR(std::abs(out.amplitude({{1, H}, {2, V}}) - kS), 0, kTolerance);
    EXPECT_NEAR(std::abs(out.amplitude({{1, V}, {2, V}}) + kS), 0, kTolerance);
    EXPECT_NEAR(out.norm_squared(), 1.0, kTolerance);
}

TEST(state, apply_2q_errors) {
    PureState s = basis_state({{1, H}, {2, H}});
    EXPECT_THROW(apply_2q(s, cnot(), 1, 1), std::invalid_argument);
    EXPECT_THROW(apply_2q(s, cnot(), 1, 3), std::invalid_argument);
    EXPECT_THROW(apply_2q(s, hadamard(), 1, 2), std::invalid_argument);
}

TEST(state, apply_2q_matches_dense_oracle_on_embedded_pairs) {
    // Independent route: expand the 4x4 gate to the full register by explicit index arithmetic.
    std::mt19937_64 rng(11);
    auto modes = labels(4);
    PureState psi = haar_state(modes, rng);
    for (const auto &gate : {cnot(), cz(), ch_direct()}) {
        for (std::size_t a = 0; a < 4; ++a) {
            for (std::size_t b = 0; b < 4; ++b) {
                if (a == b) continue;
                PureState got = apply_2q(psi, gate, modes[a], modes[b]);
                std::vector<Amplitude> want(16);
                for (std::size_t out = 0; out < 16; ++out) {
                    for (std::size_t in = 0; in < 16; ++in) {
                        // Spectator bits must agree.
                        std::size_t spect = ~((std::size_t{1} << a) | (std::size_t{1} << b)) & 15;
                        if ((out & spect) != (in & spect)) continue;
                        std::size_t r = 2 * ((out >> a) & 1) + ((out >> b) & 1);
                        std::size_t c = 2 * ((in >> a) & 1) + ((in >> b) & 1);
                        want[out] += gate(r, c) * psi.amplitude(in);
                    }
                }
                for (std::size_t k = 0; k < 16; ++k) {
                    ASSERT_NEAR(std::abs(got.amplitude(k) - want[k]), 0, kTolerance) << gate.name();
                }
            }
        }
    }
}

TEST(state, pdl_filter_examples) {
    PureState v = basis_state({{"0'", V}});
    PureState fv = pdl_filter(v, {"0'"});
    EXPECT_NEAR(std::abs(fv.amplitude(1) - kS), 0, kTolerance);
    EXPECT_NEAR(fv.norm_squared(), 0.5, kTolerance);

    PureState h = basis_state({{"0'", H}});
    EXPECT_EQ(pdl_filter(h, {"0'"}), h);

    EXPECT_THROW(pdl_filter(h, {"9"}), std::invalid_argument);
}

TEST(state, pdl_filter_on_weighted_w3) {
    // Block output on |H>_1 |Psi+>_{2,0'} before PDL: (|HHV> + |HVH> + |VHH>) / sqrt(2) weights
    // 1/sqrt(2), 1/2, 1/2.
    PureState s = tensor(basis_state({{1, H}}), ideal_w(WSpec{{2, "0'"}}));
    s = expansion_block(s, 1, 2);
    PureState filtered = pdl_filter(s, {"0'"});
    EXPECT_NEAR(filtered.norm_squared(), 0.75, kTolerance);
}

TEST(state, measure_examples) {
    PureState w3 = ideal_w(WSpec::numbered(3));
    auto b = measure(w3, 3);
    // Brute force: one of the three equal-weight terms has V on mode 3.
    EXPECT_NEAR(b.v.probability, 1.0 / 3.0, kTolerance);
    EXPECT_NEAR(b.h.probability, 2.0 / 3.0, kTolerance);
    EXPECT_NEAR(b.v.post_state.norm_squared(), 1.0, kTolerance);
    EXPECT_EQ(b.v.post_state.num_modes(), 3u);

    PureState h = basis_state({{1, H}});
    auto bh = measure(h, 1);
    EXPECT_DOUBLE_EQ(bh.h.probability, 1.0);
    EXPECT_DOUBLE_EQ(bh.v.probability, 0.0);
    EXPECT_DOUBLE_EQ(bh.v.post_state.norm_squared(), 0.0);

    for (std::size_t big_n = 1; big_n <= 4; ++big_n) {
        PureState w = ideal_w(WSpec::numbered(2 * big_n + 2));
        auto r = measure(w, static_cast<int>(2 * big_n + 2), true);
        EXPECT_NEAR(r.h.probability, 1.0 - 1.0 / (2.0 * (big_n + 1)), kTolerance);
        EXPECT_EQ(r.h.post_state.num_modes(), 2 * big_n + 1);
    }
}

TEST(state, measure_errors) {
    EXPECT_THROW(measure(PureState::zero({1}), 1), std::invalid_argument);
    EXPECT_THROW(measure(basis_state({{1, H}}), 2), std::invalid_argument);
}

TEST(state, measure_remove_mode_keeps_label_order) {
    PureState s = tensor(ideal_w(WSpec{{"x", "y"}}), basis_state({{"z", V}}));
    auto b = measure(s, "x", true);
    ASSERT_EQ(b.h.post_state.modes(), (std::vector<ModeId>{"y", "z"}));
    EXPECT_NEAR(std::abs(b.h.post_state.amplitude({{"y", V}, {"z", V}}) - 1.0), 0, kTolerance);
}

TEST(state, fidelity_examples) {
    WSpec spec = WSpec::numbered(3);
    PureState w3 = ideal_w(spec);
    EXPECT_NEAR(fidelity(w3, w3), 1.0, kTolerance);
    PureState hhh = basis_state({{1, H}, {2, H}, {3, H}});
    EXPECT_NEAR(fidelity(hhh, w3), 0.0, kTolerance);
    EXPECT_THROW(fidelity(hhh, ideal_w(WSpec::numbered(3, 2))), std::invalid_argument);
}

TEST(state, fidelity_aligns_labels_and_ignores_scale_and_phase) {
    std::mt19937_64 rng(3);
    PureState psi = haar_state(labels(3), rng);
    std::vector<ModeId> order = {3, 1, 2};
    PureState shuffled = psi.permuted(order);
    EXPECT_NEAR(fidelity(psi, shuffled), 1.0, kTolerance);

    PureState scaled = psi;
    for (auto &a : scaled.mutable_amplitudes()) a *= Amplitude(0, 0.5);
    EXPECT_NEAR(fidelity(scaled, psi), 1.0, kTolerance);
}

TEST(state, tensor_norm_renormalize) {
    PureState t = tensor(basis_state({{1, H}}), basis_state({{2, V}}));
    EXPECT_EQ(t, basis_state({{1, H}, {2, V}}));
    EXPECT_THROW(tensor(basis_state({{1, H}}), basis_state({{1, V}})), std::invalid_argument);

    EXPECT_NEAR(norm_squared(pdl_filter(basis_state({{1, V}}), {1})), 0.5, kTolerance);

    PureState half({1}, {0.5, 0});
    PureState r = renormalize(half);
    EXPECT_NEAR(std::abs(r.amplitude(0) - 1.0), 0, kTolerance);
    EXPECT_THROW(renormalize(PureState::zero({1})), std::invalid_argument);
}

TEST(state, to_string_hides_tiny_amplitudes) {
    PureState s({1}, {1.0, 1e-15});
    EXPECT_EQ(s.to_string(), "1|H>  [1]");
}

// Properties over randomized inputs (fixed seeds).

TEST(state_properties, unitary_gates_preserve_norm) {
    std::mt19937_64 rng(2026);
    std::uniform_int_distribution<std::size_t> size(2, 10);
    for (int trial = 0; trial < 40; ++trial) {
        auto modes = labels(size(rng));
        PureState psi = haar_state(modes, rng);
        std::uniform_int_distribution<std::size_t> pick(0, modes.size() - 1);
        for (const auto &g : registered_gates()) {
            std::size_t a = pick(rng), b = pick(rng);
            while (b == a) b = pick(rng);
            PureState out = g.dim() == 2 ? apply_1q(psi, g, modes[a]) : apply_2q(psi, g, modes[a], modes[b]);
            ASSERT_NEAR(out.norm_squared(), psi.norm_squared(), kTolerance) << g.name();
        }
    }
}

TEST(state_properties, pdl_contracts_and_fixes_h_support) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        auto modes = labels(5);
        PureState psi = haar_state(modes, rng);
        PureState out = pdl_filter(psi, {modes[trial % 5], modes[(trial + 2) % 5]});
        ASSERT_LE(out.norm_squared(), psi.norm_squared() + kTolerance);
    }
    PureState all_h = basis_state({{1, H}, {2, H}, {3, H}});
    EXPECT_EQ(pdl_filter(all_h, {1, 2, 3}), all_h);
}

TEST(state_properties, measurement_branches_are_complete) {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 30; ++trial) {
        auto modes = labels(1 + trial % 8);
        PureState psi = haar_state(modes, rng);
        if (trial % 3 == 0) psi = pdl_filter(psi, {modes[0]});
        auto b = measure(psi, modes[trial % modes.size()], trial % 2 == 0);
        ASSERT_NEAR(b.h.probability + b.v.probability, psi.norm_squared(), kTolerance);
        ASSERT_NEAR(b.h.post_state.norm_squared(), 1.0, kTolerance);
        ASSERT_NEAR(b.v.post_state.norm_squared(), 1.0, kTolerance);
    }
}

TEST(state_properties, disjoint_gates_commute) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        auto modes = labels(6);
        PureState psi = haar_state(modes, rng);
        GateMatrix g1 = hwp(0.3 * trial);
        GateMatrix g2 = hadamard();
        PureState ab = apply_2q(apply_1q(psi, g1, 1), ch_direct(), 3, 5);
        PureState ba = apply_1q(apply_2q(psi, ch_direct(), 3, 5), g1, 1);
        ASSERT_LE(max_amp_diff(ab, ba), kTolerance);
        PureState cd = apply_1q(apply_1q(psi, g1, 2), g2, 6);
        PureState dc = apply_1q(apply_1q(psi, g2, 6), g1, 2);
        ASSERT_LE(max_amp_diff(cd, dc), kTolerance);
    }
}

TEST(state_properties, cnot_matches_dense_oracle_on_basis_states) {
    // Textbook CNOT (control first) as a literal 4x4 table, independent of gates.cpp.
    const int table[4][4] = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}};
    for (int in = 0; in < 4; ++in) {
        Polarization a = (in >> 1) ? V : H;
        Polarization b = (in & 1) ? V : H;
        PureState out = apply_2q(basis_state({{"a", a}, {"b", b}}), cnot(), "a", "b");
        for (int r = 0; r < 4; ++r) {
            Polarization ra = (r >> 1) ? V : H;
            Polarization rb = (r & 1) ? V : H;
            EXPECT_EQ(out.amplitude({{"a", ra}, {"b", rb}}), Amplitude(table[r][in]));
        }
    }
}
