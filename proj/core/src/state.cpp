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

#include <algorithm>
#include <array>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <unordered_set>

#include "wexpand/gates.hpp"

namespace wexpand {

namespace {

void check_unique(const std::vector<ModeId> &modes) {
    std::unordered_set<std::string> seen;
    for (const auto &m : modes) {
        if (!seen.insert(m.str()).second) {
            throw std::invalid_argument("duplicate mode label '" + m.str() + "'");
        }
    }
}

void check_size(std::size_t num_modes) {
    if (num_modes > kMaxModes) {
        throw ResourceLimitError(
            "register of " + std::to_string(num_modes) + " modes exceeds the limit of " +
            std::to_string(kMaxModes));
    }
}

// Inserts a zero bit at position `bit` of `k`.
inline std::uint64_t insert_zero_bit(std::uint64_t k, std::size_t bit) {
    std::uint64_t low = k & ((std::uint64_t{1} << bit) - 1);
    return ((k >> bit) << (bit + 1)) | low;
}

}  // namespace

char to_char(Polarization p) {
    return p == Polarization::H ? 'H' : 'V';
}

Polarization polarization_from_char(char c) {
    switch (c) {
        case 'H':
        case 'h':
        case '0':
            return Polarization::H;
        case 'V':
        case 'v':
        case '1':
            return Polarization::V;
        default:
            throw std::invalid_argument(std::string("not a polarization: '") + c + "'");
    }
}

ModeId::ModeId(std::string label) : label_(std::move(label)) {
    if (label_.empty()) {
        throw std::invalid_argument("mode label must be non-empty");
    }
}
ModeId::ModeId(const char *label) : ModeId(std::string(label)) {
}
ModeId::ModeId(int label) : label_(std::to_string(label)) {
}

std::ostream &operator<<(std::ostream &out, const ModeId &mode) {
    return out << mode.str();
}

PureState::PureState(std::vector<ModeId> modes, std::vector<Amplitude> amplitudes)
    : modes_(std::move(modes)), amplitudes_(std::move(amplitudes)) {
    check_size(modes_.size());
    check_unique(modes_);
    if (amplitudes_.size() != (std::size_t{1} << modes_.size())) {
        throw std::invalid_argument(
            "expected " + std::to_string(std::size_t{1} << modes_.size()) + " amplitudes for " +
            std::to_string(modes_.size()) + " modes, got " + std::to_string(amplitudes_.size()));
    }
    double n2 = norm_squared();
    if (!std::isfinite(n2) || n2 > 1.0 + kTolerance) {
        throw std::invalid_argument("state has squared norm " + std::to_string(n2) + " > 1");
    }
}

PureState PureState::zero(std::vector<ModeId> modes) {
    check_size(modes.size());
    std::size_t dim = std::size_t{1} << modes.size();
    return PureState(std::move(modes), std::vector<Amplitude>(dim));
}

bool PureState::has_mode(const ModeId &mode) const {
    return std::find(modes_.begin(), modes_.end(), mode) != modes_.end();
}

std::size_t PureState::bit_of(const ModeId &mode) const {
    auto it = std::find(modes_.begin(), modes_.end(), mode);
    if (it == modes_.end()) {
        throw std::invalid_argument("unknown mode '" + mode.str() + "'");
    }
    return static_cast<std::size_t>(it - modes_.begin());
}

Amplitude PureState::amplitude(std::span<const std::pair<ModeId, Polarization>> assignment) const {
    if (assignment.size() != modes_.size()) {
        throw std::invalid_argument("assignment must cover every mode");
    }
    std::uint64_t index = 0;
    std::uint64_t covered = 0;
    for (const auto &[mode, pol] : assignment) {
        std::size_t b = bit_of(mode);
        covered |= std::uint64_t{1} << b;
        if (pol == Polarization::V) {
            index |= std::uint64_t{1} << b;
        }
    }
    if (covered != dimension() - 1) {
        throw std::invalid_argument("assignment repeats a mode");
    }
    return amplitudes_[index];
}

double PureState::norm_squared() const {
    double total = 0;
    for (const auto &a : amplitudes_) {
        total += std::norm(a);
    }
    return total;
}

PureState PureState::permuted(std::span<const ModeId> order) const {
    if (order.size() != modes_.size()) {
        throw std::invalid_argument("mode sets differ in size");
    }
    // source_bit[j]: bit in *this holding the mode that becomes bit j.
    std::vector<std::size_t> source_bit(order.size());
    for (std::size_t j = 0; j < order.size(); ++j) {
        source_bit[j] = bit_of(order[j]);
    }
    std::vector<ModeId> new_modes(order.begin(), order.end());
    check_unique(new_modes);
    if (std::equal(new_modes.begin(), new_modes.end(), modes_.begin())) {
        return *this;
    }
    std::vector<Amplitude> out(amplitudes_.size());
    for (std::uint64_t k = 0; k < out.size(); ++k) {
        std::uint64_t src = 0;
        for (std::size_t j = 0; j < source_bit.size(); ++j) {
            src |= ((k >> j) & 1) << source_bit[j];
        }
        out[k] = amplitudes_[src];
    }
    return PureState(std::move(new_modes), std::move(out));
}

std::string PureState::to_string(int precision) const {
    std::ostringstream out;
    out << std::setprecision(precision);
    bool first = true;
    for (std::uint64_t k = 0; k < amplitudes_.size(); ++k) {
        Amplitude a = amplitudes_[k];
        if (std::abs(a) < kPrintCutoff) {
            continue;
        }
        if (!first) {
            out << " + ";
        }
        first = false;
        if (std::abs(a.imag()) < kPrintCutoff) {
            out << a.real();
        } else {
            out << "(" << a.real() << (a.imag() < 0 ? "-" : "+") << std::abs(a.imag()) << "i)";
        }
        out << "|";
        for (std::size_t j = 0; j < modes_.size(); ++j) {
            out << (((k >> j) & 1) ? 'V' : 'H');
        }
        out << ">";
    }
    if (first) {
        out << "0";
    }
    out << "  [";
    for (std::size_t j = 0; j < modes_.size(); ++j) {
        out << (j ? "," : "") << modes_[j];
    }
    out << "]";
    return out.str();
}

std::ostream &operator<<(std::ostream &out, const PureState &state) {
    return out << state.to_string();
}

PureState basis_state(std::span<const std::pair<ModeId, Polarization>> assignments) {
    if (assignments.empty()) {
        throw std::invalid_argument("basis_state needs at least one mode");
    }
    std::vector<ModeId> modes;
    modes.reserve(assignments.size());
    std::uint64_t index = 0;
    for (std::size_t j = 0; j < assignments.size(); ++j) {
        modes.push_back(assignments[j].first);
        if (assignments[j].second == Polarization::V) {
            index |= std::uint64_t{1} << j;
        }
    }
    check_size(modes.size());
    check_unique(modes);
    std::vector<Amplitude> amps(std::size_t{1} << modes.size());
    amps[index] = 1.0;
    return PureState(std::move(modes), std::move(amps));
}

PureState basis_state(std::initializer_list<std::pair<ModeId, Polarization>> assignments) {
    return basis_state(std::span(assignments.begin(), assignments.size()));
}

PureState apply_1q(PureState state, const GateMatrix &gate, const ModeId &mode) {
    if (gate.dim() != 2) {
        throw std::invalid_argument("apply_1q needs a 2x2 gate, got '" + gate.name() + "'");
    }
    const std::size_t bit = state.bit_of(mode);
    const std::uint64_t stride = std::uint64_t{1} << bit;
    const Amplitude g00 = gate(0, 0), g01 = gate(0, 1), g10 = gate(1, 0), g11 = gate(1, 1);
    auto amps = state.mutable_amplitudes();
    const std::uint64_t half = amps.size() / 2;
    for (std::uint64_t k = 0; k < half; ++k) {
        std::uint64_t i0 = insert_zero_bit(k, bit);
        std::uint64_t i1 = i0 | stride;
        Amplitude a0 = amps[i0];
        Amplitude a1 = amps[i1];
        amps[i0] = g00 * a0 + g01 * a1;
        amps[i1] = g10 * a0 + g11 * a1;
    }
    return state;
}

PureState apply_2q(PureState state, const GateMatrix &gate, const ModeId &mode_a, const ModeId &mode_b) {
    if (gate.dim() != 4) {
        throw std::invalid_argument("apply_2q needs a 4x4 gate, got '" + gate.name() + "'");
    }
    if (mode_a == mode_b) {
        throw std::invalid_argument("apply_2q needs two distinct modes, got '" + mode_a.str() + "' twice");
    }
    const std::size_t bit_a = state.bit_of(mode_a);
    const std::size_t bit_b = state.bit_of(mode_b);
    const std::size_t lo = std::min(bit_a, bit_b);
    const std::size_t hi = std::max(bit_a, bit_b);
    const std::uint64_t mask_a = std::uint64_t{1} << bit_a;
    const std::uint64_t mask_b = std::uint64_t{1} << bit_b;

    auto amps = state.mutable_amplitudes();
    const std::uint64_t quarter = amps.size() / 4;
    // Gate index g = 2*a + b, so a is the most significant tensor factor.
    for (std::uint64_t k = 0; k < quarter; ++k) {
        std::uint64_t base = insert_zero_bit(insert_zero_bit(k, lo), hi);
        std::array<std::uint64_t, 4> idx = {base, base | mask_b, base | mask_a, base | mask_a | mask_b};
        std::array<Amplitude, 4> in = {amps[idx[0]], amps[idx[1]], amps[idx[2]], amps[idx[3]]};
        for (std::size_t r = 0; r < 4; ++r) {
            amps[idx[r]] = gate(r, 0) * in[0] + gate(r, 1) * in[1] + gate(r, 2) * in[2] + gate(r, 3) * in[3];
        }
    }
    return state;
}

PureState pdl_filter(PureState state, std::span<const ModeId> modes, double transmission) {
    if (!(transmission >= 0.0 && transmission <= 1.0)) {
        throw std::invalid_argument("PDL transmission must lie in [0, 1]");
    }
    auto amps = state.mutable_amplitudes();
    for (const auto &mode : modes) {
        const std::uint64_t mask = std::uint64_t{1} << state.bit_of(mode);
        for (std::uint64_t k = 0; k < amps.size(); ++k) {
            if (k & mask) {
                amps[k] *= transmission;
            }
        }
    }
    return state;
}

PureState pdl_filter(PureState state, std::initializer_list<ModeId> modes, double transmission) {
    return pdl_filter(std::move(state), std::span(modes.begin(), modes.size()), transmission);
}

MeasurementBranches measure(const PureState &state, const ModeId &mode, bool remove_mode) {
    const std::size_t bit = state.bit_of(mode);
    const double total = state.norm_squared();
    if (total <= 0.0) {
        throw std::invalid_argument("cannot measure a zero-norm state");
    }
    const std::uint64_t mask = std::uint64_t{1} << bit;
    auto amps = state.amplitudes();

    std::vector<ModeId> out_modes = state.modes();
    if (remove_mode) {
        out_modes.erase(out_modes.begin() + static_cast<std::ptrdiff_t>(bit));
    }

    auto branch = [&](Polarization outcome) {
        const std::uint64_t want = outcome == Polarization::V ? mask : 0;
        std::vector<Amplitude> out(remove_mode ? amps.size() / 2 : amps.size());
        double p = 0;
        for (std::uint64_t k = 0; k < amps.size(); ++k) {
            if ((k & mask) != want) {
                continue;
            }
            p += std::norm(amps[k]);
            if (remove_mode) {
                std::uint64_t low = k & (mask - 1);
                out[((k >> (bit + 1)) << bit) | low] = amps[k];
            } else {
                out[k] = amps[k];
            }
        }
        if (p > 0) {
            const double scale = 1.0 / std::sqrt(p);
            for (auto &a : out) {
                a *= scale;
            }
        }
        return MeasurementRecord{mode, outcome, p, PureState(out_modes, std::move(out))};
    };
    return MeasurementBranches{branch(Polarization::H), branch(Polarization::V)};
}

Amplitude inner_product(const PureState &a, const PureState &b) {
    if (a.num_modes() != b.num_modes()) {
        throw std::invalid_argument("states are defined on different mode sets");
    }
    for (const auto &m : a.modes()) {
        if (!b.has_mode(m)) {
            throw std::invalid_argument("states are defined on different mode sets (missing '" + m.str() + "')");
        }
    }
    PureState aligned = b.permuted(a.modes());
    auto x = a.amplitudes();
    auto y = aligned.amplitudes();
    Amplitude acc = 0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        acc += std::conj(x[k]) * y[k];
    }
    return acc;
}

double fidelity(const PureState &state, const PureState &target) {
    Amplitude overlap = inner_product(target, state);
    double ns = state.norm_squared();
    double nt = target.norm_squared();
    if (ns <= 0 || nt <= 0) {
        return 0.0;
    }
    double f = std::norm(overlap) / (ns * nt);
    return std::clamp(f, 0.0, 1.0);
}

double norm_squared(const PureState &state) {
    return state.norm_squared();
}

PureState renormalize(PureState state) {
    double n2 = state.norm_squared();
    if (n2 <= 0) {
        throw std::invalid_argument("cannot renormalize a zero-norm state");
    }
    const double scale = 1.0 / std::sqrt(n2);
    for (auto &a : state.mutable_amplitudes()) {
        a *= scale;
    }
    return state;
}

PureState tensor(const PureState &a, const PureState &b) {
    std::vector<ModeId> modes = a.modes();
    modes.insert(modes.end(), b.modes().begin(), b.modes().end());
    check_size(modes.size());
    check_unique(modes);
    auto x = a.amplitudes();
    auto y = b.amplitudes();
    std::vector<Amplitude> out(x.size() * y.size());
    for (std::size_t j = 0; j < y.size(); ++j) {
        for (std::size_t i = 0; i < x.size(); ++i) {
            out[(j << a.num_modes()) | i] = x[i] * y[j];
        }
    }
    return PureState(std::move(modes), std::move(out));
}

}  // namespace wexpand
