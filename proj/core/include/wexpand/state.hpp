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

#ifndef WEXPAND_STATE_HPP
#define WEXPAND_STATE_HPP

#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wexpand {

using Amplitude = std::complex<double>;

/// Global equality tolerance for amplitudes, norms and probabilities.
inline constexpr double kTolerance = 1e-12;

/// Amplitudes smaller than this are hidden when pretty-printing. Never used in arithmetic.
inline constexpr double kPrintCutoff = 1e-14;

/// Hard cap on register size. 2^24 amplitudes is 256 MiB.
inline constexpr std::size_t kMaxModes = 24;

/// Thrown when a request would exceed kMaxModes (or a caller-imposed bound).
class ResourceLimitError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Photon polarization. The encoding H <-> 0, V <-> 1 is fixed everywhere.
enum class Polarization : std::uint8_t { H = 0, V = 1 };

char to_char(Polarization p);
Polarization polarization_from_char(char c);

/// Label of a spatial mode ("1", "2", "0'", "a1", "2a"...). Integers are stored in decimal form,
/// so ModeId(2) == ModeId("2").
class ModeId {
   public:
    ModeId() = default;
    ModeId(std::string label);
    ModeId(const char *label);
    ModeId(int label);

    const std::string &str() const noexcept { return label_; }

    friend bool operator==(const ModeId &, const ModeId &) = default;
    friend auto operator<=>(const ModeId &, const ModeId &) = default;

   private:
    std::string label_;
};

std::ostream &operator<<(std::ostream &out, const ModeId &mode);

/// Dense pure state over a list of labeled polarization modes.
///
/// Bit i of a basis index is the polarization of modes()[i]. The state may be sub-normalized
/// (after filtering), but never has squared norm above 1 + kTolerance at construction.
class PureState {
   public:
    /// Validates: amplitudes.size() == 2^modes.size(), unique labels, norm^2 <= 1 + kTolerance.
    PureState(std::vector<ModeId> modes, std::vector<Amplitude> amplitudes);

    /// All-zero amplitude vector. Used as the post-state of impossible measurement branches.
    static PureState zero(std::vector<ModeId> modes);

    const std::vector<ModeId> &modes() const noexcept { return modes_; }
    std::span<const Amplitude> amplitudes() const noexcept { return amplitudes_; }
    std::span<Amplitude> mutable_amplitudes() noexcept { return amplitudes_; }
    std::size_t num_modes() const noexcept { return modes_.size(); }
    std::size_t dimension() const noexcept { return amplitudes_.size(); }

    bool has_mode(const ModeId &mode) const;
    /// Bit position of a mode. Throws std::invalid_argument for unknown labels.
    std::size_t bit_of(const ModeId &mode) const;

    Amplitude amplitude(std::uint64_t index) const { return amplitudes_.at(index); }
    /// Amplitude of the basis state given by a full label assignment, in any order.
    Amplitude amplitude(std::span<const std::pair<ModeId, Polarization>> assignment) const;
    Amplitude amplitude(std::initializer_list<std::pair<ModeId, Polarization>> assignment) const {
        return amplitude(std::span(assignment.begin(), assignment.size()));
    }

    double norm_squared() const;

    /// Same physical state with modes reordered to `order` (a permutation of modes()).
    PureState permuted(std::span<const ModeId> order) const;

    /// Human-readable ket expansion, e.g. "0.7071|HV> + 0.7071|VH>  [1,2]".
    std::string to_string(int precision = 6) const;

    friend bool operator==(const PureState &, const PureState &) = default;

   private:
    std::vector<ModeId> modes_;
    std::vector<Amplitude> amplitudes_;
};

std::ostream &operator<<(std::ostream &out, const PureState &state);

class GateMatrix;

/// Outcome of projecting one mode onto H or V.
struct MeasurementRecord {
    ModeId mode;
    Polarization outcome;
    /// Squared norm of the branch (not divided by the pre-measurement norm).
    double probability;
    /// Renormalized branch state; all-zero if the branch has probability 0.
    PureState post_state;
};

struct MeasurementBranches {
    MeasurementRecord h;
    MeasurementRecord v;
};

PureState basis_state(std::span<const std::pair<ModeId, Polarization>> assignments);
PureState basis_state(std::initializer_list<std::pair<ModeId, Polarization>> assignments);

/// Applies a 2x2 gate to `mode`.
PureState apply_1q(PureState state, const GateMatrix &gate, const ModeId &mode);

/// Applies a 4x4 gate. `mode_a` is the first (most significant) tensor factor of the gate.
PureState apply_2q(PureState state, const GateMatrix &gate, const ModeId &mode_a, const ModeId &mode_b);

/// Default PDL amplitude transmission for V: |V> -> |V>/sqrt(2).
inline constexpr double kPdlTransmission = 0.70710678118654752440;

/// Polarization-dependent loss diag(1, transmission) on each listed mode. The result is left
/// sub-normalized: its squared norm is the heralding probability of the filter.
PureState pdl_filter(PureState state, std::span<const ModeId> modes, double transmission = kPdlTransmission);
PureState pdl_filter(PureState state, std::initializer_list<ModeId> modes, double transmission = kPdlTransmission);

/// Enumerates both projective outcomes on `mode`. With `remove_mode` the measured mode is traced
/// out of the post-states; otherwise it stays, collapsed.
MeasurementBranches measure(const PureState &state, const ModeId &mode, bool remove_mode = false);

/// |<target|state>|^2 / (|state|^2 |target|^2). Mode lists must hold the same labels.
double fidelity(const PureState &state, const PureState &target);

/// <a|b> after aligning b to a's mode order.
Amplitude inner_product(const PureState &a, const PureState &b);

double norm_squared(const PureState &state);
PureState renormalize(PureState state);

/// Product state; a's modes come first (low bits).
PureState tensor(const PureState &a, const PureState &b);

}  // namespace wexpand

#endif
