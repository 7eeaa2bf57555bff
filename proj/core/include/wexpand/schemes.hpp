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

#ifndef WEXPAND_SCHEMES_HPP
#define WEXPAND_SCHEMES_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wexpand/state.hpp"

namespace wexpand {

/// An ideal W state on named modes: equal superposition of every basis state with exactly one V.
struct WSpec {
    std::vector<ModeId> modes;

    /// Modes labeled "first", "first+1", ...
    static WSpec numbered(std::size_t n, int first = 1);

    std::size_t n() const noexcept { return modes.size(); }
};

/// Throws std::invalid_argument when n == 0. W_1 is |V>.
PureState ideal_w(const WSpec &spec);

struct ExpansionOutcome {
    /// Renormalized output state.
    PureState state;
    /// Product of the squared norms kept by every filter and post-selection along the way.
    double success_probability;
    WSpec target;
    /// Fidelity of `state` with ideal_w(target).
    double fidelity;
};

/// Which W-state modes enter an expansion block and which ancilla each one is paired with.
struct ParallelLayout {
    /// (input mode of the W state, fresh ancilla mode)
    std::vector<std::pair<ModeId, ModeId>> pairs;
    /// W-state modes that bypass every block.
    std::vector<ModeId> untouched;

    /// Every mode paired with a fresh ancilla labeled by suffixing 'a'.
    static ParallelLayout full(const WSpec &spec);
    /// The first k modes paired, the rest untouched.
    static ParallelLayout partial(const WSpec &spec, std::size_t k);
};

/// Knobs used by the scheme drivers. Only tests and mutation checks change these.
struct SchemeOptions {
    double pdl_transmission = kPdlTransmission;
};

/// Smallest label "<base>a", "<base>aa", ... not present in `taken`.
ModeId fresh_label(const ModeId &base, std::span<const ModeId> taken);

/// The two-gate expansion circuit: CH (control = input, target = ancilla) followed by
/// CNOT (control = ancilla, target = input).
///
/// On basis inputs |a>_ancilla |b>_input with c = a xor b:
///   |a>|b> -> (|c>|a> + (-1)^(c xor 1) b |c xor 1>|a xor 1>) / sqrt(2)^b
/// so |H>|V> gives |Psi+>, |V>|V> gives |Psi->, |H>|H> is unchanged and |V>|H> -> |V>|V>.
PureState expansion_block(PureState state, const ModeId &ancilla, const ModeId &input);

/// Inverse of expansion_block (CNOT then CH, both self-inverse).
PureState expansion_block_inverse(PureState state, const ModeId &ancilla, const ModeId &input);

/// Adds one photon: a fresh |H> ancilla and the last W-state mode go through an expansion block,
/// then PDL is applied to every other original mode. Success probability 1/2 + 1/(2n).
ExpansionOutcome cascade_step(const PureState &w, const WSpec &spec, const SchemeOptions &options = {});

/// `k` cascade steps starting from ideal W_{start_n} on modes 1..start_n.
ExpansionOutcome cascade_expand(std::size_t start_n, std::size_t k, const SchemeOptions &options = {});

/// One block per W-state mode. No PDL; deterministic W_n -> W_2n.
ExpansionOutcome parallel_double(const PureState &w, const WSpec &spec, const ParallelLayout &layout);
ExpansionOutcome parallel_double(const PureState &w, const WSpec &spec);

/// Blocks on `layout.pairs`, PDL on `layout.untouched`. W_n -> W_{n+k} with probability (n+k)/(2n).
ExpansionOutcome parallel_partial(const PureState &w, const WSpec &spec, const ParallelLayout &layout,
                                  const SchemeOptions &options = {});

/// W_2N -> W_{2N+1} by one cascade step. Rejects odd input sizes.
ExpansionOutcome odd_add_one(const PureState &w2n, const WSpec &spec, const SchemeOptions &options = {});

struct OddProjection {
    /// H outcome on the measured mode: W_{2N+1} on the remaining modes.
    ExpansionOutcome success;
    /// V outcome: every remaining mode in |H>.
    PureState failure_state;
    double failure_probability;
};

/// W_{2N+2} -> W_{2N+1} by measuring the last mode. Rejects odd input sizes.
OddProjection odd_project(const PureState &w2n2, const WSpec &spec);

struct VerifyReport {
    bool accepted;
    std::size_t layers_checked;
    std::string reason;
};

/// Undoes parallel doubling layer by layer and checks the result.
///
/// spec.modes is read as [inputs..., ancillas...] with ancilla i paired to input i, which is the
/// mode order parallel_double produces. Per layer the inverse blocks run in reverse order, every
/// ancilla must read H with probability >= 1 - tol, and the residual must have fidelity
/// >= 1 - tol with the ideal W state on the inputs. `layers == 0` keeps going while the residual
/// has an even number of modes.
VerifyReport verify_back_report(const PureState &candidate, const WSpec &spec, std::size_t layers = 1,
                                double tol = 1e-9);
bool verify_back(const PureState &candidate, const WSpec &spec, std::size_t layers = 1, double tol = 1e-9);

enum class SchemeId { kCascade, kParallel, kPartial, kOddAdd, kOddProject };

std::string_view scheme_name(SchemeId id);
SchemeId scheme_from_name(std::string_view name);

/// A scheme invocation. Unset fields are filled by resolve().
///   cascade:      start_n >= 1, k >= 1 steps (or target_n = start_n + k)
///   parallel:     start_n >= 1 (target_n, if given, must be 2*start_n)
///   partial:      start_n = n, 1 <= k < n circuits
///   odd_add:      start_n = 2N even (or target_n = 2N+1)
///   odd_project:  start_n = 2N+2 even (or target_n = 2N+1)
struct SchemeRun {
    SchemeId scheme = SchemeId::kCascade;
    std::optional<std::size_t> start_n;
    std::optional<std::size_t> k;
    std::optional<std::size_t> target_n;
};

/// Checks preconditions and fills start_n, k (where meaningful) and target_n.
/// Throws std::invalid_argument when the run is inconsistent.
SchemeRun resolve(SchemeRun run);

/// Runs a resolved (or resolvable) scheme on ideal input states labeled 1..start_n.
ExpansionOutcome execute(const SchemeRun &run, const SchemeOptions &options = {});

}  // namespace wexpand

#endif
