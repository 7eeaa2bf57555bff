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

#include "wexpand/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "wexpand/gates.hpp"

namespace wexpand {

namespace {

PureState all_h(const std::vector<ModeId> &modes) {
    std::vector<std::pair<ModeId, Polarization>> assignment;
    for (const auto &m : modes) {
        assignment.emplace_back(m, Polarization::H);
    }
    return basis_state(assignment);
}

std::vector<ModeId> appended(std::vector<ModeId> modes, const ModeId &extra) {
    modes.push_back(extra);
    return modes;
}

// Puts `w` into spec order and checks it is a normalized state on exactly those modes.
PureState checked_input(const PureState &w, const WSpec &spec) {
    if (spec.n() == 0) {
        throw std::invalid_argument("W spec must have at least one mode");
    }
    if (w.num_modes() != spec.n()) {
        throw std::invalid_argument("input state has " + std::to_string(w.num_modes()) + " modes, spec has " +
                                    std::to_string(spec.n()));
    }
    PureState aligned = w.permuted(spec.modes);
    if (std::abs(aligned.norm_squared() - 1.0) > kTolerance) {
        throw std::invalid_argument("input state is not unit norm");
    }
    return aligned;
}

ExpansionOutcome finish(PureState filtered, double carried_probability, WSpec target) {
    const double kept = filtered.norm_squared();
    if (kept <= 0) {
        throw std::runtime_error("scheme left no surviving amplitude");
    }
    PureState out = renormalize(std::move(filtered));
    double f = fidelity(out, ideal_w(target));
    return ExpansionOutcome{std::move(out), carried_probability * kept, std::move(target), f};
}

void check_layout(const WSpec &spec, const ParallelLayout &layout) {
    std::set<ModeId> spec_modes(spec.modes.begin(), spec.modes.end());
    std::set<ModeId> seen;
    for (const auto &[input, ancilla] : layout.pairs) {
        if (!spec_modes.contains(input)) {
            throw std::invalid_argument("layout input '" + input.str() + "' is not a W-state mode");
        }
        if (spec_modes.contains(ancilla)) {
            throw std::invalid_argument("layout ancilla '" + ancilla.str() + "' is not fresh");
        }
        if (!seen.insert(input).second || !seen.insert(ancilla).second) {
            throw std::invalid_argument("layout pairs overlap");
        }
    }
    for (const auto &m : layout.untouched) {
        if (!spec_modes.contains(m)) {
            throw std::invalid_argument("untouched mode '" + m.str() + "' is not a W-state mode");
        }
        if (!seen.insert(m).second) {
            throw std::invalid_argument("untouched mode '" + m.str() + "' also enters a block");
        }
    }
    if (layout.pairs.size() + layout.untouched.size() != spec.n()) {
        throw std::invalid_argument("layout does not cover every W-state mode");
    }
}

// Tensors fresh |H> ancillas onto the input and runs one block per pair.
PureState run_blocks(const PureState &input, const ParallelLayout &layout) {
    std::vector<ModeId> ancillas;
    for (const auto &p : layout.pairs) {
        ancillas.push_back(p.second);
    }
    PureState state = tensor(input, all_h(ancillas));
    for (const auto &[in, anc] : layout.pairs) {
        state = expansion_block(std::move(state), anc, in);
    }
    return state;
}

std::vector<ModeId> output_modes(const WSpec &spec, const ParallelLayout &layout) {
    std::vector<ModeId> modes = spec.modes;
    for (const auto &p : layout.pairs) {
        modes.push_back(p.second);
    }
    return modes;
}

}  // namespace

WSpec WSpec::numbered(std::size_t n, int first) {
    WSpec spec;
    for (std::size_t i = 0; i < n; ++i) {
        spec.modes.emplace_back(first + static_cast<int>(i));
    }
    return spec;
}

PureState ideal_w(const WSpec &spec) {
    if (spec.n() == 0) {
        throw std::invalid_argument("W state needs n >= 1");
    }
    PureState zero = PureState::zero(spec.modes);
    std::vector<Amplitude> amps(zero.dimension());
    const double a = 1.0 / std::sqrt(static_cast<double>(spec.n()));
    for (std::size_t i = 0; i < spec.n(); ++i) {
        amps[std::size_t{1} << i] = a;
    }
    return PureState(spec.modes, std::move(amps));
}

ParallelLayout ParallelLayout::full(const WSpec &spec) {
    return partial(spec, spec.n());
}

ParallelLayout ParallelLayout::partial(const WSpec &spec, std::size_t k) {
    if (k > spec.n()) {
        throw std::invalid_argument("cannot pair more modes than the W state has");
    }
    ParallelLayout layout;
    std::vector<ModeId> taken = spec.modes;
    for (std::size_t i = 0; i < k; ++i) {
        ModeId anc = fresh_label(spec.modes[i], taken);
        taken.push_back(anc);
        layout.pairs.emplace_back(spec.modes[i], anc);
    }
    layout.untouched.assign(spec.modes.begin() + static_cast<std::ptrdiff_t>(k), spec.modes.end());
    return layout;
}

ModeId fresh_label(const ModeId &base, std::span<const ModeId> taken) {
    std::string label = base.str() + "a";
    while (std::find(taken.begin(), taken.end(), ModeId(label)) != taken.end()) {
        label += "a";
    }
    return ModeId(label);
}

PureState expansion_block(PureState state, const ModeId &ancilla, const ModeId &input) {
    if (ancilla == input) {
        throw std::invalid_argument("expansion block needs distinct ancilla and input modes");
    }
    state = apply_2q(std::move(state), ch_direct(), ancilla, input);
    return apply_2q(std::move(state), cnot(), ancilla, input);
}

PureState expansion_block_inverse(PureState state, const ModeId &ancilla, const ModeId &input) {
    if (ancilla == input) {
        throw std::invalid_argument("expansion block needs distinct ancilla and input modes");
    }
    state = apply_2q(std::move(state), cnot(), ancilla, input);
    return apply_2q(std::move(state), ch_direct(), ancilla, input);
}

ExpansionOutcome cascade_step(const PureState &w, const WSpec &spec, const SchemeOptions &options) {
    PureState input = checked_input(w, spec);
    const ModeId &fed = spec.modes.back();
    ModeId ancilla = fresh_label(fed, spec.modes);

    PureState state = tensor(input, basis_state({{ancilla, Polarization::H}}));
    state = expansion_block(std::move(state), ancilla, fed);
    std::span<const ModeId> rest(spec.modes.data(), spec.modes.size() - 1);
    state = pdl_filter(std::move(state), rest, options.pdl_transmission);

    return finish(std::move(state), 1.0, WSpec{appended(spec.modes, ancilla)});
}

ExpansionOutcome cascade_expand(std::size_t start_n, std::size_t k, const SchemeOptions &options) {
    if (start_n < 1 || k < 1) {
        throw std::invalid_argument("cascade needs start_n >= 1 and k >= 1");
    }
    if (start_n + k > kMaxModes) {
        throw ResourceLimitError("cascade to W_" + std::to_string(start_n + k) + " exceeds the register limit");
    }
    WSpec spec = WSpec::numbered(start_n);
    ExpansionOutcome current{ideal_w(spec), 1.0, spec, 1.0};
    for (std::size_t step = 0; step < k; ++step) {
        ExpansionOutcome next = cascade_step(current.state, current.target, options);
        next.success_probability *= current.success_probability;
        current = std::move(next);
    }
    return current;
}

ExpansionOutcome parallel_double(const PureState &w, const WSpec &spec, const ParallelLayout &layout) {
    PureState input = checked_input(w, spec);
    check_layout(spec, layout);
    if (!layout.untouched.empty()) {
        throw std::invalid_argument("parallel doubling needs every mode paired; use parallel_partial");
    }
    PureState state = run_blocks(input, layout);
    return finish(std::move(state), 1.0, WSpec{output_modes(spec, layout)});
}

ExpansionOutcome parallel_double(const PureState &w, const WSpec &spec) {
    return parallel_double(w, spec, ParallelLayout::full(spec));
}

ExpansionOutcome parallel_partial(const PureState &w, const WSpec &spec, const ParallelLayout &layout,
                                  const SchemeOptions &options) {
    PureState input = checked_input(w, spec);
    check_layout(spec, layout);
    if (layout.pairs.empty()) {
        throw std::invalid_argument("partial expansion needs at least one block");
    }
    if (layout.untouched.empty()) {
        throw std::invalid_argument("partial expansion needs untouched modes; use parallel_double");
    }
    PureState state = run_blocks(input, layout);
    state = pdl_filter(std::move(state), layout.untouched, options.pdl_transmission);
    return finish(std::move(state), 1.0, WSpec{output_modes(spec, layout)});
}

ExpansionOutcome odd_add_one(const PureState &w2n, const WSpec &spec, const SchemeOptions &options) {
    if (spec.n() % 2 != 0) {
        throw std::invalid_argument("odd_add_one needs an even-sized W state");
    }
    return cascade_step(w2n, spec, options);
}

OddProjection odd_project(const PureState &w2n2, const WSpec &spec) {
    if (spec.n() % 2 != 0 || spec.n() < 2) {
        throw std::invalid_argument("odd_project needs an even-sized W state");
    }
    PureState input = checked_input(w2n2, spec);
    MeasurementBranches branches = measure(input, spec.modes.back(), /*remove_mode=*/true);
    WSpec target{std::vector<ModeId>(spec.modes.begin(), spec.modes.end() - 1)};
    double f = fidelity(branches.h.post_state, ideal_w(target));
    return OddProjection{
        ExpansionOutcome{branches.h.post_state, branches.h.probability, target, f},
        branches.v.post_state,
        branches.v.probability,
    };
}

VerifyReport verify_back_report(const PureState &candidate, const WSpec &spec, std::size_t layers, double tol) {
    if (spec.n() % 2 != 0 || spec.n() == 0) {
        throw std::invalid_argument("verify_back needs an even number of modes");
    }
    if (candidate.num_modes() != spec.n()) {
        return {false, 0, "candidate has " + std::to_string(candidate.num_modes()) + " modes, expected " +
                              std::to_string(spec.n())};
    }
    if (std::abs(candidate.norm_squared() - 1.0) > tol) {
        return {false, 0, "candidate is not unit norm"};
    }

    PureState state = candidate.permuted(spec.modes);
    std::vector<ModeId> modes = spec.modes;
    std::size_t done = 0;
    while (true) {
        const std::size_t n = modes.size() / 2;
        for (std::size_t i = n; i-- > 0;) {
            state = expansion_block_inverse(std::move(state), modes[n + i], modes[i]);
        }
        for (std::size_t i = 0; i < n; ++i) {
            MeasurementBranches b = measure(state, modes[n + i], /*remove_mode=*/false);
            if (b.v.probability > tol) {
                return {false, done,
                        "ancilla '" + modes[n + i].str() + "' reads V with probability " +
                            std::to_string(b.v.probability)};
            }
        }
        // Every ancilla is H with certainty here; drop them.
        for (std::size_t i = 0; i < n; ++i) {
            state = measure(state, modes[modes.size() - 1], /*remove_mode=*/true).h.post_state;
            modes.pop_back();
        }
        ++done;
        double f = fidelity(state, ideal_w(WSpec{modes}));
        if (f < 1.0 - tol) {
            return {false, done, "residual W_" + std::to_string(n) + " fidelity " + std::to_string(f)};
        }
        bool more = layers == 0 ? (n % 2 == 0) : done < layers;
        if (!more) {
            break;
        }
        if (n % 2 != 0) {
            return {false, done, "cannot undo another doubling layer of odd size " + std::to_string(n)};
        }
    }
    return {true, done, "accepted"};
}

bool verify_back(const PureState &candidate, const WSpec &spec, std::size_t layers, double tol) {
    return verify_back_report(candidate, spec, layers, tol).accepted;
}

std::string_view scheme_name(SchemeId id) {
    switch (id) {
        case SchemeId::kCascade:
            return "cascade";
        case SchemeId::kParallel:
            return "parallel";
        case SchemeId::kPartial:
            return "partial";
        case SchemeId::kOddAdd:
            return "odd_add";
        case SchemeId::kOddProject:
            return "odd_project";
    }
    throw std::invalid_argument("unknown scheme id");
}

SchemeId scheme_from_name(std::string_view name) {
    for (SchemeId id : {SchemeId::kCascade, SchemeId::kParallel, SchemeId::kPartial, SchemeId::kOddAdd,
                        SchemeId::kOddProject}) {
        if (scheme_name(id) == name) {
            return id;
        }
    }
    throw std::invalid_argument("unknown scheme '" + std::string(name) + "'");
}

SchemeRun resolve(SchemeRun run) {
    auto fail = [&](const std::string &why) {
        throw std::invalid_argument(std::string(scheme_name(run.scheme)) + ": " + why);
    };
    auto &n = run.start_n;
    auto &k = run.k;
    auto &t = run.target_n;
    switch (run.scheme) {
        case SchemeId::kCascade:
            if (!n) fail("start_n is required");
            if (*n < 1) fail("start_n must be >= 1");
            if (!k && t) {
                if (*t <= *n) fail("target_n must exceed start_n");
                k = *t - *n;
            }
            if (!k) k = 1;
            if (*k < 1) fail("k must be >= 1");
            if (t && *t != *n + *k) fail("target_n must equal start_n + k");
            t = *n + *k;
            break;
        case SchemeId::kParallel:
            if (!n) fail("start_n is required");
            if (*n < 1) fail("start_n must be >= 1");
            if (k && *k != *n) fail("k must equal start_n (every mode enters a circuit)");
            if (t && *t != 2 * *n) fail("target_n must equal 2 * start_n");
            k = *n;
            t = 2 * *n;
            break;
        case SchemeId::kPartial:
            if (!n) fail("start_n is required");
            if (!k && t) {
                if (*t <= *n) fail("target_n must exceed start_n");
                k = *t - *n;
            }
            if (!k) fail("k is required");
            if (*k < 1 || *k >= *n) fail("k must satisfy 1 <= k < start_n");
            if (t && *t != *n + *k) fail("target_n must equal start_n + k");
            t = *n + *k;
            break;
        case SchemeId::kOddAdd:
            if (!n && t) n = *t - 1;
            if (!n) fail("start_n or target_n is required");
            if (*n < 2 || *n % 2 != 0) fail("start_n must be even and >= 2");
            if (t && *t != *n + 1) fail("target_n must equal start_n + 1");
            if (k && *k != 1) fail("k must be 1");
            k = 1;
            t = *n + 1;
            break;
        case SchemeId::kOddProject:
            if (!n && t) n = *t + 1;
            if (!n) fail("start_n or target_n is required");
            if (*n < 2 || *n % 2 != 0) fail("start_n must be even and >= 2");
            if (t && *t + 1 != *n) fail("target_n must equal start_n - 1");
            if (k) fail("k is not used");
            t = *n - 1;
            break;
    }
    if (std::max(*n, *t) > kMaxModes) {
        throw ResourceLimitError("run needs " + std::to_string(std::max(*n, *t)) + " modes, limit is " +
                                 std::to_string(kMaxModes));
    }
    return run;
}

ExpansionOutcome execute(const SchemeRun &unresolved, const SchemeOptions &options) {
    SchemeRun run = resolve(unresolved);
    WSpec spec = WSpec::numbered(*run.start_n);
    switch (run.scheme) {
        case SchemeId::kCascade:
            return cascade_expand(*run.start_n, *run.k, options);
        case SchemeId::kParallel:
            return parallel_double(ideal_w(spec), spec);
        case SchemeId::kPartial:
            return parallel_partial(ideal_w(spec), spec, ParallelLayout::partial(spec, *run.k), options);
        case SchemeId::kOddAdd:
            return odd_add_one(ideal_w(spec), spec, options);
        case SchemeId::kOddProject:
            return odd_project(ideal_w(spec), spec).success;
    }
    throw std::invalid_argument("unknown scheme id");
}

}  // namespace wexpand
