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

#ifndef WEXPAND_IO_HPP
#define WEXPAND_IO_HPP

#include <stdexcept>
#include <string>

#include "wexpand/analysis.hpp"
#include "wexpand/gates.hpp"
#include "wexpand/schemes.hpp"
#include "wexpand/state.hpp"

namespace wexpand {

/// Malformed or inconsistent serialized input.
class ParseError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// {"modes": [...], "amplitudes": [[re, im], ...]} in bit-index order. Doubles are written in
/// shortest round-trip form, so save/load is exact.
std::string state_to_json(const PureState &state, int indent = -1);
/// Mode labels may be strings or integers. Throws ParseError.
PureState state_from_json(const std::string &text);

/// {"<name>": {"dim": d, "control": "none"|"first"|"second", "matrix": [[[re, im], ...], ...]}, ...}
std::string gate_registry_json(int indent = 2);

/// {"scheme": "...", "start_n": n, "k": k, "target_n": t}; unset fields are omitted.
std::string run_to_json(const SchemeRun &run);
/// Throws ParseError on malformed JSON or unknown fields/values.
SchemeRun run_from_json(const std::string &text);

/// Result descriptor for a scheme run: the resolved run plus analytic and simulated probabilities,
/// fidelity and, optionally, the output state.
std::string result_to_json(const SchemeRun &run, const ExpansionOutcome &outcome, double analytic,
                           bool include_state, int indent = 2);

/// JSON mirror of to_csv(): {"rows": [{"scheme", "size", "analytic", "simulated", "abs_delta",
/// "fidelity"}, ...], "max_abs_delta": x}.
std::string table_to_json(const FormulaTable &table, int indent = 2);

}  // namespace wexpand

#endif
