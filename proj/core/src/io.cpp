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

#include "wexpand/io.hpp"

#include <cmath>

#include <json.hpp>

namespace wexpand {

namespace {

using Json = nlohmann::ordered_json;

Json amplitude_json(Amplitude a) {
    return Json::array({a.real(), a.imag()});
}

Json state_json(const PureState &state) {
    Json modes = Json::array();
    for (const auto &m : state.modes()) {
        modes.push_back(m.str());
    }
    Json amps = Json::array();
    for (const auto &a : state.amplitudes()) {
        amps.push_back(amplitude_json(a));
    }
    Json out;
    out["modes"] = std::move(modes);
    out["amplitudes"] = std::move(amps);
    return out;
}

Json parse(const std::string &text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
}

std::size_t positive_size(const Json &value, const char *field) {
    if (!value.is_number_integer() || value.get<long long>() < 0) {
        throw ParseError(std::string("field '") + field + "' must be a non-negative integer");
    }
    return value.get<std::size_t>();
}

const char *control_name(ControlSlot c) {
    switch (c) {
        case ControlSlot::kNone:
            return "none";
        case ControlSlot::kFirst:
            return "first";
        case ControlSlot::kSecond:
            return "second";
    }
    return "none";
}

}  // namespace

std::string state_to_json(const PureState &state, int indent) {
    return state_json(state).dump(indent);
}

PureState state_from_json(const std::string &text) {
    Json j = parse(text);
    if (!j.is_object() || !j.contains("modes") || !j.contains("amplitudes")) {
        throw ParseError("state JSON needs 'modes' and 'amplitudes'");
    }
    const Json &jm = j["modes"];
    const Json &ja = j["amplitudes"];
    if (!jm.is_array() || !ja.is_array()) {
        throw ParseError("'modes' and 'amplitudes' must be arrays");
    }
    std::vector<ModeId> modes;
    for (const auto &m : jm) {
        if (m.is_string() && !m.get<std::string>().empty()) {
            modes.emplace_back(m.get<std::string>());
        } else if (m.is_number_integer()) {
            modes.emplace_back(m.get<int>());
        } else {
            throw ParseError("mode labels must be non-empty strings or integers");
        }
    }
    std::vector<Amplitude> amps;
    amps.reserve(ja.size());
    for (const auto &a : ja) {
        if (!a.is_array() || a.size() != 2 || !a[0].is_number() || !a[1].is_number()) {
            throw ParseError("each amplitude must be [re, im]");
        }
        amps.emplace_back(a[0].get<double>(), a[1].get<double>());
    }
    try {
        return PureState(std::move(modes), std::move(amps));
    } catch (const std::invalid_argument &e) {
        throw ParseError(std::string("invalid state: ") + e.what());
    }
}

std::string gate_registry_json(int indent) {
    Json out = Json::object();
    for (const auto &g : registered_gates()) {
        Json rows = Json::array();
        for (std::size_t r = 0; r < g.dim(); ++r) {
            Json row = Json::array();
            for (std::size_t c = 0; c < g.dim(); ++c) {
                row.push_back(amplitude_json(g(r, c)));
            }
            rows.push_back(std::move(row));
        }
        Json entry;
        entry["dim"] = g.dim();
        entry["control"] = control_name(g.control());
        entry["matrix"] = std::move(rows);
        out[g.name()] = std::move(entry);
    }
    return out.dump(indent);
}

std::string run_to_json(const SchemeRun &run) {
    Json j;
    j["scheme"] = std::string(scheme_name(run.scheme));
    if (run.start_n) j["start_n"] = *run.start_n;
    if (run.k) j["k"] = *run.k;
    if (run.target_n) j["target_n"] = *run.target_n;
    return j.dump();
}

SchemeRun run_from_json(const std::string &text) {
    Json j = parse(text);
    if (!j.is_object()) {
        throw ParseError("run descriptor must be a JSON object");
    }
    SchemeRun run;
    bool have_scheme = false;
    for (const auto &[key, value] : j.items()) {
        if (key == "scheme") {
            if (!value.is_string()) {
                throw ParseError("'scheme' must be a string");
            }
            try {
                run.scheme = scheme_from_name(value.get<std::string>());
            } catch (const std::invalid_argument &e) {
                throw ParseError(e.what());
            }
            have_scheme = true;
        } else if (key == "start_n") {
            run.start_n = positive_size(value, "start_n");
        } else if (key == "k") {
            run.k = positive_size(value, "k");
        } else if (key == "target_n") {
            run.target_n = positive_size(value, "target_n");
        } else {
            throw ParseError("unknown field '" + key + "' in run descriptor");
        }
    }
    if (!have_scheme) {
        throw ParseError("run descriptor needs 'scheme'");
    }
    return run;
}

std::string result_to_json(const SchemeRun &run, const ExpansionOutcome &outcome, double analytic,
                           bool include_state, int indent) {
    Json j;
    j["scheme"] = std::string(scheme_name(run.scheme));
    if (run.start_n) j["start_n"] = *run.start_n;
    if (run.k) j["k"] = *run.k;
    if (run.target_n) j["target_n"] = *run.target_n;
    Json target = Json::array();
    for (const auto &m : outcome.target.modes) {
        target.push_back(m.str());
    }
    j["target_modes"] = std::move(target);
    j["success_probability"] = outcome.success_probability;
    j["analytic_probability"] = analytic;
    j["abs_delta"] = std::abs(outcome.success_probability - analytic);
    j["fidelity"] = outcome.fidelity;
    if (include_state) {
        j["state"] = state_json(outcome.state);
    }
    return j.dump(indent);
}

std::string table_to_json(const FormulaTable &table, int indent) {
    Json rows = Json::array();
    for (const auto &r : table.rows) {
        Json row;
        row["scheme"] = r.scheme;
        row["size"] = r.size_label();
        row["analytic"] = r.analytic;
        row["simulated"] = r.simulated;
        row["abs_delta"] = r.abs_delta;
        row["fidelity"] = r.fidelity;
        rows.push_back(std::move(row));
    }
    Json j;
    j["rows"] = std::move(rows);
    j["max_abs_delta"] = table.max_abs_delta();
    return j.dump(indent);
}

}  // namespace wexpand
