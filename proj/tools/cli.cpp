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

#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "wexpand/analysis.hpp"
#include "wexpand/io.hpp"
#include "wexpand/schemes.hpp"

namespace wexpand::cli {

namespace {

using Json = nlohmann::ordered_json;

std::string format17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

// Writes to `path`, or to `out` when the path is empty.
bool emit(const std::string &path, const std::string &text, std::ostream &out, std::ostream &err) {
    if (path.empty()) {
        out << text;
        return true;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        err << "error: cannot open '" << path << "' for writing\n";
        return false;
    }
    f << text;
    return static_cast<bool>(f);
}

std::optional<Polarization> parse_letter(const std::string &s) {
    if (s == "H" || s == "h") return Polarization::H;
    if (s == "V" || s == "v") return Polarization::V;
    return std::nullopt;
}

// Basis-state counts keyed by the H/V string in mode order.
Json sample(const PureState &state, std::size_t shots, std::uint64_t seed) {
    std::vector<double> weights;
    weights.reserve(state.dimension());
    for (const auto &a : state.amplitudes()) {
        weights.push_back(std::norm(a));
    }
    std::mt19937_64 rng(seed);
    std::discrete_distribution<std::uint64_t> dist(weights.begin(), weights.end());
    std::map<std::uint64_t, std::size_t> counts;
    for (std::size_t s = 0; s < shots; ++s) {
        ++counts[dist(rng)];
    }
    Json j = Json::object();
    for (const auto &[index, count] : counts) {
        std::string key;
        for (std::size_t b = 0; b < state.num_modes(); ++b) {
            key += ((index >> b) & 1) ? 'V' : 'H';
        }
        j[key] = count;
    }
    return j;
}

std::size_t threads_from_env(std::size_t fallback) {
    const char *v = std::getenv("WEXPAND_THREADS");
    if (v == nullptr || *v == '\0') {
        return fallback;
    }
    char *end = nullptr;
    unsigned long n = std::strtoul(v, &end, 10);
    if (end == v || *end != '\0') {
        return fallback;
    }
    return static_cast<std::size_t>(n);
}

}  // namespace

int cmd_bell(const std::string &first, const std::string &second, std::ostream &out, std::ostream &err) {
    auto a = parse_letter(first);
    auto b = parse_letter(second);
    if (!a || !b) {
        err << "error: bell expects two letters from {H, V}, got '" << first << "' '" << second << "'\n";
        return kExitUsage;
    }
    PureState in = basis_state({{1, *a}, {2, *b}});
    PureState state = expansion_block(in, 1, 2);
    auto amp = state.amplitudes();
    const double concurrence = 2 * std::abs(amp[0] * amp[3] - amp[1] * amp[2]);

    Json j;
    j["input"] = std::string{to_char(*a), to_char(*b)};
    j["state"] = Json::parse(state_to_json(state));
    j["ket"] = state.to_string();
    j["concurrence"] = concurrence;
    j["entangled"] = concurrence > kTolerance;
    out << j.dump(2) << "\n";
    return kExitOk;
}

int cmd_run(const RunConfig &config, std::ostream &out, std::ostream &err) {
    if (config.format != "json" && config.format != "csv") {
        err << "error: --format must be json or csv\n";
        return kExitUsage;
    }
    SchemeRun run;
    try {
        run = resolve(config.run);
    } catch (const ResourceLimitError &e) {
        err << "error: " << e.what() << "\n";
        return kExitResource;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    ExpansionOutcome outcome = execute(run, config.scheme);
    const double analytic = analytic_probability(run);
    const double delta = std::abs(outcome.success_probability - analytic);
    const bool ok = delta <= config.tolerance && outcome.fidelity >= 1.0 - config.tolerance;

    std::string text;
    if (config.format == "json") {
        Json j = Json::parse(result_to_json(run, outcome, analytic, config.emit_state));
        if (config.shots > 0) {
            j["seed"] = config.seed.value_or(0);
            j["samples"] = sample(outcome.state, config.shots, config.seed.value_or(0));
        }
        j["passed"] = ok;
        text = j.dump(2) + "\n";
    } else {
        text = "scheme,start_n,k,target_n,success_probability,analytic,abs_delta,fidelity\n";
        text += std::string(scheme_name(run.scheme)) + "," + std::to_string(*run.start_n) + "," +
                (run.k ? std::to_string(*run.k) : "") + "," + std::to_string(*run.target_n) + "," +
                format17(outcome.success_probability) + "," + format17(analytic) + "," + format17(delta) + "," +
                format17(outcome.fidelity) + "\n";
    }
    if (config.verbosity > 0) {
        err << outcome.state.to_string() << "\n";
    }
    if (!emit(config.out_path, text, out, err)) {
        return kExitUsage;
    }
    if (!ok) {
        err << "validation failed: |p_sim - p_analytic| = " << delta << ", fidelity = " << outcome.fidelity << "\n";
        return kExitRejected;
    }
    return kExitOk;
}

int cmd_validate(const ValidateConfig &config, std::ostream &out, std::ostream &err) {
    if (config.format != "json" && config.format != "csv") {
        err << "error: --format must be json or csv\n";
        return kExitUsage;
    }
    if (config.max_n < 2) {
        err << "error: validate needs --n >= 2\n";
        return kExitUsage;
    }
    FormulaTable table;
    try {
        CrossValidateOptions opts;
        opts.threads = config.threads;
        opts.scheme = config.scheme;
        table = cross_validate(config.max_n, opts);
    } catch (const ResourceLimitError &e) {
        err << "error: " << e.what() << "\n";
        return kExitResource;
    }
    std::string text = config.format == "csv" ? to_csv(table) : table_to_json(table) + "\n";
    if (!emit(config.out_path, text, out, err)) {
        return kExitUsage;
    }
    if (!table.passes(config.tolerance)) {
        err << "validation failed: max |delta| = " << table.max_abs_delta()
            << ", min fidelity = " << table.min_fidelity() << "\n";
        return kExitRejected;
    }
    return kExitOk;
}

int cmd_verify(const VerifyConfig &config, std::ostream &out, std::ostream &err) {
    std::ifstream f(config.state_path, std::ios::binary);
    if (!f) {
        err << "error: cannot read '" << config.state_path << "'\n";
        return kExitUsage;
    }
    std::stringstream buf;
    buf << f.rdbuf();
    PureState state = PureState::zero({1});
    try {
        state = state_from_json(buf.str());
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    const std::size_t n = config.expected_n.value_or(state.num_modes());
    if (n % 2 != 0 || n == 0) {
        err << "error: verification needs an even, positive size\n";
        return kExitUsage;
    }
    VerifyReport report{false, 0, ""};
    if (state.num_modes() != n) {
        report.reason = "state has " + std::to_string(state.num_modes()) + " modes, expected " + std::to_string(n);
    } else {
        report = verify_back_report(state, WSpec{state.modes()}, config.layers, config.tolerance);
    }
    Json j;
    j["accepted"] = report.accepted;
    j["layers_checked"] = report.layers_checked;
    j["reason"] = report.reason;
    out << j.dump(2) << "\n";
    return report.accepted ? kExitOk : kExitRejected;
}

int cmd_dump_gates(const std::string &out_path, std::ostream &out, std::ostream &err) {
    return emit(out_path, gate_registry_json() + "\n", out, err) ? kExitOk : kExitUsage;
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Deterministic W-state expansion simulator", "wexpand"};
    app.require_subcommand(1);

    std::string bell_a, bell_b;
    auto *bell = app.add_subcommand("bell", "Run the expansion block on a two-photon basis input");
    bell->add_option("first", bell_a, "Polarization of mode 1 (ancilla): H or V")->required();
    bell->add_option("second", bell_b, "Polarization of mode 2 (input): H or V")->required();

    RunConfig rc;
    std::string scheme_name_arg;
    std::size_t run_n = 0, run_k = 0, run_target = 0;
    std::string config_path;
    std::uint64_t seed = 0;
    auto *runcmd = app.add_subcommand("run", "Run one expansion scheme and report its success probability");
    runcmd->add_option("--scheme", scheme_name_arg, "cascade | parallel | partial | odd_add | odd_project");
    runcmd->add_option("--n", run_n, "Input W-state size (start_n)");
    runcmd->add_option("--k", run_k, "Cascade steps or parallel circuits");
    runcmd->add_option("--target", run_target, "Target W-state size (target_n)");
    runcmd->add_option("--config", config_path, "Run descriptor JSON file");
    runcmd->add_option("--format", rc.format, "json | csv")->capture_default_str();
    runcmd->add_option("--out", rc.out_path, "Output path (default stdout)");
    auto *seed_opt = runcmd->add_option("--seed", seed, "Sampling seed");
    runcmd->add_option("--shots", rc.shots, "Number of basis-state samples to draw from the output");
    runcmd->add_flag("--emit-state", rc.emit_state, "Embed the output state in the result");
    runcmd->add_option("--tolerance", rc.tolerance, "Probability/fidelity tolerance")->capture_default_str();
    runcmd->add_flag("-v,--verbose", rc.verbosity, "Print the output ket to stderr");

    ValidateConfig vc;
    auto *validate = app.add_subcommand("validate", "Cross-check every closed form against simulation");
    validate->add_option("--n", vc.max_n, "Largest size parameter")->capture_default_str();
    validate->add_option("--format", vc.format, "csv | json")->capture_default_str();
    validate->add_option("--out", vc.out_path, "Output path (default stdout)");
    validate->add_option("--tolerance", vc.tolerance, "Allowed |analytic - simulated|")->capture_default_str();

    VerifyConfig fc;
    std::size_t verify_n = 0;
    auto *verify = app.add_subcommand("verify", "Check a serialized state by undoing parallel doubling");
    verify->add_option("state", fc.state_path, "State JSON file")->required();
    verify->add_option("--n", verify_n, "Expected number of modes");
    verify->add_option("--layers", fc.layers, "Doubling layers to undo (0: as many as possible)")
        ->capture_default_str();
    verify->add_option("--tolerance", fc.tolerance, "Acceptance tolerance")->capture_default_str();

    std::string gates_out;
    auto *dump = app.add_subcommand("dump-gates", "Print the gate registry as JSON");
    dump->add_option("--out", gates_out, "Output path (default stdout)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) {
        reversed.pop_back();  // program name
    }
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n" << app.help();
        return kExitUsage;
    }

    try {
        if (bell->parsed()) {
            return cmd_bell(bell_a, bell_b, out, err);
        }
        if (runcmd->parsed()) {
            if (!config_path.empty()) {
                std::ifstream f(config_path, std::ios::binary);
                if (!f) {
                    err << "error: cannot read '" << config_path << "'\n";
                    return kExitUsage;
                }
                std::stringstream buf;
                buf << f.rdbuf();
                rc.run = run_from_json(buf.str());
            } else if (scheme_name_arg.empty()) {
                err << "error: run needs --scheme or --config\n";
                return kExitUsage;
            }
            if (!scheme_name_arg.empty()) rc.run.scheme = scheme_from_name(scheme_name_arg);
            if (runcmd->count("--n")) rc.run.start_n = run_n;
            if (runcmd->count("--k")) rc.run.k = run_k;
            if (runcmd->count("--target")) rc.run.target_n = run_target;
            if (seed_opt->count()) rc.seed = seed;
            return cmd_run(rc, out, err);
        }
        if (validate->parsed()) {
            vc.threads = threads_from_env(vc.threads);
            return cmd_validate(vc, out, err);
        }
        if (verify->parsed()) {
            if (verify->count("--n")) fc.expected_n = verify_n;
            return cmd_verify(fc, out, err);
        }
        if (dump->parsed()) {
            return cmd_dump_gates(gates_out, out, err);
        }
    } catch (const ResourceLimitError &e) {
        err << "error: " << e.what() << "\n";
        return kExitResource;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace wexpand::cli
