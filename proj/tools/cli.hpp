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

#ifndef WEXPAND_TOOLS_CLI_HPP
#define WEXPAND_TOOLS_CLI_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "wexpand/schemes.hpp"
#include "wexpand/state.hpp"

namespace wexpand::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitRejected = 2;
inline constexpr int kExitResource = 3;

struct RunConfig {
    SchemeRun run;
    std::string out_path;  // empty: stdout
    std::string format = "json";
    std::optional<std::uint64_t> seed;
    std::size_t shots = 0;
    bool emit_state = false;
    int verbosity = 0;
    double tolerance = kTolerance;
    SchemeOptions scheme;
};

struct ValidateConfig {
    std::size_t max_n = 6;
    std::string out_path;
    std::string format = "csv";
    double tolerance = kTolerance;
    /// 0: hardware concurrency. WEXPAND_THREADS overrides this in the command-line entry point.
    std::size_t threads = 0;
    SchemeOptions scheme;
};

struct VerifyConfig {
    std::string state_path;
    std::optional<std::size_t> expected_n;
    std::size_t layers = 1;
    double tolerance = 1e-9;
};

int cmd_bell(const std::string &first, const std::string &second, std::ostream &out, std::ostream &err);
int cmd_run(const RunConfig &config, std::ostream &out, std::ostream &err);
int cmd_validate(const ValidateConfig &config, std::ostream &out, std::ostream &err);
int cmd_verify(const VerifyConfig &config, std::ostream &out, std::ostream &err);
int cmd_dump_gates(const std::string &out_path, std::ostream &out, std::ostream &err);

/// Parses argv (argv[0] is the program name) and dispatches to a subcommand.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace wexpand::cli

#endif
