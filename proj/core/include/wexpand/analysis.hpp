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

#ifndef WEXPAND_ANALYSIS_HPP
#define WEXPAND_ANALYSIS_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "wexpand/schemes.hpp"

namespace wexpand {

using Rational = boost::rational<std::int64_t>;

double to_double(const Rational &r);

// Closed-form success probabilities. The *_exact variants return reduced fractions; the plain
// variants convert at the boundary. All throw std::invalid_argument outside their domain.

/// W_N -> W_{N+1} by one cascade step: 1/2 + 1/(2N).
Rational p_step_exact(std::int64_t n);
/// W_1 -> W_{k+1} by k cascade steps: (k+1) 2^-k.
Rational p_from_single_exact(std::int64_t k);
/// W_N -> W_2N by N cascade steps: 2^(1-N).
Rational p_double_cascade_exact(std::int64_t n);
/// W_n -> W_{n+k} with k parallel blocks and PDL on the rest: (n+k)/(2n), 1 <= k <= n.
Rational p_partial_exact(std::int64_t n, std::int64_t k);
/// W_2N -> W_{2N+1} by one cascade step: 1/2 + 1/(4N).
Rational p_odd_add_exact(std::int64_t n);
/// W_{2N+2} -> W_{2N+1} by measuring one mode: 1 - 1/(2(N+1)).
Rational p_odd_project_exact(std::int64_t n);

double p_step(std::int64_t n);
double p_from_single(std::int64_t k);
double p_double_cascade(std::int64_t n);
double p_partial(std::int64_t n, std::int64_t k);
double p_odd_add(std::int64_t n);
double p_odd_project(std::int64_t n);

/// Closed form for a resolved scheme run.
Rational analytic_probability_exact(const SchemeRun &run);
double analytic_probability(const SchemeRun &run);

struct FormulaRow {
    std::string scheme;
    /// Primary size parameter (N, n or k depending on the scheme).
    std::size_t size;
    /// Secondary parameter (circuits k for "partial"); 0 when unused.
    std::size_t sub = 0;
    double analytic;
    double simulated;
    double abs_delta;
    /// Fidelity of the simulated output with the ideal target W state.
    double fidelity;

    /// "3" or "3:2" for rows with a secondary parameter.
    std::string size_label() const;
};

struct FormulaTable {
    std::vector<FormulaRow> rows;

    double max_abs_delta() const;
    double min_fidelity() const;
    bool passes(double tol = kTolerance) const;
};

struct CrossValidateOptions {
    /// Worker threads for the sweep; 0 picks std::thread::hardware_concurrency().
    std::size_t threads = 1;
    SchemeOptions scheme;
};

/// Largest max_n accepted by cross_validate: the biggest cell holds 2*max_n modes.
inline constexpr std::size_t kMaxValidateN = 11;

/// Runs every scheme family at every size up to max_n and compares simulation with the closed
/// forms. Families: cascade_step (n = 1..max_n), cascade_single (k = 1..max_n), cascade_double
/// (N = 1..max_n), parallel (n = 1..max_n), partial (n = 2..max_n, k = 1..n-1), odd_add and
/// odd_project (N = 1..max_n/2). Rows are sorted by scheme, then size.
///
/// Throws std::invalid_argument for max_n == 0 and ResourceLimitError above kMaxValidateN.
FormulaTable cross_validate(std::size_t max_n, const CrossValidateOptions &options = {});

/// CSV "scheme,size,analytic,simulated,abs_delta" with 17 significant digits.
std::string to_csv(const FormulaTable &table);

}  // namespace wexpand

#endif
