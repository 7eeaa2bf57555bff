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

#include "wexpand/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <stdexcept>
#include <thread>
#include <tuple>

namespace wexpand {

namespace {

void require(bool ok, const char *what) {
    if (!ok) {
        throw std::invalid_argument(what);
    }
}

std::string format17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

FormulaRow make_row(std::string scheme, std::size_t size, std::size_t sub, double analytic,
                    const ExpansionOutcome &sim) {
    return FormulaRow{std::move(scheme),       size, sub, analytic, sim.success_probability,
                      std::abs(analytic - sim.success_probability), sim.fidelity};
}

}  // namespace

double to_double(const Rational &r) {
    return boost::rational_cast<double>(r);
}

Rational p_step_exact(std::int64_t n) {
    require(n >= 1, "p_step needs N >= 1");
    return Rational(1, 2) + Rational(1, 2 * n);
}

Rational p_from_single_exact(std::int64_t k) {
    require(k >= 1 && k <= 62, "p_from_single needs 1 <= k <= 62");
    return Rational(k + 1, std::int64_t{1} << k);
}

Rational p_double_cascade_exact(std::int64_t n) {
    require(n >= 1 && n <= 62, "p_double_cascade needs 1 <= N <= 62");
    return Rational(1, std::int64_t{1} << (n - 1));
}

Rational p_partial_exact(std::int64_t n, std::int64_t k) {
    require(n >= 1 && k >= 1 && k <= n, "p_partial needs 1 <= k <= n");
    return Rational(n + k, 2 * n);
}

Rational p_odd_add_exact(std::int64_t n) {
    require(n >= 1, "p_odd_add needs N >= 1");
    return Rational(1, 2) + Rational(1, 4 * n);
}

Rational p_odd_project_exact(std::int64_t n) {
    require(n >= 1, "p_odd_project needs N >= 1");
    return Rational(1) - Rational(1, 2 * (n + 1));
}

double p_step(std::int64_t n) {
    return to_double(p_step_exact(n));
}
double p_from_single(std::int64_t k) {
    return to_double(p_from_single_exact(k));
}
double p_double_cascade(std::int64_t n) {
    return to_double(p_double_cascade_exact(n));
}
double p_partial(std::int64_t n, std::int64_t k) {
    return to_double(p_partial_exact(n, k));
}
double p_odd_add(std::int64_t n) {
    return to_double(p_odd_add_exact(n));
}
double p_odd_project(std::int64_t n) {
    return to_double(p_odd_project_exact(n));
}

Rational analytic_probability_exact(const SchemeRun &unresolved) {
    SchemeRun run = resolve(unresolved);
    const auto n = static_cast<std::int64_t>(*run.start_n);
    switch (run.scheme) {
        case SchemeId::kCascade: {
            Rational p(1);
            for (std::int64_t m = n; m < n + static_cast<std::int64_t>(*run.k); ++m) {
                p *= p_step_exact(m);
            }
            return p;
        }
        case SchemeId::kParallel:
            return Rational(1);
        case SchemeId::kPartial:
            return p_partial_exact(n, static_cast<std::int64_t>(*run.k));
        case SchemeId::kOddAdd:
            return p_odd_add_exact(n / 2);
        case SchemeId::kOddProject:
            // start_n = 2N+2; also covers N = 0 (W_2 -> W_1 at 1/2).
            return Rational(1) - Rational(1, n);
    }
    throw std::invalid_argument("unknown scheme id");
}

double analytic_probability(const SchemeRun &run) {
    return to_double(analytic_probability_exact(run));
}

std::string FormulaRow::size_label() const {
    return sub == 0 ? std::to_string(size) : std::to_string(size) + ":" + std::to_string(sub);
}

double FormulaTable::max_abs_delta() const {
    double worst = 0;
    for (const auto &r : rows) {
        worst = std::max(worst, r.abs_delta);
    }
    return worst;
}

double FormulaTable::min_fidelity() const {
    double worst = 1;
    for (const auto &r : rows) {
        worst = std::min(worst, r.fidelity);
    }
    return worst;
}

bool FormulaTable::passes(double tol) const {
    return std::all_of(rows.begin(), rows.end(),
                       [&](const FormulaRow &r) { return r.abs_delta <= tol && r.fidelity >= 1.0 - tol; });
}

FormulaTable cross_validate(std::size_t max_n, const CrossValidateOptions &options) {
    if (max_n == 0) {
        throw std::invalid_argument("cross_validate needs max_n >= 1");
    }
    if (max_n > kMaxValidateN) {
        throw ResourceLimitError("max_n = " + std::to_string(max_n) + " needs " + std::to_string(2 * max_n) +
                                 " modes; limit is max_n = " + std::to_string(kMaxValidateN));
    }
    const SchemeOptions &so = options.scheme;
    std::vector<std::function<FormulaRow()>> cells;

    for (std::size_t n = 1; n <= max_n; ++n) {
        const auto ni = static_cast<std::int64_t>(n);
        cells.emplace_back([=] {
            WSpec spec = WSpec::numbered(n);
            return make_row("cascade_step", n, 0, p_step(ni), cascade_step(ideal_w(spec), spec, so));
        });
        cells.emplace_back([=] {
            return make_row("cascade_single", n, 0, p_from_single(ni), cascade_expand(1, n, so));
        });
        cells.emplace_back([=] {
            return make_row("cascade_double", n, 0, p_double_cascade(ni), cascade_expand(n, n, so));
        });
        cells.emplace_back([=] {
            WSpec spec = WSpec::numbered(n);
            return make_row("parallel", n, 0, 1.0, parallel_double(ideal_w(spec), spec));
        });
        for (std::size_t k = 1; k < n; ++k) {
            cells.emplace_back([=] {
                WSpec spec = WSpec::numbered(n);
                auto out = parallel_partial(ideal_w(spec), spec, ParallelLayout::partial(spec, k), so);
                return make_row("partial", n, k, p_partial(ni, static_cast<std::int64_t>(k)), out);
            });
        }
    }
    for (std::size_t big_n = 1; big_n <= max_n / 2; ++big_n) {
        const auto ni = static_cast<std::int64_t>(big_n);
        cells.emplace_back([=] {
            WSpec spec = WSpec::numbered(2 * big_n);
            return make_row("odd_add", big_n, 0, p_odd_add(ni), odd_add_one(ideal_w(spec), spec, so));
        });
        cells.emplace_back([=] {
            WSpec spec = WSpec::numbered(2 * big_n + 2);
            return make_row("odd_project", big_n, 0, p_odd_project(ni), odd_project(ideal_w(spec), spec).success);
        });
    }

    std::vector<FormulaRow> rows(cells.size());
    std::size_t workers = options.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : options.threads;
    workers = std::min(workers, cells.size());
    if (workers <= 1) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            rows[i] = cells[i]();
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::atomic<bool> failed{false};
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < cells.size(); i = next++) {
                    try {
                        rows[i] = cells[i]();
                    } catch (...) {
                        if (!failed.exchange(true)) {
                            failure = std::current_exception();
                        }
                    }
                }
            });
        }
        pool.clear();
        if (failure) {
            std::rethrow_exception(failure);
        }
    }

    std::sort(rows.begin(), rows.end(), [](const FormulaRow &a, const FormulaRow &b) {
        return std::tie(a.scheme, a.size, a.sub) < std::tie(b.scheme, b.size, b.sub);
    });
    return FormulaTable{std::move(rows)};
}

std::string to_csv(const FormulaTable &table) {
    std::string out = "scheme,size,analytic,simulated,abs_delta\n";
    for (const auto &r : table.rows) {
        out += r.scheme + "," + r.size_label() + "," + format17(r.analytic) + "," + format17(r.simulated) + "," +
               format17(r.abs_delta) + "\n";
    }
    return out;
}

}  // namespace wexpand
