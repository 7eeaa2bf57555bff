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

#include <set>
#include <sstream>

#include "gtest/gtest.h"

using namespace wexpand;

TEST(analysis, formula_examples) {
    EXPECT_EQ(p_step_exact(2), Rational(3, 4));
    EXPECT_EQ(p_step_exact(4), Rational(5, 8));
    EXPECT_EQ(p_from_single_exact(6), Rational(7, 64));
    EXPECT_EQ(p_from_single_exact(5), Rational(3, 16));
    EXPECT_EQ(p_double_cascade_exact(4), Rational(1, 8));
    EXPECT_EQ(p_partial_exact(3, 1), Rational(2, 3));
    EXPECT_EQ(p_partial_exact(3, 2), Rational(5, 6));
    EXPECT_EQ(p_partial_exact(5, 5), Rational(1));
    EXPECT_EQ(p_odd_add_exact(4), Rational(9, 16));
    EXPECT_EQ(p_odd_project_exact(1), Rational(3, 4));
    EXPECT_EQ(p_odd_project_exact(2), Rational(5, 6));
    EXPECT_DOUBLE_EQ(p_from_single(6), 7.0 / 64.0);
}

TEST(analysis, domain_errors) {
    EXPECT_THROW(p_step(0), std::invalid_argument);
    EXPECT_THROW(p_from_single(0), std::invalid_argument);
    EXPECT_THROW(p_from_single(63), std::invalid_argument);
    EXPECT_THROW(p_double_cascade(0), std::invalid_argument);
    EXPECT_THROW(p_partial(3, 0), std::invalid_argument);
    EXPECT_THROW(p_partial(3, 4), std::invalid_argument);
    EXPECT_THROW(p_odd_add(0), std::invalid_argument);
    EXPECT_THROW(p_odd_project(0), std::invalid_argument);
}

TEST(analysis, cascade_products_telescope) {
    Rational running(1);
    for (std::int64_t k = 1; k <= 20; ++k) {
        running *= p_step_exact(k);
        EXPECT_EQ(running, p_from_single_exact(k)) << k;
    }
    for (std::int64_t n = 1; n <= 10; ++n) {
        Rational p(1);
        for (std::int64_t m = n; m < 2 * n; ++m) p *= p_step_exact(m);
        EXPECT_EQ(p, p_double_cascade_exact(n)) << n;
    }
}

TEST(analysis, consistency_between_formulas) {
    for (std::int64_t n = 1; n <= 30; ++n) {
        EXPECT_EQ(p_partial_exact(n, 1), p_step_exact(n));
        EXPECT_EQ(p_partial_exact(n, n), Rational(1));
        EXPECT_EQ(p_odd_add_exact(n), p_step_exact(2 * n));
    }
}

TEST(analysis, analytic_probability_per_scheme) {
    EXPECT_EQ(analytic_probability_exact({SchemeId::kCascade, 1, 5, std::nullopt}), Rational(3, 16));
    EXPECT_EQ(analytic_probability_exact({SchemeId::kCascade, 4, 4, std::nullopt}), Rational(1, 8));
    EXPECT_EQ(analytic_probability_exact({SchemeId::kParallel, 3, std::nullopt, std::nullopt}), Rational(1));
    EXPECT_EQ(analytic_probability_exact({SchemeId::kPartial, 3, 2, std::nullopt}), Rational(5, 6));
    EXPECT_EQ(analytic_probability_exact({SchemeId::kOddAdd, 4, std::nullopt, std::nullopt}), Rational(5, 8));
    EXPECT_EQ(analytic_probability_exact({SchemeId::kOddProject, 4, std::nullopt, std::nullopt}), Rational(3, 4));
    EXPECT_EQ(analytic_probability_exact({SchemeId::kOddProject, 2, std::nullopt, std::nullopt}), Rational(1, 2));
}

TEST(analysis, analytic_matches_simulation_for_runs) {
    for (SchemeRun run : {SchemeRun{SchemeId::kCascade, 2, 3, std::nullopt},
                          SchemeRun{SchemeId::kPartial, 5, 3, std::nullopt},
                          SchemeRun{SchemeId::kOddAdd, 6, std::nullopt, std::nullopt},
                          SchemeRun{SchemeId::kOddProject, 2, std::nullopt, std::nullopt},
                          SchemeRun{SchemeId::kOddProject, 8, std::nullopt, std::nullopt}}) {
        EXPECT_NEAR(execute(run).success_probability, analytic_probability(run), kTolerance)
            << scheme_name(run.scheme);
    }
}

TEST(analysis, cross_validate_table) {
    FormulaTable t = cross_validate(6);
    EXPECT_TRUE(t.passes());
    EXPECT_LE(t.max_abs_delta(), kTolerance);
    EXPECT_GE(t.min_fidelity(), 1.0 - kTolerance);
    std::set<std::string> schemes;
    std::size_t partial = 0;
    for (const auto &r : t.rows) {
        schemes.insert(r.scheme);
        if (r.scheme == "partial") ++partial;
    }
    EXPECT_EQ(schemes, (std::set<std::string>{"cascade_double", "cascade_single", "cascade_step", "odd_add",
                                              "odd_project", "parallel", "partial"}));
    EXPECT_EQ(partial, 15u);  // sum_{n=2}^{6} (n - 1)
    EXPECT_EQ(t.rows.size(), 6u * 4u + 15u + 3u * 2u);
}

TEST(analysis, cross_validate_bounds) {
    FormulaTable one = cross_validate(1);
    EXPECT_TRUE(one.passes());
    EXPECT_EQ(one.rows.size(), 4u);
    EXPECT_THROW(cross_validate(0), std::invalid_argument);
    EXPECT_THROW(cross_validate(kMaxValidateN + 1), ResourceLimitError);
}

TEST(analysis, cross_validate_detects_wrong_filter) {
    CrossValidateOptions opts;
    opts.scheme.pdl_transmission = 0.7;
    FormulaTable t = cross_validate(4, opts);
    EXPECT_FALSE(t.passes());
    EXPECT_GT(t.max_abs_delta(), 1e-3);
}

TEST(analysis, cross_validate_is_thread_count_independent) {
    CrossValidateOptions serial;
    CrossValidateOptions pooled;
    pooled.threads = 4;
    EXPECT_EQ(to_csv(cross_validate(5, serial)), to_csv(cross_validate(5, pooled)));
}

TEST(analysis, csv_format) {
    FormulaTable t;
    t.rows.push_back({"partial", 3, 2, 5.0 / 6.0, 5.0 / 6.0, 0.0, 1.0});
    t.rows.push_back({"cascade_step", 2, 0, 0.75, 0.75, 0.0, 1.0});
    std::string csv = to_csv(t);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "scheme,size,analytic,simulated,abs_delta");
    std::getline(in, line);
    EXPECT_EQ(line, "partial,3:2,0.83333333333333337,0.83333333333333337,0");
    std::getline(in, line);
    EXPECT_EQ(line, "cascade_step,2,0.75,0.75,0");
}
