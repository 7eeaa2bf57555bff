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

#include <benchmark/benchmark.h>

#include "wexpand/gates.hpp"
#include "wexpand/schemes.hpp"
#include "wexpand/state.hpp"

namespace {

using namespace wexpand;

void BM_Apply1q(benchmark::State &st) {
    const auto n = static_cast<std::size_t>(st.range(0));
    WSpec spec = WSpec::numbered(n);
    PureState psi = ideal_w(spec);
    GateMatrix h = hadamard();
    for (auto _ : st) {
        psi = apply_1q(std::move(psi), h, spec.modes[n / 2]);
        benchmark::DoNotOptimize(psi.amplitudes().data());
    }
    st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(psi.dimension()));
}
BENCHMARK(BM_Apply1q)->DenseRange(8, 20, 4);

void BM_Apply2q(benchmark::State &st) {
    const auto n = static_cast<std::size_t>(st.range(0));
    WSpec spec = WSpec::numbered(n);
    PureState psi = ideal_w(spec);
    GateMatrix ch = ch_direct();
    for (auto _ : st) {
        psi = apply_2q(std::move(psi), ch, spec.modes[0], spec.modes[n - 1]);
        benchmark::DoNotOptimize(psi.amplitudes().data());
    }
    st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(psi.dimension()));
}
BENCHMARK(BM_Apply2q)->DenseRange(8, 20, 4);

void BM_ParallelDouble(benchmark::State &st) {
    const auto n = static_cast<std::size_t>(st.range(0));
    WSpec spec = WSpec::numbered(n);
    PureState w = ideal_w(spec);
    for (auto _ : st) {
        benchmark::DoNotOptimize(parallel_double(w, spec).success_probability);
    }
}
BENCHMARK(BM_ParallelDouble)->DenseRange(2, 8, 2)->Unit(benchmark::kMicrosecond);

void BM_CascadeExpand(benchmark::State &st) {
    const auto k = static_cast<std::size_t>(st.range(0));
    for (auto _ : st) {
        benchmark::DoNotOptimize(cascade_expand(1, k).success_probability);
    }
}
BENCHMARK(BM_CascadeExpand)->DenseRange(4, 16, 4)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
