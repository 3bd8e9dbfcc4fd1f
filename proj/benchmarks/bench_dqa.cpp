// SPDX-License-Identifier: Apache-2.0
//
// dqa - data quality assessment for wireless air-interface datasets
// Copyright (C) 2026 The dqa authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <benchmark/benchmark.h>

#include "dqa/distance.hpp"
#include "dqa/features.hpp"
#include "dqa/random.hpp"
#include "dqa/similarity.hpp"
#include "dqa/synth.hpp"
#include "dqa/transport.hpp"

#include <vector>

using namespace dqa;

namespace
{
    RealMatrix random_cost(std::size_t rows, std::size_t cols, std::uint64_t seed)
    {
        Rng rng(RandomSeed{seed});
        RealMatrix m(rows, cols);
        for (auto &v : m.values())
            v = rng.uniform();
        return m;
    }

    std::vector<RealMatrix> pdp_set(std::size_t n, std::uint64_t seed)
    {
        SynthConfig cfg;
        cfg.n_samples = n;
        cfg.seed = RandomSeed{seed};
        PathRanges ranges;
        ranges.path_count = {4, 16};
        return feature_values(extract_features(generate_dataset(cfg, ranges)), FeatureKind::PDP);
    }
}

// Square uniform transport, the shape W_p produces for equal-size sets.
static void BM_NetworkSimplexSquare(benchmark::State &state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto cost = random_cost(n, n, 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(solve_uniform_transport(cost).cost);
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_NetworkSimplexSquare)->RangeMultiplier(2)->Range(8, 256)->Complexity();

// Unequal sizes: the gcd scaling gives non-unit supplies.
static void BM_NetworkSimplexRect(benchmark::State &state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto cost = random_cost(n, n + n / 2 + 1, 2);
    for (auto _ : state)
        benchmark::DoNotOptimize(solve_uniform_transport(cost).cost);
}
BENCHMARK(BM_NetworkSimplexRect)->RangeMultiplier(2)->Range(8, 128);

static void BM_DistanceMatrixEcs(benchmark::State &state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto x = pdp_set(n, 3), y = pdp_set(n, 4);
    for (auto _ : state)
        benchmark::DoNotOptimize(distance_matrix(x, y, DistanceKind::ECS, 1).values.values().data());
    state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}
BENCHMARK(BM_DistanceMatrixEcs)->RangeMultiplier(2)->Range(16, 256);

static void BM_Wasserstein2(benchmark::State &state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto x = pdp_set(n, 5), y = pdp_set(n, 6);
    for (auto _ : state)
        benchmark::DoNotOptimize(set_difference(x, y, DistanceKind::ECS, Wasserstein{2.0}, 1));
}
BENCHMARK(BM_Wasserstein2)->RangeMultiplier(2)->Range(16, 128);

static void BM_ExtractBundle(benchmark::State &state)
{
    SynthConfig cfg;
    cfg.n_samples = 1;
    cfg.n_snapshots = static_cast<std::size_t>(state.range(0));
    PathRanges ranges;
    ranges.path_count = {10, 10};
    const auto d = generate_dataset(cfg, ranges);
    for (auto _ : state)
        benchmark::DoNotOptimize(extract_bundle(d[0]).pdp.data());
}
BENCHMARK(BM_ExtractBundle)->Arg(1)->Arg(4)->Arg(16);

static void BM_GenerateSample(benchmark::State &state)
{
    SynthConfig cfg;
    PathRanges ranges;
    ranges.path_count = {state.range(0), state.range(0)};
    Rng rng(RandomSeed{7});
    for (auto _ : state)
        benchmark::DoNotOptimize(generate_sample(cfg, ranges, rng).values().data());
}
BENCHMARK(BM_GenerateSample)->Arg(8)->Arg(32)->Arg(64);

BENCHMARK_MAIN();
