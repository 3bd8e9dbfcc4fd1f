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

#pragma once

#include <cstdint>
#include <random>

namespace dqa
{
    struct RandomSeed
    {
        std::uint64_t value = 0;

        bool operator==(const RandomSeed &) const = default;
    };

    // Derives an independent substream seed from (seed, stream index) with a SplitMix64 finalizer.
    // Used to give every generated sample / dataset its own stream, so results do not depend on
    // evaluation order.
    RandomSeed derive_seed(RandomSeed seed, std::uint64_t stream);

    // Seeded generator with distribution helpers that are bit-reproducible across standard
    // library implementations (std::uniform_*_distribution is not).
    class Rng
    {
    public:
        explicit Rng(RandomSeed seed) : engine_(seed.value) {}

        std::uint64_t next_u64() { return engine_(); }

        // Uniform on [0, 1) with 53 random bits.
        double uniform();

        // Uniform on [lo, hi]; returns lo when lo == hi.
        double uniform(double lo, double hi);

        // Uniform integer on [lo, hi] (inclusive), unbiased via rejection.
        std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

        // Standard exponential variate, mean 1.
        double exponential();

    private:
        std::mt19937_64 engine_;
    };
}
