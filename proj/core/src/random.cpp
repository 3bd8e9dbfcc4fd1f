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

#include "dqa/random.hpp"
#include "dqa/error.hpp"

#include <cmath>
#include <limits>

namespace dqa
{
    namespace
    {
        std::uint64_t splitmix64(std::uint64_t x)
        {
            x += 0x9E3779B97F4A7C15ULL;
            x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
            x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
            return x ^ (x >> 31);
        }
    }

    RandomSeed derive_seed(RandomSeed seed, std::uint64_t stream)
    {
        return RandomSeed{splitmix64(splitmix64(seed.value) ^ splitmix64(stream + 0x632BE59BD9B4E019ULL))};
    }

    double Rng::uniform()
    {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double Rng::uniform(double lo, double hi)
    {
        if (!(hi >= lo))
            throw InvalidArgument("Rng::uniform: empty interval");
        if (lo == hi)
            return lo;
        return lo + (hi - lo) * uniform();
    }

    std::int64_t Rng::uniform_int(std::int64_t lo, std::int64_t hi)
    {
        if (hi < lo)
            throw InvalidArgument("Rng::uniform_int: empty interval");
        const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo);
        if (span == std::numeric_limits<std::uint64_t>::max())
            return static_cast<std::int64_t>(engine_());
        const std::uint64_t range = span + 1;
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - (std::numeric_limits<std::uint64_t>::max() % range);
        std::uint64_t x;
        do
            x = engine_();
        while (x >= limit);
        return lo + static_cast<std::int64_t>(x % range);
    }

    double Rng::exponential()
    {
        // 1 - u lies in (0, 1], so the log is finite.
        return -std::log(1.0 - uniform());
    }
}
