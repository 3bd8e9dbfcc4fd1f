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

// Small helpers shared by the unit and acceptance tests.

#include "dqa/dataset.hpp"
#include "dqa/random.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

namespace dqa_test
{
    // Random complex sample with standard normal-ish entries (sum of uniforms, deterministic).
    inline dqa::ChannelSample random_sample(dqa::Rng &rng, std::size_t nv, std::size_t nh, std::size_t F, std::size_t T)
    {
        dqa::SampleShape shape{nv * nh, F, T, {nv, nh}};
        std::vector<dqa::cfloat> v(shape.element_count());
        for (auto &x : v)
            x = dqa::cfloat(static_cast<float>(rng.uniform(-1.0, 1.0)), static_cast<float>(rng.uniform(-1.0, 1.0)));
        return dqa::ChannelSample(shape, std::move(v));
    }

    inline dqa::Dataset random_dataset(std::uint64_t seed, std::size_t n, std::size_t nv = 2, std::size_t nh = 2,
                                       std::size_t F = 8, std::size_t T = 1)
    {
        dqa::Rng rng(dqa::RandomSeed{seed});
        std::vector<dqa::ChannelSample> s;
        for (std::size_t i = 0; i < n; ++i)
            s.push_back(random_sample(rng, nv, nh, F, T));
        return dqa::Dataset(std::move(s), {{"origin", "test"}});
    }

    // Fixed 64 x 64 grayscale pattern for the JPEG reproducibility checks.
    inline std::vector<std::uint8_t> reference_image_pixels()
    {
        std::vector<std::uint8_t> px(64 * 64);
        for (std::size_t r = 0; r < 64; ++r)
            for (std::size_t c = 0; c < 64; ++c)
            {
                const double smooth = 96.0 + 80.0 * std::sin(0.11 * static_cast<double>(r)) * std::cos(0.07 * static_cast<double>(c));
                const int edge = (r / 16 + c / 16) % 2 == 0 ? 40 : -40;
                const int texture = static_cast<int>((r * 31 + c * 17) % 23) - 11;
                const int v = static_cast<int>(std::lround(smooth)) + edge + texture;
                px[r * 64 + c] = static_cast<std::uint8_t>(v < 0 ? 0 : (v > 255 ? 255 : v));
            }
        return px;
    }

    inline std::uint64_t fnv1a(const std::vector<std::uint8_t> &bytes)
    {
        std::uint64_t h = 1469598103934665603ULL;
        for (auto b : bytes)
        {
            h ^= b;
            h *= 1099511628211ULL;
        }
        return h;
    }
}
