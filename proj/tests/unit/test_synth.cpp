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

#include <catch2/catch_amalgamated.hpp>

#include "dqa/error.hpp"
#include "dqa/features.hpp"
#include "dqa/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>

using namespace dqa;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{
    constexpr double pi = std::numbers::pi;

    SynthConfig small_config()
    {
        SynthConfig cfg;
        cfg.grid = {2, 3};
        cfg.n_subcarriers = 16;
        cfg.n_snapshots = 4;
        cfg.n_samples = 12;
        cfg.seed = RandomSeed{99};
        return cfg;
    }
}

TEST_CASE("rms_delay_spread - Examples")
{
    CHECK(rms_delay_spread(PathSet{Path{1e-7, 1.0}}) == 0.0);

    // Equal powers at 0 and 2 tau: mean tau, spread tau
    const double tau = 3e-7;
    CHECK_THAT(rms_delay_spread(PathSet{Path{0.0, 0.5}, Path{2 * tau, 0.5}}), WithinRel(tau, 1e-12));

    // Powers (0.25, 0.75) at 0 and 1 us: sqrt(0.25 * 0.75) us
    CHECK_THAT(rms_delay_spread(PathSet{Path{0.0, 0.25}, Path{1e-6, 0.75}}), WithinRel(std::sqrt(0.1875) * 1e-6, 1e-12));

    // Shift invariance
    PathSet p{Path{1e-7, 0.2}, Path{4e-7, 0.3}, Path{9e-7, 0.5}};
    const double base = rms_delay_spread(p);
    for (auto &x : p)
        x.delay_s += 5e-6;
    CHECK_THAT(rms_delay_spread(p), WithinRel(base, 1e-9));

    CHECK_THROWS_AS(rms_delay_spread(PathSet{}), InvalidArgument);
}

TEST_CASE("draw_paths - Ranges and RMS window")
{
    const auto cfg = small_config();
    Rng rng(RandomSeed{1});
    PathRanges ranges;
    ranges.path_count = {3, 7};
    ranges.delay_ns = {100, 400};
    ranges.aod_deg = {-20, 30};
    ranges.zod_deg = {60, 70};
    const double nu_max = cfg.user_speed_mps * cfg.carrier_freq_hz / 299792458.0;
    for (int i = 0; i < 200; ++i)
    {
        const auto p = draw_paths(cfg, ranges, rng);
        CHECK((p.size() >= 3 && p.size() <= 7));
        double total = 0.0;
        for (const auto &x : p)
        {
            total += x.power;
            CHECK(x.power > 0.0);
            CHECK((x.delay_s >= 100e-9 && x.delay_s <= 400e-9));
            CHECK((x.aod_rad >= -20 * pi / 180 - 1e-15 && x.aod_rad <= 30 * pi / 180 + 1e-15));
            CHECK((x.zod_rad >= 60 * pi / 180 - 1e-15 && x.zod_rad <= 70 * pi / 180 + 1e-15));
            CHECK(std::abs(x.doppler_hz) <= nu_max * (1 + 1e-12));
        }
        CHECK_THAT(total, WithinAbs(1.0, 1e-12));
    }

    // With a window the achieved spread lies in it and the first arrival is at 0
    ranges.path_count = {1, 5};
    ranges.rms_ds_window = RmsWindow{300, 200};
    for (int i = 0; i < 200; ++i)
    {
        const auto p = draw_paths(cfg, ranges, rng);
        REQUIRE(p.size() >= 2);
        const double s = rms_delay_spread(p) * 1e9;
        CHECK((s >= 300 - 1e-6 && s <= 500 + 1e-6));
        double lo = 1.0;
        for (const auto &x : p)
            lo = std::min(lo, x.delay_s);
        CHECK(lo == 0.0);
    }

    // Zero-width delay interval still reaches the target
    ranges.delay_ns = {250, 250};
    ranges.rms_ds_window = RmsWindow{123, 0};
    const auto p = draw_paths(cfg, ranges, rng);
    CHECK_THAT(rms_delay_spread(p), WithinRel(123e-9, 1e-9));

    // Zero target collapses all delays
    ranges.rms_ds_window = RmsWindow{0, 0};
    for (const auto &x : draw_paths(cfg, ranges, rng))
        CHECK(x.delay_s == 0.0);
}

TEST_CASE("synthesize - Matches direct evaluation")
{
    auto cfg = small_config();
    cfg.user_speed_mps = 30.0;
    Rng rng(RandomSeed{2});
    PathRanges ranges;
    ranges.path_count = {4, 4};
    const auto paths = draw_paths(cfg, ranges, rng);
    const auto s = synthesize(cfg, paths);
    REQUIRE(s.n_antennas() == 6);
    REQUIRE(s.n_subcarriers() == 16);
    REQUIRE(s.n_snapshots() == 4);

    for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 3; ++c)
            for (std::size_t f = 0; f < 16; ++f)
                for (std::size_t t = 0; t < 4; ++t)
                {
                    std::complex<double> h = 0.0;
                    for (const auto &p : paths)
                    {
                        const double phase = p.phase_rad - 2 * pi * double(f) * cfg.subcarrier_spacing_hz * p.delay_s +
                                             pi * (double(r) * std::cos(p.zod_rad) +
                                                   double(c) * std::sin(p.zod_rad) * std::sin(p.aod_rad)) +
                                             2 * pi * p.doppler_hz * double(t) / cfg.snapshot_rate_hz;
                        h += std::sqrt(p.power) * std::exp(std::complex<double>(0.0, phase));
                    }
                    const auto got = s(r * 3 + c, f, t);
                    CHECK_THAT(got.real(), WithinAbs(h.real(), 1e-5));
                    CHECK_THAT(got.imag(), WithinAbs(h.imag(), 1e-5));
                }
}

TEST_CASE("synthesize - Single path spectra")
{
    auto cfg = small_config();
    cfg.grid = {4, 4};
    cfg.n_snapshots = 8;
    cfg.user_speed_mps = 0.0;
    // Delay on tap 3 of the F-point grid
    const double tap = 1.0 / (double(cfg.n_subcarriers) * cfg.subcarrier_spacing_hz);
    Path p{3 * tap, 1.0, 0.7, 0.0, pi / 2, 0.0};
    const auto bundle = extract_bundle(synthesize(cfg, PathSet{p}));
    CHECK_THAT(bundle.pdp[3], WithinAbs(1.0, 1e-6));
    CHECK_THAT(*bundle.pdp_sparsity, WithinAbs(1.0, 1e-5));

    // Broadside: all elements in phase, all power in APS bin (0, 0)
    CHECK_THAT(bundle.aps(0, 0), WithinAbs(1.0, 1e-6));

    // Static user: Doppler power in bin 0
    REQUIRE(bundle.doppler);
    CHECK_THAT((*bundle.doppler)[0], WithinAbs(1.0, 1e-6));

    CHECK(synthesize(cfg, PathSet{}).values()[0] == cfloat(0.0f, 0.0f));
}

TEST_CASE("generate_dataset - Determinism and metadata")
{
    const auto cfg = small_config();
    PathRanges ranges;
    ranges.rms_ds_window = RmsWindow{100, 50};
    const auto a = generate_dataset_detailed(cfg, ranges, 1);
    const auto b = generate_dataset_detailed(cfg, ranges, 3);
    CHECK(a.dataset == b.dataset);
    CHECK(a.rms_delay_spread_s == b.rms_delay_spread_s);
    CHECK(a.dataset.size() == 12);
    for (double s : a.rms_delay_spread_s)
        CHECK((s >= 100e-9 - 1e-15 && s <= 150e-9 + 1e-15));

    // Sample i depends on (seed, i) only
    auto more = cfg;
    more.n_samples = 20;
    const auto c = generate_dataset(more, ranges);
    for (std::size_t i = 0; i < 12; ++i)
        CHECK(c[i] == a.dataset[i]);

    auto other = cfg;
    other.seed = RandomSeed{100};
    CHECK_FALSE(generate_dataset(other, ranges)[0] == a.dataset[0]);

    const auto &m = a.dataset.metadata();
    CHECK(m.at("seed") == "99");
    CHECK(m.at("antenna_grid") == "2x3");
    CHECK(m.at("rms_ds_offset_ns") == "100");
    CHECK(m.at("n_samples") == "12");

    auto bad = cfg;
    bad.n_subcarriers = 1;
    CHECK_THROWS_AS(generate_dataset(bad, ranges), InvalidArgument);
    PathRanges bad_ranges;
    bad_ranges.aod_deg = {-100, 0};
    CHECK_THROWS_AS(generate_dataset(cfg, bad_ranges), InvalidArgument);
    bad_ranges = {};
    bad_ranges.path_count = {5, 2};
    CHECK_THROWS_AS(generate_dataset(cfg, bad_ranges), InvalidArgument);
}

TEST_CASE("presets - Shapes and intervals")
{
    SynthConfig cfg;
    cfg.seed = RandomSeed{5};

    const auto offs = default_appendix_a_offsets();
    REQUIRE(offs.size() == 10);
    CHECK(offs.front() == 0.0);
    CHECK(offs[1] == 400.0);
    CHECK(offs.back() == 3600.0);

    const auto a = appendix_a_recipes(cfg, offs);
    REQUIRE(a.size() == 10);
    std::set<std::uint64_t> seeds;
    for (std::size_t i = 0; i < a.size(); ++i)
    {
        REQUIRE(a[i].ranges.rms_ds_window);
        CHECK(a[i].ranges.rms_ds_window->offset_ns == offs[i]);
        CHECK(a[i].ranges.rms_ds_window->width_ns == 2000.0);
        seeds.insert(a[i].config.seed.value);
    }
    CHECK(seeds.size() == 10);

    const auto small = small_array_config(cfg);
    CHECK(small.grid == AntennaGrid{2, 8});

    const auto b = appendix_b_recipes(small, 20);
    REQUIRE(b.size() == 20);
    for (const auto &r : b)
    {
        CHECK_NOTHROW(r.ranges.validate());
        CHECK(r.ranges.path_count.lo >= 1);
        CHECK(r.ranges.path_count.hi <= 14);
        CHECK(r.ranges.delay_ns.hi - r.ranges.delay_ns.lo <= 1000.0 + 1e-9);
        CHECK(r.ranges.aod_deg.hi - r.ranges.aod_deg.lo <= 100.0 + 1e-9);
    }
    // Same seed, same pool settings
    CHECK(appendix_b_recipes(small, 20)[7].ranges == b[7].ranges);

    const auto c = appendix_c_recipes(small);
    REQUIRE(c.size() == 84);
    CHECK(c.front().name == "appendix-c-np2-nt200-na80");
    CHECK(c.back().name == "appendix-c-np18-nt2000-na160");
    CHECK(c[1].ranges.aod_deg == Interval{-60, 60});
    CHECK(c[1].ranges.zod_deg == Interval{30, 150});

    const auto u = uma_proxy_recipe(small);
    CHECK_NOTHROW(u.ranges.validate());

    CHECK_THROWS_AS(default_appendix_a_offsets(0), InvalidArgument);
    const std::vector<double> neg{-1.0};
    CHECK_THROWS_AS(appendix_a_recipes(cfg, neg), InvalidArgument);
}

TEST_CASE("generate - Recipe name in metadata")
{
    auto cfg = small_config();
    cfg.n_samples = 3;
    const auto r = appendix_c_recipes(cfg)[5];
    const auto d = generate(r);
    CHECK(d.metadata().at("recipe") == r.name);
    CHECK(r.name == "appendix-c-np2-nt800-na160");
    CHECK(d.metadata().at("delay_ns") == "[0,800]");
    CHECK(d.size() == 3);
}
