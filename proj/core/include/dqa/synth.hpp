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

#include "dqa/dataset.hpp"
#include "dqa/random.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dqa
{
    /*!MD
    # Geometric multipath channel generator

    Unclustered multipath model: every path has a delay, a power, a random phase, departure
    angles (AOD, ZOD) seen by a half-wavelength uniform planar array, and a Doppler shift from
    the user speed. The frequency response of sample paths p is

        H[a, f, t] = sum_p sqrt(P_p) e^{i phi_p} e^{-i 2 pi f f0 tau_p} s_a(aod_p, zod_p) e^{i 2 pi nu_p t / f_s}

    with steering phase pi (r cos(zod) + c sin(zod) sin(aod)) for array element (row r, column c).
    When an RMS delay spread window (y, W) is set, a target spread is drawn from U[y, y + W] and
    the drawn delays are affinely rescaled (minimum delay anchored at 0) to hit it exactly.
    */

    struct SynthConfig
    {
        double carrier_freq_hz = 2.16e9;
        double bandwidth_hz = 20e6;
        double subcarrier_spacing_hz = 60e3; // f0
        std::size_t n_subcarriers = 52;      // F
        AntennaGrid grid{8, 8};
        std::size_t n_snapshots = 1; // T
        double snapshot_rate_hz = 200.0;
        double user_speed_mps = 3.0;
        std::size_t n_samples = 200;
        RandomSeed seed{};

        void validate() const;
    };

    struct Interval
    {
        double lo = 0.0;
        double hi = 0.0;
        bool operator==(const Interval &) const = default;
    };

    struct IntInterval
    {
        std::int64_t lo = 1;
        std::int64_t hi = 1;
        bool operator==(const IntInterval &) const = default;
    };

    struct RmsWindow
    {
        double offset_ns = 0.0; // y
        double width_ns = 0.0;  // W
        bool operator==(const RmsWindow &) const = default;
    };

    struct PathRanges
    {
        IntInterval path_count{1, 10};
        Interval delay_ns{0.0, 1000.0};
        Interval aod_deg{-90.0, 90.0};
        Interval zod_deg{0.0, 180.0};
        std::optional<RmsWindow> rms_ds_window;

        void validate() const;
        bool operator==(const PathRanges &) const = default;
    };

    struct Path
    {
        double delay_s = 0.0;
        double power = 1.0; // sums to 1 over a path set
        double phase_rad = 0.0;
        double aod_rad = 0.0;
        double zod_rad = 0.0;
        double doppler_hz = 0.0;
    };

    using PathSet = std::vector<Path>;

    // Power-weighted standard deviation of path delays (seconds). Powers must sum to one.
    double rms_delay_spread(std::span<const Path> paths);

    // Draws one path set. Path counts are clamped to >= 1, and to >= 2 when a positive RMS
    // delay spread target is drawn.
    PathSet draw_paths(const SynthConfig &cfg, const PathRanges &ranges, Rng &rng);

    // Frequency response of a path set on the configured array, subcarriers and snapshots.
    ChannelSample synthesize(const SynthConfig &cfg, std::span<const Path> paths);

    ChannelSample generate_sample(const SynthConfig &cfg, const PathRanges &ranges, Rng &rng);

    struct GeneratedDataset
    {
        Dataset dataset;
        std::vector<double> rms_delay_spread_s; // achieved spread of every sample
    };

    // n_samples independent draws; sample i uses the substream derive_seed(cfg.seed, i), so the
    // result is identical for any worker count. Metadata records config and ranges.
    GeneratedDataset generate_dataset_detailed(const SynthConfig &cfg, const PathRanges &ranges, unsigned workers = 1);
    Dataset generate_dataset(const SynthConfig &cfg, const PathRanges &ranges, unsigned workers = 1);

    // Named generation settings of one dataset.
    struct DatasetRecipe
    {
        std::string name;
        SynthConfig config;
        PathRanges ranges;
    };

    // Offsets 0, 400, ..., 3600 ns (n points evenly spread over [0, 3600]).
    std::vector<double> default_appendix_a_offsets(std::size_t n_datasets = 10);

    // One dataset per offset y with RMS delay spread window (y, width). Path angles span the
    // full ranges; path count [30, 60].
    std::vector<DatasetRecipe> appendix_a_recipes(const SynthConfig &cfg, std::span<const double> offsets_ns,
                                                  double width_ns = 2000.0);
    std::vector<Dataset> appendix_a_corpus(const SynthConfig &cfg, std::span<const double> offsets_ns,
                                           double width_ns = 2000.0, unsigned workers = 1);

    // Candidate pool: per dataset, random path-count, delay, AOD and ZOD intervals. The dataset
    // settings are drawn from `cfg.seed`; dataset i is generated with derive_seed(cfg.seed, i).
    std::vector<DatasetRecipe> appendix_b_recipes(const SynthConfig &cfg, std::size_t n_datasets);
    std::vector<Dataset> appendix_b_candidate_pool(const SynthConfig &cfg, std::size_t n_datasets, unsigned workers = 1);

    // Full factorial over path count {2,4,6,8,12,15,18} x max delay {200,800,1400,2000} ns x
    // angle width {80,120,160} deg (path count outermost, angle width innermost): 84 datasets.
    std::vector<DatasetRecipe> appendix_c_recipes(const SynthConfig &cfg);
    std::vector<Dataset> appendix_c_grid(const SynthConfig &cfg, unsigned workers = 1);

    // Wide ranges covering the union of the appendix C grid; stands in for a UMa test set.
    DatasetRecipe uma_proxy_recipe(const SynthConfig &cfg);

    // Metadata gains a "recipe" entry with the recipe name.
    GeneratedDataset generate_detailed(const DatasetRecipe &recipe, unsigned workers = 1);
    Dataset generate(const DatasetRecipe &recipe, unsigned workers = 1);

    // The 16-antenna (2 x 8) configuration used by the candidate pool and diversity grid.
    SynthConfig small_array_config(SynthConfig cfg);
}
