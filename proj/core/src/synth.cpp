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

#include "dqa/synth.hpp"
#include "dqa/error.hpp"
#include "dqa/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

namespace dqa
{
    namespace
    {
        constexpr double speed_of_light = 299792458.0;
        constexpr double two_pi = 2.0 * std::numbers::pi;
        constexpr double deg = std::numbers::pi / 180.0;

        std::string num(double v)
        {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.17g", v);
            return buf;
        }

        std::string interval_text(const Interval &i) { return "[" + num(i.lo) + "," + num(i.hi) + "]"; }

        void require_interval(const Interval &i, double lo, double hi, const char *what)
        {
            if (!(i.lo <= i.hi) || !std::isfinite(i.lo) || !std::isfinite(i.hi) || i.lo < lo || i.hi > hi)
                throw InvalidArgument(std::string("PathRanges: invalid ") + what + " interval " + interval_text(i));
        }

        // Delays relative to the smallest one.
        void anchor_at_zero(PathSet &paths)
        {
            double lo = paths.front().delay_s;
            for (const auto &p : paths)
                lo = std::min(lo, p.delay_s);
            for (auto &p : paths)
                p.delay_s -= lo;
        }
    }

    void SynthConfig::validate() const
    {
        if (!(carrier_freq_hz > 0.0) || !(bandwidth_hz > 0.0) || !(subcarrier_spacing_hz > 0.0) ||
            !(snapshot_rate_hz > 0.0))
            throw InvalidArgument("SynthConfig: frequencies and rates must be positive");
        if (n_subcarriers < 2)
            throw InvalidArgument("SynthConfig: need at least 2 subcarriers");
        if (grid.n_v < 1 || grid.n_h < 1)
            throw InvalidArgument("SynthConfig: antenna grid dimensions must be >= 1");
        if (n_snapshots < 1)
            throw InvalidArgument("SynthConfig: need at least 1 snapshot");
        if (!(user_speed_mps >= 0.0) || !std::isfinite(user_speed_mps))
            throw InvalidArgument("SynthConfig: user speed must be nonnegative");
        if (n_samples < 1)
            throw InvalidArgument("SynthConfig: need at least 1 sample");
    }

    void PathRanges::validate() const
    {
        if (path_count.lo > path_count.hi || path_count.hi < 1)
            throw InvalidArgument("PathRanges: invalid path count interval");
        require_interval(delay_ns, 0.0, INFINITY, "delay");
        require_interval(aod_deg, -90.0, 90.0, "AOD");
        require_interval(zod_deg, 0.0, 180.0, "ZOD");
        if (rms_ds_window)
        {
            const auto &w = *rms_ds_window;
            if (!(w.offset_ns >= 0.0) || !(w.width_ns >= 0.0) || !std::isfinite(w.offset_ns) || !std::isfinite(w.width_ns))
                throw InvalidArgument("PathRanges: RMS delay spread window must be nonnegative");
        }
    }

    double rms_delay_spread(std::span<const Path> paths)
    {
        if (paths.empty())
            throw InvalidArgument("rms_delay_spread: empty path set");
        double mean = 0.0;
        for (const auto &p : paths)
            mean += p.power * p.delay_s;
        double var = 0.0;
        for (const auto &p : paths)
        {
            const double d = p.delay_s - mean;
            var += p.power * d * d;
        }
        return std::sqrt(var);
    }

    PathSet draw_paths(const SynthConfig &cfg, const PathRanges &ranges, Rng &rng)
    {
        std::int64_t count = rng.uniform_int(std::max<std::int64_t>(1, ranges.path_count.lo),
                                             std::max<std::int64_t>(1, ranges.path_count.hi));
        double target_s = 0.0;
        if (ranges.rms_ds_window)
        {
            const auto &w = *ranges.rms_ds_window;
            target_s = rng.uniform(w.offset_ns, w.offset_ns + w.width_ns) * 1e-9;
            if (target_s > 0.0 && count < 2)
                count = rng.uniform_int(std::max<std::int64_t>(2, ranges.path_count.lo),
                                        std::max<std::int64_t>(2, ranges.path_count.hi));
        }

        const double wavelength = speed_of_light / cfg.carrier_freq_hz;
        const double max_doppler = cfg.user_speed_mps / wavelength;

        PathSet paths(static_cast<std::size_t>(count));
        double total_power = 0.0;
        for (auto &p : paths)
        {
            p.delay_s = rng.uniform(ranges.delay_ns.lo, ranges.delay_ns.hi) * 1e-9;
            p.power = rng.exponential();
            total_power += p.power;
            p.phase_rad = rng.uniform(0.0, two_pi);
            p.aod_rad = rng.uniform(ranges.aod_deg.lo, ranges.aod_deg.hi) * deg;
            p.zod_rad = rng.uniform(ranges.zod_deg.lo, ranges.zod_deg.hi) * deg;
            p.doppler_hz = max_doppler * std::cos(rng.uniform(0.0, two_pi));
        }
        if (!(total_power > 0.0))
            throw InternalError("draw_paths: zero total power");
        for (auto &p : paths)
            p.power /= total_power;

        if (ranges.rms_ds_window)
        {
            anchor_at_zero(paths);
            if (target_s == 0.0)
            {
                for (auto &p : paths)
                    p.delay_s = 0.0;
            }
            else
            {
                // A degenerate delay range gives no shape to rescale; fall back to unit-interval draws.
                double current = rms_delay_spread(paths);
                while (!(current > 0.0))
                {
                    for (auto &p : paths)
                        p.delay_s = rng.uniform();
                    anchor_at_zero(paths);
                    current = rms_delay_spread(paths);
                }
                const double scale = target_s / current;
                for (auto &p : paths)
                    p.delay_s *= scale;
            }
        }
        return paths;
    }

    ChannelSample synthesize(const SynthConfig &cfg, std::span<const Path> paths)
    {
        const std::size_t nv = cfg.grid.n_v, nh = cfg.grid.n_h;
        const std::size_t A = nv * nh, F = cfg.n_subcarriers, T = cfg.n_snapshots, P = paths.size();

        // Per-path factors along each axis; the response is their product summed over paths.
        std::vector<cdouble> gain(P), steer(P * A), freq(P * F), time(P * T);
        for (std::size_t p = 0; p < P; ++p)
        {
            const Path &path = paths[p];
            gain[p] = std::polar(std::sqrt(path.power), path.phase_rad);
            const double v_phase = std::cos(path.zod_rad);
            const double h_phase = std::sin(path.zod_rad) * std::sin(path.aod_rad);
            for (std::size_t r = 0; r < nv; ++r)
                for (std::size_t c = 0; c < nh; ++c)
                    steer[p * A + r * nh + c] = std::polar(1.0, std::numbers::pi * (static_cast<double>(r) * v_phase +
                                                                                     static_cast<double>(c) * h_phase));
            for (std::size_t f = 0; f < F; ++f)
                freq[p * F + f] = std::polar(1.0, -two_pi * static_cast<double>(f) * cfg.subcarrier_spacing_hz * path.delay_s);
            for (std::size_t t = 0; t < T; ++t)
                time[p * T + t] = std::polar(1.0, two_pi * path.doppler_hz * static_cast<double>(t) / cfg.snapshot_rate_hz);
        }

        std::vector<cfloat> values(A * F * T);
        for (std::size_t a = 0; a < A; ++a)
            for (std::size_t f = 0; f < F; ++f)
                for (std::size_t t = 0; t < T; ++t)
                {
                    cdouble acc{0.0, 0.0};
                    for (std::size_t p = 0; p < P; ++p)
                        acc += gain[p] * steer[p * A + a] * freq[p * F + f] * time[p * T + t];
                    values[(a * F + f) * T + t] = cfloat(static_cast<float>(acc.real()), static_cast<float>(acc.imag()));
                }

        SampleShape shape;
        shape.n_antennas = A;
        shape.n_subcarriers = F;
        shape.n_snapshots = T;
        shape.grid = cfg.grid;
        return ChannelSample(shape, std::move(values));
    }

    ChannelSample generate_sample(const SynthConfig &cfg, const PathRanges &ranges, Rng &rng)
    {
        return synthesize(cfg, draw_paths(cfg, ranges, rng));
    }

    namespace
    {
        Metadata describe(const SynthConfig &cfg, const PathRanges &ranges)
        {
            Metadata m;
            m["generator"] = "dqa-geometric-multipath";
            m["seed"] = std::to_string(cfg.seed.value);
            m["carrier_freq_hz"] = num(cfg.carrier_freq_hz);
            m["bandwidth_hz"] = num(cfg.bandwidth_hz);
            m["subcarrier_spacing_hz"] = num(cfg.subcarrier_spacing_hz);
            m["n_subcarriers"] = std::to_string(cfg.n_subcarriers);
            m["antenna_grid"] = std::to_string(cfg.grid.n_v) + "x" + std::to_string(cfg.grid.n_h);
            m["n_snapshots"] = std::to_string(cfg.n_snapshots);
            m["snapshot_rate_hz"] = num(cfg.snapshot_rate_hz);
            m["user_speed_mps"] = num(cfg.user_speed_mps);
            m["n_samples"] = std::to_string(cfg.n_samples);
            m["path_count"] = "[" + std::to_string(ranges.path_count.lo) + "," + std::to_string(ranges.path_count.hi) + "]";
            m["delay_ns"] = interval_text(ranges.delay_ns);
            m["aod_deg"] = interval_text(ranges.aod_deg);
            m["zod_deg"] = interval_text(ranges.zod_deg);
            if (ranges.rms_ds_window)
            {
                m["rms_ds_offset_ns"] = num(ranges.rms_ds_window->offset_ns);
                m["rms_ds_width_ns"] = num(ranges.rms_ds_window->width_ns);
            }
            return m;
        }
    }

    GeneratedDataset generate_dataset_detailed(const SynthConfig &cfg, const PathRanges &ranges, unsigned workers)
    {
        cfg.validate();
        ranges.validate();
        std::vector<std::optional<ChannelSample>> samples(cfg.n_samples);
        std::vector<double> spreads(cfg.n_samples);
        parallel_for(cfg.n_samples, workers, [&](std::size_t i)
                     {
            Rng rng(derive_seed(cfg.seed, i));
            const auto paths = draw_paths(cfg, ranges, rng);
            spreads[i] = rms_delay_spread(paths);
            samples[i].emplace(synthesize(cfg, paths)); });

        std::vector<ChannelSample> out;
        out.reserve(cfg.n_samples);
        for (auto &s : samples)
            out.push_back(std::move(*s));
        return {Dataset(std::move(out), describe(cfg, ranges)), std::move(spreads)};
    }

    Dataset generate_dataset(const SynthConfig &cfg, const PathRanges &ranges, unsigned workers)
    {
        return generate_dataset_detailed(cfg, ranges, workers).dataset;
    }

    GeneratedDataset generate_detailed(const DatasetRecipe &recipe, unsigned workers)
    {
        auto g = generate_dataset_detailed(recipe.config, recipe.ranges, workers);
        Metadata meta = g.dataset.metadata();
        meta["recipe"] = recipe.name;
        std::vector<ChannelSample> samples(g.dataset.begin(), g.dataset.end());
        return {Dataset(std::move(samples), std::move(meta)), std::move(g.rms_delay_spread_s)};
    }

    Dataset generate(const DatasetRecipe &recipe, unsigned workers) { return generate_detailed(recipe, workers).dataset; }

    SynthConfig small_array_config(SynthConfig cfg)
    {
        cfg.grid = {2, 8};
        return cfg;
    }

    // ---- presets --------------------------------------------------------------

    std::vector<double> default_appendix_a_offsets(std::size_t n_datasets)
    {
        if (n_datasets == 0)
            throw InvalidArgument("default_appendix_a_offsets: need at least one dataset");
        std::vector<double> offsets(n_datasets, 0.0);
        for (std::size_t i = 1; i < n_datasets; ++i)
            offsets[i] = 3600.0 * static_cast<double>(i) / static_cast<double>(n_datasets - 1);
        return offsets;
    }

    std::vector<DatasetRecipe> appendix_a_recipes(const SynthConfig &cfg, std::span<const double> offsets_ns,
                                                  double width_ns)
    {
        std::vector<DatasetRecipe> out;
        for (std::size_t i = 0; i < offsets_ns.size(); ++i)
        {
            if (!(offsets_ns[i] >= 0.0))
                throw InvalidArgument("appendix_a: offsets must be nonnegative");
            DatasetRecipe r;
            r.name = "appendix-a-" + std::to_string(i);
            r.config = cfg;
            r.config.seed = derive_seed(cfg.seed, i);
            r.ranges.path_count = {30, 60};
            r.ranges.delay_ns = {0.0, 1000.0};
            r.ranges.rms_ds_window = RmsWindow{offsets_ns[i], width_ns};
            out.push_back(std::move(r));
        }
        return out;
    }

    std::vector<Dataset> appendix_a_corpus(const SynthConfig &cfg, std::span<const double> offsets_ns, double width_ns,
                                           unsigned workers)
    {
        std::vector<Dataset> out;
        for (const auto &r : appendix_a_recipes(cfg, offsets_ns, width_ns))
            out.push_back(generate(r, workers));
        return out;
    }

    std::vector<DatasetRecipe> appendix_b_recipes(const SynthConfig &cfg, std::size_t n_datasets)
    {
        static constexpr double delay_widths[] = {100, 200, 300, 400, 1000};
        static constexpr double angle_widths[] = {10, 20, 30, 40, 100};
        Rng rng(derive_seed(cfg.seed, 0xB0B0B0B0ULL));
        std::vector<DatasetRecipe> out;
        for (std::size_t i = 0; i < n_datasets; ++i)
        {
            DatasetRecipe r;
            r.name = "appendix-b-" + std::to_string(i);
            r.config = cfg;
            r.config.seed = derive_seed(cfg.seed, i);

            const auto np = static_cast<std::int64_t>(std::floor(rng.uniform(1.0, 10.0)));
            r.ranges.path_count = {std::max<std::int64_t>(1, np - 2), np + 5};

            const double nt = rng.uniform(0.0, 2500.0);
            const double wt = delay_widths[rng.uniform_int(0, 4)];
            r.ranges.delay_ns = {std::max(0.0, nt - wt / 2), nt + wt / 2};

            const double na = rng.uniform(-90.0, 90.0);
            const double wa = angle_widths[rng.uniform_int(0, 4)];
            r.ranges.aod_deg = {std::max(-90.0, na - wa / 2), std::min(90.0, na + wa / 2)};

            const double nz = rng.uniform(0.0, 180.0);
            const double wz = angle_widths[rng.uniform_int(0, 4)];
            r.ranges.zod_deg = {std::max(0.0, nz - wz / 2), std::min(180.0, nz + wz / 2)};
            out.push_back(std::move(r));
        }
        return out;
    }

    std::vector<Dataset> appendix_b_candidate_pool(const SynthConfig &cfg, std::size_t n_datasets, unsigned workers)
    {
        std::vector<Dataset> out;
        for (const auto &r : appendix_b_recipes(cfg, n_datasets))
            out.push_back(generate(r, workers));
        return out;
    }

    std::vector<DatasetRecipe> appendix_c_recipes(const SynthConfig &cfg)
    {
        static constexpr std::int64_t path_counts[] = {2, 4, 6, 8, 12, 15, 18};
        static constexpr double max_delays[] = {200, 800, 1400, 2000};
        static constexpr double angle_widths[] = {80, 120, 160};
        std::vector<DatasetRecipe> out;
        std::size_t i = 0;
        for (auto np : path_counts)
            for (double nt : max_delays)
                for (double na : angle_widths)
                {
                    DatasetRecipe r;
                    r.name = "appendix-c-np" + std::to_string(np) + "-nt" + num(nt) + "-na" + num(na);
                    r.config = cfg;
                    r.config.seed = derive_seed(cfg.seed, i++);
                    r.ranges.path_count = {1, np};
                    r.ranges.delay_ns = {0.0, nt};
                    r.ranges.aod_deg = {-na / 2, na / 2};
                    r.ranges.zod_deg = {90.0 - na / 2, 90.0 + na / 2};
                    out.push_back(std::move(r));
                }
        return out;
    }

    std::vector<Dataset> appendix_c_grid(const SynthConfig &cfg, unsigned workers)
    {
        std::vector<Dataset> out;
        for (const auto &r : appendix_c_recipes(cfg))
            out.push_back(generate(r, workers));
        return out;
    }

    DatasetRecipe uma_proxy_recipe(const SynthConfig &cfg)
    {
        DatasetRecipe r;
        r.name = "uma-proxy";
        r.config = cfg;
        r.ranges.path_count = {1, 18};
        r.ranges.delay_ns = {0.0, 2000.0};
        r.ranges.aod_deg = {-80.0, 80.0};
        r.ranges.zod_deg = {10.0, 170.0};
        return r;
    }
}
