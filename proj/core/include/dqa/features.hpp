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
#include "dqa/matrix.hpp"

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dqa
{
    enum class FeatureKind
    {
        PDP,
        APS,
        Doppler,
        PDPSparsity,
        APSSparsity,
        DopplerSparsity
    };

    inline constexpr std::array<FeatureKind, 6> all_feature_kinds{
        FeatureKind::PDP, FeatureKind::APS, FeatureKind::Doppler,
        FeatureKind::PDPSparsity, FeatureKind::APSSparsity, FeatureKind::DopplerSparsity};

    // PDP, APS, PDP sparsity, APS sparsity: the set used when no Doppler axis is available.
    inline constexpr std::array<FeatureKind, 4> default_feature_kinds{
        FeatureKind::PDP, FeatureKind::APS, FeatureKind::PDPSparsity, FeatureKind::APSSparsity};

    inline constexpr bool is_scalar(FeatureKind k) noexcept
    {
        return k == FeatureKind::PDPSparsity || k == FeatureKind::APSSparsity || k == FeatureKind::DopplerSparsity;
    }

    // "pdp", "aps", "doppler", "pdp-sparsity", "aps-sparsity", "doppler-sparsity"
    std::string_view to_string(FeatureKind k);
    FeatureKind parse_feature_kind(std::string_view name);

    // Spectral features of one sample. Every present spectrum is nonnegative and sums to one.
    // Doppler is absent for single-snapshot samples; a sparsity value is absent when its
    // spectrum has a single bin (the Hoyer measure is undefined for n = 1).
    struct FeatureBundle
    {
        std::vector<double> pdp;                    // length F
        RealMatrix aps;                             // N_v x N_h
        std::optional<std::vector<double>> doppler; // length T
        std::optional<double> pdp_sparsity;
        std::optional<double> aps_sparsity;
        std::optional<double> doppler_sparsity;

        bool has(FeatureKind k) const noexcept;
        bool operator==(const FeatureBundle &) const = default;
    };

    // Power delay profile: inverse DFT over subcarriers, power averaged over antennas and snapshots.
    std::vector<double> extract_pdp(const ChannelSample &s);

    // Angular power spectrum: 2-D DFT over the antenna grid, power averaged over subcarriers and snapshots.
    RealMatrix extract_aps(const ChannelSample &s);

    // Doppler spectrum: DFT over snapshots, power averaged over antennas and subcarriers.
    // Empty when the sample has a single snapshot.
    std::optional<std::vector<double>> extract_doppler(const ChannelSample &s);

    // Hoyer sparsity (sqrt(n) - |v|_1 / |v|_2) / (sqrt(n) - 1) of a nonnegative vector, n >= 2.
    // 1 for a single nonzero entry, 0 for a constant vector.
    double hoyer_sparsity(std::span<const double> v);

    FeatureBundle extract_bundle(const ChannelSample &s);

    // One bundle per sample, in sample order. workers = 0 uses the hardware concurrency.
    std::vector<FeatureBundle> extract_features(const Dataset &d, unsigned workers = 1);

    // The value a distance or diversity measure consumes for feature `k`:
    // PDP/Doppler as 1 x N, APS as N_v x N_h, sparsities as 1 x 1.
    RealMatrix feature_value(const FeatureBundle &b, FeatureKind k);
    std::vector<RealMatrix> feature_values(std::span<const FeatureBundle> bundles, FeatureKind k);

    // Feature cache: JSON array of objects with fields pdp, aps (array of rows), doppler,
    // pdp_sparsity, aps_sparsity, doppler_sparsity; absent values are null.
    std::string features_to_json(std::span<const FeatureBundle> bundles);
    std::vector<FeatureBundle> features_from_json(std::string_view text);
}
