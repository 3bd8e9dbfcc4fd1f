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
#include "dqa/distance.hpp"
#include "dqa/features.hpp"
#include "dqa/similarity.hpp"

#include <cstddef>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

namespace dqa
{
    // Bins spanning [min, max] of the observed values.
    struct UniformEdges
    {
        bool operator==(const UniformEdges &) const = default;
    };
    // S + 1 strictly increasing boundaries; values outside are counted in the nearest end bin.
    using BinEdges = std::variant<UniformEdges, std::vector<double>>;

    struct EntropyDiversity
    {
        std::size_t bins = 32;
        BinEdges edges = UniformEdges{};
        bool operator==(const EntropyDiversity &) const = default;
    };
    struct DistanceDiversity
    {
        DistanceKind kind = DistanceKind::ECS;
        bool operator==(const DistanceDiversity &) const = default;
    };
    struct DppDiversity
    {
        Bandwidth bandwidth = MedianHeuristic{};
        double jitter = 0.0;
        bool operator==(const DppDiversity &) const = default;
    };
    struct CompressionDiversity
    {
        int quality = 75;
        bool operator==(const CompressionDiversity &) const = default;
    };

    using DiversityMeasure = std::variant<EntropyDiversity, DistanceDiversity, DppDiversity, CompressionDiversity>;

    // "entropy", "distance", "dpp", "compression"
    std::string_view measure_name(const DiversityMeasure &m);
    void validate(const DiversityMeasure &m);

    // Normalized Shannon entropy of the histogram of `values` over S bins, in [0, 1].
    // Uniform edges: last bin right-closed; constant data lands in a single bin.
    double diversity_entropy(std::span<const double> values, std::size_t bins, const BinEdges &edges = UniformEdges{});

    // Mean of the n(n-1)/2 pairwise distances of an intra-set matrix, n >= 2.
    double diversity_distance(const DistanceMatrix &d);

    struct DppLogDet
    {
        double log_det = 0.0;    // -inf when degenerate
        bool degenerate = false; // L + jitter I is numerically singular
    };

    // log det(L + jitter I) with L_ij = exp(-D_ij^2 / (2 sigma^2)), via a pivoted LDL^T
    // factorization. Pivots at or below a round-off threshold mark the matrix as degenerate.
    DppLogDet diversity_dpp(const DistanceMatrix &d, double bandwidth, double jitter = 0.0);

    // Median of the strictly positive entries of one matrix.
    double median_positive_distance(const DistanceMatrix &d);

    // Byte count of the JPEG encoding of the sample mean rendered as a grayscale image.
    std::size_t compressed_mean_size(std::span<const RealMatrix> features, int quality = 75);

    // 1 / compressed_mean_size.
    double diversity_compression(std::span<const RealMatrix> features, int quality = 75);

    // Applies a diversity measure to the values of one feature kind. Entropy requires scalar
    // (sparsity) features, the other measures require spectra. A degenerate DPP throws.
    double feature_diversity(std::span<const RealMatrix> values, FeatureKind feature, const DiversityMeasure &measure,
                             unsigned workers = 1);

    double dataset_diversity(const Dataset &d, FeatureKind feature, const DiversityMeasure &measure,
                             unsigned workers = 1);

    // Entropy for sparsity features, ECS distance-based for spectra.
    DiversityMeasure default_diversity_measure(FeatureKind feature);
}
