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
#include "dqa/transport.hpp"

#include <span>
#include <string>
#include <string_view>
#include <variant>

namespace dqa
{
    // Kernel bandwidth chosen from the data: median of the positive pairwise distances.
    struct MedianHeuristic
    {
        bool operator==(const MedianHeuristic &) const = default;
    };
    using Bandwidth = std::variant<double, MedianHeuristic>;

    struct MeanDistance
    {
        bool operator==(const MeanDistance &) const = default;
    };
    struct Mmd
    {
        Bandwidth bandwidth = MedianHeuristic{};
        bool operator==(const Mmd &) const = default;
    };
    struct Nnca
    {
        bool operator==(const Nnca &) const = default;
    };
    struct Wasserstein
    {
        double p = 2.0;
        bool operator==(const Wasserstein &) const = default;
    };

    using SimilarityMeasure = std::variant<MeanDistance, Mmd, Nnca, Wasserstein>;

    // "mean", "mmd", "nnca", "wasserstein"
    std::string_view measure_name(const SimilarityMeasure &m);
    // Validates parameters (p >= 1, explicit bandwidth > 0); throws InvalidArgument otherwise.
    void validate(const SimilarityMeasure &m);

    // (1 / (n_x n_y)) sum_ij D_ij
    double mean_distance(const DistanceMatrix &d);

    // Biased MMD estimate with the Gaussian kernel k(d) = exp(-d^2 / (2 sigma^2)) applied to the
    // three distance matrices. The bracket is clamped at zero before the square root.
    double mmd(const DistanceMatrix &dxx, const DistanceMatrix &dxy, const DistanceMatrix &dyy, double bandwidth);

    // Median of all strictly positive entries of the three matrices.
    double median_heuristic_bandwidth(const DistanceMatrix &dxx, const DistanceMatrix &dxy, const DistanceMatrix &dyy);

    // Leave-one-out accuracy of the 1-nearest-neighbour classifier separating X (positive) from
    // Y (negative). Distance ties go to the candidate with the smaller (set, index) key, X first.
    double nnca(const DistanceMatrix &dxx, const DistanceMatrix &dxy, const DistanceMatrix &dyy);

    struct WassersteinResult
    {
        double distance = 0.0; // (min <D^p, T>)^(1/p)
        TransportPlan plan;    // optimal basic coupling for D^p
    };

    // Exact W_p between the uniform empirical measures behind an inter-set distance matrix.
    WassersteinResult wasserstein(const DistanceMatrix &d, double p);

    // Applies `measure` to two feature sets, building only the distance matrices it needs.
    double set_difference(std::span<const RealMatrix> x, std::span<const RealMatrix> y, DistanceKind kind,
                          const SimilarityMeasure &measure, unsigned workers = 1);

    // Feature extraction, distance matrices and measure in one call.
    double dataset_difference(const Dataset &x, const Dataset &y, FeatureKind feature, DistanceKind kind,
                              const SimilarityMeasure &measure, unsigned workers = 1);
}
