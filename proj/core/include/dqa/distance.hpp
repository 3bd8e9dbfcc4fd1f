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
#include "dqa/features.hpp"
#include "dqa/matrix.hpp"

#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

namespace dqa
{
    enum class DistanceKind
    {
        Euclidean,
        GMC, // Geman-McClure
        ECS  // Euclidean distance of cumulative spectra; real inputs only
    };

    std::string_view to_string(DistanceKind k);
    DistanceKind parse_distance_kind(std::string_view name);

    double dist_euclidean(std::span<const cdouble> x, std::span<const cdouble> y);
    double dist_euclidean(std::span<const double> x, std::span<const double> y);

    // sum_i |x_i - y_i|^2 / (1 + |x_i - y_i|^2)
    double dist_gmc(std::span<const cdouble> x, std::span<const cdouble> y);
    double dist_gmc(std::span<const double> x, std::span<const double> y);

    // |cumsum(x) - cumsum(y)|_2
    double dist_ecs(std::span<const double> x, std::span<const double> y);

    // Frobenius norm of the difference of 2-D cumulative sums C_ij = sum_{l<=i, k<=j} X_lk.
    double dist_ecs_matrix(const RealMatrix &x, const RealMatrix &y);

    // A sample as seen by a distance: a real matrix (spectra, scalars) or a complex vector
    // (raw CSI, when feature extraction is skipped).
    using FeatureValue = std::variant<RealMatrix, std::vector<cdouble>>;

    // Flattens a ChannelSample into its complex entries in storage order.
    FeatureValue raw_feature(const ChannelSample &s);

    // Euclidean and GMC flatten matrices; ECS uses the matrix form (which reduces to the vector
    // form for 1 x N inputs) and rejects complex values.
    double distance(const RealMatrix &x, const RealMatrix &y, DistanceKind kind);
    double distance(const FeatureValue &x, const FeatureValue &y, DistanceKind kind);

    struct DistanceMatrix
    {
        RealMatrix values; // n_x x n_y, entry (i, j) = d(A_i, B_j)
        DistanceKind kind = DistanceKind::Euclidean;
        std::optional<FeatureKind> feature;

        std::size_t rows() const noexcept { return values.rows(); }
        std::size_t cols() const noexcept { return values.cols(); }
        double operator()(std::size_t i, std::size_t j) const { return values(i, j); }
    };

    // Throws unless m is square, exactly symmetric, with a zero diagonal.
    void require_intra_set(const DistanceMatrix &m, std::string_view who);

    // Rows are evaluated on up to `workers` threads (0 = hardware concurrency); the result does
    // not depend on the worker count. Passing the same span twice produces an intra-set matrix,
    // evaluated on the upper triangle and mirrored.
    DistanceMatrix distance_matrix(std::span<const RealMatrix> a, std::span<const RealMatrix> b, DistanceKind kind,
                                   unsigned workers = 1);
    DistanceMatrix distance_matrix(std::span<const FeatureValue> a, std::span<const FeatureValue> b, DistanceKind kind,
                                   unsigned workers = 1);

    // Builds a matrix from explicit values (hand-made inputs, tests, cached results).
    DistanceMatrix make_distance_matrix(RealMatrix values, DistanceKind kind = DistanceKind::Euclidean);
}
