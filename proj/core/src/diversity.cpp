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

#include "dqa/diversity.hpp"
#include "dqa/error.hpp"
#include "dqa/jpeg.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace dqa
{
    namespace
    {
        template <class... Ts>
        struct overloaded : Ts...
        {
            using Ts::operator()...;
        };
        template <class... Ts>
        overloaded(Ts...) -> overloaded<Ts...>;
    }

    std::string_view measure_name(const DiversityMeasure &m)
    {
        return std::visit(overloaded{
                              [](const EntropyDiversity &) { return std::string_view("entropy"); },
                              [](const DistanceDiversity &) { return std::string_view("distance"); },
                              [](const DppDiversity &) { return std::string_view("dpp"); },
                              [](const CompressionDiversity &) { return std::string_view("compression"); },
                          },
                          m);
    }

    void validate(const DiversityMeasure &m)
    {
        std::visit(overloaded{
                       [](const EntropyDiversity &e)
                       {
                           if (const auto *edges = std::get_if<std::vector<double>>(&e.edges))
                           {
                               if (edges->size() < 3)
                                   throw InvalidArgument("entropy: explicit edges must define at least 2 bins");
                               for (std::size_t i = 1; i < edges->size(); ++i)
                                   if (!((*edges)[i] > (*edges)[i - 1]))
                                       throw InvalidArgument("entropy: explicit edges must be strictly increasing");
                           }
                           else if (e.bins < 2)
                               throw InvalidArgument("entropy: need at least 2 bins");
                       },
                       [](const DistanceDiversity &) {},
                       [](const DppDiversity &d)
                       {
                           if (const auto *s = std::get_if<double>(&d.bandwidth); s && !(*s > 0.0 && std::isfinite(*s)))
                               throw InvalidArgument("dpp: bandwidth must be positive");
                           if (!(d.jitter >= 0.0) || !std::isfinite(d.jitter))
                               throw InvalidArgument("dpp: jitter must be nonnegative");
                       },
                       [](const CompressionDiversity &c)
                       {
                           if (c.quality < 1 || c.quality > 100)
                               throw InvalidArgument("compression: quality must lie in 1..100");
                       },
                   },
                   m);
    }

    double diversity_entropy(std::span<const double> values, std::size_t bins, const BinEdges &edges)
    {
        if (values.empty())
            throw InvalidArgument("diversity_entropy: empty input");
        for (double v : values)
            if (!std::isfinite(v))
                throw InvalidArgument("diversity_entropy: non-finite value");

        std::vector<std::size_t> counts;
        if (const auto *explicit_edges = std::get_if<std::vector<double>>(&edges))
        {
            validate(DiversityMeasure{EntropyDiversity{0, *explicit_edges}});
            const auto &e = *explicit_edges;
            counts.assign(e.size() - 1, 0);
            for (double v : values)
            {
                // upper_bound gives the first edge > v; bin index is one less, clamped to the ends.
                const auto it = std::upper_bound(e.begin(), e.end(), v);
                std::ptrdiff_t bin = (it - e.begin()) - 1;
                bin = std::clamp<std::ptrdiff_t>(bin, 0, static_cast<std::ptrdiff_t>(counts.size()) - 1);
                ++counts[static_cast<std::size_t>(bin)];
            }
        }
        else
        {
            if (bins < 2)
                throw InvalidArgument("diversity_entropy: need at least 2 bins");
            counts.assign(bins, 0);
            const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
            const double lo = *lo_it, hi = *hi_it;
            for (double v : values)
            {
                std::size_t bin = 0;
                if (hi > lo)
                {
                    const double pos = (v - lo) / (hi - lo) * static_cast<double>(bins);
                    bin = std::min(static_cast<std::size_t>(pos), bins - 1);
                }
                ++counts[bin];
            }
        }

        const double n = static_cast<double>(values.size());
        double h = 0.0;
        for (std::size_t c : counts)
            if (c > 0)
            {
                const double p = static_cast<double>(c) / n;
                h -= p * std::log(p);
            }
        return std::clamp(h / std::log(static_cast<double>(counts.size())), 0.0, 1.0);
    }

    double diversity_distance(const DistanceMatrix &d)
    {
        require_intra_set(d, "diversity_distance");
        const std::size_t n = d.rows();
        if (n < 2)
            throw InvalidArgument("diversity_distance: need at least 2 samples");
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                acc += d(i, j);
        return acc / (static_cast<double>(n) * static_cast<double>(n - 1) / 2.0);
    }

    DppLogDet diversity_dpp(const DistanceMatrix &d, double bandwidth, double jitter)
    {
        require_intra_set(d, "diversity_dpp");
        if (!(bandwidth > 0.0) || !std::isfinite(bandwidth))
            throw InvalidArgument("diversity_dpp: bandwidth must be positive");
        if (!(jitter >= 0.0) || !std::isfinite(jitter))
            throw InvalidArgument("diversity_dpp: jitter must be nonnegative");
        const auto n = static_cast<Eigen::Index>(d.rows());
        if (n == 0)
            throw InvalidArgument("diversity_dpp: empty matrix");

        const double two_sigma_sq = 2.0 * bandwidth * bandwidth;
        Eigen::MatrixXd kernel(n, n);
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j)
            {
                const double dij = d(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
                kernel(i, j) = std::exp(-(dij * dij) / two_sigma_sq);
            }
        kernel.diagonal().array() += jitter;

        const Eigen::LDLT<Eigen::MatrixXd> ldlt(kernel);
        const double threshold = 16.0 * static_cast<double>(n) * std::numeric_limits<double>::epsilon() * (1.0 + jitter);
        DppLogDet out;
        if (ldlt.info() != Eigen::Success)
        {
            out.degenerate = true;
            out.log_det = -std::numeric_limits<double>::infinity();
            return out;
        }
        const auto &pivots = ldlt.vectorD();
        for (Eigen::Index i = 0; i < n; ++i)
        {
            if (!(pivots(i) > threshold))
            {
                out.degenerate = true;
                out.log_det = -std::numeric_limits<double>::infinity();
                return out;
            }
            out.log_det += std::log(pivots(i));
        }
        return out;
    }

    double median_positive_distance(const DistanceMatrix &d)
    {
        std::vector<double> positive;
        for (double v : d.values.values())
            if (v > 0.0)
                positive.push_back(v);
        if (positive.empty())
            throw DegenerateInput("median_positive_distance: all distances are zero");
        std::sort(positive.begin(), positive.end());
        const std::size_t n = positive.size();
        return n % 2 == 1 ? positive[n / 2] : 0.5 * (positive[n / 2 - 1] + positive[n / 2]);
    }

    std::size_t compressed_mean_size(std::span<const RealMatrix> features, int quality)
    {
        if (features.empty())
            throw InvalidArgument("diversity_compression: empty feature set");
        const std::size_t rows = features.front().rows(), cols = features.front().cols();
        RealMatrix mean(rows, cols, 0.0);
        for (const auto &f : features)
        {
            if (f.rows() != rows || f.cols() != cols)
                throw InvalidArgument("diversity_compression: features have different shapes");
            for (std::size_t i = 0; i < f.size(); ++i)
                mean.values()[i] += f.values()[i];
        }
        for (double &v : mean.values())
            v /= static_cast<double>(features.size());
        return encode_jpeg_gray(to_gray_image(mean), quality).size();
    }

    double diversity_compression(std::span<const RealMatrix> features, int quality)
    {
        return 1.0 / static_cast<double>(compressed_mean_size(features, quality));
    }

    double feature_diversity(std::span<const RealMatrix> values, FeatureKind feature, const DiversityMeasure &measure,
                             unsigned workers)
    {
        validate(measure);
        const bool scalar = is_scalar(feature);
        const bool wants_scalar = std::holds_alternative<EntropyDiversity>(measure);
        if (scalar != wants_scalar)
            throw InvalidArgument("measure '" + std::string(measure_name(measure)) + "' does not apply to feature '" +
                                  std::string(to_string(feature)) + "'" +
                                  (wants_scalar ? " (entropy needs a scalar feature)" : " (needs a spectrum feature)"));

        return std::visit(overloaded{
                              [&](const EntropyDiversity &e)
                              {
                                  std::vector<double> scalars;
                                  scalars.reserve(values.size());
                                  for (const auto &v : values)
                                      scalars.push_back(v.values()[0]);
                                  return diversity_entropy(scalars, e.bins, e.edges);
                              },
                              [&](const DistanceDiversity &k)
                              {
                                  return diversity_distance(distance_matrix(values, values, k.kind, workers));
                              },
                              [&](const DppDiversity &p)
                              {
                                  const auto dm = distance_matrix(values, values, DistanceKind::ECS, workers);
                                  const double sigma = std::holds_alternative<double>(p.bandwidth)
                                                           ? std::get<double>(p.bandwidth)
                                                           : median_positive_distance(dm);
                                  const auto r = diversity_dpp(dm, sigma, p.jitter);
                                  if (r.degenerate)
                                      throw DegenerateInput("dpp: kernel matrix is singular (log det = -inf); "
                                                            "increase the jitter");
                                  return r.log_det;
                              },
                              [&](const CompressionDiversity &c) { return diversity_compression(values, c.quality); },
                          },
                          measure);
    }

    double dataset_diversity(const Dataset &d, FeatureKind feature, const DiversityMeasure &measure, unsigned workers)
    {
        const auto bundles = extract_features(d, workers);
        return feature_diversity(feature_values(bundles, feature), feature, measure, workers);
    }

    DiversityMeasure default_diversity_measure(FeatureKind feature)
    {
        if (is_scalar(feature))
            return EntropyDiversity{};
        return DistanceDiversity{DistanceKind::ECS};
    }
}
