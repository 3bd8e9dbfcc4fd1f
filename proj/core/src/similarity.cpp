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

#include "dqa/similarity.hpp"
#include "dqa/error.hpp"

#include <algorithm>
#include <cmath>
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

        double kernel_sum(const DistanceMatrix &d, double two_sigma_sq)
        {
            double acc = 0.0;
            for (double v : d.values.values())
                acc += std::exp(-(v * v) / two_sigma_sq);
            return acc;
        }

        void require_shapes(const DistanceMatrix &dxx, const DistanceMatrix &dxy, const DistanceMatrix &dyy,
                            const char *who)
        {
            require_intra_set(dxx, who);
            require_intra_set(dyy, who);
            if (dxy.rows() != dxx.rows() || dxy.cols() != dyy.rows())
                throw InvalidArgument(std::string(who) + ": inconsistent matrix shapes");
        }
    }

    std::string_view measure_name(const SimilarityMeasure &m)
    {
        return std::visit(overloaded{
                              [](const MeanDistance &) { return std::string_view("mean"); },
                              [](const Mmd &) { return std::string_view("mmd"); },
                              [](const Nnca &) { return std::string_view("nnca"); },
                              [](const Wasserstein &) { return std::string_view("wasserstein"); },
                          },
                          m);
    }

    void validate(const SimilarityMeasure &m)
    {
        if (const auto *w = std::get_if<Wasserstein>(&m); w && !(w->p >= 1.0 && std::isfinite(w->p)))
            throw InvalidArgument("wasserstein: p must be a finite value >= 1");
        if (const auto *k = std::get_if<Mmd>(&m))
            if (const auto *s = std::get_if<double>(&k->bandwidth); s && !(*s > 0.0 && std::isfinite(*s)))
                throw InvalidArgument("mmd: bandwidth must be positive");
    }

    double mean_distance(const DistanceMatrix &d)
    {
        if (d.values.empty())
            throw InvalidArgument("mean_distance: empty distance matrix");
        double acc = 0.0;
        for (double v : d.values.values())
            acc += v;
        return acc / (static_cast<double>(d.rows()) * static_cast<double>(d.cols()));
    }

    double mmd(const DistanceMatrix &dxx, const DistanceMatrix &dxy, const DistanceMatrix &dyy, double bandwidth)
    {
        if (!(bandwidth > 0.0) || !std::isfinite(bandwidth))
            throw InvalidArgument("mmd: bandwidth must be positive");
        require_shapes(dxx, dxy, dyy, "mmd");
        const double nx = static_cast<double>(dxx.rows()), ny = static_cast<double>(dyy.rows());
        const double two_sigma_sq = 2.0 * bandwidth * bandwidth;
        const double bracket = kernel_sum(dxx, two_sigma_sq) / (nx * nx) -
                               2.0 * kernel_sum(dxy, two_sigma_sq) / (nx * ny) +
                               kernel_sum(dyy, two_sigma_sq) / (ny * ny);
        return std::sqrt(std::max(bracket, 0.0));
    }

    double median_heuristic_bandwidth(const DistanceMatrix &dxx, const DistanceMatrix &dxy, const DistanceMatrix &dyy)
    {
        std::vector<double> positive;
        for (const auto *m : {&dxx, &dxy, &dyy})
            for (double v : m->values.values())
                if (v > 0.0)
                    positive.push_back(v);
        if (positive.empty())
            throw DegenerateInput("median_heuristic_bandwidth: all distances are zero");
        const std::size_t n = positive.size();
        const auto mid = positive.begin() + static_cast<std::ptrdiff_t>(n / 2);
        std::nth_element(positive.begin(), mid, positive.end());
        if (n % 2 == 1)
            return *mid;
        const double upper = *mid;
        const double lower = *std::max_element(positive.begin(), mid);
        return 0.5 * (lower + upper);
    }

    double nnca(const DistanceMatrix &dxx, const DistanceMatrix &dxy, const DistanceMatrix &dyy)
    {
        require_shapes(dxx, dxy, dyy, "nnca");
        const std::size_t nx = dxx.rows(), ny = dyy.rows();
        if (nx + ny < 2)
            throw InvalidArgument("nnca: need at least two samples in total");

        std::size_t correct = 0;
        // Candidates are scanned X first, then Y, each in index order; a strict comparison then
        // resolves ties to the smallest (set, index) key.
        for (std::size_t i = 0; i < nx; ++i)
        {
            double best = INFINITY;
            bool best_is_x = false;
            for (std::size_t k = 0; k < nx; ++k)
                if (k != i && dxx(i, k) < best)
                {
                    best = dxx(i, k);
                    best_is_x = true;
                }
            for (std::size_t j = 0; j < ny; ++j)
                if (dxy(i, j) < best)
                {
                    best = dxy(i, j);
                    best_is_x = false;
                }
            correct += best_is_x ? 1 : 0;
        }
        for (std::size_t j = 0; j < ny; ++j)
        {
            double best = INFINITY;
            bool best_is_y = false;
            for (std::size_t i = 0; i < nx; ++i)
                if (dxy(i, j) < best)
                {
                    best = dxy(i, j);
                    best_is_y = false;
                }
            for (std::size_t k = 0; k < ny; ++k)
                if (k != j && dyy(j, k) < best)
                {
                    best = dyy(j, k);
                    best_is_y = true;
                }
            correct += best_is_y ? 1 : 0;
        }
        return static_cast<double>(correct) / static_cast<double>(nx + ny);
    }

    WassersteinResult wasserstein(const DistanceMatrix &d, double p)
    {
        if (!(p >= 1.0) || !std::isfinite(p))
            throw InvalidArgument("wasserstein: p must be a finite value >= 1");
        if (d.values.empty())
            throw InvalidArgument("wasserstein: empty distance matrix");
        RealMatrix cost(d.rows(), d.cols());
        for (std::size_t i = 0; i < d.rows(); ++i)
            for (std::size_t j = 0; j < d.cols(); ++j)
            {
                const double v = d(i, j);
                if (!std::isfinite(v) || v < 0.0)
                    throw InvalidArgument("wasserstein: distances must be finite and nonnegative");
                cost(i, j) = p == 1.0 ? v : p == 2.0 ? v * v : std::pow(v, p);
            }
        WassersteinResult r;
        r.plan = solve_uniform_transport(cost);
        const double c = std::max(r.plan.cost, 0.0);
        r.distance = p == 1.0 ? c : p == 2.0 ? std::sqrt(c) : std::pow(c, 1.0 / p);
        return r;
    }

    double set_difference(std::span<const RealMatrix> x, std::span<const RealMatrix> y, DistanceKind kind,
                          const SimilarityMeasure &measure, unsigned workers)
    {
        validate(measure);
        if (x.empty() || y.empty())
            throw InvalidArgument("set_difference: both sets must be non-empty");
        const auto dxy = distance_matrix(x, y, kind, workers);
        return std::visit(overloaded{
                              [&](const MeanDistance &) { return mean_distance(dxy); },
                              [&](const Wasserstein &w) { return wasserstein(dxy, w.p).distance; },
                              [&](const Nnca &)
                              {
                                  const auto dxx = distance_matrix(x, x, kind, workers);
                                  const auto dyy = distance_matrix(y, y, kind, workers);
                                  return nnca(dxx, dxy, dyy);
                              },
                              [&](const Mmd &m)
                              {
                                  const auto dxx = distance_matrix(x, x, kind, workers);
                                  const auto dyy = distance_matrix(y, y, kind, workers);
                                  const double sigma = std::holds_alternative<double>(m.bandwidth)
                                                           ? std::get<double>(m.bandwidth)
                                                           : median_heuristic_bandwidth(dxx, dxy, dyy);
                                  return mmd(dxx, dxy, dyy, sigma);
                              },
                          },
                          measure);
    }

    double dataset_difference(const Dataset &x, const Dataset &y, FeatureKind feature, DistanceKind kind,
                              const SimilarityMeasure &measure, unsigned workers)
    {
        const auto fx = feature_values(extract_features(x, workers), feature);
        const auto fy = feature_values(extract_features(y, workers), feature);
        return set_difference(fx, fy, kind, measure, workers);
    }
}
