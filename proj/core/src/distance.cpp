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

#include "dqa/distance.hpp"
#include "dqa/error.hpp"
#include "dqa/parallel.hpp"

#include <cmath>
#include <string>

namespace dqa
{
    std::string_view to_string(DistanceKind k)
    {
        switch (k)
        {
        case DistanceKind::Euclidean: return "euclidean";
        case DistanceKind::GMC: return "gmc";
        case DistanceKind::ECS: return "ecs";
        }
        return "unknown";
    }

    DistanceKind parse_distance_kind(std::string_view name)
    {
        for (auto k : {DistanceKind::Euclidean, DistanceKind::GMC, DistanceKind::ECS})
            if (to_string(k) == name)
                return k;
        throw InvalidArgument("unknown distance '" + std::string(name) + "' (valid: euclidean, gmc, ecs)");
    }

    namespace
    {
        template <typename T>
        void require_same_length(std::span<const T> x, std::span<const T> y, const char *who)
        {
            if (x.size() != y.size())
                throw InvalidArgument(std::string(who) + ": length mismatch (" + std::to_string(x.size()) +
                                      " vs " + std::to_string(y.size()) + ")");
        }

        template <typename T>
        double euclidean_impl(std::span<const T> x, std::span<const T> y)
        {
            require_same_length(x, y, "dist_euclidean");
            double acc = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i)
                acc += std::norm(x[i] - y[i]);
            return std::sqrt(acc);
        }

        template <typename T>
        double gmc_impl(std::span<const T> x, std::span<const T> y)
        {
            require_same_length(x, y, "dist_gmc");
            double acc = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i)
            {
                const double e = std::norm(x[i] - y[i]);
                acc += e / (1.0 + e);
            }
            return acc;
        }

        void require_same_shape(const RealMatrix &x, const RealMatrix &y, const char *who)
        {
            if (x.rows() != y.rows() || x.cols() != y.cols())
                throw InvalidArgument(std::string(who) + ": shape mismatch (" + std::to_string(x.rows()) + "x" +
                                      std::to_string(x.cols()) + " vs " + std::to_string(y.rows()) + "x" +
                                      std::to_string(y.cols()) + ")");
        }
    }

    double dist_euclidean(std::span<const cdouble> x, std::span<const cdouble> y) { return euclidean_impl(x, y); }
    double dist_euclidean(std::span<const double> x, std::span<const double> y) { return euclidean_impl(x, y); }
    double dist_gmc(std::span<const cdouble> x, std::span<const cdouble> y) { return gmc_impl(x, y); }
    double dist_gmc(std::span<const double> x, std::span<const double> y) { return gmc_impl(x, y); }

    double dist_ecs(std::span<const double> x, std::span<const double> y)
    {
        require_same_length(x, y, "dist_ecs");
        double cx = 0.0, cy = 0.0, acc = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i)
        {
            cx += x[i];
            cy += y[i];
            const double e = cx - cy;
            acc += e * e;
        }
        return std::sqrt(acc);
    }

    double dist_ecs_matrix(const RealMatrix &x, const RealMatrix &y)
    {
        require_same_shape(x, y, "dist_ecs_matrix");
        const std::size_t nr = x.rows(), nc = x.cols();
        // Column-running sums of the row prefix sums, kept separately for x and y so that the
        // result matches the vector form exactly when nr == 1.
        std::vector<double> col_x(nc, 0.0), col_y(nc, 0.0);
        double acc = 0.0;
        for (std::size_t r = 0; r < nr; ++r)
        {
            double rx = 0.0, ry = 0.0;
            for (std::size_t c = 0; c < nc; ++c)
            {
                rx += x(r, c);
                ry += y(r, c);
                col_x[c] += rx;
                col_y[c] += ry;
                const double e = col_x[c] - col_y[c];
                acc += e * e;
            }
        }
        return std::sqrt(acc);
    }

    FeatureValue raw_feature(const ChannelSample &s)
    {
        std::vector<cdouble> v(s.values().size());
        for (std::size_t i = 0; i < v.size(); ++i)
            v[i] = cdouble(s.values()[i].real(), s.values()[i].imag());
        return v;
    }

    double distance(const RealMatrix &x, const RealMatrix &y, DistanceKind kind)
    {
        switch (kind)
        {
        case DistanceKind::Euclidean:
            require_same_shape(x, y, "distance");
            return dist_euclidean(x.values(), y.values());
        case DistanceKind::GMC:
            require_same_shape(x, y, "distance");
            return dist_gmc(x.values(), y.values());
        case DistanceKind::ECS:
            return dist_ecs_matrix(x, y);
        }
        throw InvalidArgument("distance: unknown kind");
    }

    double distance(const FeatureValue &x, const FeatureValue &y, DistanceKind kind)
    {
        if (x.index() != y.index())
            throw InvalidArgument("distance: cannot compare a real feature with a complex one");
        if (const auto *xr = std::get_if<RealMatrix>(&x))
            return distance(*xr, std::get<RealMatrix>(y), kind);
        const auto &xc = std::get<std::vector<cdouble>>(x);
        const auto &yc = std::get<std::vector<cdouble>>(y);
        switch (kind)
        {
        case DistanceKind::Euclidean: return dist_euclidean(std::span<const cdouble>(xc), std::span<const cdouble>(yc));
        case DistanceKind::GMC: return dist_gmc(std::span<const cdouble>(xc), std::span<const cdouble>(yc));
        case DistanceKind::ECS: throw InvalidArgument("ECS distance is only defined for real-valued features");
        }
        throw InvalidArgument("distance: unknown kind");
    }

    void require_intra_set(const DistanceMatrix &m, std::string_view who)
    {
        const std::string name(who);
        if (m.rows() != m.cols())
            throw InvalidArgument(name + ": intra-set distance matrix must be square");
        for (std::size_t i = 0; i < m.rows(); ++i)
        {
            if (m(i, i) != 0.0)
                throw InvalidArgument(name + ": intra-set distance matrix has a nonzero diagonal");
            for (std::size_t j = i + 1; j < m.cols(); ++j)
                if (m(i, j) != m(j, i))
                    throw InvalidArgument(name + ": intra-set distance matrix is not symmetric");
        }
    }

    namespace
    {
        template <typename Item>
        DistanceMatrix build(std::span<const Item> a, std::span<const Item> b, DistanceKind kind, unsigned workers)
        {
            const bool intra = a.data() == b.data() && a.size() == b.size();
            DistanceMatrix m;
            m.kind = kind;
            m.values = RealMatrix(a.size(), b.size(), 0.0);
            parallel_for(a.size(), workers, [&](std::size_t i)
                         {
                for (std::size_t j = intra ? i + 1 : 0; j < b.size(); ++j)
                {
                    const double d = distance(a[i], b[j], kind);
                    if (!std::isfinite(d))
                        throw InvalidArgument("distance_matrix: non-finite distance at (" + std::to_string(i) +
                                              ", " + std::to_string(j) + ")");
                    m.values(i, j) = d;
                } });
            if (intra)
                for (std::size_t i = 0; i < a.size(); ++i)
                    for (std::size_t j = i + 1; j < a.size(); ++j)
                        m.values(j, i) = m.values(i, j);
            return m;
        }
    }

    DistanceMatrix distance_matrix(std::span<const RealMatrix> a, std::span<const RealMatrix> b, DistanceKind kind,
                                   unsigned workers)
    {
        return build(a, b, kind, workers);
    }

    DistanceMatrix distance_matrix(std::span<const FeatureValue> a, std::span<const FeatureValue> b, DistanceKind kind,
                                   unsigned workers)
    {
        return build(a, b, kind, workers);
    }

    DistanceMatrix make_distance_matrix(RealMatrix values, DistanceKind kind)
    {
        for (double v : values.values())
            if (!(v >= 0.0) || !std::isfinite(v))
                throw InvalidArgument("make_distance_matrix: entries must be finite and nonnegative");
        DistanceMatrix m;
        m.values = std::move(values);
        m.kind = kind;
        return m;
    }
}
