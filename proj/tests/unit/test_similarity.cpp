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
#include "dqa/similarity.hpp"
#include "test_support.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

using namespace dqa;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{
    std::vector<RealMatrix> scalars(std::initializer_list<double> v)
    {
        std::vector<RealMatrix> out;
        for (double x : v)
            out.push_back(RealMatrix::scalar(x));
        return out;
    }

    struct Triple
    {
        DistanceMatrix xx, xy, yy;
    };

    Triple triple(const std::vector<RealMatrix> &x, const std::vector<RealMatrix> &y, DistanceKind k = DistanceKind::Euclidean)
    {
        return {distance_matrix(x, x, k), distance_matrix(x, y, k), distance_matrix(y, y, k)};
    }

    std::vector<RealMatrix> random_points(Rng &rng, std::size_t n, std::size_t dim, double shift)
    {
        std::vector<RealMatrix> out;
        for (std::size_t i = 0; i < n; ++i)
        {
            RealMatrix m(1, dim);
            for (auto &v : m.values())
                v = rng.uniform() + shift;
            out.push_back(m);
        }
        return out;
    }
}

TEST_CASE("mean_distance - Examples")
{
    CHECK(mean_distance(make_distance_matrix(RealMatrix(2, 2, std::vector<double>{1, 3, 2, 4}))) == 2.5);
    CHECK(mean_distance(make_distance_matrix(RealMatrix(3, 4, 0.75))) == 0.75);
    const auto d = make_distance_matrix(RealMatrix(2, 3, std::vector<double>{1, 5, 2, 0.5, 7, 3}));
    CHECK_THAT(mean_distance(d), WithinAbs(mean_distance(make_distance_matrix(d.values.transposed())), 1e-15));
    CHECK_THROWS_AS(mean_distance(make_distance_matrix(RealMatrix())), InvalidArgument);
}

TEST_CASE("mmd - Closed forms")
{
    // n_x = n_y = 1, d(x, y) = sigma sqrt(2): MMD^2 = 2 - 2 e^{-1}
    const double sigma = 0.7;
    const auto x = scalars({0.0}), y = scalars({sigma * std::sqrt(2.0)});
    const auto t = triple(x, y);
    CHECK_THAT(mmd(t.xx, t.xy, t.yy, sigma), WithinAbs(std::sqrt(2.0 - 2.0 * std::exp(-1.0)), 1e-12));

    // Identical sets: exact zero
    Rng rng(RandomSeed{1});
    const auto p = random_points(rng, 9, 3, 0.0);
    const auto same = triple(p, p);
    CHECK(mmd(same.xx, same.xy, same.yy, 0.5) == 0.0);

    // Direct evaluation of the biased estimator
    const auto q = random_points(rng, 6, 3, 0.3);
    const auto tq = triple(p, q);
    auto k = [&](double d) { return std::exp(-d * d / (2.0 * 0.4 * 0.4)); };
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < 9; ++i)
        for (std::size_t j = 0; j < 9; ++j)
            sxx += k(tq.xx(i, j));
    for (std::size_t i = 0; i < 9; ++i)
        for (std::size_t j = 0; j < 6; ++j)
            sxy += k(tq.xy(i, j));
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j)
            syy += k(tq.yy(i, j));
    const double ref = std::sqrt(sxx / 81.0 - 2.0 * sxy / 54.0 + syy / 36.0);
    CHECK_THAT(mmd(tq.xx, tq.xy, tq.yy, 0.4), WithinRel(ref, 1e-12));

    // Swap symmetry
    const auto tr = triple(q, p);
    CHECK_THAT(mmd(tr.xx, tr.xy, tr.yy, 0.4), WithinAbs(mmd(tq.xx, tq.xy, tq.yy, 0.4), 1e-12));

    CHECK_THROWS_AS(mmd(tq.xx, tq.xy, tq.yy, 0.0), InvalidArgument);
    CHECK_THROWS_AS(mmd(tq.xy, tq.xy, tq.yy, 1.0), InvalidArgument);
}

TEST_CASE("median_heuristic_bandwidth - Examples")
{
    const auto zero = make_distance_matrix(RealMatrix(1, 1));
    const auto xy = make_distance_matrix(RealMatrix(1, 3, std::vector<double>{3, 1, 2}));
    const auto yy = make_distance_matrix(RealMatrix(3, 3));
    CHECK(median_heuristic_bandwidth(zero, xy, yy) == 2.0);

    // Even count: mean of the middle pair
    const auto xy4 = make_distance_matrix(RealMatrix(1, 4, std::vector<double>{4, 1, 2, 3}));
    CHECK(median_heuristic_bandwidth(zero, xy4, make_distance_matrix(RealMatrix(4, 4))) == 2.5);

    CHECK_THROWS_AS(median_heuristic_bandwidth(zero, make_distance_matrix(RealMatrix(1, 3)), yy), DegenerateInput);

    // Homogeneity
    Rng rng(RandomSeed{3});
    const auto p = random_points(rng, 7, 2, 0.0), q = random_points(rng, 5, 2, 0.2);
    const auto t = triple(p, q);
    auto scaled = [](const DistanceMatrix &d)
    {
        auto v = d.values;
        for (auto &x : v.values())
            x *= 3.0;
        return make_distance_matrix(v);
    };
    CHECK_THAT(median_heuristic_bandwidth(scaled(t.xx), scaled(t.xy), scaled(t.yy)),
               WithinRel(3.0 * median_heuristic_bandwidth(t.xx, t.xy, t.yy), 1e-14));
}

TEST_CASE("nnca - Examples")
{
    auto run = [](std::initializer_list<double> x, std::initializer_list<double> y)
    {
        const auto t = triple(scalars(x), scalars(y));
        return nnca(t.xx, t.xy, t.yy);
    };
    CHECK(run({0, 0.1}, {10, 10.1}) == 1.0);
    CHECK(run({0, 2}, {1, 3}) == 0.0);

    // Ties: x = 1 is equidistant from x = 0 and y = 2; X wins. y = 2 is equidistant from x = 1
    // and y = 3; X wins again, so y is misclassified.
    CHECK(run({0, 1}, {2, 3}) == 0.75);

    // Far translated copy
    Rng rng(RandomSeed{4});
    const auto p = random_points(rng, 12, 2, 0.0);
    auto far = p;
    for (auto &m : far)
        for (auto &v : m.values())
            v += 100.0;
    const auto t = triple(p, far);
    CHECK(nnca(t.xx, t.xy, t.yy) == 1.0);

    // Same distribution, large samples: close to one half
    const auto a = random_points(rng, 200, 2, 0.0), b = random_points(rng, 200, 2, 0.0);
    const auto tab = triple(a, b);
    const double acc = nnca(tab.xx, tab.xy, tab.yy);
    CHECK((acc > 0.4 && acc < 0.6));

    const auto single = triple(scalars({1.0}), {});
    CHECK_THROWS_AS(nnca(single.xx, single.xy, single.yy), InvalidArgument);
}

TEST_CASE("wasserstein - Examples")
{
    const auto w = wasserstein(distance_matrix(scalars({0, 1}), scalars({1, 2}), DistanceKind::Euclidean), 2.0);
    CHECK_THAT(w.distance, WithinAbs(1.0, 1e-12));
    CHECK_THAT(w.plan.coupling(0, 0), WithinAbs(0.5, 1e-12));
    CHECK_THAT(w.plan.coupling(1, 1), WithinAbs(0.5, 1e-12));

    CHECK(wasserstein(make_distance_matrix(RealMatrix(1, 1, 3.25)), 1.0).distance == 3.25);
    CHECK_THAT(wasserstein(make_distance_matrix(RealMatrix(1, 1, 3.0)), 3.0).distance, WithinRel(3.0, 1e-14));

    Rng rng(RandomSeed{5});
    const auto p = random_points(rng, 8, 3, 0.0);
    CHECK(wasserstein(distance_matrix(p, p, DistanceKind::ECS), 2.0).distance == 0.0);

    CHECK_THROWS_AS(wasserstein(make_distance_matrix(RealMatrix(1, 1)), 0.5), InvalidArgument);
    CHECK_THROWS_AS(validate(SimilarityMeasure{Wasserstein{0.9}}), InvalidArgument);
    CHECK_THROWS_AS(validate(SimilarityMeasure{Mmd{-1.0}}), InvalidArgument);
}

TEST_CASE("wasserstein - Properties")
{
    Rng rng(RandomSeed{6});
    for (int inst = 0; inst < 40; ++inst)
    {
        const auto nx = std::size_t(rng.uniform_int(1, 9)), ny = std::size_t(rng.uniform_int(1, 9));
        const auto x = random_points(rng, nx, 2, 0.0), y = random_points(rng, ny, 2, rng.uniform());
        const double p = inst % 2 ? 1.0 : 2.0;
        const auto d = distance_matrix(x, y, DistanceKind::Euclidean);
        const auto w = wasserstein(d, p);

        // The independent coupling is feasible
        double mean_p = 0.0;
        for (double v : d.values.values())
            mean_p += std::pow(v, p);
        mean_p /= double(nx * ny);
        CHECK(std::pow(w.distance, p) <= mean_p + 1e-12);
        CHECK(w.plan.nonzeros() <= nx + ny - 1);

        // Swap symmetry: same value, transposed coupling is optimal for the transposed problem
        const auto wt = wasserstein(distance_matrix(y, x, DistanceKind::Euclidean), p);
        CHECK_THAT(wt.distance, WithinAbs(w.distance, 1e-12));
    }
}

TEST_CASE("set_difference - Composition and symmetry")
{
    const auto dx = dqa_test::random_dataset(1, 10, 2, 2, 8), dy = dqa_test::random_dataset(2, 7, 2, 2, 8);
    const auto fx = feature_values(extract_features(dx), FeatureKind::PDP);
    const auto fy = feature_values(extract_features(dy), FeatureKind::PDP);

    const std::vector<SimilarityMeasure> measures{MeanDistance{}, Mmd{}, Mmd{0.3}, Nnca{}, Wasserstein{2.0}, Wasserstein{1.0}};
    for (const auto &m : measures)
    {
        const double v = set_difference(fx, fy, DistanceKind::ECS, m);
        CHECK(v >= 0.0);
        CHECK_THAT(set_difference(fy, fx, DistanceKind::ECS, m), WithinAbs(v, 1e-12));
        CHECK(dataset_difference(dx, dy, FeatureKind::PDP, DistanceKind::ECS, m) == v);
        CHECK(set_difference(fx, fy, DistanceKind::ECS, m, 3) == v);
    }

    // Manual stage-by-stage composition
    const auto t = triple(fx, fy, DistanceKind::ECS);
    CHECK(set_difference(fx, fy, DistanceKind::ECS, Mmd{}) ==
          mmd(t.xx, t.xy, t.yy, median_heuristic_bandwidth(t.xx, t.xy, t.yy)));
    CHECK(set_difference(fx, fy, DistanceKind::ECS, Nnca{}) == nnca(t.xx, t.xy, t.yy));
    CHECK(set_difference(fx, fy, DistanceKind::ECS, Wasserstein{2.0}) == wasserstein(t.xy, 2.0).distance);

    // Identical sets
    CHECK(dataset_difference(dx, dx, FeatureKind::PDP, DistanceKind::ECS, Wasserstein{2.0}) == 0.0);
    CHECK(dataset_difference(dx, dx, FeatureKind::APS, DistanceKind::ECS, MeanDistance{}) > 0.0);

    for (const auto &m : measures)
        CHECK(!measure_name(m).empty());
    CHECK_THROWS_AS(set_difference({}, fy, DistanceKind::ECS, MeanDistance{}), InvalidArgument);
}
