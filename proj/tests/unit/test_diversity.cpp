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

#include "dqa/diversity.hpp"
#include "dqa/error.hpp"
#include "dqa/jpeg.hpp"
#include "test_support.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

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

    DistanceMatrix euclid(const std::vector<RealMatrix> &x) { return distance_matrix(x, x, DistanceKind::Euclidean); }

    RealMatrix noise(Rng &rng, std::size_t r, std::size_t c)
    {
        RealMatrix m(r, c);
        for (auto &v : m.values())
            v = rng.uniform();
        return m;
    }

    // Reads the quantization table back out of a DQT segment (zigzag order -> natural order).
    std::array<std::uint16_t, 64> read_dqt(const std::vector<std::uint8_t> &jpg)
    {
        static constexpr std::uint8_t zz[64] = {0, 1, 8, 16, 9, 2, 3, 10, 17, 24, 32, 25, 18, 11, 4, 5,
                                                12, 19, 26, 33, 40, 48, 41, 34, 27, 20, 13, 6, 7, 14, 21, 28,
                                                35, 42, 49, 56, 57, 50, 43, 36, 29, 22, 15, 23, 30, 37, 44, 51,
                                                58, 59, 52, 45, 38, 31, 39, 46, 53, 60, 61, 54, 47, 55, 62, 63};
        std::array<std::uint16_t, 64> q{};
        for (std::size_t i = 0; i + 1 < jpg.size(); ++i)
            if (jpg[i] == 0xFF && jpg[i + 1] == 0xDB)
            {
                for (std::size_t k = 0; k < 64; ++k)
                    q[zz[k]] = jpg[i + 5 + k];
                break;
            }
        return q;
    }
}

TEST_CASE("diversity_entropy - Examples")
{
    // Frequencies (0.5, 0.5, 0, 0) over 4 bins
    const std::vector<double> half{0.0, 0.0, 1.0, 1.0};
    CHECK_THAT(diversity_entropy(half, 4, std::vector<double>{0.0, 0.5, 1.5, 2.0, 3.0}), WithinAbs(0.5, 1e-15));
    // Uniform edges over [0, 1]: 0 -> bin 0, 1 -> last bin (right-closed)
    CHECK_THAT(diversity_entropy(std::vector<double>{0.0, 1.0}, 4), WithinAbs(0.5, 1e-15));

    // Exactly uniform over S bins
    CHECK_THAT(diversity_entropy(std::vector<double>{0, 1, 2, 3}, 4), WithinAbs(1.0, 1e-15));
    CHECK_THAT(diversity_entropy(std::vector<double>{0.5, 1.5, 2.5, 3.5}, 4, std::vector<double>{0, 1, 2, 3, 4}),
               WithinAbs(1.0, 1e-15));

    // Constant data
    CHECK(diversity_entropy(std::vector<double>{0.3, 0.3, 0.3}, 32) == 0.0);

    // Out-of-range values fall in the end bins
    CHECK_THAT(diversity_entropy(std::vector<double>{-5, 10}, 2, std::vector<double>{0, 1, 2}), WithinAbs(1.0, 1e-15));

    CHECK_THROWS_AS(diversity_entropy(std::vector<double>{}, 4), InvalidArgument);
    CHECK_THROWS_AS(diversity_entropy(std::vector<double>{1.0}, 1), InvalidArgument);
    CHECK_THROWS_AS(diversity_entropy(std::vector<double>{1.0}, 4, std::vector<double>{0, 1}), InvalidArgument);
    CHECK_THROWS_AS(diversity_entropy(std::vector<double>{1.0}, 4, std::vector<double>{0, 2, 1}), InvalidArgument);
    CHECK_THROWS_AS(diversity_entropy(std::vector<double>{NAN}, 4), InvalidArgument);
}

TEST_CASE("diversity_entropy - Range and permutation invariance")
{
    Rng rng(RandomSeed{10});
    for (int i = 0; i < 50; ++i)
    {
        std::vector<double> v(std::size_t(rng.uniform_int(1, 60)));
        for (auto &x : v)
            x = rng.uniform();
        const double h = diversity_entropy(v, 8);
        CHECK((h >= 0.0 && h <= 1.0));
        std::reverse(v.begin(), v.end());
        CHECK(diversity_entropy(v, 8) == h);
    }
}

TEST_CASE("diversity_distance - Examples and properties")
{
    CHECK_THAT(diversity_distance(euclid(scalars({0, 1, 2}))), WithinAbs(4.0 / 3.0, 1e-15));
    CHECK(diversity_distance(euclid(scalars({2, 2, 2, 2}))) == 0.0);
    CHECK(diversity_distance(euclid(scalars({1.5, 4}))) == 2.5);
    CHECK_THROWS_AS(diversity_distance(euclid(scalars({1}))), InvalidArgument);
    CHECK_THROWS_AS(diversity_distance(make_distance_matrix(RealMatrix(2, 2, std::vector<double>{0, 1, 2, 0}))),
                    InvalidArgument);

    // Linear in a common scale of all distances
    Rng rng(RandomSeed{11});
    std::vector<RealMatrix> pts;
    for (int i = 0; i < 7; ++i)
        pts.push_back(noise(rng, 1, 3));
    const auto d = euclid(pts);
    auto scaled = d.values;
    for (auto &v : scaled.values())
        v *= 2.5;
    CHECK_THAT(diversity_distance(make_distance_matrix(scaled)), WithinRel(2.5 * diversity_distance(d), 1e-14));
}

TEST_CASE("diversity_dpp - Examples")
{
    // n = 1
    const auto one = diversity_dpp(euclid(scalars({3.0})), 1.0);
    CHECK(one.log_det == 0.0);
    CHECK_FALSE(one.degenerate);

    // n = 2: det = 1 - exp(-d^2 / sigma^2)
    for (double dd : {0.3, 1.0, 2.5})
        for (double sigma : {0.5, 1.0, 3.0})
        {
            const auto r = diversity_dpp(euclid(scalars({0.0, dd})), sigma);
            CHECK_THAT(std::exp(r.log_det), WithinRel(1.0 - std::exp(-dd * dd / (sigma * sigma)), 1e-10));
        }

    // Duplicate sample
    const auto dup = diversity_dpp(euclid(scalars({1.0, 1.0, 2.0})), 1.0);
    CHECK(dup.degenerate);
    CHECK(dup.log_det == -std::numeric_limits<double>::infinity());

    // Jitter lifts the duplicate case: det([[1+j, 1], [1, 1+j]]) = (1+j)^2 - 1
    const double j = 1e-3;
    const auto lifted = diversity_dpp(euclid(scalars({1.0, 1.0})), 1.0, j);
    CHECK_FALSE(lifted.degenerate);
    CHECK_THAT(lifted.log_det, WithinRel(std::log((1 + j) * (1 + j) - 1), 1e-9));

    CHECK_THROWS_AS(diversity_dpp(euclid(scalars({0, 1})), 0.0), InvalidArgument);
    CHECK_THROWS_AS(diversity_dpp(euclid(scalars({0, 1})), 1.0, -1.0), InvalidArgument);

    // Through feature_diversity a degenerate kernel is an error
    std::vector<RealMatrix> vecs(2, RealMatrix::row_vector({0.5, 0.5}));
    CHECK_THROWS_AS(feature_diversity(vecs, FeatureKind::PDP, DppDiversity{1.0, 0.0}), DegenerateInput);
}

TEST_CASE("diversity_dpp - Log det properties")
{
    Rng rng(RandomSeed{12});
    for (int inst = 0; inst < 20; ++inst)
    {
        std::vector<RealMatrix> pts;
        const auto n = std::size_t(rng.uniform_int(2, 12));
        for (std::size_t i = 0; i < n; ++i)
            pts.push_back(noise(rng, 1, 2));
        const auto base = diversity_dpp(euclid(pts), 0.3);
        REQUIRE_FALSE(base.degenerate);
        CHECK(base.log_det <= 1e-12);

        // Adding a duplicate never increases it
        auto more = pts;
        more.push_back(pts[0]);
        const auto dup = diversity_dpp(euclid(more), 0.3, 1e-9);
        CHECK(dup.log_det <= base.log_det + 1e-6);
    }
}

TEST_CASE("diversity_compression - Behaviour")
{
    Rng rng(RandomSeed{13});
    const auto detail = noise(rng, 32, 32);
    std::vector<RealMatrix> copies(10, detail), independent;
    for (int i = 0; i < 10; ++i)
        independent.push_back(noise(rng, 32, 32));
    // Averaging independent noise smooths the mean, copies keep the detail
    CHECK(diversity_compression(copies) < diversity_compression(independent));

    const std::vector<RealMatrix> flat(3, RealMatrix(32, 32, 0.25));
    CHECK(diversity_compression(flat) > diversity_compression(independent));
    CHECK(diversity_compression(flat) > diversity_compression(copies));
    CHECK(diversity_compression(flat) > 0.0);

    // Depends on the data only through the mean
    std::vector<RealMatrix> reversed(independent.rbegin(), independent.rend());
    CHECK(compressed_mean_size(reversed) == compressed_mean_size(independent));
    std::vector<RealMatrix> paired{detail, detail};
    CHECK(compressed_mean_size(paired) == compressed_mean_size(std::vector<RealMatrix>{detail}));

    CHECK_THROWS_AS(diversity_compression({}), InvalidArgument);
    CHECK_THROWS_AS(diversity_compression(std::vector<RealMatrix>{RealMatrix(2, 2), RealMatrix(2, 3)}), InvalidArgument);
}

TEST_CASE("feature_diversity - Measure pairing and dataset form")
{
    const auto d = dqa_test::random_dataset(14, 12, 2, 4, 16);
    const auto bundles = extract_features(d);
    const auto pdp = feature_values(bundles, FeatureKind::PDP);
    const auto spars = feature_values(bundles, FeatureKind::PDPSparsity);

    CHECK_THROWS_AS(feature_diversity(pdp, FeatureKind::PDP, EntropyDiversity{}), InvalidArgument);
    CHECK_THROWS_AS(feature_diversity(spars, FeatureKind::PDPSparsity, DistanceDiversity{}), InvalidArgument);
    CHECK_THROWS_AS(feature_diversity(pdp, FeatureKind::PDP, CompressionDiversity{0}), InvalidArgument);

    CHECK(dataset_diversity(d, FeatureKind::PDP, DistanceDiversity{}) ==
          diversity_distance(distance_matrix(pdp, pdp, DistanceKind::ECS)));
    std::vector<double> s;
    for (const auto &m : spars)
        s.push_back(m.values()[0]);
    CHECK(dataset_diversity(d, FeatureKind::PDPSparsity, EntropyDiversity{16}) == diversity_entropy(s, 16));

    // Median heuristic bandwidth for DPP
    const auto dm = distance_matrix(pdp, pdp, DistanceKind::ECS);
    CHECK(feature_diversity(pdp, FeatureKind::PDP, DppDiversity{}) ==
          diversity_dpp(dm, median_positive_distance(dm)).log_det);

    // Repeated sample
    Dataset rep({d[0], d[0], d[0]});
    CHECK(dataset_diversity(rep, FeatureKind::PDP, DistanceDiversity{}) == 0.0);
    CHECK(dataset_diversity(rep, FeatureKind::APS, DistanceDiversity{DistanceKind::Euclidean}) == 0.0);
    CHECK(dataset_diversity(rep, FeatureKind::PDPSparsity, EntropyDiversity{}) == 0.0);

    CHECK(std::holds_alternative<EntropyDiversity>(default_diversity_measure(FeatureKind::APSSparsity)));
    CHECK(std::holds_alternative<DistanceDiversity>(default_diversity_measure(FeatureKind::APS)));
    CHECK(measure_name(DiversityMeasure{DppDiversity{}}) == "dpp");
}

TEST_CASE("jpeg - Quality scaling")
{
    const auto q50 = scaled_luminance_table(50);
    CHECK(q50[0] == 16);
    CHECK(q50[63] == 99);
    const auto q100 = scaled_luminance_table(100);
    CHECK(std::all_of(q100.begin(), q100.end(), [](auto v) { return v == 1; }));
    // q = 75: scale 50 -> (16 * 50 + 50) / 100 = 8
    CHECK(scaled_luminance_table(75)[0] == 8);
    // q = 10: scale 500 -> 80; q = 1 clamps to 255
    CHECK(scaled_luminance_table(10)[0] == 80);
    CHECK(scaled_luminance_table(1)[63] == 255);
    CHECK_THROWS_AS(scaled_luminance_table(0), InvalidArgument);
    CHECK_THROWS_AS(scaled_luminance_table(101), InvalidArgument);
}

TEST_CASE("jpeg - Stream structure")
{
    GrayImage img{13, 9, std::vector<std::uint8_t>(13 * 9)};
    for (std::size_t i = 0; i < img.pixels.size(); ++i)
        img.pixels[i] = std::uint8_t((i * 37) % 256);
    const auto jpg = encode_jpeg_gray(img, 60);
    REQUIRE(jpg.size() > 4);
    CHECK(jpg[0] == 0xFF);
    CHECK(jpg[1] == 0xD8);
    CHECK(jpg[jpg.size() - 2] == 0xFF);
    CHECK(jpg[jpg.size() - 1] == 0xD9);
    CHECK(read_dqt(jpg) == scaled_luminance_table(60));

    // SOF0 carries height and width
    const std::array<std::uint8_t, 2> sof_marker{0xFF, 0xC0};
    const auto sof = std::search(jpg.begin(), jpg.end(), sof_marker.begin(), sof_marker.end());
    REQUIRE(sof != jpg.end());
    const auto at = std::size_t(sof - jpg.begin());
    CHECK(jpg[at + 5] * 256 + jpg[at + 6] == 9);
    CHECK(jpg[at + 7] * 256 + jpg[at + 8] == 13);

    // Determinism
    CHECK(encode_jpeg_gray(img, 60) == jpg);

    CHECK_THROWS_AS(encode_jpeg_gray(GrayImage{}, 75), InvalidArgument);
}

TEST_CASE("jpeg - Gray mapping")
{
    const auto img = to_gray_image(RealMatrix(1, 3, std::vector<double>{-1.0, 0.0, 1.0}));
    CHECK(img.at(0, 0) == 0);
    CHECK(img.at(0, 1) == 128);
    CHECK(img.at(0, 2) == 255);
    CHECK(to_gray_image(RealMatrix(2, 2, 7.0)).at(1, 1) == 128);
}

TEST_CASE("jpeg - Fixed 64x64 image is byte-stable")
{
    GrayImage img{64, 64, dqa_test::reference_image_pixels()};
    const auto jpg = encode_jpeg_gray(img, 75);
    CHECK(jpg.size() == 956u);
    CHECK(dqa_test::fnv1a(jpg) == 3226248239974032133ull);
}
