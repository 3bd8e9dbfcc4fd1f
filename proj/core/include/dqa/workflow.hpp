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
#include "dqa/diversity.hpp"
#include "dqa/features.hpp"
#include "dqa/similarity.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace dqa
{
    enum class AggregationKind
    {
        Min,
        Max,
        WeightedAverage
    };

    // Combines per-feature normalized scores. For WeightedAverage an empty weight map means
    // equal weights over the features present; otherwise the weights must cover exactly those
    // features, lie in [0, 1] and sum to 1 within 1e-9.
    struct AggregationRule
    {
        AggregationKind kind = AggregationKind::WeightedAverage;
        std::map<FeatureKind, double> weights;

        static AggregationRule min() { return {AggregationKind::Min, {}}; }
        static AggregationRule max() { return {AggregationKind::Max, {}}; }
        static AggregationRule average() { return {AggregationKind::WeightedAverage, {}}; }
        static AggregationRule weighted(std::map<FeatureKind, double> w) { return {AggregationKind::WeightedAverage, std::move(w)}; }

        bool operator==(const AggregationRule &) const = default;
    };

    std::string_view to_string(AggregationKind k);
    AggregationKind parse_aggregation_kind(std::string_view name); // "min", "max", "average"

    // Min-max normalization; a constant (or singleton) collection maps to 0.
    std::vector<double> normalize_scores(std::span<const double> values);
    std::map<FeatureKind, double> normalize_scores(const std::map<FeatureKind, double> &values);

    double aggregate(const std::map<FeatureKind, double> &normalized, const AggregationRule &rule);

    // How per-feature raw values become the `normalized` entries of a report.
    enum class Normalization
    {
        AcrossFeatures, // min-max over the features of the call
        Raw             // raw values are aggregated unchanged
    };

    std::string_view to_string(Normalization n);
    Normalization parse_normalization(std::string_view name); // "across-features", "raw"

    struct SimilarityOptions
    {
        std::vector<FeatureKind> features{default_feature_kinds.begin(), default_feature_kinds.end()};
        DistanceKind distance = DistanceKind::ECS;
        SimilarityMeasure measure = Wasserstein{2.0};
        AggregationRule rule = AggregationRule::average();
        Normalization normalization = Normalization::AcrossFeatures;
        bool normalize_inputs = false; // divide both datasets by their maximum entry

        bool operator==(const SimilarityOptions &) const = default;
    };

    struct DiversityOptions
    {
        std::vector<FeatureKind> features{default_feature_kinds.begin(), default_feature_kinds.end()};
        std::map<FeatureKind, DiversityMeasure> measures; // missing entries use default_diversity_measure
        AggregationRule rule = AggregationRule::average();
        Normalization normalization = Normalization::Raw;
        bool normalize_inputs = false;

        bool operator==(const DiversityOptions &) const = default;
    };

    using MethodConfig = std::variant<SimilarityOptions, DiversityOptions>;

    struct QualityReport
    {
        std::vector<FeatureKind> features; // evaluated features, in call order
        std::map<FeatureKind, double> per_feature;
        std::map<FeatureKind, double> normalized;
        double aggregate = 0.0;
        MethodConfig method_config;

        bool operator==(const QualityReport &) const = default;
    };

    QualityReport similarity_report(const Dataset &x, const Dataset &y, const SimilarityOptions &opts = {},
                                    unsigned workers = 1);

    // Doppler features are skipped when the dataset has a single snapshot.
    QualityReport diversity_report(const Dataset &d, const DiversityOptions &opts = {}, unsigned workers = 1);

    // Recomputes a report from its own method_config. Inputs: {x, y} for similarity, {d} for diversity.
    QualityReport replay(const MethodConfig &config, std::span<const Dataset> inputs, unsigned workers = 1);

    struct SelectionOptions
    {
        std::vector<FeatureKind> features{default_feature_kinds.begin(), default_feature_kinds.end()};
        DistanceKind distance = DistanceKind::ECS;
        SimilarityMeasure measure = Wasserstein{2.0};
        AggregationRule rule = AggregationRule::average();
        std::size_t k = 1;
        std::optional<double> threshold; // when set: select every candidate with aggregate <= threshold
        bool normalize_inputs = false;

        bool operator==(const SelectionOptions &) const = default;
    };

    struct CandidateScore
    {
        std::map<FeatureKind, double> raw;
        std::map<FeatureKind, double> normalized; // min-max across the candidate collection
        double aggregate = 0.0;

        bool operator==(const CandidateScore &) const = default;
    };

    struct SelectionResult
    {
        std::vector<std::size_t> ranking;            // ascending aggregate, ties by index
        std::vector<CandidateScore> differences;     // indexed by candidate
        std::vector<std::size_t> selected;           // prefix of ranking
        std::map<FeatureKind, std::vector<std::size_t>> per_feature_ranking; // ascending raw difference
        SelectionOptions method_config;

        bool operator==(const SelectionResult &) const = default;
    };

    // Ranking and selection from per-candidate raw differences (no data access).
    SelectionResult select_from_differences(std::vector<std::map<FeatureKind, double>> raw, const SelectionOptions &opts);

    SelectionResult augment_select(const Dataset &reference, std::span<const Dataset> candidates,
                                   const SelectionOptions &opts = {}, unsigned workers = 1);

    // JSON with stable field order and "schema_version": 1.
    std::string to_json(const QualityReport &r);
    QualityReport quality_report_from_json(std::string_view text);
    std::string to_json(const SelectionResult &r);
    SelectionResult selection_result_from_json(std::string_view text);

    std::string to_json(const MethodConfig &c);
    MethodConfig method_config_from_json(std::string_view text);
    std::string to_json(const SelectionOptions &o);
    SelectionOptions selection_options_from_json(std::string_view text);

    // Measure descriptors shared by the JSON layer and the CLI, e.g. {"name":"mmd","bandwidth":"median"}.
    std::string to_json(const SimilarityMeasure &m);
    SimilarityMeasure similarity_measure_from_json(std::string_view text);
    std::string to_json(const DiversityMeasure &m);
    DiversityMeasure diversity_measure_from_json(std::string_view text);
}
