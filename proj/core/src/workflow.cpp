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

#include "dqa/workflow.hpp"
#include "dqa/error.hpp"
#include "dqa/parallel.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <numeric>
#include <set>
#include <string>

namespace dqa
{
    using nlohmann::ordered_json;

    namespace
    {
        template <class... Ts>
        struct overloaded : Ts...
        {
            using Ts::operator()...;
        };
        template <class... Ts>
        overloaded(Ts...) -> overloaded<Ts...>;

        void require_features(const std::vector<FeatureKind> &features, const char *who)
        {
            if (features.empty())
                throw InvalidArgument(std::string(who) + ": feature list is empty");
            std::set<FeatureKind> seen;
            for (auto f : features)
                if (!seen.insert(f).second)
                    throw InvalidArgument(std::string(who) + ": feature '" + std::string(to_string(f)) + "' listed twice");
        }

        void finish(QualityReport &r, const AggregationRule &rule, Normalization normalization)
        {
            r.normalized = normalization == Normalization::AcrossFeatures ? normalize_scores(r.per_feature) : r.per_feature;
            r.aggregate = aggregate(r.normalized, rule);
        }

        Dataset maybe_normalized(const Dataset &d, bool enabled)
        {
            return enabled ? normalize_by_max_entry(d) : d;
        }
    }

    std::string_view to_string(AggregationKind k)
    {
        switch (k)
        {
        case AggregationKind::Min:
            return "min";
        case AggregationKind::Max:
            return "max";
        case AggregationKind::WeightedAverage:
            return "average";
        }
        throw InvalidArgument("unknown aggregation kind");
    }

    AggregationKind parse_aggregation_kind(std::string_view name)
    {
        if (name == "min")
            return AggregationKind::Min;
        if (name == "max")
            return AggregationKind::Max;
        if (name == "average")
            return AggregationKind::WeightedAverage;
        throw InvalidArgument("unknown aggregation rule '" + std::string(name) + "' (valid: min, max, average)");
    }

    std::string_view to_string(Normalization n)
    {
        return n == Normalization::AcrossFeatures ? "across-features" : "raw";
    }

    Normalization parse_normalization(std::string_view name)
    {
        if (name == "across-features")
            return Normalization::AcrossFeatures;
        if (name == "raw")
            return Normalization::Raw;
        throw InvalidArgument("unknown normalization '" + std::string(name) + "' (valid: across-features, raw)");
    }

    std::vector<double> normalize_scores(std::span<const double> values)
    {
        if (values.empty())
            throw InvalidArgument("normalize_scores: empty collection");
        for (double v : values)
            if (!std::isfinite(v))
                throw InvalidArgument("normalize_scores: non-finite value");
        const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
        const double min = *lo, span = *hi - *lo;
        std::vector<double> out(values.size(), 0.0);
        if (span > 0.0)
            for (std::size_t i = 0; i < values.size(); ++i)
                out[i] = std::clamp((values[i] - min) / span, 0.0, 1.0);
        return out;
    }

    std::map<FeatureKind, double> normalize_scores(const std::map<FeatureKind, double> &values)
    {
        std::vector<double> flat;
        for (const auto &[k, v] : values)
            flat.push_back(v);
        const auto n = normalize_scores(flat);
        std::map<FeatureKind, double> out;
        std::size_t i = 0;
        for (const auto &[k, v] : values)
            out[k] = n[i++];
        return out;
    }

    double aggregate(const std::map<FeatureKind, double> &normalized, const AggregationRule &rule)
    {
        if (normalized.empty())
            throw InvalidArgument("aggregate: no feature values");
        for (const auto &[k, v] : normalized)
            if (!std::isfinite(v))
                throw InvalidArgument("aggregate: non-finite value for feature '" + std::string(to_string(k)) + "'");

        switch (rule.kind)
        {
        case AggregationKind::Min:
        case AggregationKind::Max:
        {
            if (!rule.weights.empty())
                throw InvalidArgument("aggregate: weights only apply to the average rule");
            double acc = normalized.begin()->second;
            for (const auto &[k, v] : normalized)
                acc = rule.kind == AggregationKind::Min ? std::min(acc, v) : std::max(acc, v);
            return acc;
        }
        case AggregationKind::WeightedAverage:
        {
            if (rule.weights.empty())
            {
                double acc = 0.0;
                for (const auto &[k, v] : normalized)
                    acc += v;
                return acc / static_cast<double>(normalized.size());
            }
            if (rule.weights.size() != normalized.size())
                throw InvalidArgument("aggregate: weights must cover exactly the evaluated features");
            double sum = 0.0, acc = 0.0;
            for (const auto &[k, v] : normalized)
            {
                const auto it = rule.weights.find(k);
                if (it == rule.weights.end())
                    throw InvalidArgument("aggregate: no weight for feature '" + std::string(to_string(k)) + "'");
                const double w = it->second;
                if (!(w >= 0.0 && w <= 1.0))
                    throw InvalidArgument("aggregate: weights must lie in [0, 1]");
                sum += w;
                acc += w * v;
            }
            if (std::abs(sum - 1.0) > 1e-9)
                throw InvalidArgument("aggregate: weights must sum to 1");
            return acc;
        }
        }
        throw InvalidArgument("aggregate: unknown rule");
    }

    QualityReport similarity_report(const Dataset &x, const Dataset &y, const SimilarityOptions &opts, unsigned workers)
    {
        require_features(opts.features, "similarity_report");
        validate(opts.measure);
        const auto bx = extract_features(maybe_normalized(x, opts.normalize_inputs), workers);
        const auto by = extract_features(maybe_normalized(y, opts.normalize_inputs), workers);

        QualityReport r;
        r.features = opts.features;
        r.method_config = opts;
        for (auto f : opts.features)
            r.per_feature[f] = set_difference(feature_values(bx, f), feature_values(by, f), opts.distance, opts.measure, workers);
        finish(r, opts.rule, opts.normalization);
        return r;
    }

    QualityReport diversity_report(const Dataset &d, const DiversityOptions &opts, unsigned workers)
    {
        require_features(opts.features, "diversity_report");
        for (const auto &[k, m] : opts.measures)
        {
            if (std::find(opts.features.begin(), opts.features.end(), k) == opts.features.end())
                throw InvalidArgument("diversity_report: measure given for unlisted feature '" + std::string(to_string(k)) + "'");
            validate(m);
        }

        const bool has_doppler = d.shape().n_snapshots > 1;
        QualityReport r;
        r.method_config = opts;
        for (auto f : opts.features)
            if (has_doppler || (f != FeatureKind::Doppler && f != FeatureKind::DopplerSparsity))
                r.features.push_back(f);
        if (r.features.empty())
            throw InvalidArgument("diversity_report: no feature can be extracted from single-snapshot data");

        const auto bundles = extract_features(maybe_normalized(d, opts.normalize_inputs), workers);
        for (auto f : r.features)
        {
            const auto it = opts.measures.find(f);
            const DiversityMeasure m = it != opts.measures.end() ? it->second : default_diversity_measure(f);
            r.per_feature[f] = feature_diversity(feature_values(bundles, f), f, m, workers);
        }
        finish(r, opts.rule, opts.normalization);
        return r;
    }

    QualityReport replay(const MethodConfig &config, std::span<const Dataset> inputs, unsigned workers)
    {
        return std::visit(overloaded{
                              [&](const SimilarityOptions &o)
                              {
                                  if (inputs.size() != 2)
                                      throw InvalidArgument("replay: a similarity report needs two datasets");
                                  return similarity_report(inputs[0], inputs[1], o, workers);
                              },
                              [&](const DiversityOptions &o)
                              {
                                  if (inputs.size() != 1)
                                      throw InvalidArgument("replay: a diversity report needs one dataset");
                                  return diversity_report(inputs[0], o, workers);
                              },
                          },
                          config);
    }

    // ---- selection --------------------------------------------------------------

    namespace
    {
        void check_selection(const SelectionOptions &opts, std::size_t n)
        {
            require_features(opts.features, "augment_select");
            validate(opts.measure);
            if (n == 0)
                throw InvalidArgument("augment_select: empty candidate list");
            if (opts.threshold)
            {
                if (!std::isfinite(*opts.threshold))
                    throw InvalidArgument("augment_select: threshold must be finite");
            }
            else if (opts.k < 1 || opts.k > n)
                throw InvalidArgument("augment_select: k = " + std::to_string(opts.k) + " outside [1, " +
                                      std::to_string(n) + "]");
        }

        std::vector<std::size_t> argsort(const std::vector<double> &v)
        {
            std::vector<std::size_t> idx(v.size());
            std::iota(idx.begin(), idx.end(), std::size_t{0});
            std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b)
                      { return v[a] < v[b] || (v[a] == v[b] && a < b); });
            return idx;
        }
    }

    SelectionResult select_from_differences(std::vector<std::map<FeatureKind, double>> raw, const SelectionOptions &opts)
    {
        const std::size_t n = raw.size();
        check_selection(opts, n);

        SelectionResult r;
        r.method_config = opts;
        r.differences.resize(n);
        for (std::size_t i = 0; i < n; ++i)
        {
            if (raw[i].size() != opts.features.size())
                throw InvalidArgument("select: candidate " + std::to_string(i) + " does not carry every feature");
            r.differences[i].raw = std::move(raw[i]);
        }

        for (auto f : opts.features)
        {
            std::vector<double> column(n);
            for (std::size_t i = 0; i < n; ++i)
            {
                const auto it = r.differences[i].raw.find(f);
                if (it == r.differences[i].raw.end())
                    throw InvalidArgument("select: candidate " + std::to_string(i) + " lacks feature '" +
                                          std::string(to_string(f)) + "'");
                column[i] = it->second;
            }
            const auto norm = normalize_scores(column);
            for (std::size_t i = 0; i < n; ++i)
                r.differences[i].normalized[f] = norm[i];
            r.per_feature_ranking[f] = argsort(column);
        }

        std::vector<double> agg(n);
        for (std::size_t i = 0; i < n; ++i)
            agg[i] = r.differences[i].aggregate = aggregate(r.differences[i].normalized, opts.rule);
        r.ranking = argsort(agg);

        if (opts.threshold)
        {
            for (auto i : r.ranking)
                if (agg[i] <= *opts.threshold)
                    r.selected.push_back(i);
        }
        else
            r.selected.assign(r.ranking.begin(), r.ranking.begin() + static_cast<std::ptrdiff_t>(opts.k));
        return r;
    }

    SelectionResult augment_select(const Dataset &reference, std::span<const Dataset> candidates,
                                   const SelectionOptions &opts, unsigned workers)
    {
        check_selection(opts, candidates.size());
        const auto ref_bundles = extract_features(maybe_normalized(reference, opts.normalize_inputs), workers);
        std::vector<std::vector<RealMatrix>> ref_values;
        for (auto f : opts.features)
            ref_values.push_back(feature_values(ref_bundles, f));

        std::vector<std::map<FeatureKind, double>> raw(candidates.size());
        parallel_for(candidates.size(), workers, [&](std::size_t c)
                     {
            const auto bundles = extract_features(maybe_normalized(candidates[c], opts.normalize_inputs), 1);
            for (std::size_t j = 0; j < opts.features.size(); ++j)
            {
                const auto f = opts.features[j];
                raw[c][f] = set_difference(ref_values[j], feature_values(bundles, f), opts.distance, opts.measure, 1);
            } });
        return select_from_differences(std::move(raw), opts);
    }

    // ---- JSON -------------------------------------------------------------------

    namespace
    {
        [[noreturn]] void schema_error(const std::string &what) { throw FormatError("json: " + what, 0); }

        void allow_keys(const ordered_json &j, std::initializer_list<std::string_view> keys, const char *where)
        {
            if (!j.is_object())
                schema_error(std::string(where) + " must be an object");
            for (const auto &[k, v] : j.items())
                if (std::find(keys.begin(), keys.end(), k) == keys.end())
                    schema_error(std::string("unknown key '") + k + "' in " + where);
        }

        ordered_json parse_text(std::string_view text)
        {
            try
            {
                return ordered_json::parse(text);
            }
            catch (const nlohmann::json::parse_error &e)
            {
                throw FormatError(std::string("json: ") + e.what(), e.byte);
            }
        }

        template <class F>
        auto guarded(F &&f)
        {
            try
            {
                return f();
            }
            catch (const nlohmann::json::exception &e)
            {
                schema_error(e.what());
            }
        }

        void check_schema(const ordered_json &j, std::string_view type)
        {
            if (!j.is_object() || j.value("schema_version", 0) != 1)
                schema_error("missing or unsupported schema_version");
            if (j.value("type", std::string()) != type)
                schema_error("expected type '" + std::string(type) + "'");
        }

        ordered_json bandwidth_json(const Bandwidth &b)
        {
            if (const auto *v = std::get_if<double>(&b))
                return *v;
            return "median";
        }

        Bandwidth bandwidth_from(const ordered_json &j)
        {
            if (j.is_string())
            {
                if (j.get<std::string>() != "median")
                    schema_error("bandwidth must be a number or \"median\"");
                return MedianHeuristic{};
            }
            return j.get<double>();
        }

        ordered_json features_json(const std::vector<FeatureKind> &fs)
        {
            ordered_json a = ordered_json::array();
            for (auto f : fs)
                a.push_back(to_string(f));
            return a;
        }

        std::vector<FeatureKind> features_from(const ordered_json &j)
        {
            std::vector<FeatureKind> out;
            for (const auto &v : j)
                out.push_back(parse_feature_kind(v.get<std::string>()));
            return out;
        }

        // Keyed by feature name in `order`.
        template <class T>
        ordered_json feature_map_json(const std::map<FeatureKind, T> &m, const std::vector<FeatureKind> &order)
        {
            ordered_json o = ordered_json::object();
            for (auto f : order)
                if (const auto it = m.find(f); it != m.end())
                    o[std::string(to_string(f))] = it->second;
            return o;
        }

        std::map<FeatureKind, double> feature_map_from(const ordered_json &j)
        {
            std::map<FeatureKind, double> out;
            for (const auto &[k, v] : j.items())
                out[parse_feature_kind(k)] = v.get<double>();
            return out;
        }

        ordered_json similarity_measure_json(const SimilarityMeasure &m)
        {
            ordered_json o;
            o["name"] = measure_name(m);
            std::visit(overloaded{
                           [](const MeanDistance &) {},
                           [&](const Mmd &x) { o["bandwidth"] = bandwidth_json(x.bandwidth); },
                           [](const Nnca &) {},
                           [&](const Wasserstein &x) { o["p"] = x.p; },
                       },
                       m);
            return o;
        }

        SimilarityMeasure similarity_measure_from(const ordered_json &j)
        {
            const auto name = j.at("name").get<std::string>();
            SimilarityMeasure m;
            if (name == "mean")
            {
                allow_keys(j, {"name"}, "measure");
                m = MeanDistance{};
            }
            else if (name == "mmd")
            {
                allow_keys(j, {"name", "bandwidth"}, "measure");
                m = Mmd{j.contains("bandwidth") ? bandwidth_from(j["bandwidth"]) : Bandwidth{MedianHeuristic{}}};
            }
            else if (name == "nnca")
            {
                allow_keys(j, {"name"}, "measure");
                m = Nnca{};
            }
            else if (name == "wasserstein")
            {
                allow_keys(j, {"name", "p"}, "measure");
                m = Wasserstein{j.value("p", 2.0)};
            }
            else
                schema_error("unknown similarity measure '" + name + "'");
            validate(m);
            return m;
        }

        ordered_json diversity_measure_json(const DiversityMeasure &m)
        {
            ordered_json o;
            o["name"] = measure_name(m);
            std::visit(overloaded{
                           [&](const EntropyDiversity &e)
                           {
                               o["bins"] = e.bins;
                               if (const auto *edges = std::get_if<std::vector<double>>(&e.edges))
                                   o["edges"] = *edges;
                               else
                                   o["edges"] = "uniform";
                           },
                           [&](const DistanceDiversity &d) { o["distance"] = to_string(d.kind); },
                           [&](const DppDiversity &d)
                           {
                               o["bandwidth"] = bandwidth_json(d.bandwidth);
                               o["jitter"] = d.jitter;
                           },
                           [&](const CompressionDiversity &c) { o["quality"] = c.quality; },
                       },
                       m);
            return o;
        }

        DiversityMeasure diversity_measure_from(const ordered_json &j)
        {
            const auto name = j.at("name").get<std::string>();
            DiversityMeasure m;
            if (name == "entropy")
            {
                allow_keys(j, {"name", "bins", "edges"}, "measure");
                EntropyDiversity e;
                e.bins = j.value("bins", e.bins);
                if (j.contains("edges") && !j["edges"].is_string())
                    e.edges = j["edges"].get<std::vector<double>>();
                else if (j.contains("edges") && j["edges"].get<std::string>() != "uniform")
                    schema_error("edges must be an array or \"uniform\"");
                m = e;
            }
            else if (name == "distance")
            {
                allow_keys(j, {"name", "distance"}, "measure");
                m = DistanceDiversity{parse_distance_kind(j.value("distance", std::string("ecs")))};
            }
            else if (name == "dpp")
            {
                allow_keys(j, {"name", "bandwidth", "jitter"}, "measure");
                DppDiversity d;
                if (j.contains("bandwidth"))
                    d.bandwidth = bandwidth_from(j["bandwidth"]);
                d.jitter = j.value("jitter", 0.0);
                m = d;
            }
            else if (name == "compression")
            {
                allow_keys(j, {"name", "quality"}, "measure");
                m = CompressionDiversity{j.value("quality", 75)};
            }
            else
                schema_error("unknown diversity measure '" + name + "'");
            validate(m);
            return m;
        }

        ordered_json rule_json(const AggregationRule &r)
        {
            ordered_json o;
            o["rule"] = to_string(r.kind);
            if (!r.weights.empty())
            {
                ordered_json w = ordered_json::object();
                for (const auto &[k, v] : r.weights)
                    w[std::string(to_string(k))] = v;
                o["weights"] = w;
            }
            return o;
        }

        AggregationRule rule_from(const ordered_json &j)
        {
            allow_keys(j, {"rule", "weights"}, "aggregation");
            AggregationRule r;
            r.kind = parse_aggregation_kind(j.at("rule").get<std::string>());
            if (j.contains("weights"))
                r.weights = feature_map_from(j["weights"]);
            return r;
        }

        ordered_json config_json(const MethodConfig &c)
        {
            return std::visit(overloaded{
                                  [](const SimilarityOptions &o)
                                  {
                                      ordered_json j;
                                      j["report"] = "similarity";
                                      j["features"] = features_json(o.features);
                                      j["distance"] = to_string(o.distance);
                                      j["measure"] = similarity_measure_json(o.measure);
                                      j["aggregation"] = rule_json(o.rule);
                                      j["normalization"] = to_string(o.normalization);
                                      j["normalize_inputs"] = o.normalize_inputs;
                                      return j;
                                  },
                                  [](const DiversityOptions &o)
                                  {
                                      ordered_json j;
                                      j["report"] = "diversity";
                                      j["features"] = features_json(o.features);
                                      ordered_json ms = ordered_json::object();
                                      for (auto f : o.features)
                                          if (const auto it = o.measures.find(f); it != o.measures.end())
                                              ms[std::string(to_string(f))] = diversity_measure_json(it->second);
                                      j["measures"] = ms;
                                      j["aggregation"] = rule_json(o.rule);
                                      j["normalization"] = to_string(o.normalization);
                                      j["normalize_inputs"] = o.normalize_inputs;
                                      return j;
                                  },
                              },
                              c);
        }

        MethodConfig config_from(const ordered_json &j)
        {
            const auto report = j.at("report").get<std::string>();
            if (report == "similarity")
            {
                allow_keys(j, {"report", "features", "distance", "measure", "aggregation", "normalization", "normalize_inputs"},
                           "method_config");
                SimilarityOptions o;
                o.features = features_from(j.at("features"));
                o.distance = parse_distance_kind(j.at("distance").get<std::string>());
                o.measure = similarity_measure_from(j.at("measure"));
                o.rule = rule_from(j.at("aggregation"));
                o.normalization = parse_normalization(j.at("normalization").get<std::string>());
                o.normalize_inputs = j.at("normalize_inputs").get<bool>();
                return o;
            }
            if (report == "diversity")
            {
                allow_keys(j, {"report", "features", "measures", "aggregation", "normalization", "normalize_inputs"},
                           "method_config");
                DiversityOptions o;
                o.features = features_from(j.at("features"));
                for (const auto &[k, v] : j.at("measures").items())
                    o.measures[parse_feature_kind(k)] = diversity_measure_from(v);
                o.rule = rule_from(j.at("aggregation"));
                o.normalization = parse_normalization(j.at("normalization").get<std::string>());
                o.normalize_inputs = j.at("normalize_inputs").get<bool>();
                return o;
            }
            schema_error("unknown report kind '" + report + "'");
        }

        ordered_json selection_options_json(const SelectionOptions &o)
        {
            ordered_json j;
            j["features"] = features_json(o.features);
            j["distance"] = to_string(o.distance);
            j["measure"] = similarity_measure_json(o.measure);
            j["aggregation"] = rule_json(o.rule);
            j["k"] = o.k;
            j["threshold"] = o.threshold ? ordered_json(*o.threshold) : ordered_json(nullptr);
            j["normalize_inputs"] = o.normalize_inputs;
            return j;
        }

        SelectionOptions selection_options_from(const ordered_json &j)
        {
            allow_keys(j, {"features", "distance", "measure", "aggregation", "k", "threshold", "normalize_inputs"},
                       "selection options");
            SelectionOptions o;
            o.features = features_from(j.at("features"));
            o.distance = parse_distance_kind(j.at("distance").get<std::string>());
            o.measure = similarity_measure_from(j.at("measure"));
            o.rule = rule_from(j.at("aggregation"));
            o.k = j.at("k").get<std::size_t>();
            if (!j.at("threshold").is_null())
                o.threshold = j["threshold"].get<double>();
            o.normalize_inputs = j.at("normalize_inputs").get<bool>();
            return o;
        }

        std::string dump(const ordered_json &j) { return j.dump(2); }

        // Converts library errors raised while reading JSON fields into FormatError.
        template <class F>
        auto reading(F &&f)
        {
            try
            {
                return guarded(std::forward<F>(f));
            }
            catch (const FormatError &)
            {
                throw;
            }
            catch (const InvalidArgument &e)
            {
                schema_error(e.what());
            }
        }
    }

    std::string to_json(const QualityReport &r)
    {
        ordered_json j;
        j["schema_version"] = 1;
        j["type"] = "quality_report";
        j["features"] = features_json(r.features);
        j["per_feature"] = feature_map_json(r.per_feature, r.features);
        j["normalized"] = feature_map_json(r.normalized, r.features);
        j["aggregate"] = r.aggregate;
        j["method_config"] = config_json(r.method_config);
        return dump(j);
    }

    QualityReport quality_report_from_json(std::string_view text)
    {
        const auto j = parse_text(text);
        return reading([&]
                       {
            check_schema(j, "quality_report");
            allow_keys(j, {"schema_version", "type", "features", "per_feature", "normalized", "aggregate", "method_config"},
                       "quality_report");
            QualityReport r;
            r.features = features_from(j.at("features"));
            r.per_feature = feature_map_from(j.at("per_feature"));
            r.normalized = feature_map_from(j.at("normalized"));
            r.aggregate = j.at("aggregate").get<double>();
            r.method_config = config_from(j.at("method_config"));
            return r; });
    }

    std::string to_json(const SelectionResult &r)
    {
        const auto &features = r.method_config.features;
        ordered_json j;
        j["schema_version"] = 1;
        j["type"] = "selection_result";
        j["ranking"] = r.ranking;
        j["selected"] = r.selected;
        ordered_json diffs = ordered_json::array();
        for (auto i : r.ranking)
        {
            ordered_json d;
            d["candidate"] = i;
            d["raw"] = feature_map_json(r.differences.at(i).raw, features);
            d["normalized"] = feature_map_json(r.differences.at(i).normalized, features);
            d["aggregate"] = r.differences.at(i).aggregate;
            diffs.push_back(d);
        }
        j["differences"] = diffs;
        ordered_json per = ordered_json::object();
        for (auto f : features)
            if (const auto it = r.per_feature_ranking.find(f); it != r.per_feature_ranking.end())
                per[std::string(to_string(f))] = it->second;
        j["per_feature_ranking"] = per;
        j["method_config"] = selection_options_json(r.method_config);
        return dump(j);
    }

    SelectionResult selection_result_from_json(std::string_view text)
    {
        const auto j = parse_text(text);
        return reading([&]
                       {
            check_schema(j, "selection_result");
            allow_keys(j, {"schema_version", "type", "ranking", "selected", "differences", "per_feature_ranking", "method_config"},
                       "selection_result");
            SelectionResult r;
            r.ranking = j.at("ranking").get<std::vector<std::size_t>>();
            r.selected = j.at("selected").get<std::vector<std::size_t>>();
            const auto &diffs = j.at("differences");
            r.differences.resize(diffs.size());
            for (const auto &d : diffs)
            {
                const auto i = d.at("candidate").get<std::size_t>();
                if (i >= r.differences.size())
                    schema_error("candidate index out of range");
                r.differences[i].raw = feature_map_from(d.at("raw"));
                r.differences[i].normalized = feature_map_from(d.at("normalized"));
                r.differences[i].aggregate = d.at("aggregate").get<double>();
            }
            for (const auto &[k, v] : j.at("per_feature_ranking").items())
                r.per_feature_ranking[parse_feature_kind(k)] = v.get<std::vector<std::size_t>>();
            r.method_config = selection_options_from(j.at("method_config"));
            return r; });
    }

    std::string to_json(const MethodConfig &c) { return dump(config_json(c)); }

    MethodConfig method_config_from_json(std::string_view text)
    {
        const auto j = parse_text(text);
        return reading([&] { return config_from(j); });
    }

    std::string to_json(const SelectionOptions &o) { return dump(selection_options_json(o)); }

    SelectionOptions selection_options_from_json(std::string_view text)
    {
        const auto j = parse_text(text);
        return reading([&] { return selection_options_from(j); });
    }

    std::string to_json(const SimilarityMeasure &m) { return similarity_measure_json(m).dump(); }

    SimilarityMeasure similarity_measure_from_json(std::string_view text)
    {
        const auto j = parse_text(text);
        return reading([&] { return similarity_measure_from(j); });
    }

    std::string to_json(const DiversityMeasure &m) { return diversity_measure_json(m).dump(); }

    DiversityMeasure diversity_measure_from_json(std::string_view text)
    {
        const auto j = parse_text(text);
        return reading([&] { return diversity_measure_from(j); });
    }
}
