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

#include "cli.hpp"

#include "dqa/dataset.hpp"
#include "dqa/error.hpp"
#include "dqa/features.hpp"
#include "dqa/parallel.hpp"
#include "dqa/synth.hpp"
#include "dqa/workflow.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <glob.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace dqa::cli
{
    namespace
    {
        using json = nlohmann::ordered_json;
        namespace fs = std::filesystem;

        class UsageError : public std::runtime_error
        {
        public:
            using std::runtime_error::runtime_error;
        };

        const std::string default_features = "pdp,aps,pdp-sparsity,aps-sparsity";

        // ---- option records -------------------------------------------------------
        // Each record lists its fields once (fields()), which drives the manifest JSON in
        // both directions. Strings are interpreted after parsing so that the command line and
        // a replayed manifest go through the same validation.

        struct GenerateArgs
        {
            std::string preset;
            std::uint64_t seed = 1;
            std::string out;
            std::size_t samples = 0;  // 0: generator default
            std::size_t datasets = 0; // 0: preset default
            double width_ns = 2000.0;
            std::size_t snapshots = 1;
            std::string antenna_grid; // "NvxNh", empty: preset default
            double speed_mps = 3.0;
            std::string name = "custom";
            std::string paths, delay_ns, aod_deg, zod_deg, rms_window; // "lo,hi" ranges without a preset
            unsigned workers = 1;
        };

        template <class V>
        void fields(GenerateArgs &a, V &&v)
        {
            v("preset", a.preset);
            v("seed", a.seed);
            v("out", a.out);
            v("samples", a.samples);
            v("datasets", a.datasets);
            v("width_ns", a.width_ns);
            v("snapshots", a.snapshots);
            v("antenna_grid", a.antenna_grid);
            v("speed_mps", a.speed_mps);
            v("name", a.name);
            v("paths", a.paths);
            v("delay_ns", a.delay_ns);
            v("aod_deg", a.aod_deg);
            v("zod_deg", a.zod_deg);
            v("rms_window", a.rms_window);
            v("workers", a.workers);
        }

        struct FeaturesArgs
        {
            std::string input;
            std::string out;
            unsigned workers = 1;
        };

        template <class V>
        void fields(FeaturesArgs &a, V &&v)
        {
            v("input", a.input);
            v("out", a.out);
            v("workers", a.workers);
        }

        struct SimilarityArgs
        {
            std::string x, y;
            std::string measure = "wasserstein";
            double p = 2.0;
            std::string bandwidth = "median";
            std::string distance = "ecs";
            std::string features = default_features;
            std::string rule = "average";
            std::string weights;
            std::string normalization = "across-features";
            bool normalize_inputs = false;
            std::string out;
            std::string format = "json";
            unsigned workers = 1;
        };

        template <class V>
        void fields(SimilarityArgs &a, V &&v)
        {
            v("x", a.x);
            v("y", a.y);
            v("measure", a.measure);
            v("p", a.p);
            v("bandwidth", a.bandwidth);
            v("distance", a.distance);
            v("features", a.features);
            v("rule", a.rule);
            v("weights", a.weights);
            v("normalization", a.normalization);
            v("normalize_inputs", a.normalize_inputs);
            v("out", a.out);
            v("format", a.format);
            v("workers", a.workers);
        }

        struct DiversityArgs
        {
            std::string input;
            std::string measure = "distance";
            std::string distance = "ecs";
            std::size_t bins = 32;
            std::string bandwidth = "median";
            double jitter = 0.0;
            int quality = 75;
            std::string features = default_features;
            std::string rule = "average";
            std::string weights;
            std::string normalization = "raw";
            bool normalize_inputs = false;
            std::string out;
            std::string format = "json";
            unsigned workers = 1;
        };

        template <class V>
        void fields(DiversityArgs &a, V &&v)
        {
            v("input", a.input);
            v("measure", a.measure);
            v("distance", a.distance);
            v("bins", a.bins);
            v("bandwidth", a.bandwidth);
            v("jitter", a.jitter);
            v("quality", a.quality);
            v("features", a.features);
            v("rule", a.rule);
            v("weights", a.weights);
            v("normalization", a.normalization);
            v("normalize_inputs", a.normalize_inputs);
            v("out", a.out);
            v("format", a.format);
            v("workers", a.workers);
        }

        struct SelectArgs
        {
            std::string reference;
            std::string candidates; // glob pattern
            std::size_t k = 1;
            std::optional<double> threshold;
            std::string measure = "wasserstein";
            double p = 2.0;
            std::string bandwidth = "median";
            std::string distance = "ecs";
            std::string features = default_features;
            std::string rule = "average";
            std::string weights;
            bool normalize_inputs = false;
            std::string out;
            std::string format = "json";
            unsigned workers = 1;
        };

        template <class V>
        void fields(SelectArgs &a, V &&v)
        {
            v("reference", a.reference);
            v("candidates", a.candidates);
            v("k", a.k);
            v("threshold", a.threshold);
            v("measure", a.measure);
            v("p", a.p);
            v("bandwidth", a.bandwidth);
            v("distance", a.distance);
            v("features", a.features);
            v("rule", a.rule);
            v("weights", a.weights);
            v("normalize_inputs", a.normalize_inputs);
            v("out", a.out);
            v("format", a.format);
            v("workers", a.workers);
        }

        struct SweepArgs
        {
            std::string corpus;
            std::string mode = "pairs"; // pairs | diversity
            std::string measure;        // empty: wasserstein for pairs, distance for diversity
            double p = 2.0;
            std::string bandwidth = "median";
            std::string distance = "ecs";
            std::size_t bins = 32;
            double jitter = 0.0;
            int quality = 75;
            std::string features = default_features;
            std::string out;
            std::string format = "csv";
            unsigned workers = 1;
        };

        template <class V>
        void fields(SweepArgs &a, V &&v)
        {
            v("corpus", a.corpus);
            v("mode", a.mode);
            v("measure", a.measure);
            v("p", a.p);
            v("bandwidth", a.bandwidth);
            v("distance", a.distance);
            v("bins", a.bins);
            v("jitter", a.jitter);
            v("quality", a.quality);
            v("features", a.features);
            v("out", a.out);
            v("format", a.format);
            v("workers", a.workers);
        }

        // ---- manifest JSON ---------------------------------------------------------

        template <class T>
        struct is_optional : std::false_type
        {
        };
        template <class T>
        struct is_optional<std::optional<T>> : std::true_type
        {
        };

        struct JsonWriter
        {
            json &j;
            template <class T>
            void operator()(const char *key, const T &v) const
            {
                if constexpr (is_optional<T>::value)
                {
                    if (v)
                        j[key] = *v;
                    else
                        j[key] = nullptr;
                }
                else
                    j[key] = v;
            }
        };

        struct JsonReader
        {
            const json &j;
            std::set<std::string> &known;
            template <class T>
            void operator()(const char *key, T &v) const
            {
                known.insert(key);
                const auto it = j.find(key);
                if (it == j.end())
                    return;
                try
                {
                    if constexpr (is_optional<T>::value)
                    {
                        if (it->is_null())
                            v.reset();
                        else
                            v = it->template get<typename T::value_type>();
                    }
                    else
                    {
                        if constexpr (std::is_arithmetic_v<T> && !std::is_same_v<T, bool>)
                            if (!it->is_number())
                                throw UsageError("manifest: option '" + std::string(key) + "' must be a number");
                        v = it->template get<T>();
                    }
                }
                catch (const json::exception &)
                {
                    throw UsageError("manifest: option '" + std::string(key) + "' has the wrong type");
                }
            }
        };

        template <class A>
        json options_json(A a)
        {
            json j = json::object();
            fields(a, JsonWriter{j});
            return j;
        }

        template <class A>
        A options_from_json(const json &j)
        {
            if (!j.is_object())
                throw UsageError("manifest: \"options\" must be an object");
            A a;
            std::set<std::string> known;
            fields(a, JsonReader{j, known});
            for (const auto &item : j.items())
                if (!known.count(item.key()))
                    throw UsageError("manifest: unknown option '" + item.key() + "'");
            return a;
        }

        json run_record(const std::string &command, const json &options)
        {
            json j;
            j["schema_version"] = 1;
            j["command"] = command;
            j["options"] = options;
            return j;
        }

        // ---- helpers -------------------------------------------------------------

        // Library argument errors raised while interpreting options are usage errors.
        template <class F>
        auto interpret(F &&f)
        {
            try
            {
                return f();
            }
            catch (const InvalidArgument &e)
            {
                throw UsageError(e.what());
            }
        }

        std::string num(double v)
        {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.17g", v);
            return buf;
        }

        std::string trim(const std::string &s)
        {
            const auto b = s.find_first_not_of(" \t");
            if (b == std::string::npos)
                return {};
            const auto e = s.find_last_not_of(" \t");
            return s.substr(b, e - b + 1);
        }

        std::vector<std::string> split(const std::string &s, char sep)
        {
            std::vector<std::string> out;
            std::string item;
            std::istringstream in(s);
            while (std::getline(in, item, sep))
                out.push_back(trim(item));
            if (!s.empty() && s.back() == sep)
                out.emplace_back();
            return out;
        }

        double parse_number(const std::string &s, const std::string &what)
        {
            std::size_t used = 0;
            double v = 0.0;
            try
            {
                v = std::stod(s, &used);
            }
            catch (const std::exception &)
            {
                used = 0;
            }
            if (used == 0 || used != s.size() || !std::isfinite(v))
                throw UsageError(what + ": '" + s + "' is not a number");
            return v;
        }

        void require_one_of(const std::string &value, std::initializer_list<const char *> valid, const std::string &what)
        {
            std::string list;
            for (const char *v : valid)
            {
                if (value == v)
                    return;
                list += list.empty() ? v : std::string(", ") + v;
            }
            throw UsageError("unknown " + what + " '" + value + "' (valid: " + list + ")");
        }

        std::vector<FeatureKind> parse_features(const std::string &csv)
        {
            std::vector<FeatureKind> out;
            for (const auto &name : split(csv, ','))
            {
                const auto k = interpret([&] { return parse_feature_kind(name); });
                if (std::find(out.begin(), out.end(), k) != out.end())
                    throw UsageError("feature '" + name + "' listed twice");
                out.push_back(k);
            }
            if (out.empty())
                throw UsageError("--features must list at least one feature");
            return out;
        }

        DistanceKind parse_distance(const std::string &name)
        {
            return interpret([&] { return parse_distance_kind(name); });
        }

        Bandwidth parse_bandwidth(const std::string &s)
        {
            if (s == "median")
                return MedianHeuristic{};
            const double v = parse_number(s, "--bandwidth");
            if (!(v > 0.0))
                throw UsageError("--bandwidth must be positive or 'median'");
            return v;
        }

        SimilarityMeasure parse_similarity(const std::string &name, double p, const std::string &bandwidth)
        {
            require_one_of(name, {"mean", "mmd", "nnca", "wasserstein"}, "measure");
            SimilarityMeasure m;
            if (name == "mean")
                m = MeanDistance{};
            else if (name == "mmd")
                m = Mmd{parse_bandwidth(bandwidth)};
            else if (name == "nnca")
                m = Nnca{};
            else
                m = Wasserstein{p};
            interpret([&] { validate(m); return 0; });
            return m;
        }

        DiversityMeasure parse_diversity(const std::string &name, const std::string &distance, std::size_t bins,
                                         const std::string &bandwidth, double jitter, int quality)
        {
            require_one_of(name, {"entropy", "distance", "dpp", "compression"}, "measure");
            DiversityMeasure m;
            if (name == "entropy")
                m = EntropyDiversity{bins};
            else if (name == "distance")
                m = DistanceDiversity{parse_distance(distance)};
            else if (name == "dpp")
                m = DppDiversity{parse_bandwidth(bandwidth), jitter};
            else
                m = CompressionDiversity{quality};
            interpret([&] { validate(m); return 0; });
            return m;
        }

        AggregationRule parse_rule(const std::string &rule, const std::string &weights)
        {
            AggregationRule r;
            r.kind = interpret([&] { return parse_aggregation_kind(rule); });
            if (weights.empty())
                return r;
            if (r.kind != AggregationKind::WeightedAverage)
                throw UsageError("--weights only apply to --rule average");
            for (const auto &item : split(weights, ','))
            {
                const auto eq = item.find('=');
                if (eq == std::string::npos)
                    throw UsageError("--weights: expected feature=weight, got '" + item + "'");
                const auto k = interpret([&] { return parse_feature_kind(trim(item.substr(0, eq))); });
                if (!r.weights.emplace(k, parse_number(trim(item.substr(eq + 1)), "--weights")).second)
                    throw UsageError("--weights: feature listed twice");
            }
            return r;
        }

        // Per-feature diversity measures: spectra use `spectrum`, sparsity features use entropy.
        std::map<FeatureKind, DiversityMeasure> diversity_measures(const std::vector<FeatureKind> &features,
                                                                   const DiversityMeasure &spectrum, std::size_t bins)
        {
            std::map<FeatureKind, DiversityMeasure> out;
            for (auto f : features)
            {
                if (is_scalar(f))
                    out[f] = std::holds_alternative<EntropyDiversity>(spectrum) ? spectrum : EntropyDiversity{bins};
                else if (std::holds_alternative<EntropyDiversity>(spectrum))
                    throw UsageError("measure 'entropy' applies to sparsity features only; '" +
                                     std::string(to_string(f)) + "' is a spectrum");
                else
                    out[f] = spectrum;
            }
            interpret([&] { for (const auto &[f, m] : out) validate(m); return 0; });
            return out;
        }

        void require_file(const std::string &path, const std::string &what)
        {
            if (path.empty())
                throw UsageError(what + " is required");
            std::error_code ec;
            if (!fs::is_regular_file(path, ec))
                throw UsageError(what + " '" + path + "' is not a readable file");
        }

        void require_format(const std::string &format)
        {
            require_one_of(format, {"json", "csv"}, "format");
        }

        void emit(const std::string &payload, const std::string &path, std::ostream &out)
        {
            if (path.empty())
            {
                out << payload;
                return;
            }
            std::ofstream f(path, std::ios::binary);
            if (!f)
                throw IoError("cannot open '" + path + "' for writing");
            f << payload;
            if (!f)
                throw IoError("write to '" + path + "' failed");
        }

        std::string dump(const json &j) { return j.dump(2) + "\n"; }

        Interval parse_interval(const std::string &s, const std::string &what)
        {
            const auto parts = split(s, ',');
            if (parts.size() != 2)
                throw UsageError(what + ": expected 'lo,hi', got '" + s + "'");
            return {parse_number(parts[0], what), parse_number(parts[1], what)};
        }

        AntennaGrid parse_grid(const std::string &s)
        {
            const auto x = s.find('x');
            if (x == std::string::npos)
                throw UsageError("--antenna-grid: expected 'NvxNh', got '" + s + "'");
            const double nv = parse_number(s.substr(0, x), "--antenna-grid");
            const double nh = parse_number(s.substr(x + 1), "--antenna-grid");
            if (nv < 1 || nh < 1 || nv != std::floor(nv) || nh != std::floor(nh) || nv > 65535 || nh > 65535)
                throw UsageError("--antenna-grid: dimensions must be positive integers");
            return {static_cast<std::size_t>(nv), static_cast<std::size_t>(nh)};
        }

        std::string quality_report_csv(const QualityReport &r)
        {
            std::string s = "feature,raw,normalized\n";
            for (auto f : r.features)
                s += std::string(to_string(f)) + "," + num(r.per_feature.at(f)) + "," + num(r.normalized.at(f)) + "\n";
            s += "aggregate,," + num(r.aggregate) + "\n";
            return s;
        }

        // ---- commands -------------------------------------------------------------

        std::string cmd_generate(const GenerateArgs &a)
        {
            if (a.out.empty())
                throw UsageError("--out is required");
            SynthConfig cfg;
            cfg.seed = RandomSeed{a.seed};
            cfg.n_snapshots = a.snapshots;
            cfg.user_speed_mps = a.speed_mps;
            if (a.samples > 0)
                cfg.n_samples = a.samples;

            const bool has_ranges = !(a.paths.empty() && a.delay_ns.empty() && a.aod_deg.empty() && a.zod_deg.empty() &&
                                      a.rms_window.empty());
            if (!a.preset.empty() && has_ranges)
                throw UsageError("--paths, --delay-ns, --aod-deg, --zod-deg and --rms-window only apply without --preset");
            if (a.datasets > 0 && a.preset != "appendix-a" && a.preset != "appendix-b-pool")
                throw UsageError("--datasets only applies to the appendix-a and appendix-b-pool presets");

            std::vector<DatasetRecipe> recipes;
            if (a.preset.empty())
            {
                if (a.name.empty() || a.name.find_first_of("/\\") != std::string::npos)
                    throw UsageError("--name must be a plain file name");
                DatasetRecipe r{a.name, cfg, {}};
                if (!a.paths.empty())
                {
                    const auto iv = parse_interval(a.paths, "--paths");
                    if (iv.lo != std::floor(iv.lo) || iv.hi != std::floor(iv.hi))
                        throw UsageError("--paths: path counts must be integers");
                    r.ranges.path_count = {static_cast<std::int64_t>(iv.lo), static_cast<std::int64_t>(iv.hi)};
                }
                if (!a.delay_ns.empty())
                    r.ranges.delay_ns = parse_interval(a.delay_ns, "--delay-ns");
                if (!a.aod_deg.empty())
                    r.ranges.aod_deg = parse_interval(a.aod_deg, "--aod-deg");
                if (!a.zod_deg.empty())
                    r.ranges.zod_deg = parse_interval(a.zod_deg, "--zod-deg");
                if (!a.rms_window.empty())
                {
                    const auto w = parse_interval(a.rms_window, "--rms-window");
                    r.ranges.rms_ds_window = RmsWindow{w.lo, w.hi};
                }
                recipes.push_back(std::move(r));
            }
            else
            {
                require_one_of(a.preset, {"appendix-a", "appendix-b-pool", "appendix-c-grid", "uma-proxy"}, "preset");
                if (a.preset == "appendix-a")
                {
                    const auto offsets = interpret([&] { return default_appendix_a_offsets(a.datasets > 0 ? a.datasets : 10); });
                    recipes = interpret([&] { return appendix_a_recipes(cfg, offsets, a.width_ns); });
                }
                else if (a.preset == "appendix-b-pool")
                    recipes = appendix_b_recipes(small_array_config(cfg), a.datasets > 0 ? a.datasets : 100);
                else if (a.preset == "appendix-c-grid")
                    recipes = appendix_c_recipes(small_array_config(cfg));
                else
                    recipes = {uma_proxy_recipe(small_array_config(cfg))};
            }
            if (!a.antenna_grid.empty())
            {
                const auto grid = parse_grid(a.antenna_grid);
                for (auto &r : recipes)
                    r.config.grid = grid;
            }
            interpret([&]
                      {
                for (const auto &r : recipes)
                {
                    r.config.validate();
                    r.ranges.validate();
                }
                return 0; });

            std::error_code ec;
            fs::create_directories(a.out, ec);
            if (ec)
                throw IoError("cannot create output directory '" + a.out + "': " + ec.message());

            json files = json::array();
            for (const auto &r : recipes)
            {
                const auto g = generate_detailed(r, a.workers);
                const auto path = (fs::path(a.out) / (r.name + ".csid")).generic_string();
                write_dataset(g.dataset, path);

                const auto &s = g.rms_delay_spread_s;
                const auto [lo, hi] = std::minmax_element(s.begin(), s.end());
                double mean = 0.0;
                for (double v : s)
                    mean += v;
                mean /= static_cast<double>(s.size());

                json f;
                f["path"] = path;
                f["recipe"] = r.name;
                f["seed"] = r.config.seed.value;
                f["n_samples"] = g.dataset.size();
                f["rms_delay_spread_ns"] = {{"min", *lo * 1e9}, {"mean", mean * 1e9}, {"max", *hi * 1e9}};
                files.push_back(std::move(f));
            }
            auto manifest = run_record("generate", options_json(a));
            manifest["files"] = std::move(files);
            return dump(manifest);
        }

        std::string cmd_features(const FeaturesArgs &a)
        {
            require_file(a.input, "input dataset");
            const auto d = read_dataset(a.input);
            auto text = features_to_json(extract_features(d, a.workers));
            if (text.empty() || text.back() != '\n')
                text += '\n';
            return text;
        }

        std::string cmd_similarity(const SimilarityArgs &a)
        {
            dqa::SimilarityOptions opts;
            opts.features = parse_features(a.features);
            opts.distance = parse_distance(a.distance);
            opts.measure = parse_similarity(a.measure, a.p, a.bandwidth);
            opts.rule = parse_rule(a.rule, a.weights);
            opts.normalization = interpret([&] { return parse_normalization(a.normalization); });
            opts.normalize_inputs = a.normalize_inputs;
            require_format(a.format);
            require_file(a.x, "dataset X");
            require_file(a.y, "dataset Y");

            const auto x = read_dataset(a.x);
            const auto y = read_dataset(a.y);
            const auto r = similarity_report(x, y, opts, a.workers);
            return a.format == "json" ? to_json(r) + "\n" : quality_report_csv(r);
        }

        std::string cmd_diversity(const DiversityArgs &a)
        {
            DiversityOptions opts;
            opts.features = parse_features(a.features);
            const auto m = parse_diversity(a.measure, a.distance, a.bins, a.bandwidth, a.jitter, a.quality);
            opts.measures = diversity_measures(opts.features, m, a.bins);
            opts.rule = parse_rule(a.rule, a.weights);
            opts.normalization = interpret([&] { return parse_normalization(a.normalization); });
            opts.normalize_inputs = a.normalize_inputs;
            require_format(a.format);
            require_file(a.input, "input dataset");

            const auto d = read_dataset(a.input);
            const auto r = diversity_report(d, opts, a.workers);
            return a.format == "json" ? to_json(r) + "\n" : quality_report_csv(r);
        }

        std::vector<std::string> expand_glob(const std::string &pattern)
        {
            glob_t g{};
            const int rc = ::glob(pattern.c_str(), 0, nullptr, &g);
            std::vector<std::string> out;
            if (rc == 0)
                for (std::size_t i = 0; i < g.gl_pathc; ++i)
                    out.emplace_back(g.gl_pathv[i]);
            globfree(&g);
            if (rc != 0 && rc != GLOB_NOMATCH)
                throw IoError("glob '" + pattern + "' failed");
            return out;
        }

        std::string cmd_select(const SelectArgs &a)
        {
            dqa::SelectionOptions opts;
            opts.features = parse_features(a.features);
            opts.distance = parse_distance(a.distance);
            opts.measure = parse_similarity(a.measure, a.p, a.bandwidth);
            opts.rule = parse_rule(a.rule, a.weights);
            opts.k = a.k;
            opts.threshold = a.threshold;
            opts.normalize_inputs = a.normalize_inputs;
            require_format(a.format);
            require_file(a.reference, "reference dataset");
            if (a.candidates.empty())
                throw UsageError("--candidates is required");
            const auto paths = expand_glob(a.candidates);
            if (paths.empty())
                throw UsageError("no candidate dataset matches '" + a.candidates + "'");
            if (!opts.threshold && (opts.k < 1 || opts.k > paths.size()))
                throw UsageError("--k must lie in [1, " + std::to_string(paths.size()) + "]");
            for (const auto &p : paths)
                require_file(p, "candidate");

            const auto ref = read_dataset(a.reference);
            std::vector<Dataset> cands;
            cands.reserve(paths.size());
            for (const auto &p : paths)
                cands.push_back(read_dataset(p));
            const auto r = augment_select(ref, cands, opts, a.workers);

            if (a.format == "csv")
            {
                std::string s = "rank,candidate,path,aggregate,selected\n";
                const std::set<std::size_t> chosen(r.selected.begin(), r.selected.end());
                for (std::size_t i = 0; i < r.ranking.size(); ++i)
                {
                    const auto c = r.ranking[i];
                    s += std::to_string(i + 1) + "," + std::to_string(c) + "," + paths[c] + "," +
                         num(r.differences[c].aggregate) + "," + (chosen.count(c) ? "1" : "0") + "\n";
                }
                return s;
            }
            json j;
            j["schema_version"] = 1;
            j["type"] = "selection";
            j["reference"] = a.reference;
            j["candidates"] = paths;
            json selected = json::array();
            for (auto c : r.selected)
                selected.push_back(paths[c]);
            j["selected_paths"] = std::move(selected);
            j["result"] = json::parse(to_json(r));
            return dump(j);
        }

        struct SweepRow
        {
            std::size_t i = 0, j = 0; // j unused in diversity mode
            FeatureKind feature{};
            std::string measure;
            double raw = 0.0;
            double normalized = 0.0;
        };

        std::string cmd_sweep(const SweepArgs &a)
        {
            require_one_of(a.mode, {"pairs", "diversity"}, "mode");
            const auto features = parse_features(a.features);
            const bool pairs = a.mode == "pairs";
            std::optional<SimilarityMeasure> sim;
            std::map<FeatureKind, DiversityMeasure> div;
            const auto distance = parse_distance(a.distance);
            const std::string measure = !a.measure.empty() ? a.measure : pairs ? "wasserstein" : "distance";
            if (pairs)
                sim = parse_similarity(measure, a.p, a.bandwidth);
            else
                div = diversity_measures(features, parse_diversity(measure, a.distance, a.bins, a.bandwidth, a.jitter, a.quality),
                                         a.bins);
            require_format(a.format);

            std::error_code ec;
            if (a.corpus.empty() || !fs::is_directory(a.corpus, ec))
                throw UsageError("corpus '" + a.corpus + "' is not a directory");
            std::vector<fs::path> files;
            for (const auto &e : fs::directory_iterator(a.corpus))
                if (e.is_regular_file() && e.path().extension() == ".csid")
                    files.push_back(e.path());
            std::sort(files.begin(), files.end());
            if (files.size() < (pairs ? 2u : 1u))
                throw UsageError("corpus '" + a.corpus + "' holds too few .csid files");

            std::vector<std::string> names;
            std::vector<std::vector<FeatureBundle>> bundles(files.size());
            for (const auto &f : files)
                names.push_back(f.stem().string());
            {
                std::vector<Dataset> data;
                for (const auto &f : files)
                    data.push_back(read_dataset(f));
                parallel_for(files.size(), a.workers, [&](std::size_t i) { bundles[i] = extract_features(data[i], 1); });
            }

            std::vector<std::pair<std::size_t, std::size_t>> jobs;
            for (std::size_t i = 0; i < files.size(); ++i)
                if (pairs)
                    for (std::size_t j = i + 1; j < files.size(); ++j)
                        jobs.emplace_back(i, j);
                else
                    jobs.emplace_back(i, i);

            std::vector<SweepRow> rows(jobs.size() * features.size());
            parallel_for(jobs.size(), a.workers, [&](std::size_t n)
                         {
                const auto [i, j] = jobs[n];
                for (std::size_t k = 0; k < features.size(); ++k)
                {
                    const auto f = features[k];
                    auto &row = rows[n * features.size() + k];
                    row.i = i;
                    row.j = j;
                    row.feature = f;
                    if (pairs)
                    {
                        row.measure = measure_name(*sim);
                        row.raw = set_difference(feature_values(bundles[i], f), feature_values(bundles[j], f), distance, *sim, 1);
                    }
                    else
                    {
                        row.measure = measure_name(div.at(f));
                        row.raw = feature_diversity(feature_values(bundles[i], f), f, div.at(f), 1);
                    }
                } });

            // Min-max per (feature, measure) column over all rows.
            std::map<std::pair<FeatureKind, std::string>, std::vector<std::size_t>> columns;
            for (std::size_t r = 0; r < rows.size(); ++r)
                columns[{rows[r].feature, rows[r].measure}].push_back(r);
            for (const auto &[key, members] : columns)
            {
                std::vector<double> raw;
                for (auto r : members)
                    raw.push_back(rows[r].raw);
                const auto norm = normalize_scores(raw);
                for (std::size_t m = 0; m < members.size(); ++m)
                    rows[members[m]].normalized = norm[m];
            }

            if (a.format == "json")
            {
                json arr = json::array();
                for (const auto &r : rows)
                {
                    json o;
                    if (pairs)
                    {
                        o["dataset_i"] = names[r.i];
                        o["dataset_j"] = names[r.j];
                    }
                    else
                        o["dataset"] = names[r.i];
                    o["feature"] = to_string(r.feature);
                    o["measure"] = r.measure;
                    o["raw"] = r.raw;
                    o["normalized"] = r.normalized;
                    arr.push_back(std::move(o));
                }
                return dump(arr);
            }
            std::string s = pairs ? "dataset_i,dataset_j,feature,measure,raw,normalized\n"
                                  : "dataset,feature,measure,raw,normalized\n";
            for (const auto &r : rows)
            {
                s += names[r.i] + ",";
                if (pairs)
                    s += names[r.j] + ",";
                s += std::string(to_string(r.feature)) + "," + r.measure + "," + num(r.raw) + "," + num(r.normalized) + "\n";
            }
            return s;
        }

        // ---- dispatch -------------------------------------------------------------

        template <class A>
        std::string execute(const A &a);
        template <>
        std::string execute(const GenerateArgs &a) { return cmd_generate(a); }
        template <>
        std::string execute(const FeaturesArgs &a) { return cmd_features(a); }
        template <>
        std::string execute(const SimilarityArgs &a) { return cmd_similarity(a); }
        template <>
        std::string execute(const DiversityArgs &a) { return cmd_diversity(a); }
        template <>
        std::string execute(const SelectArgs &a) { return cmd_select(a); }
        template <>
        std::string execute(const SweepArgs &a) { return cmd_sweep(a); }

        // generate prints its manifest; everything else writes to --out when given.
        template <class A>
        void run_command(const std::string &name, const A &a, const std::string &manifest_out, std::ostream &out)
        {
            if (!manifest_out.empty())
                emit(dump(run_record(name, options_json(a))), manifest_out, out);
            const auto payload = execute(a);
            if constexpr (std::is_same_v<A, GenerateArgs>)
                out << payload;
            else
                emit(payload, a.out, out);
        }

        void replay_manifest(const std::string &path, std::ostream &out)
        {
            require_file(path, "manifest");
            std::ifstream f(path, std::ios::binary);
            const std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
            json j;
            try
            {
                j = json::parse(text);
            }
            catch (const json::parse_error &e)
            {
                throw UsageError("manifest '" + path + "': " + e.what());
            }
            if (!j.is_object() || !j.contains("schema_version") || j["schema_version"] != 1)
                throw UsageError("manifest '" + path + "': expected an object with \"schema_version\": 1");
            if (!j.contains("command") || !j["command"].is_string() || !j.contains("options"))
                throw UsageError("manifest '" + path + "': missing \"command\" or \"options\"");
            const std::string command = j["command"];
            for (const auto &item : j.items())
                if (item.key() != "schema_version" && item.key() != "command" && item.key() != "options" &&
                    !(item.key() == "files" && command == "generate"))
                    throw UsageError("manifest '" + path + "': unknown key '" + item.key() + "'");

            const auto &o = j["options"];
            if (command == "generate")
                run_command(command, options_from_json<GenerateArgs>(o), "", out);
            else if (command == "features")
                run_command(command, options_from_json<FeaturesArgs>(o), "", out);
            else if (command == "similarity")
                run_command(command, options_from_json<SimilarityArgs>(o), "", out);
            else if (command == "diversity")
                run_command(command, options_from_json<DiversityArgs>(o), "", out);
            else if (command == "select")
                run_command(command, options_from_json<SelectArgs>(o), "", out);
            else if (command == "sweep")
                run_command(command, options_from_json<SweepArgs>(o), "", out);
            else
                throw UsageError("manifest '" + path + "': unknown command '" + command + "'");
        }

        void add_common(CLI::App *c, std::string &out, unsigned &workers, std::string &manifest_out)
        {
            c->add_option("--out,-o", out, "Output file (default: standard output)");
            c->add_option("--workers,-j", workers, "Worker threads, 0 = all cores")->capture_default_str();
            c->add_option("--manifest-out", manifest_out, "Write the resolved options as a replayable manifest");
        }
    }

    int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
    {
        CLI::App app{"Data quality assessment for wireless channel datasets", "dqa"};
        app.require_subcommand(1);
        app.set_version_flag("--version", "dqa 0.1.0");
        std::string manifest_out;

        GenerateArgs ga;
        auto *gen = app.add_subcommand("generate", "Synthesize datasets (CSID files) and print a manifest");
        gen->add_option("--preset", ga.preset, "appendix-a | appendix-b-pool | appendix-c-grid | uma-proxy");
        gen->add_option("--seed", ga.seed, "Master seed")->capture_default_str();
        gen->add_option("--out,-o", ga.out, "Output directory");
        gen->add_option("--samples,-n", ga.samples, "Samples per dataset (default 200)");
        gen->add_option("--datasets", ga.datasets, "Dataset count (appendix-a: 10, appendix-b-pool: 100)");
        gen->add_option("--width-ns", ga.width_ns, "RMS delay spread window width (appendix-a)")->capture_default_str();
        gen->add_option("--snapshots", ga.snapshots, "Snapshots per sample")->capture_default_str();
        gen->add_option("--antenna-grid", ga.antenna_grid, "Array as NvxNh (default 8x8, pool/grid/uma presets 2x8)");
        gen->add_option("--speed", ga.speed_mps, "User speed in m/s")->capture_default_str();
        gen->add_option("--name", ga.name, "Dataset name without a preset")->capture_default_str();
        gen->add_option("--paths", ga.paths, "Path count range lo,hi");
        gen->add_option("--delay-ns", ga.delay_ns, "Path delay range lo,hi");
        gen->add_option("--aod-deg", ga.aod_deg, "AOD range lo,hi");
        gen->add_option("--zod-deg", ga.zod_deg, "ZOD range lo,hi");
        gen->add_option("--rms-window", ga.rms_window, "RMS delay spread window offset,width in ns");
        gen->add_option("--workers,-j", ga.workers, "Worker threads, 0 = all cores")->capture_default_str();
        gen->add_option("--manifest-out", manifest_out, "Write the resolved options as a replayable manifest");

        FeaturesArgs fa;
        auto *feat = app.add_subcommand("features", "Extract PDP/APS/Doppler features to a JSON cache");
        feat->add_option("input", fa.input, "Dataset (CSID)")->required();
        add_common(feat, fa.out, fa.workers, manifest_out);

        SimilarityArgs sa;
        auto *sim = app.add_subcommand("similarity", "Per-feature difference between two datasets");
        sim->add_option("x", sa.x, "Dataset X (CSID)")->required();
        sim->add_option("y", sa.y, "Dataset Y (CSID)")->required();
        sim->add_option("--measure", sa.measure, "mean | mmd | nnca | wasserstein")->capture_default_str();
        sim->add_option("--p", sa.p, "Wasserstein order")->capture_default_str();
        sim->add_option("--bandwidth", sa.bandwidth, "MMD bandwidth or 'median'")->capture_default_str();
        sim->add_option("--distance", sa.distance, "euclidean | gmc | ecs")->capture_default_str();
        sim->add_option("--features", sa.features, "Comma separated features")->capture_default_str();
        sim->add_option("--rule", sa.rule, "min | max | average")->capture_default_str();
        sim->add_option("--weights", sa.weights, "Average weights, e.g. pdp=0.5,aps=0.5");
        sim->add_option("--normalization", sa.normalization, "across-features | raw")->capture_default_str();
        sim->add_flag("--normalize-inputs", sa.normalize_inputs, "Divide every sample by its max entry");
        sim->add_option("--format", sa.format, "json | csv")->capture_default_str();
        add_common(sim, sa.out, sa.workers, manifest_out);

        DiversityArgs da;
        auto *div = app.add_subcommand("diversity", "Per-feature diversity of one dataset");
        div->add_option("input", da.input, "Dataset (CSID)")->required();
        div->add_option("--measure", da.measure, "Spectrum measure: distance | dpp | compression (sparsities use entropy)")
            ->capture_default_str();
        div->add_option("--distance", da.distance, "euclidean | gmc | ecs")->capture_default_str();
        div->add_option("--bins", da.bins, "Entropy histogram bins")->capture_default_str();
        div->add_option("--bandwidth", da.bandwidth, "DPP bandwidth or 'median'")->capture_default_str();
        div->add_option("--jitter", da.jitter, "DPP diagonal jitter")->capture_default_str();
        div->add_option("--quality", da.quality, "JPEG quality for compression")->capture_default_str();
        div->add_option("--features", da.features, "Comma separated features")->capture_default_str();
        div->add_option("--rule", da.rule, "min | max | average")->capture_default_str();
        div->add_option("--weights", da.weights, "Average weights, e.g. pdp=0.5,aps=0.5");
        div->add_option("--normalization", da.normalization, "across-features | raw")->capture_default_str();
        div->add_flag("--normalize-inputs", da.normalize_inputs, "Divide every sample by its max entry");
        div->add_option("--format", da.format, "json | csv")->capture_default_str();
        add_common(div, da.out, da.workers, manifest_out);

        SelectArgs sel;
        double threshold = 0.0;
        auto *selc = app.add_subcommand("select", "Rank candidate datasets by difference to a reference");
        selc->add_option("reference", sel.reference, "Reference dataset (CSID)")->required();
        selc->add_option("--candidates", sel.candidates, "Glob pattern of candidate datasets")->required();
        selc->add_option("--k", sel.k, "Number of candidates to select")->capture_default_str();
        auto *threshold_opt = selc->add_option("--threshold", threshold, "Select every candidate at or below this aggregate");
        selc->add_option("--measure", sel.measure, "mean | mmd | nnca | wasserstein")->capture_default_str();
        selc->add_option("--p", sel.p, "Wasserstein order")->capture_default_str();
        selc->add_option("--bandwidth", sel.bandwidth, "MMD bandwidth or 'median'")->capture_default_str();
        selc->add_option("--distance", sel.distance, "euclidean | gmc | ecs")->capture_default_str();
        selc->add_option("--features", sel.features, "Comma separated features")->capture_default_str();
        selc->add_option("--rule", sel.rule, "min | max | average")->capture_default_str();
        selc->add_option("--weights", sel.weights, "Average weights, e.g. pdp=0.5,aps=0.5");
        selc->add_flag("--normalize-inputs", sel.normalize_inputs, "Divide every sample by its max entry");
        selc->add_option("--format", sel.format, "json | csv")->capture_default_str();
        add_common(selc, sel.out, sel.workers, manifest_out);

        SweepArgs sw;
        auto *sweep = app.add_subcommand("sweep", "Long-form table over all datasets of a corpus directory");
        sweep->add_option("corpus", sw.corpus, "Directory of .csid files")->required();
        sweep->add_option("--mode", sw.mode, "pairs | diversity")->capture_default_str();
        sweep->add_option("--measure", sw.measure, "Similarity (pairs, default wasserstein) or diversity measure (default distance)");
        sweep->add_option("--p", sw.p, "Wasserstein order")->capture_default_str();
        sweep->add_option("--bandwidth", sw.bandwidth, "Kernel bandwidth or 'median'")->capture_default_str();
        sweep->add_option("--distance", sw.distance, "euclidean | gmc | ecs")->capture_default_str();
        sweep->add_option("--bins", sw.bins, "Entropy histogram bins")->capture_default_str();
        sweep->add_option("--jitter", sw.jitter, "DPP diagonal jitter")->capture_default_str();
        sweep->add_option("--quality", sw.quality, "JPEG quality for compression")->capture_default_str();
        sweep->add_option("--features", sw.features, "Comma separated features")->capture_default_str();
        sweep->add_option("--format", sw.format, "csv | json")->capture_default_str();
        add_common(sweep, sw.out, sw.workers, manifest_out);

        std::string manifest_in;
        auto *rep = app.add_subcommand("replay", "Run a command again from a manifest");
        rep->add_option("manifest", manifest_in, "Manifest JSON")->required();

        try
        {
            auto rev = args;
            std::reverse(rev.begin(), rev.end());
            app.parse(rev);
        }
        catch (const CLI::ParseError &e)
        {
            const int code = app.exit(e, out, err);
            return code == 0 ? exit_ok : exit_usage;
        }

        try
        {
            if (threshold_opt->count() > 0)
                sel.threshold = threshold;
            if (gen->parsed())
                run_command("generate", ga, manifest_out, out);
            else if (feat->parsed())
                run_command("features", fa, manifest_out, out);
            else if (sim->parsed())
                run_command("similarity", sa, manifest_out, out);
            else if (div->parsed())
                run_command("diversity", da, manifest_out, out);
            else if (selc->parsed())
                run_command("select", sel, manifest_out, out);
            else if (sweep->parsed())
                run_command("sweep", sw, manifest_out, out);
            else
                replay_manifest(manifest_in, out);
            return exit_ok;
        }
        catch (const UsageError &e)
        {
            err << "dqa: usage error: " << e.what() << "\n";
            return exit_usage;
        }
        catch (const std::exception &e)
        {
            err << "dqa: error: " << e.what() << "\n";
            return exit_failure;
        }
    }
}
