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

#include "cli.hpp"
#include "dqa/dataset.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <unistd.h>

namespace fs = std::filesystem;
using dqa::cli::run;

namespace
{
    struct TempDir
    {
        fs::path path;
        TempDir()
        {
            path = fs::temp_directory_path() / ("dqa_cli_test_" + std::to_string(::getpid()));
            fs::remove_all(path);
            fs::create_directories(path);
        }
        ~TempDir() { fs::remove_all(path); }
        std::string operator/(const std::string &name) const { return (path / name).string(); }
    };

    struct Result
    {
        int code = -1;
        std::string out, err;
    };

    Result dqa_run(std::vector<std::string> args)
    {
        std::ostringstream out, err;
        Result r;
        r.code = run(args, out, err);
        r.out = out.str();
        r.err = err.str();
        return r;
    }

    std::string slurp(const std::string &path)
    {
        std::ifstream f(path, std::ios::binary);
        return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
    }

    std::size_t count_lines(const std::string &s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }
}

TEST_CASE("cli - Generate appendix-a")
{
    TempDir tmp;
    const auto r = dqa_run({"generate", "--preset", "appendix-a", "--samples", "12", "--out", tmp / "a", "--seed", "3"});
    REQUIRE(r.code == 0);
    CHECK(r.err.empty());
    const auto manifest = nlohmann::json::parse(r.out);
    REQUIRE(manifest["files"].size() == 10);
    CHECK(manifest["command"] == "generate");
    for (std::size_t i = 0; i < 10; ++i)
    {
        const auto path = tmp / ("a/appendix-a-" + std::to_string(i) + ".csid");
        CHECK(fs::exists(path));
        CHECK(dqa::read_dataset(path).size() == 12);
    }
    const double lo = manifest["files"][3]["rms_delay_spread_ns"]["min"];
    const double hi = manifest["files"][3]["rms_delay_spread_ns"]["max"];
    CHECK((lo >= 1200.0 && hi <= 3200.0));

    // Same seed, same bytes
    const auto again = dqa_run({"generate", "--preset", "appendix-a", "--samples", "12", "--out", tmp / "b", "--seed", "3"});
    REQUIRE(again.code == 0);
    for (std::size_t i = 0; i < 10; ++i)
        CHECK(slurp(tmp / ("a/appendix-a-" + std::to_string(i) + ".csid")) ==
              slurp(tmp / ("b/appendix-a-" + std::to_string(i) + ".csid")));

    // Printed manifest replays to identical output
    std::ofstream(tmp / "m.json") << r.out;
    const auto replay = dqa_run({"replay", tmp / "m.json"});
    CHECK(replay.code == 0);
    CHECK(replay.out == r.out);
}

TEST_CASE("cli - Usage errors")
{
    TempDir tmp;
    auto r = dqa_run({"generate", "--preset", "appendix-a"});
    CHECK(r.code == 2);
    CHECK(r.err.find("--out") != std::string::npos);
    CHECK(r.out.empty());

    CHECK(dqa_run({"generate", "--preset", "appendix-z", "--out", tmp / "x"}).code == 2);
    CHECK(dqa_run({"generate", "--preset", "uma-proxy", "--paths", "1,3", "--out", tmp / "x"}).code == 2);
    CHECK(dqa_run({"generate", "--out", tmp / "x", "--aod-deg", "-100,0"}).code == 2);
    CHECK(dqa_run({}).code == 2);
    CHECK(dqa_run({"frobnicate"}).code == 2);
    CHECK(dqa_run({"similarity", tmp / "missing.csid", tmp / "missing.csid"}).code == 2);

    const auto gen = dqa_run({"generate", "--out", tmp / "g", "--samples", "4", "--paths", "2,4"});
    REQUIRE(gen.code == 0);
    const auto file = tmp / "g/custom.csid";
    r = dqa_run({"similarity", file, file, "--measure", "kl"});
    CHECK(r.code == 2);
    CHECK(r.err.find("mean, mmd, nnca, wasserstein") != std::string::npos);
    CHECK(dqa_run({"similarity", file, file, "--features", "pdp,pdp"}).code == 2);
    CHECK(dqa_run({"similarity", file, file, "--distance", "manhattan"}).code == 2);
    CHECK(dqa_run({"similarity", file, file, "--format", "xml"}).code == 2);
    CHECK(dqa_run({"similarity", file, file, "--rule", "max", "--weights", "pdp=1"}).code == 2);
    CHECK(dqa_run({"diversity", file, "--measure", "entropy"}).code == 2);
    CHECK(dqa_run({"select", file, "--candidates", tmp / "none/*.csid"}).code == 2);
    CHECK(dqa_run({"select", file, "--candidates", tmp / "g/*.csid", "--k", "2"}).code == 2);
    CHECK(dqa_run({"sweep", tmp / "nowhere"}).code == 2);

    // Computation errors exit 1: Doppler of single-snapshot data
    r = dqa_run({"similarity", file, file, "--features", "doppler"});
    CHECK(r.code == 1);
    CHECK_FALSE(r.err.empty());

    // Corrupt file
    std::ofstream(tmp / "bad.csid") << "CSIDgarbage";
    CHECK(dqa_run({"features", tmp / "bad.csid"}).code == 1);

    r = dqa_run({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("similarity") != std::string::npos);
}

TEST_CASE("cli - Similarity, diversity and features")
{
    TempDir tmp;
    REQUIRE(dqa_run({"generate", "--preset", "appendix-a", "--samples", "30", "--out", tmp / "a"}).code == 0);
    const auto near = tmp / "a/appendix-a-0.csid";
    const auto far = tmp / "a/appendix-a-9.csid";

    auto r = dqa_run({"similarity", near, near, "--normalization", "raw"});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["aggregate"].get<double>() == 0.0);

    r = dqa_run({"similarity", near, far, "--measure", "nnca", "--features", "pdp", "--normalization", "raw"});
    REQUIRE(r.code == 0);
    j = nlohmann::json::parse(r.out);
    CHECK(j["per_feature"]["pdp"].get<double>() >= 0.9);

    r = dqa_run({"similarity", near, far, "--format", "csv", "--out", tmp / "s.csv"});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    const auto csv = slurp(tmp / "s.csv");
    CHECK(csv.rfind("feature,raw,normalized\n", 0) == 0);
    CHECK(count_lines(csv) == 6);

    r = dqa_run({"diversity", near, "--measure", "dpp", "--jitter", "1e-6"});
    REQUIRE(r.code == 0);
    j = nlohmann::json::parse(r.out);
    CHECK(j["method_config"]["measures"]["pdp"]["name"] == "dpp");
    CHECK(j["method_config"]["measures"]["pdp-sparsity"]["name"] == "entropy");

    r = dqa_run({"features", near, "--out", tmp / "f.json"});
    REQUIRE(r.code == 0);
    CHECK(nlohmann::json::parse(slurp(tmp / "f.json")).size() == 30);

    // --manifest-out then replay reproduces the output file bytes
    r = dqa_run({"diversity", far, "--measure", "compression", "--manifest-out", tmp / "d.json", "--out", tmp / "d1.json"});
    REQUIRE(r.code == 0);
    const auto first = slurp(tmp / "d1.json");
    fs::remove(tmp / "d1.json");
    REQUIRE(dqa_run({"replay", tmp / "d.json"}).code == 0);
    CHECK(slurp(tmp / "d1.json") == first);

    // Manifests with unknown keys are rejected
    auto m = nlohmann::json::parse(slurp(tmp / "d.json"));
    m["options"]["colour"] = "blue";
    std::ofstream(tmp / "bad.json") << m.dump();
    CHECK(dqa_run({"replay", tmp / "bad.json"}).code == 2);
}

TEST_CASE("cli - Sweep and select")
{
    TempDir tmp;
    REQUIRE(dqa_run({"generate", "--preset", "appendix-a", "--samples", "6", "--out", tmp / "a"}).code == 0);
    auto r = dqa_run({"sweep", tmp / "a", "--features", "pdp", "--workers", "2"});
    REQUIRE(r.code == 0);
    CHECK(count_lines(r.out) == 46); // header + C(10, 2) pairs
    CHECK(r.out.rfind("dataset_i,dataset_j,feature,measure,raw,normalized\n", 0) == 0);
    CHECK(dqa_run({"sweep", tmp / "a", "--features", "pdp", "--workers", "1"}).out == r.out);

    r = dqa_run({"sweep", tmp / "a", "--mode", "diversity", "--features", "pdp,pdp-sparsity"});
    REQUIRE(r.code == 0);
    CHECK(count_lines(r.out) == 21);

    REQUIRE(dqa_run({"generate", "--preset", "appendix-b-pool", "--samples", "4", "--out", tmp / "b"}).code == 0);
    r = dqa_run({"select", tmp / "b/appendix-b-0.csid", "--candidates", tmp / "b/*.csid", "--k", "25"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["candidates"].size() == 100);
    CHECK(j["selected_paths"].size() == 25);
    // The reference itself is among the candidates and ranks first
    CHECK(j["selected_paths"][0] == tmp / "b/appendix-b-0.csid");

    r = dqa_run({"select", tmp / "b/appendix-b-0.csid", "--candidates", tmp / "b/*.csid", "--threshold", "0.2",
                 "--format", "csv"});
    REQUIRE(r.code == 0);
    CHECK(count_lines(r.out) == 101);
}
