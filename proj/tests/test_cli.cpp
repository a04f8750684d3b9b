// SPDX-License-Identifier: Apache-2.0
//
// syncloc: joint localization and clock synchronization for asynchronous
// sensor networks
// Copyright (C) 2026 The syncloc Authors
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

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace syncloc;

namespace
{

struct Result
{
    int code;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& body)
{
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream(path) << body;
    return path.string();
}

} // namespace

TEST_CASE("run writes a deterministic table")
{
    const std::string config = write_temp("syncloc_cli_run.json", R"({"sigmas": [1e-12], "trials": 5})");
    const Result first = invoke({"run", "--config", config});
    REQUIRE(first.code == cli::kSuccess);
    CHECK(first.out.find("sigma,protocol,estimator") != std::string::npos);
    CHECK(first.out.find("# trials=5") != std::string::npos);

    const Result second = invoke({"run", "--config", config, "--jobs", "2"});
    CHECK(second.out == first.out);

    const auto out_path = (std::filesystem::temp_directory_path() / "syncloc_cli_run.csv").string();
    REQUIRE(invoke({"run", "--config", config, "--out", out_path}).code == cli::kSuccess);
    std::ifstream file(out_path, std::ios::binary);
    std::stringstream contents;
    contents << file.rdbuf();
    CHECK(contents.str() == first.out);
}

TEST_CASE("config problems exit with 1")
{
    const std::string bad_k = write_temp("syncloc_cli_k2.json", R"({"timestamps": 2})");
    const Result k2 = invoke({"run", "--config", bad_k});
    CHECK(k2.code == cli::kConfigError);
    CHECK(k2.err.find("K >= 3") != std::string::npos);
    CHECK(k2.out.empty());

    const std::string ok = write_temp("syncloc_cli_ok.json", "{}");
    CHECK(invoke({"run", "--config", ok, "--set", "timestamps=2"}).code == cli::kConfigError);
    CHECK(invoke({"run", "--config", "/nonexistent.json"}).code == cli::kConfigError);
    CHECK(invoke({"run"}).code == cli::kConfigError);
    CHECK(invoke({}).code == cli::kConfigError);
    CHECK(invoke({"frobnicate"}).code == cli::kConfigError);
    CHECK(invoke({"diagnose", "--config", ok, "--seed", "1"}).code == cli::kConfigError);
    CHECK(invoke({"diagnose", "--config", ok, "--seed", "1", "--sigma", "-1"}).code == cli::kConfigError);
}

TEST_CASE("diagnose reports estimates and bounds")
{
    const std::string config = write_temp("syncloc_cli_diag.json", R"({"protocols": ["two-way"]})");
    const auto dump = (std::filesystem::temp_directory_path() / "syncloc_cli_dump.csv").string();
    const Result r = invoke({"diagnose", "--config", config, "--sigma", "1e-4", "--seed", "5", "--dump-system", dump});
    REQUIRE(r.code == cli::kSuccess);
    CHECK(r.out.find("protocol two-way (50 rows)") != std::string::npos);
    CHECK(r.out.find("skew[4]") != std::string::npos);
    CHECK(r.out.find("x0[1]") != std::string::npos);
    CHECK(r.out.find("rcrlb position=") != std::string::npos);

    std::ifstream file(dump);
    std::string line;
    std::size_t lines = 0;
    while (std::getline(file, line))
        ++lines;
    CHECK(lines == 51);

    const Result noiseless = invoke({"diagnose", "--config", config, "--sigma", "0", "--seed", "5"});
    CHECK(noiseless.code == cli::kSuccess);
    CHECK(noiseless.out.find("rcrlb position=") == std::string::npos);
}

TEST_CASE("rank-check shows the squared model is rank deficient")
{
    const std::string config = write_temp("syncloc_cli_rank.json", "{}");
    const Result r = invoke({"rank-check", "--config", config});
    REQUIRE(r.code == cli::kSuccess);
    CHECK(r.out.find("protocol=two-way rows=50 columns=225") != std::string::npos);
    CHECK(r.out.find("protocol=atpl rows=250 columns=225") != std::string::npos);
    CHECK(r.out.find("left_invertible=yes") == std::string::npos);
}
