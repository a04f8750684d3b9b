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

#include "syncloc/config.hpp"
#include "syncloc/errors.hpp"
#include "syncloc/harness.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>

using namespace syncloc;

TEST_CASE("empty config resolves to defaults")
{
    for (const char* text : {"", "{}", "  {\n}\n"})
    {
        const ExperimentConfig c = parse_config_text(text);
        const ExperimentConfig d;
        CHECK(c.anchors == d.anchors);
        CHECK(c.dimension == d.dimension);
        CHECK(c.deploy_range == d.deploy_range);
        CHECK(c.skew_ppm == d.skew_ppm);
        CHECK(c.offset_range == d.offset_range);
        CHECK(c.observation_window == d.observation_window);
        CHECK(c.timestamps == d.timestamps);
        CHECK(c.wave_speed == d.wave_speed);
        CHECK(c.sigmas == d.sigmas);
        CHECK(c.protocols == d.protocols);
        CHECK(c.estimators == d.estimators);
        CHECK(c.trials == d.trials);
        CHECK(c.master_seed == d.master_seed);
    }
    const ExperimentConfig d;
    CHECK(d.anchors == 5);
    CHECK(d.timestamps == 10);
    CHECK(d.trials == 1000);
    CHECK(d.wave_speed == 300.0);
}

TEST_CASE("file values are read")
{
    const ExperimentConfig c = parse_config_text(R"({
        "anchors": 6, "dimension": 3, "deploy_range": 50, "skew_ppm": 20,
        "offset_range": 0.5, "observation_window": 40, "timestamps": 6,
        "wave_speed": 1500, "sigmas": [1e-3, 1e-6], "protocols": ["atpl"],
        "estimators": ["joint", "two-step"], "trials": 12, "master_seed": 99
    })");
    CHECK(c.anchors == 6);
    CHECK(c.dimension == 3);
    CHECK(c.deploy_range == 50.0);
    CHECK(c.skew_ppm == 20.0);
    CHECK(c.offset_range == 0.5);
    CHECK(c.observation_window == 40.0);
    CHECK(c.timestamps == 6);
    CHECK(c.wave_speed == 1500.0);
    CHECK(c.sigmas == std::vector<double>{1e-3, 1e-6});
    CHECK(c.protocols == std::vector<Protocol>{Protocol::Atpl});
    CHECK(c.estimators == std::vector<Estimator>{Estimator::Joint, Estimator::TwoStep});
    CHECK(c.trials == 12);
    CHECK(c.master_seed == 99);
}

TEST_CASE("K = 2 is rejected with the constraint in the message")
{
    try
    {
        (void)parse_config_text(R"({"timestamps": 2})");
        FAIL("expected ConfigError");
    }
    catch (const ConfigError& e)
    {
        CHECK(e.field() == "timestamps");
        CHECK(std::string(e.what()).find("K >= 3") != std::string::npos);
    }
    CHECK_THROWS_AS((void)parse_config_text("{}", {"timestamps=2"}), ConfigError);
}

TEST_CASE("overrides win over file values")
{
    const ExperimentConfig c = parse_config_text(R"({"trials": 1000})", {"trials=50"});
    CHECK(c.trials == 50);

    const ExperimentConfig lists =
        parse_config_text("{}", {"sigmas=1e-3,1e-4", "protocols=atpl", "estimators=[\"joint\"]", "master_seed=3"});
    CHECK(lists.sigmas == std::vector<double>{1e-3, 1e-4});
    CHECK(lists.protocols == std::vector<Protocol>{Protocol::Atpl});
    CHECK(lists.estimators == std::vector<Estimator>{Estimator::Joint});
    CHECK(lists.master_seed == 3);

    CHECK(parse_config_text("{}", {"sigmas=0.5"}).sigmas == std::vector<double>{0.5});
    // later overrides replace earlier ones
    CHECK(parse_config_text("{}", {"trials=5", "trials=7"}).trials == 7);
}

TEST_CASE("malformed input is a ConfigError")
{
    CHECK_THROWS_AS((void)parse_config_text("{\"anchors\": "), ConfigError);
    CHECK_THROWS_AS((void)parse_config_text("[1, 2]"), ConfigError);
    CHECK_THROWS_AS((void)parse_config_text(R"({"anchor": 5})"), ConfigError);
    CHECK_THROWS_AS((void)parse_config_text(R"({"anchors": "five"})"), ConfigError);
    CHECK_THROWS_AS((void)parse_config_text(R"({"anchors": -1})"), ConfigError);
    CHECK_THROWS_AS((void)parse_config_text(R"({"trials": 1.5})"), ConfigError);
    CHECK_THROWS_AS((void)parse_config_text(R"({"protocols": ["tdoa"]})"), ConfigError);
    CHECK_THROWS_AS((void)parse_config_text(R"({"estimators": []})"), ConfigError);
    CHECK_THROWS_AS((void)parse_config_text(R"({"sigmas": [1e-3, -1]})"), ConfigError);
    CHECK_THROWS_AS((void)parse_config_text(R"({"anchors": 2})"), ConfigError);
    CHECK_THROWS_AS((void)parse_config_text(R"({"dimension": 4})"), ConfigError);
    CHECK_THROWS_AS((void)parse_config_text("{}", {"trials"}), ConfigError);
    CHECK_THROWS_AS((void)parse_config_text("{}", {"bogus=1"}), ConfigError);
    CHECK_THROWS_AS((void)parse_config(std::filesystem::path("/nonexistent/syncloc.json")), ConfigError);
}

TEST_CASE("unknown key names the field")
{
    try
    {
        (void)parse_config_text(R"({"anchors": 5, "sigma": 1})");
        FAIL("expected ConfigError");
    }
    catch (const ConfigError& e)
    {
        CHECK(e.field() == "sigma");
    }
}

TEST_CASE("config files round-trip through describe_config")
{
    const auto path = std::filesystem::temp_directory_path() / "syncloc_test_config.json";
    {
        std::ofstream f(path);
        f << R"({"anchors": 4, "sigmas": [0.01], "protocols": ["two-way"]})";
    }
    const ExperimentConfig c = parse_config(path, {"trials=3"});
    std::filesystem::remove(path);

    const auto pairs = describe_config(c);
    REQUIRE(pairs.size() == 13);
    CHECK(pairs.front().first == "anchors");
    CHECK(pairs.front().second == "4");
    CHECK(pairs.back().first == "master_seed");

    std::string rebuilt = "{";
    for (std::size_t i = 0; i < pairs.size(); ++i)
        rebuilt += (i ? "," : "") + ("\"" + pairs[i].first + "\":" + pairs[i].second);
    rebuilt += "}";
    const ExperimentConfig again = parse_config_text(rebuilt);
    CHECK(describe_config(again) == pairs);
}
