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

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <sstream>

namespace syncloc
{

namespace
{

using nlohmann::json;

constexpr std::array kKnownKeys{"anchors",  "dimension",  "deploy_range", "skew_ppm",   "offset_range",
                                "observation_window", "timestamps", "wave_speed", "sigmas",
                                "protocols", "estimators", "trials",   "master_seed"};

std::vector<std::string> split_list(const std::string& text)
{
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');)
    {
        const auto first = item.find_first_not_of(" \t");
        const auto last = item.find_last_not_of(" \t");
        if (first != std::string::npos)
            parts.push_back(item.substr(first, last - first + 1));
    }
    return parts;
}

std::size_t as_count(const json& v, const std::string& key)
{
    if (v.is_number_unsigned())
        return v.get<std::size_t>();
    if (v.is_number_integer())
        throw ConfigError(key, "must be non-negative, got " + v.dump());
    if (v.is_number_float())
    {
        const double d = v.get<double>();
        if (d >= 0.0 && std::floor(d) == d && d < 1e15)
            return static_cast<std::size_t>(d);
    }
    throw ConfigError(key, "expected a non-negative integer, got " + v.dump());
}

double as_real(const json& v, const std::string& key)
{
    if (!v.is_number())
        throw ConfigError(key, "expected a number, got " + v.dump());
    return v.get<double>();
}

// A list key accepts a JSON array, a single scalar, or a comma-separated string.
std::vector<json> as_list(const json& v)
{
    if (v.is_array())
        return {v.begin(), v.end()};
    if (v.is_string())
    {
        std::vector<json> items;
        for (const auto& part : split_list(v.get<std::string>()))
        {
            const json parsed = json::parse(part, nullptr, false);
            items.push_back(parsed.is_discarded() ? json(part) : parsed);
        }
        return items;
    }
    return {v};
}

template <typename Enum, typename Parse>
std::vector<Enum> as_enum_list(const json& v, const std::string& key, Parse parse)
{
    std::vector<Enum> out;
    for (const json& item : as_list(v))
    {
        if (!item.is_string())
            throw ConfigError(key, "expected names, got " + item.dump());
        try
        {
            out.push_back(parse(item.get<std::string>()));
        }
        catch (const InvalidInput& e)
        {
            throw ConfigError(key, e.what());
        }
    }
    return out;
}

ExperimentConfig from_json(const json& doc)
{
    if (!doc.is_object())
        throw ConfigError("", "config must be a JSON object");
    for (const auto& [key, value] : doc.items())
        if (std::find(kKnownKeys.begin(), kKnownKeys.end(), key) == kKnownKeys.end())
            throw ConfigError(key, "unknown key");

    ExperimentConfig c;
    const auto has = [&](const char* key) { return doc.contains(key); };
    if (has("anchors"))
        c.anchors = as_count(doc["anchors"], "anchors");
    if (has("dimension"))
        c.dimension = as_count(doc["dimension"], "dimension");
    if (has("deploy_range"))
        c.deploy_range = as_real(doc["deploy_range"], "deploy_range");
    if (has("skew_ppm"))
        c.skew_ppm = as_real(doc["skew_ppm"], "skew_ppm");
    if (has("offset_range"))
        c.offset_range = as_real(doc["offset_range"], "offset_range");
    if (has("observation_window"))
        c.observation_window = as_real(doc["observation_window"], "observation_window");
    if (has("timestamps"))
        c.timestamps = as_count(doc["timestamps"], "timestamps");
    if (has("wave_speed"))
        c.wave_speed = as_real(doc["wave_speed"], "wave_speed");
    if (has("sigmas"))
    {
        c.sigmas.clear();
        for (const json& item : as_list(doc["sigmas"]))
            c.sigmas.push_back(as_real(item, "sigmas"));
    }
    if (has("protocols"))
        c.protocols = as_enum_list<Protocol>(doc["protocols"], "protocols", parse_protocol);
    if (has("estimators"))
        c.estimators = as_enum_list<Estimator>(doc["estimators"], "estimators", parse_estimator);
    if (has("trials"))
        c.trials = as_count(doc["trials"], "trials");
    if (has("master_seed"))
        c.master_seed = as_count(doc["master_seed"], "master_seed");
    c.validate();
    return c;
}

} // namespace

ExperimentConfig parse_config_text(std::string_view text, const std::vector<std::string>& overrides)
{
    json doc;
    try
    {
        doc = json::parse(text.empty() ? std::string_view("{}") : text);
    }
    catch (const json::parse_error& e)
    {
        throw ConfigError("", std::string("malformed config: ") + e.what());
    }
    if (!doc.is_object())
        throw ConfigError("", "config must be a JSON object");

    for (const std::string& item : overrides)
    {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0)
            throw ConfigError("--set", "expected key=value, got '" + item + "'");
        const std::string key = item.substr(0, eq);
        const std::string value = item.substr(eq + 1);
        const json parsed = json::parse(value, nullptr, false);
        doc[key] = parsed.is_discarded() ? json(value) : parsed;
    }
    return from_json(doc);
}

ExperimentConfig parse_config(const std::filesystem::path& path, const std::vector<std::string>& overrides)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("", "cannot open config file '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str(), overrides);
}

std::vector<std::pair<std::string, std::string>> describe_config(const ExperimentConfig& c)
{
    json protocols = json::array();
    for (Protocol p : c.protocols)
        protocols.push_back(std::string(to_string(p)));
    json estimators = json::array();
    for (Estimator e : c.estimators)
        estimators.push_back(std::string(to_string(e)));

    return {
        {"anchors", json(c.anchors).dump()},
        {"dimension", json(c.dimension).dump()},
        {"deploy_range", json(c.deploy_range).dump()},
        {"skew_ppm", json(c.skew_ppm).dump()},
        {"offset_range", json(c.offset_range).dump()},
        {"observation_window", json(c.observation_window).dump()},
        {"timestamps", json(c.timestamps).dump()},
        {"wave_speed", json(c.wave_speed).dump()},
        {"sigmas", json(c.sigmas).dump()},
        {"protocols", protocols.dump()},
        {"estimators", estimators.dump()},
        {"trials", json(c.trials).dump()},
        {"master_seed", json(c.master_seed).dump()},
    };
}

} // namespace syncloc
