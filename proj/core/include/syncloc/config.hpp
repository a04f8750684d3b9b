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

#pragma once

#include "syncloc/harness.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace syncloc
{

/// Configuration files are JSON objects with the keys of ExperimentConfig:
///   anchors, dimension, deploy_range, skew_ppm, offset_range,
///   observation_window, timestamps, wave_speed, sigmas, protocols,
///   estimators, trials, master_seed
/// Missing keys keep their defaults; unknown keys are rejected. Overrides are
/// `key=value` strings applied on top of the file before validation. The value
/// is read as JSON when it parses, otherwise as a bare string; list keys also
/// accept a comma-separated string.
ExperimentConfig parse_config_text(std::string_view text, const std::vector<std::string>& overrides = {});
ExperimentConfig parse_config(const std::filesystem::path& path, const std::vector<std::string>& overrides = {});

/// Resolved config as ordered key/value pairs, values rendered as JSON.
std::vector<std::pair<std::string, std::string>> describe_config(const ExperimentConfig& config);

} // namespace syncloc
