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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace syncloc
{

// Malformed arguments: dimension mismatch, bad node index, empty record list.
class InvalidInput : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

// A clock parametrization outside its domain (non-positive skew or alpha).
class DomainError : public std::domain_error
{
  public:
    using std::domain_error::domain_error;
};

// gamma <= 0 in a squared-parameter estimate; the skew cannot be recovered.
class RecoveryFailure : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

class RankDeficiency : public std::runtime_error
{
  public:
    RankDeficiency(std::size_t deficiency, std::size_t columns)
        : std::runtime_error("least-squares system is rank deficient by " + std::to_string(deficiency) + " of " +
                             std::to_string(columns) + " columns"),
          deficiency_(deficiency)
    {
    }

    std::size_t deficiency() const noexcept { return deficiency_; }

  private:
    std::size_t deficiency_;
};

// Anchor layout cannot support localization (collinear anchors, sensor on an anchor).
class GeometryError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

// Fisher information is numerically singular.
class UnidentifiableConfiguration : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

// Experiment configuration failed to parse or validate. field() names the offending key.
class ConfigError : public std::runtime_error
{
  public:
    ConfigError(std::string field, const std::string& message)
        : std::runtime_error(field.empty() ? message : field + ": " + message), field_(std::move(field))
    {
    }

    const std::string& field() const noexcept { return field_; }

  private:
    std::string field_;
};

} // namespace syncloc
