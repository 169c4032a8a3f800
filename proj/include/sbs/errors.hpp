// SPDX-License-Identifier: Apache-2.0
//
// sbs-hybrid - symbol-by-symbol hybrid precoding for mmWave arrays
// Copyright (C) 2026 the sbs-hybrid authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace sbs
{

/// Thrown when an enumeration or allocation would exceed a configured cap.
class SizeLimitError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// Thrown when greedy selection produces a numerically rank-deficient basis.
class DegenerateSelectionError : public std::runtime_error
{
  public:
    DegenerateSelectionError(const std::string &message, int iteration)
        : std::runtime_error(message + " (iteration " + std::to_string(iteration) + ")"),
          iteration_(iteration)
    {
    }
    int iteration() const noexcept { return iteration_; }

  private:
    int iteration_;
};

/// Thrown when a least-squares system is too ill-conditioned to solve.
class RankDeficiencyError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// Thrown for parameter combinations that can never produce a valid run.
class ConfigurationError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// Thrown when rejection sampling exceeds its retry budget.
class SamplingStuckError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

} // namespace sbs
