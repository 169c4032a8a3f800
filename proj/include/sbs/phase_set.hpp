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

#include <complex>

namespace sbs
{

/// Discrete phase-shifter alphabet { e^{i 2 pi q / Q} : q = 0 .. Q-1 }.
///
/// The angular resolution delta = 2 pi / Q is derived from the element count
/// and never stored independently, so the two can not drift apart.
class PhaseSet
{
  public:
    /// q_count must be >= 1, otherwise std::invalid_argument.
    explicit PhaseSet(int q_count);

    int q_count() const noexcept { return q_count_; }
    double delta() const noexcept { return delta_; }

    /// Alphabet member for an index (taken modulo q_count, negatives allowed).
    std::complex<double> phase(long long index) const noexcept;

    /// Index reduced to the canonical range [0, q_count).
    int wrap_index(long long index) const noexcept;

    /// Index of the alphabet phase closest to the given angle (radians).
    /// A tie at half resolution resolves toward the larger wrapped index.
    int nearest_index(double angle) const noexcept;

    /// Membership test for a unit-magnitude complex number.  True when the
    /// phase is within phase_tol of an alphabet member.
    bool contains(std::complex<double> value, double phase_tol = 1e-12) const noexcept;

  private:
    int q_count_;
    double delta_;
};

} // namespace sbs
