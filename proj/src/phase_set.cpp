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

#include "sbs/phase_set.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sbs
{

PhaseSet::PhaseSet(int q_count) : q_count_(q_count)
{
    if (q_count < 1)
        throw std::invalid_argument("PhaseSet: q_count must be >= 1");
    delta_ = 2.0 * std::numbers::pi / static_cast<double>(q_count);
}

std::complex<double> PhaseSet::phase(long long index) const noexcept
{
    return std::polar(1.0, delta_ * static_cast<double>(wrap_index(index)));
}

int PhaseSet::wrap_index(long long index) const noexcept
{
    long long q = q_count_;
    long long m = index % q;
    if (m < 0)
        m += q;
    return static_cast<int>(m);
}

int PhaseSet::nearest_index(double angle) const noexcept
{
    // Distances to the bracketing alphabet angles; exact FP equality is the
    // tie, which resolves toward the larger wrapped index.
    double x = angle / delta_;
    long long lo = static_cast<long long>(std::floor(x));
    double d_lo = angle - delta_ * static_cast<double>(lo);
    double d_hi = delta_ * static_cast<double>(lo + 1) - angle;
    if (d_hi < d_lo)
        return wrap_index(lo + 1);
    if (d_lo < d_hi)
        return wrap_index(lo);
    int a = wrap_index(lo);
    int b = wrap_index(lo + 1);
    return a > b ? a : b;
}

bool PhaseSet::contains(std::complex<double> value, double phase_tol) const noexcept
{
    if (std::abs(std::abs(value) - 1.0) > 1e-9)
        return false;
    double angle = std::arg(value);
    int q = nearest_index(angle);
    double diff = angle - delta_ * static_cast<double>(q);
    double two_pi = 2.0 * std::numbers::pi;
    diff = std::remainder(diff, two_pi);
    return std::abs(diff) <= phase_tol;
}

} // namespace sbs
