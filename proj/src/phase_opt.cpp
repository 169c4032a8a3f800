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

#include "sbs/phase_opt.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "sbs/errors.hpp"

namespace sbs
{

namespace detail
{

long long correlation_anchor_steps(std::complex<double> corr, double delta, double tol)
{
    double angle = std::arg(corr); // (-pi, pi], arg(0) = 0
    return static_cast<long long>(std::floor((angle + tol) / delta));
}

} // namespace detail

namespace
{

// arg(r) reduced to [0, delta); also reports how many whole steps were removed.
struct SectorPhase
{
    double phase;
    long long steps;
};

SectorPhase reduce_to_sector(double angle, double delta)
{
    long long k = static_cast<long long>(std::floor(angle / delta));
    double p = angle - delta * static_cast<double>(k);
    if (p >= delta) // floor rounding can land exactly on the upper edge
    {
        p -= delta;
        ++k;
    }
    if (p < 0.0)
    {
        p += delta;
        --k;
    }
    return {p, k};
}

} // namespace

PhaseVectorSolution optimal_phase_vector(const Eigen::VectorXcd &r, const PhaseSet &phases,
                                         PhaseSearchState *state)
{
    const Eigen::Index n = r.size();
    if (n < 1)
        throw std::invalid_argument("optimal_phase_vector: empty input");
    if (!r.allFinite())
        throw std::invalid_argument("optimal_phase_vector: input has non-finite entries");

    const double delta = phases.delta();

    // Fold every entry into the base sector.  The fold count k_n is the raw
    // alphabet index that aligns entry n with the positive real axis.
    Eigen::VectorXcd z(n);
    std::vector<double> sector_phase(static_cast<std::size_t>(n));
    std::vector<long long> fold_steps(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i)
    {
        double mag = std::abs(r[i]);
        if (mag == 0.0)
        {
            z[i] = {0.0, 0.0};
            sector_phase[i] = 0.0;
            fold_steps[i] = 0;
            continue;
        }
        SectorPhase sp = reduce_to_sector(std::arg(r[i]), delta);
        sector_phase[i] = sp.phase;
        fold_steps[i] = sp.steps;
        z[i] = std::polar(mag, sp.phase);
    }

    // Visit the N candidate sums: rotate the folded entries out of the sector
    // one at a time in phase order and track the largest magnitude.
    std::vector<int> ordering(static_cast<std::size_t>(n));
    std::iota(ordering.begin(), ordering.end(), 0);
    std::stable_sort(ordering.begin(), ordering.end(),
                     [&](int a, int b) { return sector_phase[a] < sector_phase[b]; });

    std::complex<double> sum = z.sum();
    const std::complex<double> step = std::polar(1.0, delta) - 1.0;
    double best_sq = std::norm(sum);
    int best_m = 0;
    for (Eigen::Index m = 1; m < n; ++m)
    {
        sum += z[ordering[static_cast<std::size_t>(m - 1)]] * step;
        double sq = std::norm(sum);
        if (sq > best_sq)
        {
            best_sq = sq;
            best_m = static_cast<int>(m);
        }
    }

    // Raw output: entries rotated in the first best_m positions of the
    // ordering pick up one extra negative step.
    std::vector<long long> raw(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i)
        raw[static_cast<std::size_t>(ordering[i])] = fold_steps[ordering[i]] - (i < best_m ? 1 : 0);

    PhaseVectorSolution sol;
    sol.indices.assign(static_cast<std::size_t>(n), 0);
    sol.omega.resize(n);

    // Anchor the global alphabet phase on the correlation so the emitted
    // representative is reproducible across independent implementations.
    std::complex<double> corr{0.0, 0.0};
    for (Eigen::Index i = 0; i < n; ++i)
        if (std::abs(r[i]) != 0.0)
            corr += std::conj(std::polar(1.0, delta * static_cast<double>(raw[i]))) * r[i];
    long long anchor = detail::correlation_anchor_steps(corr, delta);

    for (Eigen::Index i = 0; i < n; ++i)
    {
        long long raw_idx = (std::abs(r[i]) != 0.0) ? raw[static_cast<std::size_t>(i)] : 0;
        int idx = phases.wrap_index(raw_idx + anchor);
        sol.indices[static_cast<std::size_t>(i)] = idx;
        sol.omega[i] = std::polar(1.0, delta * static_cast<double>(idx));
    }
    sol.objective = std::abs(sol.omega.dot(r));

    if (state != nullptr)
    {
        state->rotated = std::move(z);
        state->ordering = std::move(ordering);
        state->running_sum = sum;
        state->best_magnitude = std::sqrt(best_sq);
        state->best_index = best_m;
        state->updates = static_cast<int>(n - 1);
    }
    return sol;
}

PhaseVectorSolution brute_force_phase_vector(const Eigen::VectorXcd &r, const PhaseSet &phases,
                                             std::uint64_t candidate_cap)
{
    const Eigen::Index n = r.size();
    if (n < 1)
        throw std::invalid_argument("brute_force_phase_vector: empty input");
    const int q = phases.q_count();

    std::uint64_t total = 1;
    for (Eigen::Index i = 0; i < n; ++i)
    {
        if (total > candidate_cap / static_cast<std::uint64_t>(q))
            throw SizeLimitError("brute_force_phase_vector: Q^N exceeds candidate cap of " +
                                 std::to_string(candidate_cap));
        total *= static_cast<std::uint64_t>(q);
    }
    if (total > candidate_cap)
        throw SizeLimitError("brute_force_phase_vector: Q^N exceeds candidate cap of " +
                             std::to_string(candidate_cap));

    // Per-entry contribution of each alphabet choice.
    Eigen::MatrixXcd table(q, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (int j = 0; j < q; ++j)
            table(j, i) = std::conj(phases.phase(j)) * r[i];

    std::vector<int> digits(static_cast<std::size_t>(n), 0);
    std::vector<int> best_digits;
    double best_sq = -1.0;

    // Depth-first enumeration in lexicographic digit order; the strict
    // comparison keeps the lexicographically smallest maximizer on ties.
    std::vector<std::complex<double>> prefix(static_cast<std::size_t>(n) + 1);
    prefix[0] = {0.0, 0.0};
    Eigen::Index level = 0;
    while (true)
    {
        if (level == n)
        {
            double sq = std::norm(prefix[static_cast<std::size_t>(n)]);
            if (sq > best_sq)
            {
                best_sq = sq;
                best_digits = digits;
            }
            --level;
            while (level >= 0 && digits[static_cast<std::size_t>(level)] == q - 1)
            {
                digits[static_cast<std::size_t>(level)] = 0;
                --level;
            }
            if (level < 0)
                break;
            ++digits[static_cast<std::size_t>(level)];
        }
        prefix[static_cast<std::size_t>(level) + 1] =
            prefix[static_cast<std::size_t>(level)] +
            table(digits[static_cast<std::size_t>(level)], level);
        ++level;
    }

    PhaseVectorSolution sol;
    sol.indices = best_digits;
    sol.omega.resize(n);
    std::complex<double> corr{0.0, 0.0};
    for (Eigen::Index i = 0; i < n; ++i)
    {
        sol.omega[i] = phases.phase(best_digits[static_cast<std::size_t>(i)]);
        corr += table(best_digits[static_cast<std::size_t>(i)], i);
    }
    sol.objective = std::abs(corr);
    return sol;
}

} // namespace sbs
