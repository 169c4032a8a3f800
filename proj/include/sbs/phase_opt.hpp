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

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

#include "sbs/phase_set.hpp"

namespace sbs
{

/// Maximizer of |omega^H r| over vectors with entries in a phase alphabet.
struct PhaseVectorSolution
{
    Eigen::VectorXcd omega;   ///< unit-modulus entries, all alphabet members
    std::vector<int> indices; ///< alphabet index per entry
    double objective = 0.0;   ///< |omega^H r|
};

/// Internal state of the sector search, exposed so the search invariants can
/// be verified directly.
struct PhaseSearchState
{
    Eigen::VectorXcd rotated;   ///< z_n = |r_n| e^{i mod(arg r_n, delta)}
    std::vector<int> ordering;  ///< permutation sorting arg(rotated) nondecreasing
    std::complex<double> running_sum{0.0, 0.0}; ///< S after the final update
    double best_magnitude = 0.0;                ///< largest |S| seen
    int best_index = 0;                         ///< update count at the maximum
    int updates = 0;                            ///< candidate updates performed
};

/// Exact maximization of |omega^H r| over the alphabet in O(N log N),
/// independent of the alphabet size.  Zero-magnitude entries of r are
/// permitted; their phase choice does not affect the objective.
///
/// The returned vector is the deterministic representative of the (globally
/// phase-ambiguous) maximizer family: it is rotated so that the phase of
/// omega^H r falls inside the base alphabet sector.
PhaseVectorSolution optimal_phase_vector(const Eigen::VectorXcd &r, const PhaseSet &phases,
                                         PhaseSearchState *state = nullptr);

/// Exhaustive reference search over all Q^N candidates.  Ties resolve to the
/// lexicographically smallest index vector.  Throws SizeLimitError when Q^N
/// exceeds candidate_cap.
PhaseVectorSolution brute_force_phase_vector(const Eigen::VectorXcd &r, const PhaseSet &phases,
                                             std::uint64_t candidate_cap = 10'000'000);

namespace detail
{

/// Number of alphabet steps that rotates a correlation value into the base
/// sector: arg(e^{-i delta c} corr) in [-tol, delta - tol).  The small slack
/// keeps real-positive correlations anchored at c = 0 under FP noise.
long long correlation_anchor_steps(std::complex<double> corr, double delta, double tol = 1e-9);

} // namespace detail

} // namespace sbs
