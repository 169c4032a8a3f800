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
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sbs/phase_set.hpp"

namespace sbs
{

enum class DictionaryKind
{
    steering,         ///< N x Q matrix of quantized phase ramps
    complete_explicit ///< all Q^N unit-modulus phase vectors
};

/// Explicit dictionary of unit-modulus columns with alphabet phases.
struct Dictionary
{
    Eigen::MatrixXcd columns;
    DictionaryKind kind = DictionaryKind::steering;
    int alphabet_q = 0; ///< phase alphabet size the columns were built from
};

/// Column q holds entries e^{i n q 2 pi / Q}, n = 0 .. N-1.
Dictionary steering_dictionary(int n_antennas, const PhaseSet &phases);

/// Every phase-index combination as an explicit column, enumerated in
/// lexicographic index order.  Throws SizeLimitError above column_cap.
Dictionary complete_dictionary(int n_antennas, const PhaseSet &phases,
                               std::uint64_t column_cap = 1'000'000);

/// Sparse factorization of one transmit vector: y ~ analog * baseband.
struct SbSSolution
{
    Eigen::MatrixXcd analog;   ///< N x L_used, unit-modulus alphabet entries
    Eigen::VectorXcd baseband; ///< L_used weights
    double residual_norm = 0.0;
    double relative_error = 0.0; ///< residual_norm / ||target||
    bool truncated = false;      ///< stopped before the requested sparsity
};

/// Per-iteration internals of omp_cholesky, captured for verification.
struct OmpTrace
{
    std::vector<double> residual_norms; ///< after each completed iteration
    Eigen::MatrixXcd chol;              ///< final lower-triangular factor
};

/// Greedy pursuit over an explicit dictionary with a dense least-squares
/// refit each iteration.  Reference path: simple and independent of the
/// production solver.
SbSSolution omp_naive(const Eigen::VectorXcd &target, const Dictionary &dict, int sparsity);

/// Greedy pursuit over the implicit complete dictionary.  Each iteration runs
/// the sector phase search on the residual and extends a Cholesky factor of
/// the selected-column Gram matrix, giving O(N log N + N l) per iteration
/// with no dependence on the alphabet size.
SbSSolution omp_cholesky(const Eigen::VectorXcd &target, const PhaseSet &phases, int sparsity,
                         OmpTrace *trace = nullptr);

struct SbsColumnResult
{
    std::optional<SbSSolution> solution;
    std::string error; ///< empty on success
};

/// Runs omp_cholesky on every column of a block.  Failures are recorded per
/// column and never abort the remaining columns.
std::vector<SbsColumnResult> sbs_precode_block(const Eigen::MatrixXcd &targets,
                                               const PhaseSet &phases, int sparsity);

} // namespace sbs
