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

#include "sbs/omp.hpp"

#include <cmath>
#include <stdexcept>

#include "sbs/errors.hpp"
#include "sbs/phase_opt.hpp"

namespace sbs
{

namespace
{

// Base-Q digits of a column index, antenna 0 most significant.
std::vector<int> column_digits(std::uint64_t m, int q, int n)
{
    std::vector<int> d(static_cast<std::size_t>(n));
    for (int i = n - 1; i >= 0; --i)
    {
        d[static_cast<std::size_t>(i)] = static_cast<int>(m % static_cast<std::uint64_t>(q));
        m /= static_cast<std::uint64_t>(q);
    }
    return d;
}

// Rotation-invariant key of a digit vector: shift so the first digit is 0.
std::uint64_t rotation_class(const std::vector<int> &digits, int q)
{
    std::uint64_t key = 0;
    int shift = digits.empty() ? 0 : digits[0];
    for (int d : digits)
        key = key * static_cast<std::uint64_t>(q) +
              static_cast<std::uint64_t>(((d - shift) % q + q) % q);
    return key;
}

void check_pursuit_args(const Eigen::VectorXcd &target, Eigen::Index n, int sparsity,
                        const char *who)
{
    if (n < 1)
        throw std::invalid_argument(std::string(who) + ": empty target");
    if (!target.allFinite())
        throw std::invalid_argument(std::string(who) + ": target has non-finite entries");
    if (target.norm() == 0.0)
        throw std::invalid_argument(std::string(who) + ": target is identically zero");
    if (sparsity < 1 || sparsity > n)
        throw std::invalid_argument(std::string(who) + ": sparsity must lie in [1, N]");
}

} // namespace

Dictionary steering_dictionary(int n_antennas, const PhaseSet &phases)
{
    if (n_antennas < 1)
        throw std::invalid_argument("steering_dictionary: n_antennas must be >= 1");
    const int q = phases.q_count();
    Dictionary dict;
    dict.kind = DictionaryKind::steering;
    dict.alphabet_q = q;
    dict.columns.resize(n_antennas, q);
    for (int col = 0; col < q; ++col)
        for (int row = 0; row < n_antennas; ++row)
            dict.columns(row, col) = phases.phase(static_cast<long long>(row) * col);
    return dict;
}

Dictionary complete_dictionary(int n_antennas, const PhaseSet &phases, std::uint64_t column_cap)
{
    if (n_antennas < 1)
        throw std::invalid_argument("complete_dictionary: n_antennas must be >= 1");
    const int q = phases.q_count();
    std::uint64_t total = 1;
    for (int i = 0; i < n_antennas; ++i)
    {
        if (total > column_cap / static_cast<std::uint64_t>(q))
            throw SizeLimitError("complete_dictionary: Q^N exceeds column cap of " +
                                 std::to_string(column_cap));
        total *= static_cast<std::uint64_t>(q);
    }
    if (total > column_cap)
        throw SizeLimitError("complete_dictionary: Q^N exceeds column cap of " +
                             std::to_string(column_cap));

    Dictionary dict;
    dict.kind = DictionaryKind::complete_explicit;
    dict.alphabet_q = q;
    dict.columns.resize(n_antennas, static_cast<Eigen::Index>(total));
    for (std::uint64_t m = 0; m < total; ++m)
    {
        std::vector<int> digits = column_digits(m, q, n_antennas);
        for (int row = 0; row < n_antennas; ++row)
            dict.columns(row, static_cast<Eigen::Index>(m)) =
                phases.phase(digits[static_cast<std::size_t>(row)]);
    }
    return dict;
}

SbSSolution omp_naive(const Eigen::VectorXcd &target, const Dictionary &dict, int sparsity)
{
    const Eigen::Index n = dict.columns.rows();
    const Eigen::Index m_cols = dict.columns.cols();
    if (target.size() != n)
        throw std::invalid_argument("omp_naive: target length does not match dictionary rows");
    check_pursuit_args(target, n, sparsity, "omp_naive");
    if (sparsity > m_cols)
        throw std::invalid_argument("omp_naive: sparsity exceeds dictionary size");

    // For the complete dictionary, columns that are global alphabet rotations
    // of each other span the same line; treat a whole rotation class as used
    // once any member is selected.
    const bool complete = dict.kind == DictionaryKind::complete_explicit;
    const int alphabet_q = dict.alphabet_q;
    if (complete && alphabet_q < 1)
        throw std::invalid_argument("omp_naive: complete dictionary is missing alphabet_q");
    std::vector<std::uint64_t> class_of;
    if (complete)
    {
        class_of.resize(static_cast<std::size_t>(m_cols));
        for (Eigen::Index c = 0; c < m_cols; ++c)
            class_of[static_cast<std::size_t>(c)] = rotation_class(
                column_digits(static_cast<std::uint64_t>(c), alphabet_q, static_cast<int>(n)),
                alphabet_q);
    }

    const double anchor_delta = complete ? PhaseSet(alphabet_q).delta() : 0.0;
    Eigen::MatrixXcd selected(n, sparsity);
    std::vector<char> allowed(static_cast<std::size_t>(m_cols), 1);
    std::vector<std::uint64_t> used_classes;
    Eigen::VectorXcd residual = target;
    Eigen::VectorXcd weights;
    int picked = 0;

    for (int l = 1; l <= sparsity; ++l)
    {
        // Rank candidates by correlation with the current residual.
        Eigen::VectorXcd corr = dict.columns.adjoint() * residual;
        double best = -1.0;
        Eigen::Index best_col = -1;
        for (Eigen::Index c = 0; c < m_cols; ++c)
        {
            if (!allowed[static_cast<std::size_t>(c)])
                continue;
            double sq = std::norm(corr[c]);
            if (sq > best)
            {
                best = sq;
                best_col = c;
            }
        }
        if (best_col < 0)
            throw DegenerateSelectionError("omp_naive: no admissible column remains", l);

        Eigen::VectorXcd atom = dict.columns.col(best_col);
        if (complete)
        {
            // Reduce to the same correlation-anchored representative the
            // implicit-dictionary solver emits.
            long long shift = detail::correlation_anchor_steps(corr[best_col], anchor_delta);
            if (shift != 0)
                atom *= std::polar(1.0, anchor_delta * static_cast<double>(shift));
            std::uint64_t cls = class_of[static_cast<std::size_t>(best_col)];
            used_classes.push_back(cls);
            for (Eigen::Index c = 0; c < m_cols; ++c)
                if (class_of[static_cast<std::size_t>(c)] == cls)
                    allowed[static_cast<std::size_t>(c)] = 0;
        }
        else
        {
            allowed[static_cast<std::size_t>(best_col)] = 0;
        }

        selected.col(picked) = atom;
        ++picked;

        Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(selected.leftCols(picked));
        if (qr.rank() < picked)
            throw DegenerateSelectionError("omp_naive: selected columns are rank deficient", l);
        weights = qr.solve(target);
        residual = target - selected.leftCols(picked) * weights;
    }

    SbSSolution sol;
    sol.analog = selected.leftCols(picked);
    sol.baseband = weights;
    sol.residual_norm = residual.norm();
    sol.relative_error = sol.residual_norm / target.norm();
    sol.truncated = false;
    return sol;
}

SbSSolution omp_cholesky(const Eigen::VectorXcd &target, const PhaseSet &phases, int sparsity,
                         OmpTrace *trace)
{
    const Eigen::Index n = target.size();
    check_pursuit_args(target, n, sparsity, "omp_cholesky");

    const double nd = static_cast<double>(n);
    Eigen::MatrixXcd selected(n, sparsity);
    Eigen::MatrixXcd chol = Eigen::MatrixXcd::Zero(sparsity, sparsity);
    Eigen::VectorXcd rhs(sparsity); // selected^H target, extended one entry per iteration
    Eigen::VectorXcd residual = target;
    Eigen::VectorXcd weights;
    bool truncated = false;
    int picked = 0;

    if (trace != nullptr)
        trace->residual_norms.clear();

    for (int l = 1; l <= sparsity; ++l)
    {
        PhaseVectorSolution best = optimal_phase_vector(residual, phases);

        if (l == 1)
        {
            chol(0, 0) = std::sqrt(nd);
        }
        else
        {
            Eigen::VectorXcd proj = selected.leftCols(l - 1).adjoint() * best.omega;
            Eigen::VectorXcd v = chol.topLeftCorner(l - 1, l - 1)
                                     .triangularView<Eigen::Lower>()
                                     .solve(proj);
            double diag_sq = nd - v.squaredNorm();
            if (diag_sq <= 1e-10 * nd)
            {
                // New column is numerically inside the selected span; adding
                // it would break the factorization, so stop early.
                truncated = true;
                break;
            }
            chol.row(l - 1).head(l - 1) = v.adjoint();
            chol(l - 1, l - 1) = std::sqrt(diag_sq);
        }

        selected.col(l - 1) = best.omega;
        rhs[l - 1] = best.omega.dot(target);
        picked = l;

        auto lower = chol.topLeftCorner(l, l).triangularView<Eigen::Lower>();
        Eigen::VectorXcd z = lower.solve(rhs.head(l));
        weights = lower.adjoint().solve(z);
        residual = target - selected.leftCols(l) * weights;

        if (trace != nullptr)
            trace->residual_norms.push_back(residual.norm());
    }

    SbSSolution sol;
    sol.analog = selected.leftCols(picked);
    sol.baseband = weights;
    sol.residual_norm = residual.norm();
    sol.relative_error = sol.residual_norm / target.norm();
    sol.truncated = truncated;
    if (trace != nullptr)
        trace->chol = chol.topLeftCorner(picked, picked);
    return sol;
}

std::vector<SbsColumnResult> sbs_precode_block(const Eigen::MatrixXcd &targets,
                                               const PhaseSet &phases, int sparsity)
{
    if (targets.cols() < 1)
        throw std::invalid_argument("sbs_precode_block: block must contain at least one column");

    std::vector<SbsColumnResult> results(static_cast<std::size_t>(targets.cols()));
    for (Eigen::Index t = 0; t < targets.cols(); ++t)
    {
        try
        {
            results[static_cast<std::size_t>(t)].solution =
                omp_cholesky(targets.col(t), phases, sparsity);
        }
        catch (const std::exception &e)
        {
            results[static_cast<std::size_t>(t)].error =
                "column " + std::to_string(t) + ": " + e.what();
        }
    }
    return results;
}

} // namespace sbs
