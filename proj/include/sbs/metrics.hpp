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

namespace sbs
{

/// Least-squares split of received samples into a linear gain part and a
/// symbol-uncorrelated distortion remainder.
struct GainDecomposition
{
    Eigen::MatrixXcd gain_matrix;       ///< K x K estimated linear gains
    Eigen::MatrixXcd distortion;        ///< K x T remainder z - G s
    Eigen::VectorXd interference_power; ///< per user, sum of off-diagonal |g|^2
    Eigen::VectorXd distortion_power;   ///< per user, mean |d|^2 over the block
};

/// Fits z ~ G s over a block.  Requires at least K symbol columns and a
/// well-conditioned symbol Gram matrix (condition < 1e10), otherwise throws
/// RankDeficiencyError.
GainDecomposition decompose(const Eigen::MatrixXcd &z_block, const Eigen::MatrixXcd &symbols);

/// Signal-to-interference-plus-distortion ratio in dB: per-user linear ratios
/// averaged, then converted.  Returns +infinity when any user sees zero
/// interference and distortion.
double sidr_db(const GainDecomposition &dec);

struct RateReport
{
    double sidr_db = 0.0;
    Eigen::VectorXd sindr;    ///< per user
    Eigen::VectorXd capacity; ///< log2(1 + sindr), bits/s/Hz
    double sum_rate = 0.0;
    double noise_variance = 0.0;
    Eigen::VectorXd channel_gains;
};

/// Per-user SINDR, capacity, and sum rate for given channel power gains and
/// noise variance.
RateReport rate_report(const GainDecomposition &dec, const Eigen::VectorXd &channel_gains,
                       double noise_variance);

} // namespace sbs
