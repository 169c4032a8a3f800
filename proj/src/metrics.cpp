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

#include "sbs/metrics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "sbs/errors.hpp"

namespace sbs
{

GainDecomposition decompose(const Eigen::MatrixXcd &z_block, const Eigen::MatrixXcd &symbols)
{
    const Eigen::Index k = symbols.rows();
    const Eigen::Index t = symbols.cols();
    if (k < 1)
        throw std::invalid_argument("decompose: need at least one user");
    if (z_block.rows() != k || z_block.cols() != t)
        throw std::invalid_argument("decompose: received block shape must match symbols");
    if (t < k)
        throw RankDeficiencyError("decompose: block shorter than the user count");
    if (!z_block.allFinite() || !symbols.allFinite())
        throw std::invalid_argument("decompose: non-finite inputs");

    Eigen::MatrixXcd gram = symbols * symbols.adjoint();
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(gram);
    double smin = svd.singularValues().minCoeff();
    double smax = svd.singularValues().maxCoeff();
    if (!(smin > 0.0) || smax / smin >= 1e10)
        throw RankDeficiencyError("decompose: symbol Gram matrix is ill-conditioned");

    Eigen::MatrixXcd cross = z_block * symbols.adjoint();
    // G gram = cross, with gram Hermitian positive definite.
    Eigen::MatrixXcd gain = gram.ldlt().solve(cross.adjoint()).adjoint();

    GainDecomposition dec;
    dec.gain_matrix = gain;
    dec.distortion = z_block - gain * symbols;
    dec.interference_power.resize(k);
    dec.distortion_power.resize(k);
    for (Eigen::Index u = 0; u < k; ++u)
    {
        double inter = 0.0;
        for (Eigen::Index v = 0; v < k; ++v)
            if (v != u)
                inter += std::norm(gain(u, v));
        dec.interference_power[u] = inter;
        dec.distortion_power[u] =
            dec.distortion.row(u).squaredNorm() / static_cast<double>(t);
    }
    return dec;
}

double sidr_db(const GainDecomposition &dec)
{
    const Eigen::Index k = dec.gain_matrix.rows();
    double acc = 0.0;
    for (Eigen::Index u = 0; u < k; ++u)
    {
        double den = dec.interference_power[u] + dec.distortion_power[u];
        if (den == 0.0)
            return std::numeric_limits<double>::infinity();
        acc += std::norm(dec.gain_matrix(u, u)) / den;
    }
    return 10.0 * std::log10(acc / static_cast<double>(k));
}

RateReport rate_report(const GainDecomposition &dec, const Eigen::VectorXd &channel_gains,
                       double noise_variance)
{
    const Eigen::Index k = dec.gain_matrix.rows();
    if (channel_gains.size() != k)
        throw std::invalid_argument("rate_report: channel gain count must match users");
    if (!(noise_variance > 0.0))
        throw std::invalid_argument("rate_report: noise variance must be positive");
    for (Eigen::Index u = 0; u < k; ++u)
        if (channel_gains[u] < 0.0)
            throw std::invalid_argument("rate_report: channel gains must be nonnegative");

    RateReport rep;
    rep.sidr_db = sidr_db(dec);
    rep.noise_variance = noise_variance;
    rep.channel_gains = channel_gains;
    rep.sindr.resize(k);
    rep.capacity.resize(k);
    for (Eigen::Index u = 0; u < k; ++u)
    {
        double h = channel_gains[u];
        double impairments = dec.interference_power[u] + dec.distortion_power[u];
        rep.sindr[u] = h * std::norm(dec.gain_matrix(u, u)) / (noise_variance + h * impairments);
        rep.capacity[u] = std::log2(1.0 + rep.sindr[u]);
    }
    rep.sum_rate = rep.capacity.sum();
    return rep;
}

} // namespace sbs
