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

#include "sbs/precoding.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sbs
{

namespace
{

constexpr double kPi = std::numbers::pi;
constexpr double kServeMinRad = 30.0 * kPi / 180.0;
constexpr double kServeMaxRad = 150.0 * kPi / 180.0;

} // namespace

DigitalBlock build_digital(const UlaConfig &cfg, const std::vector<double> &azimuths,
                           const Eigen::MatrixXcd &symbols, const RadiationQuadrature &quad)
{
    const Eigen::Index k = static_cast<Eigen::Index>(azimuths.size());
    if (k < 1)
        throw std::invalid_argument("build_digital: need at least one user");
    if (symbols.rows() != k)
        throw std::invalid_argument("build_digital: symbol rows must match the user count");
    if (symbols.cols() < 1)
        throw std::invalid_argument("build_digital: need at least one symbol column");
    if (!symbols.allFinite())
        throw std::invalid_argument("build_digital: symbols must be finite");

    for (double az : azimuths)
        if (az < kServeMinRad || az > kServeMaxRad)
            throw std::domain_error("build_digital: azimuth outside the serving range "
                                    "[30, 150] degrees");

    // Unscaled beams: phase ramp toward each user, element pattern divided
    // out at the user direction.
    Eigen::MatrixXcd beams(cfg.n_antennas, k);
    for (Eigen::Index u = 0; u < k; ++u)
    {
        double g = element_gain(cfg.pattern, azimuths[static_cast<std::size_t>(u)], 0.0);
        double ramp = steering_ramp(cfg, azimuths[static_cast<std::size_t>(u)]);
        for (int i = 0; i < cfg.n_antennas; ++i)
            beams(i, u) = std::polar(1.0 / g, ramp * static_cast<double>(i));
    }

    Eigen::MatrixXcd y = beams * symbols;
    double raw_power = quad.block_power(y);
    if (!(raw_power > 0.0))
        throw std::invalid_argument("build_digital: block radiates no power");

    const double target = 4.0 * kPi * static_cast<double>(symbols.cols());
    const double c = std::sqrt(target / raw_power);

    DigitalBlock block;
    block.precoder.beams = c * beams;
    block.precoder.norm_constant = c;
    block.y_block = c * y;
    return block;
}

StandardHybridPrecoder build_standard_hybrid(const DigitalPrecoder &digital,
                                             const PhaseSet &phases, int l_chains)
{
    if (l_chains < 1)
        throw std::invalid_argument("build_standard_hybrid: need at least one chain");
    if (digital.beams.cols() < 1)
        throw std::invalid_argument("build_standard_hybrid: empty digital precoder");

    StandardHybridPrecoder hyb;
    hyb.served_users = static_cast<int>(
        std::min<Eigen::Index>(l_chains, digital.beams.cols()));
    hyb.analog = quantize_to_alphabet(digital.beams.leftCols(hyb.served_users), phases);
    // Baseband stage: fit the served digital beams through the quantized
    // analog columns, so the composite precoder cancels the cross-beam
    // quantization leakage that a bare phase copy would radiate.
    hyb.baseband = hyb.analog.colPivHouseholderQr().solve(
        Eigen::MatrixXcd(digital.beams.leftCols(hyb.served_users)));
    return hyb;
}

Eigen::MatrixXcd standard_hybrid_block(const StandardHybridPrecoder &hyb,
                                       const Eigen::MatrixXcd &symbols,
                                       const RadiationQuadrature &quad)
{
    if (symbols.rows() < hyb.served_users)
        throw std::invalid_argument("standard_hybrid_block: fewer symbol rows than served users");
    if (symbols.cols() < 1)
        throw std::invalid_argument("standard_hybrid_block: need at least one symbol column");

    Eigen::MatrixXcd y = hyb.analog * (hyb.baseband * symbols.topRows(hyb.served_users));
    double raw_power = quad.block_power(y);
    if (!(raw_power > 0.0))
        throw std::invalid_argument("standard_hybrid_block: block radiates no power");

    const double target = 4.0 * kPi * static_cast<double>(symbols.cols());
    return std::sqrt(target / raw_power) * y;
}

SbsBlock build_sbs(const Eigen::MatrixXcd &digital_y_block, const PhaseSet &phases,
                   int l_chains)
{
    SbsBlock block;
    const Eigen::Index t_len = digital_y_block.cols();
    if (t_len == 0)
    {
        block.y_block.resize(digital_y_block.rows(), 0);
        return block;
    }

    std::vector<SbsColumnResult> results = sbs_precode_block(digital_y_block, phases, l_chains);
    block.solutions.reserve(static_cast<std::size_t>(t_len));
    block.y_block.resize(digital_y_block.rows(), t_len);
    for (Eigen::Index t = 0; t < t_len; ++t)
    {
        SbsColumnResult &r = results[static_cast<std::size_t>(t)];
        if (!r.solution)
            throw std::invalid_argument("build_sbs: " + r.error);
        block.y_block.col(t) = r.solution->analog * r.solution->baseband;
        block.solutions.push_back(std::move(*r.solution));
    }
    return block;
}

Eigen::MatrixXcd quantize_to_alphabet(const Eigen::MatrixXcd &values, const PhaseSet &phases)
{
    Eigen::MatrixXcd out(values.rows(), values.cols());
    for (Eigen::Index j = 0; j < values.cols(); ++j)
        for (Eigen::Index i = 0; i < values.rows(); ++i)
            out(i, j) = phases.phase(phases.nearest_index(std::arg(values(i, j))));
    return out;
}

} // namespace sbs
