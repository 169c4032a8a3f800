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
#include <vector>

#include "sbs/array_model.hpp"
#include "sbs/omp.hpp"
#include "sbs/phase_set.hpp"

namespace sbs
{

/// Fully digital per-user beams, power-normalized over a symbol block.
struct DigitalPrecoder
{
    Eigen::MatrixXcd beams;     ///< N x K, scaled by the normalization constant
    double norm_constant = 1.0; ///< c such that the block radiates 4 pi T
};

struct DigitalBlock
{
    DigitalPrecoder precoder;
    Eigen::MatrixXcd y_block; ///< N x T transmit signal
};

/// Pattern-compensated steering beams toward each user azimuth, scaled so the
/// transmit block radiates exactly 4 pi T under the supplied quadrature.
/// Azimuths must lie in the serving range [30, 150] degrees.
DigitalBlock build_digital(const UlaConfig &cfg, const std::vector<double> &azimuths,
                           const Eigen::MatrixXcd &symbols, const RadiationQuadrature &quad);

/// Phase-quantized copies of the first min(L, K) digital beams plus the
/// least-squares baseband stage fitting the digital beams through them.
struct StandardHybridPrecoder
{
    Eigen::MatrixXcd analog;   ///< N x served_users, unit-modulus alphabet entries
    Eigen::MatrixXcd baseband; ///< served_users x served_users LS fit
    int served_users = 0;
};

StandardHybridPrecoder build_standard_hybrid(const DigitalPrecoder &digital,
                                             const PhaseSet &phases, int l_chains);

/// Transmit block of the standard hybrid scheme for the served users, scaled
/// to radiate 4 pi T.
Eigen::MatrixXcd standard_hybrid_block(const StandardHybridPrecoder &hyb,
                                       const Eigen::MatrixXcd &symbols,
                                       const RadiationQuadrature &quad);

/// Symbol-by-symbol hybrid approximation of a digital transmit block.  Each
/// column is factored through the phase-vector pursuit; no renormalization is
/// applied on top of the digital block's.
struct SbsBlock
{
    std::vector<SbSSolution> solutions; ///< per transmitted symbol vector
    Eigen::MatrixXcd y_block;           ///< N x T reconstruction analog * baseband
};

SbsBlock build_sbs(const Eigen::MatrixXcd &digital_y_block, const PhaseSet &phases,
                   int l_chains);

/// Entrywise nearest-alphabet phase with unit magnitude.  Half-resolution
/// ties round toward the larger wrapped index.
Eigen::MatrixXcd quantize_to_alphabet(const Eigen::MatrixXcd &values, const PhaseSet &phases);

} // namespace sbs
