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
#include <string>
#include <vector>

#include "sbs/array_model.hpp"

namespace sbs
{

enum class Constellation
{
    qpsk_unit,    ///< unit magnitude, phase uniform over four quadrature points
    gaussian_unit ///< circular complex Gaussian, unit variance
};

/// One randomized downlink setup: user directions, channel power gains, and a
/// block of transmit symbols.
struct Scenario
{
    int n_antennas = 16;
    int l_chains = 4;
    int q_phases = 8;
    std::vector<double> users;     ///< azimuths in radians, serving range [30, 150] deg
    Eigen::VectorXd channel_gains; ///< h_k, unit-mean exponential draws
    Eigen::MatrixXcd symbols;      ///< K x T
    Constellation constellation = Constellation::qpsk_unit;
    std::uint64_t seed = 0;
};

struct ScenarioParams
{
    int n_antennas = 16;
    int l_chains = 4;
    int q_phases = 8;
    int k_users = 10;
    int block_len = 0; ///< symbol columns; 0 selects 64 * k_users
    double min_separation_deg = 7.2;
    /// Lower bound on the beam-domain separation |sin(az_j - b) - sin(az_k - b)|
    /// (b = boresight), the metric that actually controls mainlobe overlap.
    /// Negative selects 2 / n_antennas, the null-to-null mainlobe width.
    double mirror_guard = -1.0;
    Constellation constellation = Constellation::qpsk_unit;
    int max_rejections = 100000;
};

/// Rejection-samples user azimuths uniformly over the serving range subject
/// to the separation constraints, then draws gains and symbols.  Fully
/// deterministic in (params, seed).
Scenario sample_scenario(const ScenarioParams &params, std::uint64_t seed);

/// Fixed ten-user composite-beam scenario: one QPSK symbol per user, N = 16,
/// L = 3, Q = 8.
Scenario reference_scenario();

/// Same user geometry with a seeded random QPSK block of the given length.
Scenario reference_scenario_block(int block_len, std::uint64_t seed);

struct SweepSeries
{
    std::string name;
    std::vector<double> mean;      ///< per axis point
    std::vector<double> std_error; ///< standard error of the mean
    Eigen::MatrixXd samples;       ///< axis points x realizations, NaN where undefined
};

struct SweepResult
{
    std::string axis_label;
    std::vector<double> axis;
    std::vector<SweepSeries> series;
    int realizations = 0;
};

struct SweepConfig
{
    ScenarioParams scenario{};
    double grid_deg = 1.0; ///< power-normalization quadrature step
    double noise_variance = 1.0;
    std::uint64_t seed = 0; ///< base seed; realization r uses derive_stream_seed(seed, r)
};

/// Mean SIDR versus RF chain count for the digital baseline, the quantized
/// standard hybrid (serving all users, defined only where L >= K), and the
/// symbol-by-symbol scheme at each alphabet size in q_values.  One scenario
/// per realization is shared across every (L, Q) point.
SweepResult run_sidr_sweep(const SweepConfig &cfg, const std::vector<int> &l_values,
                           const std::vector<int> &q_values, int realizations);

/// Mean sum rate versus user count for digital, standard hybrid (serving
/// min(L, K) users), and the symbol-by-symbol scheme.  Each realization
/// samples the largest user set once and reuses nested prefixes, so series
/// differences are paired.
SweepResult run_sumrate_sweep(const SweepConfig &cfg, const std::vector<int> &k_values,
                              int realizations);

/// CSV with the axis label followed by one column per series, %.12g values.
void write_sweep_csv(const SweepResult &result, const std::string &path);

/// Stateless per-stream seed derivation (splitmix64 over base and index).
std::uint64_t derive_stream_seed(std::uint64_t base, std::uint64_t index);

} // namespace sbs
