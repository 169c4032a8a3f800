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

#include "sbs/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "sbs/errors.hpp"
#include "sbs/metrics.hpp"
#include "sbs/phase_set.hpp"
#include "sbs/precoding.hpp"

namespace sbs
{

namespace
{

constexpr double kPi = std::numbers::pi;
constexpr double kDeg2Rad = kPi / 180.0;
constexpr double kServeMinDeg = 30.0;
constexpr double kServeMaxDeg = 150.0;
const double kNan = std::numeric_limits<double>::quiet_NaN();

int block_length(const ScenarioParams &params, int k_users)
{
    return params.block_len > 0 ? params.block_len : 64 * k_users;
}

Eigen::MatrixXcd draw_symbols(std::mt19937_64 &rng, Constellation constellation, int k, int t)
{
    Eigen::MatrixXcd s(k, t);
    if (constellation == Constellation::qpsk_unit)
    {
        static const std::complex<double> points[4] = {
            {1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
        std::uniform_int_distribution<int> pick(0, 3);
        for (Eigen::Index col = 0; col < t; ++col)
            for (Eigen::Index row = 0; row < k; ++row)
                s(row, col) = points[pick(rng)];
    }
    else
    {
        std::normal_distribution<double> component(0.0, std::sqrt(0.5));
        for (Eigen::Index col = 0; col < t; ++col)
            for (Eigen::Index row = 0; row < k; ++row)
            {
                double re = component(rng);
                double im = component(rng);
                s(row, col) = {re, im};
            }
    }
    return s;
}

void check_params(const ScenarioParams &params)
{
    if (params.n_antennas < 1)
        throw ConfigurationError("scenario: n_antennas must be >= 1");
    if (params.k_users < 1)
        throw ConfigurationError("scenario: k_users must be >= 1");
    if (params.l_chains < 1)
        throw ConfigurationError("scenario: l_chains must be >= 1");
    if (params.q_phases < 1)
        throw ConfigurationError("scenario: q_phases must be >= 1");
    if (params.min_separation_deg < 0.0)
        throw ConfigurationError("scenario: separation bounds must be nonnegative");
    double width = kServeMaxDeg - kServeMinDeg;
    if (static_cast<double>(params.k_users) * params.min_separation_deg > width)
        throw ConfigurationError("scenario: k_users * min_separation exceeds the serving range");
}

struct SchemeValues
{
    double digital = kNan;
    double hybrid = kNan;
    std::vector<double> sbs; // one per requested alphabet size
};

void finalize(SweepSeries &series)
{
    const Eigen::Index points = series.samples.rows();
    const Eigen::Index reps = series.samples.cols();
    series.mean.assign(static_cast<std::size_t>(points), kNan);
    series.std_error.assign(static_cast<std::size_t>(points), kNan);
    for (Eigen::Index p = 0; p < points; ++p)
    {
        double mean = series.samples.row(p).mean();
        series.mean[static_cast<std::size_t>(p)] = mean;
        if (reps < 2)
        {
            series.std_error[static_cast<std::size_t>(p)] = 0.0;
            continue;
        }
        double ssq = (series.samples.row(p).array() - mean).square().sum();
        series.std_error[static_cast<std::size_t>(p)] =
            std::sqrt(ssq / static_cast<double>(reps - 1) / static_cast<double>(reps));
    }
}

} // namespace

std::uint64_t derive_stream_seed(std::uint64_t base, std::uint64_t index)
{
    std::uint64_t x = base + 0x9E3779B97F4A7C15ULL * (index + 1);
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ULL;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBULL;
    x ^= x >> 31;
    return x;
}

Scenario sample_scenario(const ScenarioParams &params, std::uint64_t seed)
{
    check_params(params);
    const int k = params.k_users;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> az_draw(kServeMinDeg * kDeg2Rad,
                                                   kServeMaxDeg * kDeg2Rad);

    const double min_sep_rad = params.min_separation_deg * kDeg2Rad;
    const double boresight = 0.5 * kPi;
    // Auto guard: the null-to-null width 2/N, capped so rejection sampling
    // keeps a workable acceptance rate when many users share the sector.
    const double span = std::sin(kServeMaxDeg * kDeg2Rad - boresight) -
                        std::sin(kServeMinDeg * kDeg2Rad - boresight);
    double guard = params.mirror_guard;
    if (guard < 0.0)
    {
        guard = 2.0 / static_cast<double>(params.n_antennas);
        if (k > 1)
            guard = std::min(guard, 0.6 * span / static_cast<double>(k - 1));
    }
    std::vector<double> users(static_cast<std::size_t>(k));
    std::vector<double> beam(static_cast<std::size_t>(k));
    int rejections = 0;
    while (true)
    {
        for (int i = 0; i < k; ++i)
        {
            users[static_cast<std::size_t>(i)] = az_draw(rng);
            beam[static_cast<std::size_t>(i)] =
                std::sin(users[static_cast<std::size_t>(i)] - boresight);
        }
        bool ok = true;
        for (int i = 0; i < k && ok; ++i)
            for (int j = i + 1; j < k && ok; ++j)
            {
                if (std::abs(users[i] - users[j]) < min_sep_rad)
                    ok = false;
                else if (std::abs(beam[i] - beam[j]) < guard)
                    ok = false;
            }
        if (ok)
            break;
        if (++rejections > params.max_rejections)
            throw SamplingStuckError("sample_scenario: exceeded " +
                                     std::to_string(params.max_rejections) +
                                     " rejections; constraints look infeasible");
    }

    Scenario scn;
    scn.n_antennas = params.n_antennas;
    scn.l_chains = params.l_chains;
    scn.q_phases = params.q_phases;
    scn.users = std::move(users);
    scn.constellation = params.constellation;
    scn.seed = seed;

    std::exponential_distribution<double> gain_draw(1.0);
    scn.channel_gains.resize(k);
    for (int i = 0; i < k; ++i)
        scn.channel_gains[i] = gain_draw(rng);

    scn.symbols = draw_symbols(rng, params.constellation, k, block_length(params, k));
    return scn;
}

Scenario reference_scenario()
{
    Scenario scn;
    scn.n_antennas = 16;
    scn.l_chains = 3;
    scn.q_phases = 8;
    scn.constellation = Constellation::qpsk_unit;
    scn.seed = 0;

    const double deg[10] = {34.0, 48.0, 62.0, 77.0, 85.0, 93.0, 102.0, 116.0, 127.0, 142.0};
    scn.users.resize(10);
    for (int i = 0; i < 10; ++i)
        scn.users[static_cast<std::size_t>(i)] = deg[i] * kDeg2Rad;

    scn.channel_gains = Eigen::VectorXd::Ones(10);

    const std::complex<double> j{0.0, 1.0};
    scn.symbols.resize(10, 1);
    scn.symbols.col(0) << -1.0, j, -j, -1.0, -1.0, 1.0, -j, -1.0, -1.0, j;
    return scn;
}

Scenario reference_scenario_block(int block_len, std::uint64_t seed)
{
    if (block_len < 1)
        throw std::invalid_argument("reference_scenario_block: block_len must be >= 1");
    Scenario scn = reference_scenario();
    scn.seed = seed;
    std::mt19937_64 rng(seed);
    scn.symbols = draw_symbols(rng, Constellation::qpsk_unit, 10, block_len);
    return scn;
}

SweepResult run_sidr_sweep(const SweepConfig &cfg, const std::vector<int> &l_values,
                           const std::vector<int> &q_values, int realizations)
{
    if (l_values.empty() || q_values.empty())
        throw ConfigurationError("run_sidr_sweep: need at least one L and one Q value");
    if (realizations < 1)
        throw ConfigurationError("run_sidr_sweep: need at least one realization");
    for (int l : l_values)
        if (l < 1 || l > cfg.scenario.n_antennas)
            throw ConfigurationError("run_sidr_sweep: L values must lie in [1, N]");
    for (int q : q_values)
        if (q < 1)
            throw ConfigurationError("run_sidr_sweep: Q values must be >= 1");

    const int k = cfg.scenario.k_users;
    const Eigen::Index points = static_cast<Eigen::Index>(l_values.size());

    UlaConfig array{cfg.scenario.n_antennas, 0.5, ElementPattern{}};
    RadiationQuadrature quad(array, cfg.grid_deg);
    PhaseSet hybrid_phases(cfg.scenario.q_phases);

    SweepResult result;
    result.axis_label = "RFC";
    result.axis.assign(l_values.begin(), l_values.end());
    result.realizations = realizations;
    result.series.resize(2 + q_values.size());
    result.series[0].name = "digital";
    result.series[1].name = "hybrid";
    for (std::size_t qi = 0; qi < q_values.size(); ++qi)
        result.series[2 + qi].name = "SbS_" + std::to_string(q_values[qi]);
    for (auto &s : result.series)
        s.samples = Eigen::MatrixXd::Constant(points, realizations, kNan);

    for (int rep = 0; rep < realizations; ++rep)
    {
        Scenario scn = sample_scenario(
            cfg.scenario, derive_stream_seed(cfg.seed, static_cast<std::uint64_t>(rep)));
        Eigen::MatrixXcd toward_users = steering_matrix(array, scn.users).adjoint();

        DigitalBlock dig = build_digital(array, scn.users, scn.symbols, quad);
        double sidr_dig = sidr_db(decompose(toward_users * dig.y_block, scn.symbols));

        StandardHybridPrecoder hyb = build_standard_hybrid(dig.precoder, hybrid_phases, k);
        Eigen::MatrixXcd y_hyb = standard_hybrid_block(hyb, scn.symbols, quad);
        double sidr_hyb = sidr_db(decompose(toward_users * y_hyb, scn.symbols));

        for (Eigen::Index p = 0; p < points; ++p)
        {
            int l = l_values[static_cast<std::size_t>(p)];
            result.series[0].samples(p, rep) = sidr_dig;
            if (l >= k)
                result.series[1].samples(p, rep) = sidr_hyb;
            for (std::size_t qi = 0; qi < q_values.size(); ++qi)
            {
                SbsBlock sbs = build_sbs(dig.y_block, PhaseSet(q_values[qi]), l);
                result.series[2 + qi].samples(p, rep) =
                    sidr_db(decompose(toward_users * sbs.y_block, scn.symbols));
            }
        }
    }

    for (auto &s : result.series)
        finalize(s);
    return result;
}

SweepResult run_sumrate_sweep(const SweepConfig &cfg, const std::vector<int> &k_values,
                              int realizations)
{
    if (k_values.empty())
        throw ConfigurationError("run_sumrate_sweep: need at least one user count");
    if (realizations < 1)
        throw ConfigurationError("run_sumrate_sweep: need at least one realization");
    for (int k : k_values)
        if (k < 1)
            throw ConfigurationError("run_sumrate_sweep: user counts must be >= 1");
    if (!(cfg.noise_variance > 0.0))
        throw ConfigurationError("run_sumrate_sweep: noise variance must be positive");

    const int k_max = *std::max_element(k_values.begin(), k_values.end());
    const Eigen::Index points = static_cast<Eigen::Index>(k_values.size());

    UlaConfig array{cfg.scenario.n_antennas, 0.5, ElementPattern{}};
    RadiationQuadrature quad(array, cfg.grid_deg);
    PhaseSet phases(cfg.scenario.q_phases);

    ScenarioParams outer = cfg.scenario;
    outer.k_users = k_max;

    SweepResult result;
    result.axis_label = "Nusers";
    result.axis.assign(k_values.begin(), k_values.end());
    result.realizations = realizations;
    result.series.resize(3);
    result.series[0].name = "digital";
    result.series[1].name = "hybrid";
    result.series[2].name = "SbS";
    for (auto &s : result.series)
        s.samples = Eigen::MatrixXd::Constant(points, realizations, kNan);

    for (int rep = 0; rep < realizations; ++rep)
    {
        Scenario scn = sample_scenario(
            outer, derive_stream_seed(cfg.seed, static_cast<std::uint64_t>(rep)));
        for (Eigen::Index p = 0; p < points; ++p)
        {
            int k = k_values[static_cast<std::size_t>(p)];
            int t = std::min<int>(block_length(cfg.scenario, k),
                                  static_cast<int>(scn.symbols.cols()));
            std::vector<double> users(scn.users.begin(), scn.users.begin() + k);
            Eigen::VectorXd gains = scn.channel_gains.head(k);
            Eigen::MatrixXcd symbols = scn.symbols.topLeftCorner(k, t);
            Eigen::MatrixXcd toward_users = steering_matrix(array, users).adjoint();

            DigitalBlock dig = build_digital(array, users, symbols, quad);
            result.series[0].samples(p, rep) =
                rate_report(decompose(toward_users * dig.y_block, symbols), gains,
                            cfg.noise_variance)
                    .sum_rate;

            StandardHybridPrecoder hyb =
                build_standard_hybrid(dig.precoder, phases, cfg.scenario.l_chains);
            Eigen::MatrixXcd y_hyb = standard_hybrid_block(hyb, symbols, quad);
            result.series[1].samples(p, rep) =
                rate_report(decompose(toward_users * y_hyb, symbols), gains,
                            cfg.noise_variance)
                    .sum_rate;

            SbsBlock sbs = build_sbs(dig.y_block, phases, cfg.scenario.l_chains);
            result.series[2].samples(p, rep) =
                rate_report(decompose(toward_users * sbs.y_block, symbols), gains,
                            cfg.noise_variance)
                    .sum_rate;
        }
    }

    for (auto &s : result.series)
        finalize(s);
    return result;
}

void write_sweep_csv(const SweepResult &result, const std::string &path)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("write_sweep_csv: cannot open " + path);

    out << result.axis_label;
    for (const auto &s : result.series)
        out << ',' << s.name;
    out << "\n";

    char buf[64];
    for (std::size_t i = 0; i < result.axis.size(); ++i)
    {
        std::snprintf(buf, sizeof(buf), "%.12g", result.axis[i]);
        out << buf;
        for (const auto &s : result.series)
        {
            std::snprintf(buf, sizeof(buf), "%.12g", s.mean[i]);
            out << ',' << buf;
        }
        out << "\n";
    }
    if (!out)
        throw std::runtime_error("write_sweep_csv: write failed for " + path);
}

} // namespace sbs
