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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <limits>
#include <random>
#include <stdexcept>

#include "sbs/errors.hpp"
#include "sbs/metrics.hpp"

namespace
{

Eigen::MatrixXcd random_symbols(int k, int t, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, std::sqrt(0.5));
    Eigen::MatrixXcd s(k, t);
    for (int col = 0; col < t; ++col)
        for (int row = 0; row < k; ++row)
            s(row, col) = {g(rng), g(rng)};
    return s;
}

Eigen::MatrixXcd random_gain(int k, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::MatrixXcd m(k, k);
    for (int col = 0; col < k; ++col)
        for (int row = 0; row < k; ++row)
            m(row, col) = {g(rng), g(rng)};
    return m;
}

} // namespace

TEST_SUITE("gain decomposition")
{
    TEST_CASE("a purely linear map is recovered with zero distortion")
    {
        const int k = 4;
        const int t = 64;
        Eigen::MatrixXcd gain = random_gain(k, 1);
        Eigen::MatrixXcd symbols = random_symbols(k, t, 2);
        sbs::GainDecomposition dec = sbs::decompose(gain * symbols, symbols);

        CHECK((dec.gain_matrix - gain).cwiseAbs().maxCoeff() < 1e-10);
        CHECK(dec.distortion.cwiseAbs().maxCoeff() < 1e-10);
        for (int u = 0; u < k; ++u)
        {
            double inter = 0.0;
            for (int v = 0; v < k; ++v)
                if (v != u)
                    inter += std::norm(gain(u, v));
            CHECK(dec.interference_power[u] == doctest::Approx(inter).epsilon(1e-9));
            CHECK(dec.distortion_power[u] < 1e-18);
        }
    }

    TEST_CASE("additive residue uncorrelated with the symbols becomes distortion")
    {
        // One user, alternating +/-1 symbols, constant offset: the offset has
        // zero correlation with the symbol stream, so the fit leaves it whole.
        const int t = 8;
        Eigen::MatrixXcd symbols(1, t);
        for (int i = 0; i < t; ++i)
            symbols(0, i) = (i % 2 == 0) ? 1.0 : -1.0;
        Eigen::MatrixXcd z = 2.0 * symbols;
        z.array() += std::complex<double>{1.0, 0.0};

        sbs::GainDecomposition dec = sbs::decompose(z, symbols);
        CHECK(std::abs(dec.gain_matrix(0, 0) - std::complex<double>{2.0, 0.0}) < 1e-12);
        CHECK(dec.interference_power[0] == doctest::Approx(0.0));
        CHECK(dec.distortion_power[0] == doctest::Approx(1.0).epsilon(1e-12));
        // SIDR: |2|^2 over distortion power 1.
        CHECK(sbs::sidr_db(dec) == doctest::Approx(10.0 * std::log10(4.0)).epsilon(1e-12));
    }

    TEST_CASE("impairment-free reception reports an infinite ratio")
    {
        // Power-of-two symbol values keep the solve exact, so the impairment
        // power is exactly zero and the sentinel fires.
        Eigen::MatrixXcd symbols(1, 8);
        for (int i = 0; i < 8; ++i)
            symbols(0, i) = (i % 2 == 0) ? 1.0 : -1.0;
        sbs::GainDecomposition dec = sbs::decompose(3.0 * symbols, symbols);
        CHECK(std::isinf(sbs::sidr_db(dec)));
    }

    TEST_CASE("short blocks are rejected")
    {
        Eigen::MatrixXcd symbols = random_symbols(4, 3, 4);
        Eigen::MatrixXcd z = Eigen::MatrixXcd::Ones(4, 3);
        CHECK_THROWS_AS(sbs::decompose(z, symbols), sbs::RankDeficiencyError);
    }

    TEST_CASE("linearly dependent symbol rows are rejected")
    {
        Eigen::MatrixXcd symbols = random_symbols(2, 16, 5);
        symbols.row(1) = 2.0 * symbols.row(0);
        Eigen::MatrixXcd z = Eigen::MatrixXcd::Ones(2, 16);
        CHECK_THROWS_AS(sbs::decompose(z, symbols), sbs::RankDeficiencyError);
    }

    TEST_CASE("shape and content validation")
    {
        Eigen::MatrixXcd symbols = random_symbols(2, 8, 6);
        Eigen::MatrixXcd wrong = Eigen::MatrixXcd::Ones(3, 8);
        CHECK_THROWS_AS(sbs::decompose(wrong, symbols), std::invalid_argument);

        Eigen::MatrixXcd nan_block = Eigen::MatrixXcd::Ones(2, 8);
        nan_block(0, 0) = std::numeric_limits<double>::quiet_NaN();
        CHECK_THROWS_AS(sbs::decompose(nan_block, symbols), std::invalid_argument);

        Eigen::MatrixXcd no_users(0, 8);
        CHECK_THROWS_AS(sbs::decompose(no_users, no_users), std::invalid_argument);
    }
}

TEST_SUITE("rate report")
{
    TEST_CASE("closed-form check on a diagonal-plus-leakage gain matrix")
    {
        // z = G s exactly, so the only impairment is the off-diagonal leakage.
        const int t = 32;
        Eigen::MatrixXcd gain(2, 2);
        gain << 2.0, 0.5, 0.3, 1.0;
        Eigen::MatrixXcd symbols = random_symbols(2, t, 7);
        sbs::GainDecomposition dec = sbs::decompose(gain * symbols, symbols);

        Eigen::VectorXd h(2);
        h << 1.0, 4.0;
        sbs::RateReport rep = sbs::rate_report(dec, h, 0.5);

        const double sindr0 = 1.0 * 4.0 / (0.5 + 1.0 * 0.25);
        const double sindr1 = 4.0 * 1.0 / (0.5 + 4.0 * 0.09);
        CHECK(rep.sindr[0] == doctest::Approx(sindr0).epsilon(1e-9));
        CHECK(rep.sindr[1] == doctest::Approx(sindr1).epsilon(1e-9));
        CHECK(rep.capacity[0] == doctest::Approx(std::log2(1.0 + sindr0)).epsilon(1e-9));
        CHECK(rep.sum_rate ==
              doctest::Approx(std::log2(1.0 + sindr0) + std::log2(1.0 + sindr1))
                  .epsilon(1e-9));
        CHECK(rep.noise_variance == doctest::Approx(0.5));
        CHECK(rep.sidr_db == doctest::Approx(sbs::sidr_db(dec)));
    }

    TEST_CASE("a fading channel with zero gain contributes zero rate")
    {
        Eigen::MatrixXcd symbols = random_symbols(2, 16, 8);
        Eigen::MatrixXcd gain = random_gain(2, 9);
        sbs::GainDecomposition dec = sbs::decompose(gain * symbols, symbols);
        Eigen::VectorXd h(2);
        h << 0.0, 1.0;
        sbs::RateReport rep = sbs::rate_report(dec, h, 1.0);
        CHECK(rep.sindr[0] == doctest::Approx(0.0));
        CHECK(rep.capacity[0] == doctest::Approx(0.0));
        CHECK(rep.sum_rate == doctest::Approx(rep.capacity[1]).epsilon(1e-12));
    }

    TEST_CASE("argument validation")
    {
        Eigen::MatrixXcd symbols = random_symbols(2, 16, 10);
        Eigen::MatrixXcd gain = random_gain(2, 11);
        sbs::GainDecomposition dec = sbs::decompose(gain * symbols, symbols);

        Eigen::VectorXd h(2);
        h << 1.0, 1.0;
        CHECK_THROWS_AS(sbs::rate_report(dec, h, 0.0), std::invalid_argument);
        CHECK_THROWS_AS(sbs::rate_report(dec, h, -1.0), std::invalid_argument);

        Eigen::VectorXd negative(2);
        negative << 1.0, -0.5;
        CHECK_THROWS_AS(sbs::rate_report(dec, negative, 1.0), std::invalid_argument);

        Eigen::VectorXd wrong_len = Eigen::VectorXd::Ones(3);
        CHECK_THROWS_AS(sbs::rate_report(dec, wrong_len, 1.0), std::invalid_argument);
    }
}
