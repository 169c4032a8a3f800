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

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <stdexcept>

#include "sbs/errors.hpp"
#include "sbs/phase_opt.hpp"
#include "sbs/phase_set.hpp"

namespace
{

constexpr double kPi = std::numbers::pi;

Eigen::VectorXcd random_vector(int n, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::VectorXcd r(n);
    for (int i = 0; i < n; ++i)
        r[i] = {g(rng), g(rng)};
    return r;
}

// True when b equals a up to one global alphabet rotation.
bool same_rotation_class(const Eigen::VectorXcd &a, const Eigen::VectorXcd &b,
                         const sbs::PhaseSet &phases)
{
    std::complex<double> ratio = b[0] / a[0];
    if (!phases.contains(ratio, 1e-9))
        return false;
    for (Eigen::Index i = 0; i < a.size(); ++i)
        if (std::abs(b[i] - ratio * a[i]) > 1e-9)
            return false;
    return true;
}

} // namespace

TEST_SUITE("phase alphabet")
{
    TEST_CASE("constructor rejects non-positive sizes")
    {
        CHECK_THROWS_AS(sbs::PhaseSet(0), std::invalid_argument);
        CHECK_THROWS_AS(sbs::PhaseSet(-3), std::invalid_argument);
        CHECK(sbs::PhaseSet(1).q_count() == 1);
    }

    TEST_CASE("phase values and index wrapping")
    {
        sbs::PhaseSet p4(4);
        CHECK(p4.delta() == doctest::Approx(kPi / 2.0));
        CHECK(std::abs(p4.phase(0) - std::complex<double>{1.0, 0.0}) < 1e-15);
        CHECK(std::abs(p4.phase(1) - std::complex<double>{0.0, 1.0}) < 1e-15);
        CHECK(std::abs(p4.phase(2) - std::complex<double>{-1.0, 0.0}) < 1e-15);
        CHECK(std::abs(p4.phase(5) - p4.phase(1)) < 1e-15);
        CHECK(std::abs(p4.phase(-1) - p4.phase(3)) < 1e-15);
        CHECK(p4.wrap_index(-1) == 3);
        CHECK(p4.wrap_index(9) == 1);
        CHECK(p4.wrap_index(-8) == 0);
    }

    TEST_CASE("nearest index picks the closest alphabet angle")
    {
        sbs::PhaseSet p4(4);
        CHECK(p4.nearest_index(0.1) == 0);
        CHECK(p4.nearest_index(kPi / 2.0 - 0.1) == 1);
        CHECK(p4.nearest_index(-0.1) == 0);
        CHECK(p4.nearest_index(-kPi / 2.0 + 0.1) == 3);
        CHECK(p4.nearest_index(kPi - 0.1) == 2);
        CHECK(p4.nearest_index(2.0 * kPi + 0.1) == 0);
    }

    TEST_CASE("exact midpoint ties resolve toward the larger wrapped index")
    {
        sbs::PhaseSet p4(4);
        // Midpoint between indices 0 and 1.
        CHECK(p4.nearest_index(kPi / 4.0) == 1);
        // Midpoint between indices 3 and 0; 3 is the larger wrapped index.
        CHECK(p4.nearest_index(-kPi / 4.0) == 3);

        sbs::PhaseSet p2(2);
        CHECK(p2.nearest_index(kPi / 2.0) == 1);
    }

    TEST_CASE("contains accepts members and rejects near misses")
    {
        sbs::PhaseSet p8(8);
        for (int j = 0; j < 8; ++j)
            CHECK(p8.contains(p8.phase(j)));
        CHECK(p8.contains(std::polar(1.0, p8.delta() + 1e-12)));
        CHECK_FALSE(p8.contains(std::polar(1.0, p8.delta() / 2.0)));
        CHECK_FALSE(p8.contains({0.5, 0.0}));
        CHECK_FALSE(p8.contains({2.0, 0.0}));
    }
}

TEST_SUITE("optimal phase vector")
{
    TEST_CASE("single entry reaches the entry magnitude")
    {
        Eigen::VectorXcd r(1);
        r << std::complex<double>{3.0, 4.0};
        for (int q : {1, 2, 7, 64})
        {
            sbs::PhaseVectorSolution sol = sbs::optimal_phase_vector(r, sbs::PhaseSet(q));
            CHECK(sol.objective == doctest::Approx(5.0).epsilon(1e-12));
            CHECK(sol.indices.size() == 1);
        }
    }

    TEST_CASE("known two-entry binary optimum")
    {
        Eigen::VectorXcd r(2);
        r << std::complex<double>{1.0, 0.0}, std::complex<double>{-2.0, 0.0};
        sbs::PhaseVectorSolution sol = sbs::optimal_phase_vector(r, sbs::PhaseSet(2));
        CHECK(sol.objective == doctest::Approx(3.0).epsilon(1e-12));
        CHECK(sol.indices == std::vector<int>{0, 1});
        CHECK(std::abs(sol.omega[0] - std::complex<double>{1.0, 0.0}) < 1e-12);
        CHECK(std::abs(sol.omega[1] - std::complex<double>{-1.0, 0.0}) < 1e-12);
    }

    TEST_CASE("a target inside the alphabet is matched exactly")
    {
        sbs::PhaseSet phases(8);
        Eigen::VectorXcd r(5);
        for (int i = 0; i < 5; ++i)
            r[i] = phases.phase(3 * i + 1);
        sbs::PhaseVectorSolution sol = sbs::optimal_phase_vector(r, phases);
        CHECK(sol.objective == doctest::Approx(5.0).epsilon(1e-12));
        for (int i = 0; i < 5; ++i)
            CHECK(std::abs(sol.omega[i] - r[i]) < 1e-12);
    }

    TEST_CASE("matches the exhaustive search on random instances")
    {
        double worst = 0.0;
        for (int n : {2, 3, 4, 5})
            for (int q : {2, 3, 4, 8})
            {
                sbs::PhaseSet phases(q);
                for (std::uint64_t seed = 0; seed < 40; ++seed)
                {
                    Eigen::VectorXcd r = random_vector(n, 1000 * seed + 17);
                    sbs::PhaseVectorSolution fast = sbs::optimal_phase_vector(r, phases);
                    sbs::PhaseVectorSolution ref = sbs::brute_force_phase_vector(r, phases);
                    double rel = std::abs(fast.objective - ref.objective) /
                                 std::max(1.0, ref.objective);
                    worst = std::max(worst, rel);
                    REQUIRE(rel <= 1e-12);
                    CHECK(same_rotation_class(ref.omega, fast.omega, phases));
                    for (Eigen::Index i = 0; i < r.size(); ++i)
                        CHECK(phases.contains(fast.omega[i]));
                    CHECK(std::abs(fast.omega.dot(r)) ==
                          doctest::Approx(fast.objective).epsilon(1e-12));
                }
            }
        CHECK(worst <= 1e-12);
    }

    TEST_CASE("zero entries do not disturb the objective")
    {
        sbs::PhaseSet phases(4);
        Eigen::VectorXcd r(4);
        r << std::complex<double>{0.0, 0.0}, std::complex<double>{1.0, 2.0},
            std::complex<double>{0.0, 0.0}, std::complex<double>{-0.5, 1.5};

        Eigen::VectorXcd dense(2);
        dense << r[1], r[3];
        sbs::PhaseVectorSolution full = sbs::optimal_phase_vector(r, phases);
        sbs::PhaseVectorSolution reduced = sbs::optimal_phase_vector(dense, phases);
        CHECK(full.objective == doctest::Approx(reduced.objective).epsilon(1e-12));
        // Zero entries carry the shared anchor rotation and stay alphabet members.
        CHECK(full.indices[0] == full.indices[2]);
        CHECK(phases.contains(full.omega[0]));
    }

    TEST_CASE("search state reports the candidate walk")
    {
        sbs::PhaseSet phases(8);
        Eigen::VectorXcd r = random_vector(6, 42);
        sbs::PhaseSearchState state;
        sbs::PhaseVectorSolution sol = sbs::optimal_phase_vector(r, phases, &state);

        CHECK(state.updates == 5);
        CHECK(state.best_index >= 0);
        CHECK(state.best_index <= state.updates);
        CHECK(state.best_magnitude == doctest::Approx(sol.objective).epsilon(1e-12));

        const double delta = phases.delta();
        for (Eigen::Index i = 0; i < r.size(); ++i)
        {
            CHECK(std::abs(state.rotated[i]) == doctest::Approx(std::abs(r[i])).epsilon(1e-12));
            double ph = std::arg(state.rotated[i]);
            CHECK(ph >= -1e-12);
            CHECK(ph < delta + 1e-12);
        }
        for (std::size_t i = 1; i < state.ordering.size(); ++i)
        {
            double prev = std::arg(state.rotated[state.ordering[i - 1]]);
            double next = std::arg(state.rotated[state.ordering[i]]);
            CHECK(prev <= next + 1e-12);
        }
    }

    TEST_CASE("correlation lands inside the base sector")
    {
        for (int q : {2, 3, 4, 8, 16})
        {
            sbs::PhaseSet phases(q);
            for (std::uint64_t seed = 0; seed < 20; ++seed)
            {
                Eigen::VectorXcd r = random_vector(5, 7000 + seed);
                sbs::PhaseVectorSolution sol = sbs::optimal_phase_vector(r, phases);
                double angle = std::arg(sol.omega.dot(r));
                CHECK(angle >= -1e-8);
                CHECK(angle < phases.delta());
            }
        }
    }

    TEST_CASE("rejects empty and non-finite inputs")
    {
        sbs::PhaseSet phases(4);
        Eigen::VectorXcd empty(0);
        CHECK_THROWS_AS(sbs::optimal_phase_vector(empty, phases), std::invalid_argument);

        Eigen::VectorXcd bad(2);
        bad << std::complex<double>{1.0, 0.0},
            std::complex<double>{std::numeric_limits<double>::quiet_NaN(), 0.0};
        CHECK_THROWS_AS(sbs::optimal_phase_vector(bad, phases), std::invalid_argument);
    }
}

TEST_SUITE("exhaustive reference search")
{
    TEST_CASE("frozen three-entry instance")
    {
        Eigen::VectorXcd r(3);
        r << std::complex<double>{1.0, 0.0}, std::complex<double>{0.0, 1.0},
            std::complex<double>{-1.0, 0.0};
        sbs::PhaseVectorSolution sol = sbs::brute_force_phase_vector(r, sbs::PhaseSet(4));
        CHECK(sol.objective == doctest::Approx(3.0).epsilon(1e-12));
        CHECK(sol.indices == std::vector<int>{0, 1, 2});
    }

    TEST_CASE("ties resolve to the smallest digit vector")
    {
        // The zero entry makes all its digits equivalent; the smallest wins.
        Eigen::VectorXcd r(2);
        r << std::complex<double>{2.0, 0.0}, std::complex<double>{0.0, 0.0};
        sbs::PhaseVectorSolution sol = sbs::brute_force_phase_vector(r, sbs::PhaseSet(4));
        CHECK(sol.indices == std::vector<int>{0, 0});
        CHECK(sol.objective == doctest::Approx(2.0).epsilon(1e-12));
    }

    TEST_CASE("candidate cap is enforced")
    {
        Eigen::VectorXcd r = random_vector(12, 5);
        CHECK_THROWS_AS(sbs::brute_force_phase_vector(r, sbs::PhaseSet(8)),
                        sbs::SizeLimitError);
        Eigen::VectorXcd small = random_vector(4, 5);
        CHECK_THROWS_AS(sbs::brute_force_phase_vector(small, sbs::PhaseSet(4), 255),
                        sbs::SizeLimitError);
        CHECK_NOTHROW(sbs::brute_force_phase_vector(small, sbs::PhaseSet(4), 256));
    }

    TEST_CASE("anchor step count rotates into the base sector")
    {
        const double delta = kPi / 4.0;
        CHECK(sbs::detail::correlation_anchor_steps({1.0, 0.0}, delta) == 0);
        CHECK(sbs::detail::correlation_anchor_steps(std::polar(2.0, delta * 1.5), delta) == 1);
        CHECK(sbs::detail::correlation_anchor_steps(std::polar(2.0, -delta * 0.5), delta) == -1);
        // Real-positive correlations stay anchored under tiny negative noise.
        CHECK(sbs::detail::correlation_anchor_steps({1.0, -1e-12}, delta) == 0);
    }
}
