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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sbs/array_model.hpp"
#include "sbs/errors.hpp"
#include "sbs/metrics.hpp"
#include "sbs/omp.hpp"
#include "sbs/phase_opt.hpp"
#include "sbs/phase_set.hpp"
#include "sbs/precoding.hpp"
#include "sbs/sim.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace
{

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailure = 1;
constexpr int kExitConfigError = 2;

struct Options
{
    std::string command;
    int n_antennas = 16;
    int rf_chains = 4;
    int q_phases = 8;
    int users = 10;
    int realizations = 100;
    std::uint64_t seed = 0;
    double min_separation_deg = 7.2;
    double mirror_guard = -1.0;
    double noise_variance = 1.0;
    std::string out_dir = ".";
    double grid_deg = 1.0;
    int block_len = 0;
    std::vector<int> l_values = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13};
    std::vector<int> q_values = {2, 4, 8};
    std::vector<int> k_values = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    std::vector<std::string> suites = {"phase", "omp", "digital"};
    bool inject_fault = false;
};

sbs::ScenarioParams scenario_params(const Options &opt)
{
    sbs::ScenarioParams params;
    params.n_antennas = opt.n_antennas;
    params.l_chains = opt.rf_chains;
    params.q_phases = opt.q_phases;
    params.k_users = opt.users;
    params.block_len = opt.block_len;
    params.min_separation_deg = opt.min_separation_deg;
    params.mirror_guard = opt.mirror_guard;
    return params;
}

json common_meta(const Options &opt)
{
    json j;
    j["n_antennas"] = opt.n_antennas;
    j["rf_chains"] = opt.rf_chains;
    j["q_phases"] = opt.q_phases;
    j["users"] = opt.users;
    j["realizations"] = opt.realizations;
    j["seed"] = opt.seed;
    j["min_separation_deg"] = opt.min_separation_deg;
    j["mirror_guard"] = opt.mirror_guard;
    j["noise_variance"] = opt.noise_variance;
    j["grid_deg"] = opt.grid_deg;
    j["block_len"] = opt.block_len;
    return j;
}

void write_meta(const fs::path &out_dir, const std::string &command, json parameters,
                const std::vector<std::string> &outputs)
{
    json j;
    j["command"] = command;
    j["parameters"] = std::move(parameters);
    j["outputs"] = outputs;
    fs::path path = out_dir / (command + "_meta.json");
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open " + path.string());
    out << j.dump(2) << "\n";
}

Eigen::VectorXcd random_target(std::mt19937_64 &rng, int n)
{
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::VectorXcd r(n);
    for (int i = 0; i < n; ++i)
        r(i) = std::complex<double>(g(rng), g(rng));
    return r;
}

int cmd_beampattern(const Options &opt)
{
    sbs::Scenario scn = sbs::reference_scenario();
    scn.n_antennas = opt.n_antennas;
    scn.l_chains = opt.rf_chains;
    scn.q_phases = opt.q_phases;

    sbs::UlaConfig array{scn.n_antennas, 0.5, sbs::ElementPattern{}};
    sbs::RadiationQuadrature quad(array, opt.grid_deg);
    sbs::PhaseSet phases(scn.q_phases);
    sbs::BeampatternGrid grid{};

    sbs::DigitalBlock dig = sbs::build_digital(array, scn.users, scn.symbols, quad);
    sbs::StandardHybridPrecoder hyb =
        sbs::build_standard_hybrid(dig.precoder, phases, scn.l_chains);
    Eigen::MatrixXcd y_hyb = sbs::standard_hybrid_block(hyb, scn.symbols, quad);
    sbs::SbsBlock sbs_block = sbs::build_sbs(dig.y_block, phases, scn.l_chains);

    fs::create_directories(opt.out_dir);
    fs::path out_dir(opt.out_dir);
    std::vector<std::string> outputs;
    const std::pair<const char *, const Eigen::MatrixXcd *> schemes[] = {
        {"digital", &dig.y_block}, {"hybrid", &y_hyb}, {"sbs", &sbs_block.y_block}};
    for (const auto &[name, block] : schemes)
    {
        fs::path path = out_dir / (std::string("beampattern_") + name + ".csv");
        sbs::write_beampattern_csv(path.string(), grid, sbs::beampattern_db(array, *block, grid));
        outputs.push_back(path.filename().string());
    }

    json meta = common_meta(opt);
    meta["rf_chains"] = scn.l_chains;
    meta["q_phases"] = scn.q_phases;
    meta["user_azimuths_rad"] = scn.users;
    write_meta(out_dir, "beampattern", std::move(meta), outputs);
    return kExitOk;
}

int cmd_sidr_sweep(const Options &opt)
{
    sbs::SweepConfig cfg;
    cfg.scenario = scenario_params(opt);
    cfg.grid_deg = opt.grid_deg;
    cfg.noise_variance = opt.noise_variance;
    cfg.seed = opt.seed;

    sbs::SweepResult result = sbs::run_sidr_sweep(cfg, opt.l_values, opt.q_values,
                                                  opt.realizations);

    fs::create_directories(opt.out_dir);
    fs::path path = fs::path(opt.out_dir) / "SIDRvsRFC.csv";
    sbs::write_sweep_csv(result, path.string());

    json meta = common_meta(opt);
    meta["l_values"] = opt.l_values;
    meta["q_values"] = opt.q_values;
    write_meta(opt.out_dir, "sidr-sweep", std::move(meta), {path.filename().string()});
    return kExitOk;
}

int cmd_sumrate_sweep(const Options &opt)
{
    sbs::SweepConfig cfg;
    cfg.scenario = scenario_params(opt);
    cfg.scenario.constellation = sbs::Constellation::gaussian_unit;
    cfg.grid_deg = opt.grid_deg;
    cfg.noise_variance = opt.noise_variance;
    cfg.seed = opt.seed;

    sbs::SweepResult result = sbs::run_sumrate_sweep(cfg, opt.k_values, opt.realizations);

    fs::create_directories(opt.out_dir);
    fs::path path = fs::path(opt.out_dir) / "SRvsUSERS.csv";
    sbs::write_sweep_csv(result, path.string());

    json meta = common_meta(opt);
    meta["k_values"] = opt.k_values;
    write_meta(opt.out_dir, "sumrate-sweep", std::move(meta), {path.filename().string()});
    return kExitOk;
}

bool verify_phase(int seeds, std::uint64_t base_seed, bool inject_fault)
{
    const int q_list[] = {2, 3, 4, 8};
    int checked = 0;
    for (int s = 0; s < seeds; ++s)
    {
        std::mt19937_64 rng(sbs::derive_stream_seed(base_seed ^ 0x70686173ULL,
                                                    static_cast<std::uint64_t>(s)));
        for (int n = 2; n <= 5; ++n)
            for (int q : q_list)
            {
                Eigen::VectorXcd r = random_target(rng, n);
                sbs::PhaseVectorSolution fast = sbs::optimal_phase_vector(r, sbs::PhaseSet(q));
                int oracle_q = inject_fault ? q + 1 : q;
                sbs::PhaseVectorSolution oracle =
                    sbs::brute_force_phase_vector(r, sbs::PhaseSet(oracle_q));
                double scale = std::max(1.0, oracle.objective);
                if (std::abs(fast.objective - oracle.objective) > 1e-9 * scale)
                {
                    std::cout << "[FAIL] phase: seed " << s << " N " << n << " Q " << q
                              << " objective " << fast.objective << " vs exhaustive "
                              << oracle.objective << "\n";
                    return false;
                }
                ++checked;
            }
    }
    std::cout << "[PASS] phase: sector search matches exhaustive maximum on " << checked
              << " instances\n";
    return true;
}

bool verify_omp(int seeds, std::uint64_t base_seed, bool inject_fault)
{
    const int n = 5;
    const int q = 4;
    sbs::PhaseSet phases(q);
    sbs::Dictionary dict = sbs::complete_dictionary(n, inject_fault ? sbs::PhaseSet(q + 1) : phases);
    int checked = 0;
    for (int s = 0; s < seeds; ++s)
    {
        std::mt19937_64 rng(sbs::derive_stream_seed(base_seed ^ 0x6F6D70ULL,
                                                    static_cast<std::uint64_t>(s)));
        Eigen::VectorXcd y = random_target(rng, n);
        for (int l = 1; l <= 3; ++l)
        {
            sbs::SbSSolution naive = sbs::omp_naive(y, dict, l);
            sbs::SbSSolution chol = sbs::omp_cholesky(y, phases, l);
            bool same_shape = naive.analog.cols() == chol.analog.cols();
            double col_diff = same_shape ? (naive.analog - chol.analog).cwiseAbs().maxCoeff()
                                         : std::numeric_limits<double>::infinity();
            double weight_diff = same_shape
                                     ? (naive.baseband - chol.baseband).cwiseAbs().maxCoeff()
                                     : std::numeric_limits<double>::infinity();
            if (col_diff > 1e-9 || weight_diff > 1e-9)
            {
                std::cout << "[FAIL] omp: seed " << s << " L " << l << " column diff "
                          << col_diff << " weight diff " << weight_diff << "\n";
                return false;
            }
            ++checked;
        }
    }
    std::cout << "[PASS] omp: naive and Cholesky pursuits agree on " << checked
              << " instances\n";
    return true;
}

bool verify_digital(int seeds, std::uint64_t base_seed, double grid_deg, bool inject_fault)
{
    sbs::UlaConfig array{16, 0.5, sbs::ElementPattern{}};
    sbs::RadiationQuadrature quad(array, grid_deg);
    int reps = std::max(1, std::min(seeds, 10));
    for (int s = 0; s < reps; ++s)
    {
        sbs::Scenario scn =
            sbs::reference_scenario_block(640, sbs::derive_stream_seed(base_seed ^ 0x646967ULL,
                                                                 static_cast<std::uint64_t>(s)));
        sbs::DigitalBlock dig = sbs::build_digital(array, scn.users, scn.symbols, quad);
        Eigen::MatrixXcd toward_users =
            sbs::steering_matrix(array, scn.users).adjoint();
        Eigen::MatrixXcd received = toward_users * dig.y_block;
        if (inject_fault)
            received(0, 0) += std::complex<double>(1e-3, 0.0);
        sbs::GainDecomposition dec = sbs::decompose(received, scn.symbols);
        double max_col = dec.distortion.colwise().norm().maxCoeff();
        Eigen::MatrixXcd expected = toward_users * dig.precoder.beams;
        double gain_diff = (dec.gain_matrix - expected).cwiseAbs().maxCoeff();
        if (max_col > 1e-10 || gain_diff > 1e-10)
        {
            std::cout << "[FAIL] digital: seed " << s << " distortion " << max_col
                      << " gain error " << gain_diff << "\n";
            return false;
        }
    }
    std::cout << "[PASS] digital: zero-distortion decomposition on " << reps
              << " symbol blocks\n";
    return true;
}

int cmd_verify(const Options &opt)
{
    std::vector<std::string> suites;
    for (const auto &s : opt.suites)
        if (s != "none")
            suites.push_back(s);
    if (suites.empty())
    {
        std::cerr << "warning: no verification suites selected\n";
        return kExitOk;
    }
    int seeds = std::max(1, std::min(opt.realizations, 200));
    bool ok = true;
    for (const auto &suite : suites)
    {
        if (suite == "phase")
            ok = verify_phase(seeds, opt.seed, opt.inject_fault) && ok;
        else if (suite == "omp")
            ok = verify_omp(seeds, opt.seed, opt.inject_fault) && ok;
        else if (suite == "digital")
            ok = verify_digital(seeds, opt.seed, opt.grid_deg, opt.inject_fault) && ok;
    }
    return ok ? kExitOk : kExitVerifyFailure;
}

int cmd_bench(const Options &opt)
{
    struct Row
    {
        std::string kind;
        int n = 0;
        int q = 0;
        int l = 0;
        int reps = 0;
        double mean_seconds = 0.0;
        double min_seconds = 0.0;
    };
    std::vector<Row> rows;
    const int reps = opt.realizations;

    auto time_once = [](auto &&body) {
        auto start = std::chrono::steady_clock::now();
        body();
        auto stop = std::chrono::steady_clock::now();
        return std::chrono::duration<double>(stop - start).count();
    };

    if (reps > 0)
    {
        std::mt19937_64 rng(opt.seed);
        for (int n : {2048, 4096})
        {
            Eigen::VectorXcd r = random_target(rng, n);
            for (int q : {2, 64})
            {
                sbs::PhaseSet phases(q);
                Row row{"phase", n, q, 0, reps, 0.0,
                        std::numeric_limits<double>::infinity()};
                double total = 0.0;
                volatile double sink = 0.0;
                for (int i = 0; i < reps; ++i)
                {
                    double sec = time_once([&] {
                        sink = sink + sbs::optimal_phase_vector(r, phases).objective;
                    });
                    total += sec;
                    row.min_seconds = std::min(row.min_seconds, sec);
                }
                row.mean_seconds = total / reps;
                rows.push_back(row);
            }
        }
        const int omp_n = 1024;
        sbs::PhaseSet omp_phases(4);
        Eigen::VectorXcd y = random_target(rng, omp_n);
        for (int l : {1, 2, 4, 8, 16})
        {
            Row row{"omp", omp_n, 4, l, reps, 0.0, std::numeric_limits<double>::infinity()};
            double total = 0.0;
            volatile double sink = 0.0;
            for (int i = 0; i < reps; ++i)
            {
                double sec = time_once([&] {
                    sink = sink + sbs::omp_cholesky(y, omp_phases, l).residual_norm;
                });
                total += sec;
                row.min_seconds = std::min(row.min_seconds, sec);
            }
            row.mean_seconds = total / reps;
            rows.push_back(row);
        }
    }

    fs::create_directories(opt.out_dir);
    fs::path path = fs::path(opt.out_dir) / "bench.csv";
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open " + path.string());
    out << "kind,n_antennas,q_phases,l_chains,reps,mean_seconds,min_seconds\n";
    char buf[64];
    for (const auto &row : rows)
    {
        out << row.kind << ',' << row.n << ',' << row.q << ',' << row.l << ',' << row.reps;
        std::snprintf(buf, sizeof(buf), "%.6g", row.mean_seconds);
        out << ',' << buf;
        std::snprintf(buf, sizeof(buf), "%.6g", row.min_seconds);
        out << ',' << buf << "\n";
    }

    write_meta(opt.out_dir, "bench", common_meta(opt), {path.filename().string()});
    return kExitOk;
}

} // namespace

int main(int argc, char **argv)
{
    Options opt;
    CLI::App app{"Symbol-by-symbol hybrid precoding simulator"};
    app.set_config("--config");

    app.add_option("--command", opt.command, "One of beampattern, sidr-sweep, sumrate-sweep, verify, bench")
        ->required()
        ->check(CLI::IsMember({"beampattern", "sidr-sweep", "sumrate-sweep", "verify", "bench"}));
    auto *n_opt = app.add_option("--n-antennas", opt.n_antennas, "Array size")
                      ->check(CLI::Range(1, 4096));
    auto *l_opt = app.add_option("--rf-chains", opt.rf_chains, "RF chain count")
                      ->check(CLI::Range(1, 4096));
    auto *q_opt = app.add_option("--q-phases", opt.q_phases, "Phase alphabet size")
                      ->check(CLI::Range(1, 1 << 20));
    app.add_option("--users", opt.users, "Number of served users")->check(CLI::Range(1, 1000));
    app.add_option("--realizations", opt.realizations, "Monte Carlo realizations")
        ->check(CLI::Range(0, 1000000));
    app.add_option("--seed", opt.seed, "Base RNG seed");
    app.add_option("--min-separation-deg", opt.min_separation_deg,
                   "Minimum pairwise user separation, degrees")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--mirror-guard", opt.mirror_guard,
                   "Minimum pairwise beam-domain separation; negative selects 2/N");
    app.add_option("--noise-variance", opt.noise_variance, "Receiver noise variance")
        ->check(CLI::PositiveNumber);
    app.add_option("--out-dir", opt.out_dir, "Output directory");
    app.add_option("--grid-deg", opt.grid_deg, "Power quadrature grid step, degrees")
        ->check(CLI::Range(1e-3, 45.0));
    app.add_option("--block-len", opt.block_len, "Symbols per block, 0 selects 64 * users")
        ->check(CLI::Range(0, 1 << 20));
    app.add_option("--l-values", opt.l_values, "RF chain counts for sidr-sweep")
        ->delimiter(',');
    app.add_option("--q-values", opt.q_values, "Alphabet sizes for sidr-sweep")
        ->delimiter(',');
    app.add_option("--k-values", opt.k_values, "User counts for sumrate-sweep")
        ->delimiter(',');
    app.add_option("--suites", opt.suites, "Verification suites (phase, omp, digital, none)")
        ->delimiter(',')
        ->check(CLI::IsMember({"phase", "omp", "digital", "none"}));
    app.add_flag("--inject-fault", opt.inject_fault,
                 "Perturb the verification oracles; must make verify fail");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        app.exit(e);
        return kExitConfigError;
    }

    if (opt.command == "beampattern")
    {
        // The composite-beam scenario is defined with L = 3, Q = 8; only
        // explicit flags override those.
        if (!n_opt->count())
            opt.n_antennas = 16;
        if (!l_opt->count())
            opt.rf_chains = 3;
        if (!q_opt->count())
            opt.q_phases = 8;
    }

    try
    {
        if (opt.command == "beampattern")
            return cmd_beampattern(opt);
        if (opt.command == "sidr-sweep")
            return cmd_sidr_sweep(opt);
        if (opt.command == "sumrate-sweep")
            return cmd_sumrate_sweep(opt);
        if (opt.command == "verify")
            return cmd_verify(opt);
        if (opt.command == "bench")
            return cmd_bench(opt);
        std::cerr << "error: unknown command " << opt.command << "\n";
        return kExitConfigError;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    }
}
