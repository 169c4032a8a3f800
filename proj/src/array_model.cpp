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

#include "sbs/array_model.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace sbs
{

namespace
{

constexpr double kPi = std::numbers::pi;
constexpr double kDeg2Rad = kPi / 180.0;

double wrap_deg_180(double deg)
{
    double w = std::fmod(deg + 180.0, 360.0);
    if (w < 0.0)
        w += 360.0;
    return w - 180.0;
}

void check_array(const UlaConfig &cfg, const char *who)
{
    if (cfg.n_antennas < 1)
        throw std::invalid_argument(std::string(who) + ": n_antennas must be >= 1");
    if (cfg.spacing_wavelengths != 0.5)
        throw std::invalid_argument(std::string(who) + ": element spacing is fixed at 0.5");
}

} // namespace

ElementPattern ElementPattern::isotropic()
{
    ElementPattern p;
    p.max_gain_db = 0.0;
    p.vertical_3db_deg = std::numeric_limits<double>::infinity();
    p.horizontal_3db_deg = std::numeric_limits<double>::infinity();
    return p;
}

double element_gain(const ElementPattern &pattern, double azimuth, double elevation)
{
    double el_deg = elevation / kDeg2Rad;
    double az_off_deg = wrap_deg_180(azimuth / kDeg2Rad - pattern.boresight_azimuth_deg);

    double cut_v = el_deg / pattern.vertical_3db_deg;
    double cut_h = az_off_deg / pattern.horizontal_3db_deg;
    double att_v = std::min(12.0 * cut_v * cut_v, pattern.sidelobe_floor_db);
    double att_h = std::min(12.0 * cut_h * cut_h, pattern.sidelobe_floor_db);
    double att = std::min(att_v + att_h, pattern.front_limit_db);

    return std::pow(10.0, (pattern.max_gain_db - att) / 20.0);
}

double steering_ramp(const UlaConfig &cfg, double azimuth)
{
    return kPi * std::sin(azimuth - cfg.pattern.boresight_azimuth_deg * kDeg2Rad);
}

Eigen::VectorXcd steering_vector(const UlaConfig &cfg, double azimuth, double elevation)
{
    check_array(cfg, "steering_vector");
    const double g = element_gain(cfg.pattern, azimuth, elevation);
    const double ramp = steering_ramp(cfg, azimuth);
    Eigen::VectorXcd a(cfg.n_antennas);
    for (int i = 0; i < cfg.n_antennas; ++i)
        a[i] = std::polar(g, ramp * static_cast<double>(i));
    return a;
}

Eigen::MatrixXcd steering_matrix(const UlaConfig &cfg, const std::vector<double> &azimuths)
{
    check_array(cfg, "steering_matrix");
    Eigen::MatrixXcd a(cfg.n_antennas, static_cast<Eigen::Index>(azimuths.size()));
    for (std::size_t k = 0; k < azimuths.size(); ++k)
        a.col(static_cast<Eigen::Index>(k)) = steering_vector(cfg, azimuths[k], 0.0);
    return a;
}

std::complex<double> emitted_field(const UlaConfig &cfg, const Eigen::VectorXcd &y,
                                   double azimuth, double elevation)
{
    if (y.size() != cfg.n_antennas)
        throw std::invalid_argument("emitted_field: signal length does not match the array");
    return steering_vector(cfg, azimuth, elevation).dot(y);
}

RadiationQuadrature::RadiationQuadrature(const UlaConfig &cfg, double grid_deg)
    : grid_deg_(grid_deg)
{
    check_array(cfg, "RadiationQuadrature");
    if (!(grid_deg > 0.0) || grid_deg > 45.0)
        throw std::invalid_argument("RadiationQuadrature: grid step must lie in (0, 45] degrees");

    const int n_az = static_cast<int>(std::lround(360.0 / grid_deg));
    const int n_el = static_cast<int>(std::lround(180.0 / grid_deg));
    const double d_az = 2.0 * kPi / static_cast<double>(n_az);
    const double d_el = kPi / static_cast<double>(n_el);

    gram_ = Eigen::MatrixXcd::Zero(cfg.n_antennas, cfg.n_antennas);
    for (int j = 0; j < n_el; ++j)
    {
        double el = -0.5 * kPi + (static_cast<double>(j) + 0.5) * d_el;
        double w_el = std::cos(el) * d_el * d_az;
        for (int i = 0; i < n_az; ++i)
        {
            double az = (static_cast<double>(i) + 0.5) * d_az;
            Eigen::VectorXcd a = steering_vector(cfg, az, el);
            gram_.selfadjointView<Eigen::Lower>().rankUpdate(a, w_el);
        }
    }
    gram_ = Eigen::MatrixXcd(gram_.selfadjointView<Eigen::Lower>());
}

double RadiationQuadrature::block_power(const Eigen::MatrixXcd &y_block) const
{
    if (y_block.rows() != gram_.rows())
        throw std::invalid_argument("block_power: block height does not match the array");
    return (y_block.adjoint() * (gram_ * y_block)).trace().real();
}

double radiated_power(const UlaConfig &cfg, const Eigen::MatrixXcd &y_block, double grid_deg)
{
    return RadiationQuadrature(cfg, grid_deg).block_power(y_block);
}

std::vector<double> beampattern_azimuths_deg(const BeampatternGrid &grid)
{
    if (!(grid.step_deg > 0.0) || grid.stop_deg < grid.start_deg)
        throw std::invalid_argument("beampattern grid: bad azimuth range or step");
    std::vector<double> az;
    int count = static_cast<int>(std::floor((grid.stop_deg - grid.start_deg) / grid.step_deg + 0.5)) + 1;
    az.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i)
        az.push_back(grid.start_deg + grid.step_deg * static_cast<double>(i));
    return az;
}

Eigen::MatrixXd beampattern_db(const UlaConfig &cfg, const Eigen::MatrixXcd &y_block,
                               const BeampatternGrid &grid)
{
    check_array(cfg, "beampattern_db");
    if (y_block.rows() != cfg.n_antennas)
        throw std::invalid_argument("beampattern_db: block height does not match the array");

    std::vector<double> az = beampattern_azimuths_deg(grid);
    Eigen::MatrixXd out(static_cast<Eigen::Index>(az.size()), y_block.cols());
    for (std::size_t i = 0; i < az.size(); ++i)
    {
        Eigen::VectorXcd a = steering_vector(cfg, az[i] * kDeg2Rad, 0.0);
        for (Eigen::Index t = 0; t < y_block.cols(); ++t)
        {
            double mag = std::abs(a.dot(y_block.col(t)));
            out(static_cast<Eigen::Index>(i), t) = 20.0 * std::log10(std::max(mag, 1e-300));
        }
    }
    return out;
}

void write_beampattern_csv(const std::string &path, const BeampatternGrid &grid,
                           const Eigen::MatrixXd &pattern_db)
{
    std::vector<double> az = beampattern_azimuths_deg(grid);
    if (static_cast<Eigen::Index>(az.size()) != pattern_db.rows())
        throw std::invalid_argument("write_beampattern_csv: grid does not match pattern rows");

    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("write_beampattern_csv: cannot open " + path);

    out << "azimuth_deg";
    for (Eigen::Index t = 0; t < pattern_db.cols(); ++t)
        out << ",magnitude_db_" << t;
    out << "\n";

    char buf[64];
    for (Eigen::Index i = 0; i < pattern_db.rows(); ++i)
    {
        std::snprintf(buf, sizeof(buf), "%.10g", az[static_cast<std::size_t>(i)]);
        out << buf;
        for (Eigen::Index t = 0; t < pattern_db.cols(); ++t)
        {
            std::snprintf(buf, sizeof(buf), "%.10g", pattern_db(i, t));
            out << ',' << buf;
        }
        out << "\n";
    }
    if (!out)
        throw std::runtime_error("write_beampattern_csv: write failed for " + path);
}

} // namespace sbs
