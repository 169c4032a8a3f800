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
#include <complex>
#include <string>
#include <vector>

namespace sbs
{

/// Directional element power pattern: two clamped quadratic cuts in dB plus a
/// peak gain, the usual parametric patch-antenna model.
struct ElementPattern
{
    double max_gain_db = 8.0;
    double vertical_3db_deg = 65.0;
    double horizontal_3db_deg = 65.0;
    double sidelobe_floor_db = 30.0;      ///< per-cut attenuation clamp
    double front_limit_db = 30.0;         ///< combined attenuation clamp
    double boresight_azimuth_deg = 90.0;  ///< broadside of the array

    /// Unit gain in every direction.
    static ElementPattern isotropic();
};

/// Uniform linear array along the azimuth axis at half-wavelength spacing.
struct UlaConfig
{
    int n_antennas = 16;
    double spacing_wavelengths = 0.5;
    ElementPattern pattern{};
};

/// Amplitude gain of one element toward (azimuth, elevation), radians.
double element_gain(const ElementPattern &pattern, double azimuth, double elevation);

/// Per-element phase increment pi * sin(az - boresight).  The boresight-
/// referenced angle makes the ramp monotonic across the served sector, so
/// distinct directions in [30, 150] degrees stay distinguishable.
double steering_ramp(const UlaConfig &cfg, double azimuth);

/// a(az, el) = g(az, el) * [1, e^{i u}, ..., e^{i (N-1) u}]^T with
/// u = steering_ramp(az).  Elevation enters through the element gain only.
Eigen::VectorXcd steering_vector(const UlaConfig &cfg, double azimuth, double elevation);

/// Columns a(azimuths[k], 0).
Eigen::MatrixXcd steering_matrix(const UlaConfig &cfg, const std::vector<double> &azimuths);

/// Far-field sample z = a(az, el)^H y.
std::complex<double> emitted_field(const UlaConfig &cfg, const Eigen::VectorXcd &y,
                                   double azimuth, double elevation);

/// Midpoint-rule quadrature of integral a a^H cos(el) d el d az over the full
/// azimuth circle and elevation [-pi/2, pi/2].  The Gram matrix is cached so
/// per-block power reduces to y^H R y sums.
class RadiationQuadrature
{
  public:
    explicit RadiationQuadrature(const UlaConfig &cfg, double grid_deg = 1.0);

    /// Total radiated energy of a transmit block, sum_t y_t^H R y_t.
    double block_power(const Eigen::MatrixXcd &y_block) const;

    double grid_deg() const noexcept { return grid_deg_; }
    const Eigen::MatrixXcd &gram() const noexcept { return gram_; }

  private:
    Eigen::MatrixXcd gram_;
    double grid_deg_;
};

/// One-off convenience wrapper around RadiationQuadrature.
double radiated_power(const UlaConfig &cfg, const Eigen::MatrixXcd &y_block,
                      double grid_deg = 1.0);

struct BeampatternGrid
{
    double start_deg = 0.0;
    double stop_deg = 180.0;
    double step_deg = 0.25;
};

std::vector<double> beampattern_azimuths_deg(const BeampatternGrid &grid);

/// 20 log10 |a(az, 0)^H y_t| for every grid azimuth (rows) and block column t.
Eigen::MatrixXd beampattern_db(const UlaConfig &cfg, const Eigen::MatrixXcd &y_block,
                               const BeampatternGrid &grid);

/// CSV with header azimuth_deg,magnitude_db_0,... and one row per grid point.
void write_beampattern_csv(const std::string &path, const BeampatternGrid &grid,
                           const Eigen::MatrixXd &pattern_db);

} // namespace sbs
