// SPDX-License-Identifier: Apache-2.0
//
// isacbeam - analog ISAC beamformer synthesis and radar detection simulation
// Copyright (C) 2026 isacbeam authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#ifndef ISACBEAM_SCENARIO_HPP
#define ISACBEAM_SCENARIO_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "isacbeam/linalg.hpp"
#include "isacbeam/rng.hpp"

namespace isacbeam {

inline constexpr double speed_of_light = 299792458.0;
inline constexpr double pi = 3.14159265358979323846;

inline double deg2rad(double deg) { return deg * pi / 180.0; }
inline double rad2deg(double rad) { return rad * 180.0 / pi; }
inline double dbm2watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double watt2dbm(double w) { return 10.0 * std::log10(w) + 30.0; }
inline double db2lin(double db) { return std::pow(10.0, db / 10.0); }

/// Co-located TX/RX uniform linear arrays. TX and RX form the left and right
/// halves of one (m_tx + m_rx)-element ULA with the given spacing.
struct ArrayConfig {
    std::size_t m_tx = 10;
    std::size_t m_rx = 10;
    double carrier_f0 = 28e9; // Hz
    double element_spacing = 0.0; // meters; 0 selects lambda/2

    double wavelength() const { return speed_of_light / carrier_f0; }
    double spacing() const { return element_spacing > 0.0 ? element_spacing : wavelength() / 2.0; }
    std::size_t m() const { return m_tx; }
};

struct TargetSpec {
    double rcs_xi = 1.0;    // m^2
    double range_r = 20.0;  // meters
    double angle_theta = 0; // radians, within the visible region
};

struct UserSpec {
    double angle_theta = 0.0;      // radians
    double range_r = 20.0;         // meters
    double snr_gamma = 1.9952623149688795; // linear (3 dB)
    double noise_sigma2 = 1.5848931924611133e-12; // watts (-88 dBm)
    double rician_kappa = 1000.0;
    double pathloss_exponent = 2.2;
};

/// Probing bin and the derived mainlobe/sidelobe grids. guard is per side.
struct BeamBin {
    double center_theta_b = 0.0;
    double width_delta = deg2rad(20.0);
    double guard = deg2rad(3.0);
    double grid_step = deg2rad(1.0);
};

struct SolverConfig {
    double mu = 1.5;
    double mu_prime = 1.0;
    double epsilon = 1e-5;
    std::size_t max_iter = 1000;
    double a1 = 0.9999;
    double a2 = 0.99;
    double a3 = 0.9999;
    double beta_clamp = 10.0;
};

struct WaveformConfig {
    std::size_t n_samples = 4384;
    double slot_duration = 2.23e-6; // seconds
    std::string modulation = "qpsk";
    int numerology = 5;      // provenance only
    int resource_blocks = 68; // provenance only
};

struct Scenario {
    ArrayConfig array;
    std::vector<TargetSpec> targets;
    std::vector<UserSpec> users;
    BeamBin bin;
    double p_ant = 0.01;   // watts (10 dBm)
    double p_sat = 1e-5;   // watts (-20 dBm)
    double sigma_r2 = 1.5848931924611133e-12; // watts (-88 dBm)
    double gamma_s = 31.622776601683793; // per-chain linear power ratio (30 dB joint)
    SolverConfig solver;
    WaveformConfig waveform;
    std::uint64_t seed = 1;
};

/// Paper-default scenario: two users at -25/40 degrees and 20 m, a probed
/// target at 20 m broadside plus an unprobed one at 5 m / 30 degrees.
Scenario default_scenario();

/// Throws validation_error naming the offending field.
void validate(const Scenario &sc);

/// a(theta), entry k = exp(j pi k sin theta) for a lambda/2 ULA.
CVec steering(double theta, std::size_t m);

/// Radar-equation amplitude sqrt(xi lambda^2 / ((4 pi)^3 r^4)).
double radar_amplitude(double xi, double r, double lambda);

/// Round-trip delay of a target at range r, in samples of a length-n slot.
long delay_bin(double r, std::size_t n, double t);

/// Self-interference channel between the two co-located subarrays:
/// entry (m', m) = rho(d) exp(j 2 pi d / lambda), d = (M_t - m + m') spacing,
/// with the Friis amplitude rho(d) = lambda / (4 pi d).
CMat si_channel(const ArrayConfig &array);

/// Effective user-channel power path loss at range r, including the array
/// gain normalization of the geometric channel model: M^2 (lambda/4pi)^2 r^-ple.
double user_pathloss(const UserSpec &user, const ArrayConfig &array);

/// Rician geometric channel sqrt(PL) (sqrt(k/(k+1)) a(theta) + sqrt(1/(k+1)) g).
CVec user_channel(const UserSpec &user, const ArrayConfig &array, Philox &rng);

struct AngleGrids {
    std::vector<double> theta_l; // mainlobe grid, ascending
    std::vector<double> theta_s; // sidelobe grid, ascending
};

/// Mainlobe grid spans the bin minus the guard, sidelobe grid is the rest of
/// the visible region outside bin + guard, both in grid_step steps anchored
/// at the bin center.
AngleGrids build_angle_grids(const BeamBin &bin);

} // namespace isacbeam

#endif
