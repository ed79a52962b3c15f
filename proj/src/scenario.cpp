// SPDX-License-Identifier: Apache-2.0
//
// isacbeam - analog ISAC beamformer synthesis and radar detection simulation
// Copyright (C) 2026 isacbeam authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "isacbeam/scenario.hpp"

#include <cmath>

namespace isacbeam {

Scenario default_scenario() {
    Scenario sc;
    sc.users.push_back({deg2rad(-25.0), 20.0, db2lin(3.0), dbm2watt(-88.0), 1000.0, 2.2});
    sc.users.push_back({deg2rad(40.0), 20.0, db2lin(3.0), dbm2watt(-88.0), 1000.0, 2.2});
    sc.targets.push_back({1.0, 20.0, 0.0});
    sc.targets.push_back({1.0, 5.0, deg2rad(30.0)});
    return sc;
}

void validate(const Scenario &sc) {
    auto fail = [](const std::string &field, const std::string &why) {
        throw validation_error(field + ": " + why);
    };
    if (sc.array.m_tx != sc.array.m_rx)
        fail("array.m_tx/m_rx", "TX and RX antenna counts must match");
    if (sc.array.m_tx < 2)
        fail("array.m_tx", "need at least 2 antennas");
    if (sc.array.carrier_f0 <= 0)
        fail("array.carrier_f0_hz", "must be positive");
    if (sc.array.element_spacing < 0)
        fail("array.element_spacing_m", "must be positive");
    for (std::size_t q = 0; q < sc.targets.size(); ++q) {
        const TargetSpec &t = sc.targets[q];
        const std::string p = "targets[" + std::to_string(q) + "].";
        if (t.rcs_xi <= 0)
            fail(p + "rcs_m2", "must be positive");
        if (t.range_r <= 0)
            fail(p + "range_m", "must be positive");
        if (std::abs(t.angle_theta) > pi / 2)
            fail(p + "angle_deg", "outside the visible region [-90, 90]");
    }
    for (std::size_t k = 0; k < sc.users.size(); ++k) {
        const UserSpec &u = sc.users[k];
        const std::string p = "users[" + std::to_string(k) + "].";
        if (std::abs(u.angle_theta) > pi / 2)
            fail(p + "angle_deg", "outside the visible region [-90, 90]");
        if (u.range_r <= 0)
            fail(p + "range_m", "must be positive");
        if (u.snr_gamma <= 0)
            fail(p + "snr_db", "required SNR must be positive");
        if (u.noise_sigma2 <= 0)
            fail(p + "noise_dbm", "noise power must be positive");
        if (u.rician_kappa < 0)
            fail(p + "rician_kappa", "must be nonnegative");
    }
    if (sc.bin.width_delta <= 0)
        fail("bin.width_deg", "must be positive");
    if (sc.bin.grid_step <= 0)
        fail("bin.grid_step_deg", "must be positive");
    if (sc.bin.guard < 0)
        fail("bin.guard_deg", "must be nonnegative");
    if (sc.p_ant <= 0)
        fail("power.p_ant_dbm", "must be positive");
    if (sc.p_sat <= 0)
        fail("power.p_sat_dbm", "must be positive");
    if (sc.sigma_r2 <= 0)
        fail("power.sigma_r2_dbm", "must be positive");
    if (sc.gamma_s <= 1.0)
        fail("power.gamma_s_db", "sidelobe ratio must exceed 1 (0 dB)");
    const SolverConfig &s = sc.solver;
    if (s.mu <= 0 || s.mu >= 2)
        fail("solver.mu", "relaxation must lie in (0, 2)");
    if (s.mu_prime <= 0 || s.mu_prime >= 2)
        fail("solver.mu_prime", "relaxation must lie in (0, 2)");
    if (s.epsilon <= 0)
        fail("solver.epsilon", "must be positive");
    if (s.max_iter == 0)
        fail("solver.max_iter", "must be positive");
    for (auto [name, a] : {std::pair<const char *, double>{"solver.a1", s.a1},
                           {"solver.a2", s.a2},
                           {"solver.a3", s.a3}})
        if (a <= 0 || a >= 1)
            fail(name, "decay base must lie in (0, 1)");
    if (s.beta_clamp < 1)
        fail("solver.beta_clamp", "must be at least 1");
    if (sc.waveform.n_samples == 0)
        fail("waveform.n_samples", "must be positive");
    if (sc.waveform.slot_duration <= 0)
        fail("waveform.slot_duration_s", "must be positive");
    // grids must exist
    AngleGrids g = build_angle_grids(sc.bin);
    if (g.theta_l.empty())
        fail("bin", "mainlobe grid is empty");
    if (g.theta_s.empty())
        fail("bin", "sidelobe grid is empty");
}

CVec steering(double theta, std::size_t m) {
    if (std::abs(theta) > pi / 2 + 1e-12)
        throw validation_error("steering: angle outside the visible region");
    CVec a(m);
    const double w = pi * std::sin(theta);
    for (std::size_t k = 0; k < m; ++k)
        a[k] = std::polar(1.0, w * static_cast<double>(k));
    return a;
}

double radar_amplitude(double xi, double r, double lambda) {
    if (xi <= 0 || r <= 0 || lambda <= 0)
        throw validation_error("radar_amplitude: arguments must be positive");
    const double fourpi = 4.0 * pi;
    return std::sqrt(xi * lambda * lambda / (fourpi * fourpi * fourpi * r * r * r * r));
}

long delay_bin(double r, std::size_t n, double t) {
    if (r < 0 || t <= 0)
        throw validation_error("delay_bin: bad range or slot duration");
    const double roundtrip = 2.0 * r / speed_of_light;
    if (roundtrip >= t)
        throw validation_error("delay_bin: echo delay exceeds the slot duration");
    return std::lround(2.0 * static_cast<double>(n) * r / (t * speed_of_light));
}

CMat si_channel(const ArrayConfig &array) {
    const std::size_t mt = array.m_tx, mr = array.m_rx;
    const double lambda = array.wavelength();
    const double d0 = array.spacing();
    CMat h(mr, mt);
    for (std::size_t mp = 1; mp <= mr; ++mp) {
        for (std::size_t m = 1; m <= mt; ++m) {
            const double d = static_cast<double>(mt - m + mp) * d0;
            const double rho = lambda / (4.0 * pi * d);
            h(mp - 1, m - 1) = std::polar(rho, 2.0 * pi * d / lambda);
        }
    }
    return h;
}

double user_pathloss(const UserSpec &user, const ArrayConfig &array) {
    const double lambda = array.wavelength();
    const double ref = lambda / (4.0 * pi);
    const double m = static_cast<double>(array.m());
    return m * m * ref * ref * std::pow(user.range_r, -user.pathloss_exponent);
}

CVec user_channel(const UserSpec &user, const ArrayConfig &array, Philox &rng) {
    const std::size_t m = array.m();
    const double pl = user_pathloss(user, array);
    const double k = user.rician_kappa;
    const double los = std::sqrt(k / (k + 1.0));
    const double nlos = std::sqrt(1.0 / (k + 1.0));
    CVec a = steering(user.angle_theta, m);
    CVec h(m);
    const double amp = std::sqrt(pl);
    for (std::size_t i = 0; i < m; ++i)
        h[i] = amp * (los * a[i] + nlos * rng.next_cnormal(1.0));
    return h;
}

AngleGrids build_angle_grids(const BeamBin &bin) {
    const double step = bin.grid_step;
    const double half = bin.width_delta / 2.0;
    const double tol = 1e-9;
    // index bounds computed in integer steps from the bin center so that grid
    // edges are immune to floating-point jitter
    AngleGrids g;
    const long k_l = static_cast<long>(std::floor((half - bin.guard) / step + tol));
    for (long k = -k_l; k <= k_l; ++k) {
        const double theta = bin.center_theta_b + static_cast<double>(k) * step;
        if (std::abs(theta) <= pi / 2 + tol)
            g.theta_l.push_back(theta);
    }
    const double excl = half + bin.guard;
    const long k_lo = static_cast<long>(std::ceil((-pi / 2 - bin.center_theta_b) / step - tol));
    const long k_hi = static_cast<long>(std::floor((pi / 2 - bin.center_theta_b) / step + tol));
    for (long k = k_lo; k <= k_hi; ++k) {
        const double off = static_cast<double>(k) * step;
        if (std::abs(off) >= excl - tol)
            g.theta_s.push_back(bin.center_theta_b + off);
    }
    if (g.theta_l.empty())
        throw validation_error("build_angle_grids: empty mainlobe grid");
    if (g.theta_s.empty())
        throw validation_error("build_angle_grids: empty sidelobe grid");
    return g;
}

} // namespace isacbeam
