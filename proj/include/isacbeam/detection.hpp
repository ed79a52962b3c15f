// SPDX-License-Identifier: Apache-2.0
//
// isacbeam - analog ISAC beamformer synthesis and radar detection simulation
// Copyright (C) 2026 isacbeam authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#ifndef ISACBEAM_DETECTION_HPP
#define ISACBEAM_DETECTION_HPP

#include <cstddef>
#include <vector>

#include "isacbeam/solver.hpp"

namespace isacbeam {

/// N i.i.d. unit-modulus QPSK samples.
std::vector<cxd> gen_waveform(const WaveformConfig &config, Philox &rng);

struct EchoGeometry {
    double lambda;   // carrier wavelength, meters
    std::size_t n;   // samples per slot
    double slot_t;   // slot duration, seconds
};

/// Received slot: per-target backscatter alpha_q (c^H a)(a^H w) s((n - n_q)
/// mod N), optional direct leakage (c^H H_si w) s(n), plus CN(0, sigma_r2)
/// noise. Delays act circularly within the slot (OFDM slot structure).
std::vector<cxd> synth_received(const CVec &w, const CVec &c,
                                const std::vector<TargetSpec> &targets,
                                const CMat *h_si, const std::vector<cxd> &s,
                                double sigma_r2, const EchoGeometry &geo, Philox &rng);

struct GlrtResult {
    double stat;
    std::size_t lag;
};

/// max over lags of |circular correlation|^2 / (N sigma^2 / 2).
GlrtResult glrt_statistic(const std::vector<cxd> &y, const std::vector<cxd> &s, double sigma_r2);

/// rho = alpha^2 N |c^H a|^2 |a^H w|^2 / (sigma^2/2).
double noncentrality(const CVec &w, const CVec &c, const TargetSpec &target,
                     std::size_t n, double sigma_r2, double lambda);

/// Exceedance of the max statistic over n independent chi-squared(2) lags.
double analytic_pfa(double eta, std::size_t n);
/// Single-lag law exp(-eta/2).
double analytic_pfa_single(double eta);
/// Marcum Q_1(sqrt(rho), sqrt(eta)); survival of the noncentral chi2(2, rho).
double analytic_pd(double eta, double rho);

struct RocPoint {
    double eta;
    double p_fa;
    double p_d;
    std::size_t trials;
};

struct RocOptions {
    std::size_t trials = 5000;
    bool resample_angles = true; // probed uniform in the bin, unprobed outside
    bool exclude_guard = true;   // unprobed sampling skips the guard band
    bool include_si = false;     // Eq. (6) assumes the direct leakage cancelled
    unsigned threads = 0;        // 0 selects a hardware-based default
};

/// Monte Carlo ROC: per trial one H0 path (unprobed targets only) and one H1
/// path (all targets), one cached GLRT statistic each, swept over all
/// thresholds. Trial t draws from (scenario.seed, stream_trial_base + t), so
/// results are invariant to the thread count.
std::vector<RocPoint> simulate_roc(const Scenario &sc, const BeamformerPair &pair,
                                   const std::vector<double> &thresholds,
                                   const RocOptions &opt);

struct ApsPoint {
    double theta;     // radians
    double power_dbm;
};

/// TX angular power spectrum PL(r) |a^H w|^2 at the user-channel path loss.
std::vector<ApsPoint> aps_tx(const CVec &w, const std::vector<double> &grid, double r,
                             const ArrayConfig &array, double pathloss_exponent);

struct ApsJointResult {
    std::vector<ApsPoint> points; // alpha(1 m^2, r)^2 |c^H a|^2 |a^H w|^2
    double si_dbm;                // |c^H H_si w|^2
    double noise_dbm;             // sigma_r^2
};

ApsJointResult aps_joint(const CVec &w, const CVec &c, const std::vector<double> &grid,
                         double r, const ArrayConfig &array, const CMat &h_si, double sigma_r2);

/// count points, log-spaced inclusive of both endpoints.
std::vector<double> log_spaced(double lo, double hi, std::size_t count);

// FFT helpers (power-of-two size), exposed for the unit tests.
void fft_pow2(std::vector<cxd> &a, bool inverse);
/// Circular cross-correlation r[k] = sum_n y(n) s*((n-k) mod N), k in [0, N).
std::vector<cxd> circular_correlation(const std::vector<cxd> &y, const std::vector<cxd> &s);

} // namespace isacbeam

#endif
