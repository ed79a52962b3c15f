// SPDX-License-Identifier: Apache-2.0
//
// isacbeam - analog ISAC beamformer synthesis and radar detection simulation
// Copyright (C) 2026 isacbeam authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "isacbeam/detection.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <thread>

#include <boost/math/distributions/non_central_chi_squared.hpp>

namespace isacbeam {

std::vector<cxd> gen_waveform(const WaveformConfig &config, Philox &rng) {
    if (config.n_samples == 0)
        throw validation_error("gen_waveform: empty slot");
    std::vector<cxd> s(config.n_samples);
    for (cxd &v : s)
        v = rng.next_qpsk();
    return s;
}

std::vector<cxd> synth_received(const CVec &w, const CVec &c,
                                const std::vector<TargetSpec> &targets,
                                const CMat *h_si, const std::vector<cxd> &s,
                                double sigma_r2, const EchoGeometry &geo, Philox &rng) {
    const std::size_t n = geo.n;
    if (s.size() != n)
        throw validation_error("synth_received: waveform length mismatch");
    std::vector<cxd> y(n, 0.0);
    for (const TargetSpec &t : targets) {
        const long nq = delay_bin(t.range_r, n, geo.slot_t); // throws on overflow
        const CVec a = steering(t.angle_theta, w.size());
        const cxd gain = radar_amplitude(t.rcs_xi, t.range_r, geo.lambda) * vdot(c, a) * vdot(a, w);
        for (std::size_t i = 0; i < n; ++i)
            y[i] += gain * s[(i + n - static_cast<std::size_t>(nq)) % n];
    }
    if (h_si) {
        cxd leak = 0.0;
        const CVec hw = (*h_si) * w;
        leak = vdot(c, hw);
        for (std::size_t i = 0; i < n; ++i)
            y[i] += leak * s[i];
    }
    if (sigma_r2 > 0.0)
        for (cxd &v : y)
            v += rng.next_cnormal(sigma_r2);
    return y;
}

void fft_pow2(std::vector<cxd> &a, bool inverse) {
    const std::size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw validation_error("fft_pow2: length must be a power of two");
    // bit-reversal permutation
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1)
            j ^= bit;
        j ^= bit;
        if (i < j)
            std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = 2.0 * pi / static_cast<double>(len) * (inverse ? 1.0 : -1.0);
        const cxd wl = std::polar(1.0, ang);
        for (std::size_t i = 0; i < n; i += len) {
            cxd w = 1.0;
            for (std::size_t j = 0; j < len / 2; ++j) {
                const cxd u = a[i + j];
                const cxd v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wl;
            }
        }
    }
    if (inverse)
        for (cxd &v : a)
            v /= static_cast<double>(n);
}

std::vector<cxd> circular_correlation(const std::vector<cxd> &y, const std::vector<cxd> &s) {
    if (y.size() != s.size() || y.empty())
        throw validation_error("circular_correlation: length mismatch");
    const std::size_t n = y.size();
    if ((n & (n - 1)) == 0) {
        // power-of-two period: one circular pass
        std::vector<cxd> fy(y), fs(s);
        fft_pow2(fy, false);
        fft_pow2(fs, false);
        for (std::size_t i = 0; i < n; ++i)
            fy[i] *= std::conj(fs[i]);
        fft_pow2(fy, true);
        return fy;
    }
    // generic period: linear correlation on a power-of-two grid, then wrap
    std::size_t l = 1;
    while (l < 2 * n)
        l <<= 1;
    std::vector<cxd> fy(l, 0.0), fs(l, 0.0);
    std::copy(y.begin(), y.end(), fy.begin());
    std::copy(s.begin(), s.end(), fs.begin());
    fft_pow2(fy, false);
    fft_pow2(fs, false);
    for (std::size_t i = 0; i < l; ++i)
        fy[i] *= std::conj(fs[i]);
    fft_pow2(fy, true);
    std::vector<cxd> out(n);
    for (std::size_t k = 0; k < n; ++k)
        out[k] = fy[k] + fy[(l + k) - n]; // lag k and lag k - N of the linear correlation
    return out;
}

GlrtResult glrt_statistic(const std::vector<cxd> &y, const std::vector<cxd> &s, double sigma_r2) {
    if (sigma_r2 <= 0.0)
        throw validation_error("glrt_statistic: noise variance must be positive");
    if (y.size() != s.size() || y.empty())
        throw validation_error("glrt_statistic: length mismatch");
    const std::vector<cxd> corr = circular_correlation(y, s);
    const double scale = static_cast<double>(y.size()) * sigma_r2 / 2.0;
    GlrtResult out{0.0, 0};
    for (std::size_t k = 0; k < corr.size(); ++k) {
        const double m = std::norm(corr[k]) / scale;
        if (m > out.stat) {
            out.stat = m;
            out.lag = k;
        }
    }
    return out;
}

double noncentrality(const CVec &w, const CVec &c, const TargetSpec &target,
                     std::size_t n, double sigma_r2, double lambda) {
    if (sigma_r2 <= 0.0)
        throw validation_error("noncentrality: noise variance must be positive");
    const CVec a = steering(target.angle_theta, w.size());
    const double alpha = radar_amplitude(target.rcs_xi, target.range_r, lambda);
    const double joint = std::abs(vdot(c, a)) * std::abs(vdot(a, w));
    return alpha * alpha * static_cast<double>(n) * joint * joint / (sigma_r2 / 2.0);
}

double analytic_pfa(double eta, std::size_t n) {
    if (eta < 0.0)
        throw validation_error("analytic_pfa: threshold must be nonnegative");
    const double p = std::exp(-eta / 2.0);
    if (p >= 1.0)
        return 1.0;
    return -std::expm1(static_cast<double>(n) * std::log1p(-p));
}

double analytic_pfa_single(double eta) {
    if (eta < 0.0)
        throw validation_error("analytic_pfa_single: threshold must be nonnegative");
    return std::exp(-eta / 2.0);
}

double analytic_pd(double eta, double rho) {
    if (eta < 0.0 || rho < 0.0)
        throw validation_error("analytic_pd: arguments must be nonnegative");
    if (eta == 0.0)
        return 1.0;
    if (rho == 0.0)
        return std::exp(-eta / 2.0);
    const boost::math::non_central_chi_squared dist(2.0, rho);
    return boost::math::cdf(boost::math::complement(dist, eta));
}

std::vector<double> log_spaced(double lo, double hi, std::size_t count) {
    if (count == 0 || lo <= 0.0 || hi < lo)
        throw validation_error("log_spaced: bad grid parameters");
    std::vector<double> out(count);
    if (count == 1) {
        out[0] = lo;
        return out;
    }
    const double la = std::log10(lo), lb = std::log10(hi);
    for (std::size_t i = 0; i < count; ++i)
        out[i] = std::pow(10.0, la + (lb - la) * static_cast<double>(i) / static_cast<double>(count - 1));
    out.front() = lo;
    out.back() = hi;
    return out;
}

namespace {

struct TrialDraw {
    double stat_h0;
    double stat_h1;
};

TrialDraw run_trial(const Scenario &sc, const BeamformerPair &pair, const CMat *h_si,
                    const RocOptions &opt, std::size_t trial) {
    Philox rng(sc.seed, stream_trial_base + trial);
    const BeamBin &bin = sc.bin;
    std::vector<TargetSpec> targets = sc.targets;

    if (opt.resample_angles && !targets.empty()) {
        // probed target uniform inside the bin
        targets[0].angle_theta =
            bin.center_theta_b + (rng.next_unit() - 0.5) * bin.width_delta;
        // unprobed targets uniform outside bin (+ guard unless disabled)
        const double lo = bin.width_delta / 2.0 + (opt.exclude_guard ? bin.guard : 0.0);
        for (std::size_t q = 1; q < targets.size(); ++q) {
            const double left_len = std::max(0.0, (bin.center_theta_b - lo) - (-pi / 2.0));
            const double right_len = std::max(0.0, pi / 2.0 - (bin.center_theta_b + lo));
            const double u = rng.next_unit() * (left_len + right_len);
            targets[q].angle_theta = u < left_len ? -pi / 2.0 + u
                                                  : bin.center_theta_b + lo + (u - left_len);
        }
    }

    const EchoGeometry geo{sc.array.wavelength(), sc.waveform.n_samples, sc.waveform.slot_duration};
    const std::vector<cxd> s = gen_waveform(sc.waveform, rng);

    std::vector<TargetSpec> unprobed(targets.begin() + (targets.empty() ? 0 : 1), targets.end());
    const std::vector<cxd> y1 = synth_received(pair.w, pair.c, targets, h_si, s, sc.sigma_r2, geo, rng);
    const std::vector<cxd> y0 = synth_received(pair.w, pair.c, unprobed, h_si, s, sc.sigma_r2, geo, rng);

    TrialDraw d{};
    d.stat_h0 = glrt_statistic(y0, s, sc.sigma_r2).stat;
    d.stat_h1 = glrt_statistic(y1, s, sc.sigma_r2).stat;
    return d;
}

} // namespace

std::vector<RocPoint> simulate_roc(const Scenario &sc, const BeamformerPair &pair,
                                   const std::vector<double> &thresholds,
                                   const RocOptions &opt) {
    if (opt.trials == 0)
        throw validation_error("simulate_roc: trials must be positive");
    for (std::size_t i = 1; i < thresholds.size(); ++i)
        if (thresholds[i] < thresholds[i - 1])
            throw validation_error("simulate_roc: thresholds must ascend");

    CMat h_si;
    if (opt.include_si)
        h_si = si_channel(sc.array);
    const CMat *h_ptr = opt.include_si ? &h_si : nullptr;

    std::vector<double> st0(opt.trials), st1(opt.trials);
    unsigned threads = opt.threads;
    if (threads == 0)
        threads = std::min(8u, std::max(1u, std::thread::hardware_concurrency()));
    threads = std::min<unsigned>(threads, static_cast<unsigned>(opt.trials));

    auto worker = [&](std::size_t begin, std::size_t end) {
        for (std::size_t t = begin; t < end; ++t) {
            const TrialDraw d = run_trial(sc, pair, h_ptr, opt, t);
            st0[t] = d.stat_h0;
            st1[t] = d.stat_h1;
        }
    };
    if (threads <= 1) {
        worker(0, opt.trials);
    } else {
        std::vector<std::future<void>> futs;
        const std::size_t chunk = (opt.trials + threads - 1) / threads;
        for (unsigned k = 0; k < threads; ++k) {
            const std::size_t b = k * chunk;
            const std::size_t e = std::min(opt.trials, b + chunk);
            if (b >= e)
                break;
            futs.push_back(std::async(std::launch::async, worker, b, e));
        }
        for (auto &f : futs)
            f.get();
    }

    std::vector<RocPoint> roc;
    roc.reserve(thresholds.size());
    for (double eta : thresholds) {
        std::size_t fa = 0, det = 0;
        for (std::size_t t = 0; t < opt.trials; ++t) {
            fa += st0[t] > eta ? 1 : 0;
            det += st1[t] > eta ? 1 : 0;
        }
        roc.push_back({eta, static_cast<double>(fa) / static_cast<double>(opt.trials),
                       static_cast<double>(det) / static_cast<double>(opt.trials), opt.trials});
    }
    return roc;
}

std::vector<ApsPoint> aps_tx(const CVec &w, const std::vector<double> &grid, double r,
                             const ArrayConfig &array, double pathloss_exponent) {
    UserSpec probe;
    probe.range_r = r;
    probe.pathloss_exponent = pathloss_exponent;
    const double pl = user_pathloss(probe, array);
    std::vector<ApsPoint> out;
    out.reserve(grid.size());
    for (double th : grid) {
        const double g = std::norm(vdot(steering(th, w.size()), w));
        out.push_back({th, watt2dbm(pl * g)});
    }
    return out;
}

ApsJointResult aps_joint(const CVec &w, const CVec &c, const std::vector<double> &grid,
                         double r, const ArrayConfig &array, const CMat &h_si, double sigma_r2) {
    const double alpha = radar_amplitude(1.0, r, array.wavelength());
    ApsJointResult out;
    out.points.reserve(grid.size());
    for (double th : grid) {
        const CVec a = steering(th, w.size());
        const double g = std::norm(vdot(c, a)) * std::norm(vdot(a, w));
        out.points.push_back({th, watt2dbm(alpha * alpha * g)});
    }
    out.si_dbm = watt2dbm(std::norm(vdot(c, h_si * w)));
    out.noise_dbm = watt2dbm(sigma_r2);
    return out;
}

} // namespace isacbeam
