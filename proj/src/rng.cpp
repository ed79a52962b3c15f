// SPDX-License-Identifier: Apache-2.0
//
// isacbeam - analog ISAC beamformer synthesis and radar detection simulation
// Copyright (C) 2026 isacbeam authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "isacbeam/rng.hpp"

#include <cmath>

namespace isacbeam {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t &hi, std::uint32_t &lo) {
    const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

} // namespace

void Philox::block(const std::uint32_t key[2], const std::uint32_t ctr[4], std::uint32_t out[4]) {
    std::uint32_t k0 = key[0], k1 = key[1];
    std::uint32_t r0 = ctr[0], r1 = ctr[1], r2 = ctr[2], r3 = ctr[3];
    for (int round = 0; round < 10; ++round) {
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kMul0, r0, hi0, lo0);
        mulhilo(kMul1, r2, hi1, lo1);
        const std::uint32_t n0 = hi1 ^ r1 ^ k0;
        const std::uint32_t n1 = lo1;
        const std::uint32_t n2 = hi0 ^ r3 ^ k1;
        const std::uint32_t n3 = lo0;
        r0 = n0;
        r1 = n1;
        r2 = n2;
        r3 = n3;
        k0 += kWeyl0;
        k1 += kWeyl1;
    }
    out[0] = r0;
    out[1] = r1;
    out[2] = r2;
    out[3] = r3;
}

Philox::Philox(std::uint64_t seed, std::uint64_t stream) {
    key_[0] = static_cast<std::uint32_t>(seed);
    key_[1] = static_cast<std::uint32_t>(seed >> 32);
    ctr_[0] = 0;
    ctr_[1] = 0;
    ctr_[2] = static_cast<std::uint32_t>(stream);
    ctr_[3] = static_cast<std::uint32_t>(stream >> 32);
}

void Philox::refill() {
    block(key_, ctr_, buf_);
    if (++ctr_[0] == 0)
        ++ctr_[1];
    pos_ = 0;
}

std::uint32_t Philox::next_u32() {
    if (pos_ == 4)
        refill();
    return buf_[pos_++];
}

std::uint64_t Philox::next_u64() {
    const std::uint64_t lo = next_u32();
    const std::uint64_t hi = next_u32();
    return lo | (hi << 32);
}

double Philox::next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Philox::next_gaussian() {
    if (has_cached_) {
        has_cached_ = false;
        return cached_gauss_;
    }
    // u1 in (0, 1] keeps the log finite
    const double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = next_unit();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 2.0 * M_PI * u2;
    cached_gauss_ = r * std::sin(phi);
    has_cached_ = true;
    return r * std::cos(phi);
}

std::complex<double> Philox::next_cnormal(double variance) {
    const double s = std::sqrt(variance / 2.0);
    const double re = next_gaussian();
    const double im = next_gaussian();
    return {s * re, s * im};
}

std::complex<double> Philox::next_qpsk() {
    const std::uint32_t bits = next_u32();
    const double re = (bits & 1u) ? 1.0 : -1.0;
    const double im = (bits & 2u) ? 1.0 : -1.0;
    return {re * M_SQRT1_2, im * M_SQRT1_2};
}

} // namespace isacbeam
