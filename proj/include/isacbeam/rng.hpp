// SPDX-License-Identifier: Apache-2.0
//
// isacbeam - analog ISAC beamformer synthesis and radar detection simulation
// Copyright (C) 2026 isacbeam authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#ifndef ISACBEAM_RNG_HPP
#define ISACBEAM_RNG_HPP

#include <complex>
#include <cstdint>

namespace isacbeam {

/// Counter-based generator (Philox4x32-10). A stream is fully determined by
/// (seed, stream id); distinct streams are statistically independent, so
/// parallel consumers that own distinct streams reproduce the sequential
/// result regardless of scheduling.
class Philox {
  public:
    Philox(std::uint64_t seed, std::uint64_t stream);

    std::uint32_t next_u32();
    std::uint64_t next_u64();
    /// uniform in [0, 1), 53-bit resolution
    double next_unit();
    /// standard normal (Box-Muller, second value cached)
    double next_gaussian();
    /// circularly-symmetric complex normal with the given total variance
    std::complex<double> next_cnormal(double variance);
    /// unit-modulus QPSK symbol (+-1 +-j)/sqrt(2)
    std::complex<double> next_qpsk();

    /// Raw 4x32 block for a given counter; exposed for known-answer tests.
    static void block(const std::uint32_t key[2], const std::uint32_t ctr[4], std::uint32_t out[4]);

  private:
    void refill();

    std::uint32_t key_[2];
    std::uint32_t ctr_[4]; // [0],[1]: running block counter; [2],[3]: stream id
    std::uint32_t buf_[4];
    int pos_ = 4;
    double cached_gauss_ = 0.0;
    bool has_cached_ = false;
};

// Stream-id allocation used across the library. Consumers derive per-object
// streams by adding an index to the base.
inline constexpr std::uint64_t stream_user_channel = 0x0000'0100;
inline constexpr std::uint64_t stream_waveform = 0x0000'0200;
inline constexpr std::uint64_t stream_trial_base = 0x0001'0000;

} // namespace isacbeam

#endif
