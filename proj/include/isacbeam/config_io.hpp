// SPDX-License-Identifier: Apache-2.0
//
// isacbeam - analog ISAC beamformer synthesis and radar detection simulation
// Copyright (C) 2026 isacbeam authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#ifndef ISACBEAM_CONFIG_IO_HPP
#define ISACBEAM_CONFIG_IO_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "isacbeam/scenario.hpp"

namespace isacbeam {

inline constexpr const char *artifact_version = "0.1.0";

/// %.17g, the round-trip-exact decimal form used in every artifact file.
std::string fmt_g17(double v);

/// Scenario from a JSON config. Angles are degrees, powers dBm, gamma_s_db
/// is the joint two-way sidelobe target (each chain enforces 10^(dB/20)).
/// Missing keys take the paper defaults; unknown keys are rejected with the
/// offending path. The result is validated.
Scenario load_scenario(const std::string &path);
Scenario scenario_from_json_text(const std::string &text);

/// Canonical config-unit serialization; fixed key order, %.17g numbers.
std::string serialize_scenario(const Scenario &sc);

std::uint64_t fnv1a64(const std::string &bytes);
/// 16-hex-digit content hash of the canonical serialization.
std::string scenario_digest(const Scenario &sc);

struct RunManifest {
    std::string digest;
    std::string command;
    std::uint64_t seed = 0;
    std::string version = artifact_version;
    std::vector<std::string> outputs;
    double duration_seconds = 0.0;
};

std::string manifest_json(const RunManifest &m);

} // namespace isacbeam

#endif
