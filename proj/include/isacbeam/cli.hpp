// SPDX-License-Identifier: Apache-2.0
//
// isacbeam - analog ISAC beamformer synthesis and radar detection simulation
// Copyright (C) 2026 isacbeam authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#ifndef ISACBEAM_CLI_HPP
#define ISACBEAM_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace isacbeam::cli {

// Exit codes: 0 success, 1 validation or check failure, 2 numerical failure,
// 3 non-convergence (outputs still written).
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace isacbeam::cli

#endif
