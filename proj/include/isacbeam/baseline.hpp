// SPDX-License-Identifier: Apache-2.0
//
// isacbeam - analog ISAC beamformer synthesis and radar detection simulation
// Copyright (C) 2026 isacbeam authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#ifndef ISACBEAM_BASELINE_HPP
#define ISACBEAM_BASELINE_HPP

#include "isacbeam/solver.hpp"

namespace isacbeam {

/// Desired beampattern over the evaluation grid: 1 inside the probing bin,
/// 0 elsewhere. The grid is the union of the mainlobe and sidelobe grids.
struct BeampatternTemplate {
    std::vector<double> grid;
    std::vector<double> p;
};

BeampatternTemplate make_template(const BeamBin &bin);

struct MseValue {
    double l_e;       // mean squared template error at the optimal scale
    double zeta_star; // closed-form optimal template scale
};

/// L_E(X, zeta*) with zeta* = sum p<A,X> / sum p^2 minimizing the quadratic.
MseValue mse_objective(const HermMat &x, const BeampatternTemplate &tmpl);

/// Gradient of L_E at fixed zeta*: (2/|grid|) sum (<A,X> - zeta* p) A.
HermMat mse_gradient(const HermMat &x, const BeampatternTemplate &tmpl);

/// MSE beampattern baseline: per-antenna power equality (TX) / unit trace
/// (RX) plus the PSD cone, superiorized with the rank perturbation and a
/// normalized MSE descent direction. No SI, sidelobe or user sets.
SolveResult baseline_solve(const Scenario &sc);

/// The baseline pipelines, exposed for introspection in tests.
Pipeline build_baseline_tx_pipeline(const Scenario &sc);
Pipeline build_baseline_rx_pipeline(const Scenario &sc);

} // namespace isacbeam

#endif
