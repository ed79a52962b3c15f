// SPDX-License-Identifier: Apache-2.0
//
// isacbeam - analog ISAC beamformer synthesis and radar detection simulation
// Copyright (C) 2026 isacbeam authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#ifndef ISACBEAM_CONVEX_SETS_HPP
#define ISACBEAM_CONVEX_SETS_HPP

#include "isacbeam/linalg.hpp"

namespace isacbeam {

/// The set families of the feasibility problems. All affine families share
/// one projection kernel parameterized by (gram, bound, relation); the PSD
/// cone is the only spectral one.
enum class SetKind {
    si_tx_null,  // <H_V^H H_V, X> = 0
    user_snr,    // <h h^H, X> >= sigma^2 Gamma
    ant_power,   // <e_m e_m^H, X> <= P_ant (or = P_ant for the baseline)
    sat_power,   // <g_m g_m^H, X> <= P_sat
    sidelobe,    // <A_theta - gamma_s A_vartheta, X> >= 0
    psd_cone,    // X >= 0
    si_rx_null,  // <H_U H_U^H, X> = 0
    unit_trace,  // <I, X> = 1
};

enum class Relation { equality, at_least, at_most, cone };

const char *set_kind_name(SetKind kind);

struct ConvexSetSpec {
    SetKind kind = SetKind::psd_cone;
    Relation relation = Relation::cone;
    HermMat gram;      // empty for the cone
    double bound = 0.0;
    double gram_norm = 0.0; // cached ||G||_H
    int index_a = -1;  // antenna/user index, or mainlobe grid index for sidelobe sets
    int index_b = -1;  // sidelobe grid index

    static ConvexSetSpec affine(SetKind kind, Relation rel, HermMat g, double b,
                                int ia = -1, int ib = -1);
    static ConvexSetSpec psd();
};

/// Nearest point of the set in the trace-inner-product norm.
HermMat project(const ConvexSetSpec &set, const HermMat &x);

/// X + mu (P(X) - X), mu in (0, 2).
HermMat relaxed_project(const ConvexSetSpec &set, const HermMat &x, double mu);

/// ||X - P(X)||_H
double residual(const ConvexSetSpec &set, const HermMat &x);

/// Nearest PSD rank-<=1 matrix: largest signed eigenvalue clamped at zero
/// times its eigenvector outer product.
HermMat project_rank1(const HermMat &x);

/// In-place relaxed projection; the hot path of the solver sweep.
void apply_relaxed(const ConvexSetSpec &set, HermMat &x, double mu);

} // namespace isacbeam

#endif
