// SPDX-License-Identifier: Apache-2.0
//
// isacbeam - analog ISAC beamformer synthesis and radar detection simulation
// Copyright (C) 2026 isacbeam authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "isacbeam/convex_sets.hpp"

#include <cmath>

namespace isacbeam {

const char *set_kind_name(SetKind kind) {
    switch (kind) {
    case SetKind::si_tx_null: return "V";
    case SetKind::user_snr: return "N";
    case SetKind::ant_power: return "A";
    case SetKind::sat_power: return "S";
    case SetKind::sidelobe: return "L";
    case SetKind::psd_cone: return "P";
    case SetKind::si_rx_null: return "U";
    case SetKind::unit_trace: return "I";
    }
    return "?";
}

ConvexSetSpec ConvexSetSpec::affine(SetKind kind, Relation rel, HermMat g, double b, int ia, int ib) {
    if (rel == Relation::cone)
        throw validation_error("ConvexSetSpec::affine: cone is not an affine relation");
    ConvexSetSpec s;
    s.kind = kind;
    s.relation = rel;
    s.gram_norm = norm_h(g);
    if (s.gram_norm <= 0.0)
        throw validation_error("ConvexSetSpec::affine: zero Gram matrix");
    s.gram = std::move(g);
    s.bound = b;
    s.index_a = ia;
    s.index_b = ib;
    return s;
}

ConvexSetSpec ConvexSetSpec::psd() {
    ConvexSetSpec s;
    s.kind = SetKind::psd_cone;
    s.relation = Relation::cone;
    return s;
}

namespace {

// signed violation: how far <G,X> sits on the infeasible side of the bound
double affine_gap(const ConvexSetSpec &set, const HermMat &x) {
    const double v = trace_inner(set.gram, x);
    switch (set.relation) {
    case Relation::equality: return set.bound - v;
    case Relation::at_least: return v < set.bound ? set.bound - v : 0.0;
    case Relation::at_most: return v > set.bound ? set.bound - v : 0.0;
    case Relation::cone: break;
    }
    return 0.0;
}

HermMat psd_clamp(const HermMat &x, double *clamped_norm = nullptr) {
    EigenDecomposition eig = hermitian_eig(x);
    HermMat out(x.dim());
    double neg2 = 0.0;
    for (std::size_t i = 0; i < eig.values.size(); ++i) {
        const double lam = eig.values[i];
        if (lam > 0.0)
            out.axpy(lam, HermMat::outer(eig.vectors[i]));
        else
            neg2 += lam * lam;
    }
    out.symmetrize();
    if (clamped_norm)
        *clamped_norm = std::sqrt(neg2);
    return out;
}

} // namespace

HermMat project(const ConvexSetSpec &set, const HermMat &x) {
    if (set.relation == Relation::cone)
        return psd_clamp(x);
    if (set.gram.dim() != x.dim())
        throw validation_error("project: dimension mismatch");
    HermMat out = x;
    const double gap = affine_gap(set, x);
    if (gap != 0.0)
        out.axpy(gap / (set.gram_norm * set.gram_norm), set.gram);
    return out;
}

HermMat relaxed_project(const ConvexSetSpec &set, const HermMat &x, double mu) {
    if (mu <= 0.0 || mu >= 2.0)
        throw validation_error("relaxed_project: mu must lie in (0, 2)");
    HermMat out = x;
    apply_relaxed(set, out, mu);
    return out;
}

double residual(const ConvexSetSpec &set, const HermMat &x) {
    if (set.relation == Relation::cone) {
        double neg2 = 0.0;
        for (double lam : hermitian_eig(x).values)
            if (lam < 0.0)
                neg2 += lam * lam;
        return std::sqrt(neg2);
    }
    if (set.gram.dim() != x.dim())
        throw validation_error("residual: dimension mismatch");
    return std::abs(affine_gap(set, x)) / set.gram_norm;
}

HermMat project_rank1(const HermMat &x) {
    PrincipalComponent pc = principal_component(x);
    if (pc.value <= 0.0)
        return HermMat(x.dim());
    HermMat out = HermMat::outer(pc.vector);
    out *= pc.value;
    return out;
}

void apply_relaxed(const ConvexSetSpec &set, HermMat &x, double mu) {
    if (set.relation == Relation::cone) {
        HermMat p = psd_clamp(x);
        if (mu == 1.0) {
            x = std::move(p);
        } else {
            p -= x;
            x.axpy(mu, p);
        }
        return;
    }
    const double gap = affine_gap(set, x);
    if (gap != 0.0)
        x.axpy(mu * gap / (set.gram_norm * set.gram_norm), set.gram);
}

} // namespace isacbeam
