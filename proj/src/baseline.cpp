// SPDX-License-Identifier: Apache-2.0
//
// isacbeam - analog ISAC beamformer synthesis and radar detection simulation
// Copyright (C) 2026 isacbeam authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "isacbeam/baseline.hpp"

#include <cmath>
#include <future>

namespace isacbeam {

BeampatternTemplate make_template(const BeamBin &bin) {
    AngleGrids g = build_angle_grids(bin);
    BeampatternTemplate tmpl;
    tmpl.grid = g.theta_l;
    tmpl.grid.insert(tmpl.grid.end(), g.theta_s.begin(), g.theta_s.end());
    const double half = bin.width_delta / 2.0 + 1e-12;
    for (double th : tmpl.grid)
        tmpl.p.push_back(std::abs(th - bin.center_theta_b) <= half ? 1.0 : 0.0);
    return tmpl;
}

MseValue mse_objective(const HermMat &x, const BeampatternTemplate &tmpl) {
    if (tmpl.grid.empty())
        throw validation_error("mse_objective: empty template grid");
    double pp = 0.0, pv = 0.0;
    std::vector<double> v(tmpl.grid.size());
    for (std::size_t i = 0; i < tmpl.grid.size(); ++i) {
        v[i] = x.quad_form(steering(tmpl.grid[i], x.dim()));
        pp += tmpl.p[i] * tmpl.p[i];
        pv += tmpl.p[i] * v[i];
    }
    if (pp <= 0.0)
        throw validation_error("mse_objective: template is identically zero");
    const double zeta = pv / pp;
    double le = 0.0;
    for (std::size_t i = 0; i < tmpl.grid.size(); ++i) {
        const double r = zeta * tmpl.p[i] - v[i];
        le += r * r;
    }
    return {le / static_cast<double>(tmpl.grid.size()), zeta};
}

HermMat mse_gradient(const HermMat &x, const BeampatternTemplate &tmpl) {
    MseValue val = mse_objective(x, tmpl);
    HermMat g(x.dim());
    for (std::size_t i = 0; i < tmpl.grid.size(); ++i) {
        const CVec a = steering(tmpl.grid[i], x.dim());
        const double r = x.quad_form(a) - val.zeta_star * tmpl.p[i];
        if (r != 0.0)
            g.axpy(r, HermMat::outer(a));
    }
    g *= 2.0 / static_cast<double>(tmpl.grid.size());
    return g;
}

Pipeline build_baseline_tx_pipeline(const Scenario &sc) {
    const std::size_t m = sc.array.m();
    Pipeline pipe;
    for (std::size_t i = 0; i < m; ++i) {
        CVec e(m, 0.0);
        e[i] = 1.0;
        pipe.push_back({ConvexSetSpec::affine(SetKind::ant_power, Relation::equality,
                                              HermMat::outer(e), sc.p_ant, static_cast<int>(i)),
                        sc.solver.mu_prime});
    }
    pipe.push_back({ConvexSetSpec::psd(), sc.solver.mu_prime});
    return pipe;
}

Pipeline build_baseline_rx_pipeline(const Scenario &sc) {
    const std::size_t m = sc.array.m();
    Pipeline pipe;
    pipe.push_back({ConvexSetSpec::affine(SetKind::unit_trace, Relation::equality,
                                          HermMat::identity(m), 1.0),
                    sc.solver.mu_prime});
    pipe.push_back({ConvexSetSpec::psd(), sc.solver.mu_prime});
    return pipe;
}

SolveResult baseline_solve(const Scenario &sc) {
    SolveContext ctx = make_context(sc);
    const std::size_t m = sc.array.m();
    const CVec a_b = steering(sc.bin.center_theta_b, m);
    BeampatternTemplate tmpl = make_template(sc.bin);

    auto descent = [tmpl](const HermMat &x) {
        HermMat g = mse_gradient(x, tmpl);
        const double n = norm_h(g);
        if (n > 0.0)
            g *= -1.0 / n;
        return g;
    };

    ChainInputs tx;
    tx.pipeline = build_baseline_tx_pipeline(sc);
    tx.x0 = HermMat::outer(a_b);
    tx.x0 *= sc.p_ant;
    tx.cfg = sc.solver;
    tx.theta_l = ctx.grids.theta_l;
    tx.with_scale_pert = false;
    tx.objective_pert = descent;

    ChainInputs rx;
    rx.pipeline = build_baseline_rx_pipeline(sc);
    rx.x0 = HermMat::outer(a_b);
    rx.x0 *= 1.0 / static_cast<double>(m);
    rx.cfg = sc.solver;
    rx.theta_l = ctx.grids.theta_l;
    rx.with_scale_pert = false;
    rx.objective_pert = descent;

    auto fut_tx = std::async(std::launch::async, [&] { return run_chain(tx, ctx); });
    auto fut_rx = std::async(std::launch::async, [&] { return run_chain(rx, ctx); });
    auto [w_mat, rep_tx] = fut_tx.get();
    auto [c_mat, rep_rx] = fut_rx.get();

    SolveResult out;
    out.pair.big_w = w_mat;
    out.pair.big_c = c_mat;

    // The TX chain enforces per-antenna equality; the analog reading of that
    // constraint is a phase-only weight vector, so extraction keeps the
    // principal component's phases at exactly sqrt(P_ant) amplitude.
    PrincipalComponent pw = principal_component(w_mat);
    CVec w(m);
    const double amp = std::sqrt(sc.p_ant);
    for (std::size_t i = 0; i < m; ++i) {
        const double a = std::abs(pw.vector[i]);
        w[i] = a > 0.0 ? amp * pw.vector[i] / a : cxd(amp, 0.0);
    }

    PrincipalComponent pc = principal_component(c_mat);
    CVec c = pc.vector;
    const double cn = vec_norm(c);
    if (cn > 0.0)
        for (cxd &v : c)
            v /= cn;

    out.pair.w = std::move(w);
    out.pair.c = std::move(c);
    out.pair.p_t = vec_norm(out.pair.w) * vec_norm(out.pair.w);

    const bool aligned = check_alignment(out.pair.w, out.pair.c, ctx.grids.theta_l);
    rep_tx.aligned = aligned;
    rep_rx.aligned = aligned;
    out.tx = std::move(rep_tx);
    out.rx = std::move(rep_rx);
    return out;
}

} // namespace isacbeam
