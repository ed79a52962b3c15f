// SPDX-License-Identifier: Apache-2.0
//
// isacbeam - analog ISAC beamformer synthesis and radar detection simulation
// Copyright (C) 2026 isacbeam authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "isacbeam/solver.hpp"

#include <algorithm>
#include <cmath>
#include <future>

namespace isacbeam {

SolveContext make_context(const Scenario &sc) {
    validate(sc);
    SolveContext ctx;
    ctx.scenario = sc;
    ctx.h_si = si_channel(sc.array);
    SvdSplit split = svd_split(ctx.h_si);
    ctx.h_u = std::move(split.h_u);
    ctx.h_v = std::move(split.h_v);
    const std::size_t m = sc.array.m();
    ctx.g_sat.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        CVec e(m, 0.0);
        e[i] = 1.0;
        ctx.g_sat[i] = ctx.h_si.adjoint_apply(e); // H_si^H e_m
    }
    ctx.user_h.resize(sc.users.size());
    for (std::size_t k = 0; k < sc.users.size(); ++k) {
        Philox rng(sc.seed, stream_user_channel + k);
        ctx.user_h[k] = user_channel(sc.users[k], sc.array, rng);
    }
    ctx.grids = build_angle_grids(sc.bin);
    return ctx;
}

namespace {

HermMat gram_product_vh(const CMat &h_v) {
    // H_V^H H_V
    const std::size_t m = h_v.cols();
    HermMat g(m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            cxd s = 0.0;
            for (std::size_t k = 0; k < h_v.rows(); ++k)
                s += std::conj(h_v(k, i)) * h_v(k, j);
            g.at(i, j) = s;
        }
    g.symmetrize();
    return g;
}

HermMat gram_product_hu(const CMat &h_u) {
    // H_U H_U^H
    const std::size_t m = h_u.rows();
    HermMat g(m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            cxd s = 0.0;
            for (std::size_t k = 0; k < h_u.cols(); ++k)
                s += h_u(i, k) * std::conj(h_u(j, k));
            g.at(i, j) = s;
        }
    g.symmetrize();
    return g;
}

void append_sidelobe_sets(Pipeline &pipe, const SolveContext &ctx, double mu) {
    const std::size_t m = ctx.scenario.array.m();
    const double gs = ctx.scenario.gamma_s;
    std::vector<HermMat> a_l, a_s;
    a_l.reserve(ctx.grids.theta_l.size());
    a_s.reserve(ctx.grids.theta_s.size());
    for (double th : ctx.grids.theta_l)
        a_l.push_back(HermMat::outer(steering(th, m)));
    for (double th : ctx.grids.theta_s)
        a_s.push_back(HermMat::outer(steering(th, m)));
    // mainlobe angle outer, sidelobe angle inner, both ascending
    for (std::size_t i = 0; i < a_l.size(); ++i)
        for (std::size_t j = 0; j < a_s.size(); ++j) {
            HermMat g = a_l[i];
            g.axpy(-gs, a_s[j]);
            pipe.push_back({ConvexSetSpec::affine(SetKind::sidelobe, Relation::at_least, std::move(g),
                                                  0.0, static_cast<int>(i), static_cast<int>(j)),
                            mu});
        }
}

} // namespace

Pipeline build_tx_pipeline(const SolveContext &ctx) {
    const Scenario &sc = ctx.scenario;
    const std::size_t m = sc.array.m();
    const double mu = sc.solver.mu, mup = sc.solver.mu_prime;
    Pipeline pipe;
    for (std::size_t i = 0; i < m; ++i) {
        CVec e(m, 0.0);
        e[i] = 1.0;
        pipe.push_back({ConvexSetSpec::affine(SetKind::ant_power, Relation::at_most,
                                              HermMat::outer(e), sc.p_ant, static_cast<int>(i)),
                        mu});
    }
    for (std::size_t i = 0; i < m; ++i)
        pipe.push_back({ConvexSetSpec::affine(SetKind::sat_power, Relation::at_most,
                                              HermMat::outer(ctx.g_sat[i]), sc.p_sat, static_cast<int>(i)),
                        mu});
    append_sidelobe_sets(pipe, ctx, mu);
    for (std::size_t k = 0; k < ctx.user_h.size(); ++k) {
        const UserSpec &u = sc.users[k];
        pipe.push_back({ConvexSetSpec::affine(SetKind::user_snr, Relation::at_least,
                                              HermMat::outer(ctx.user_h[k]),
                                              u.noise_sigma2 * u.snr_gamma, static_cast<int>(k)),
                        mu});
    }
    pipe.push_back({ConvexSetSpec::affine(SetKind::si_tx_null, Relation::equality,
                                          gram_product_vh(ctx.h_v), 0.0),
                    mup});
    pipe.push_back({ConvexSetSpec::psd(), mup});
    return pipe;
}

Pipeline build_rx_pipeline(const SolveContext &ctx) {
    const Scenario &sc = ctx.scenario;
    const std::size_t m = sc.array.m();
    const double mu = sc.solver.mu, mup = sc.solver.mu_prime;
    Pipeline pipe;
    append_sidelobe_sets(pipe, ctx, mu);
    pipe.push_back({ConvexSetSpec::affine(SetKind::unit_trace, Relation::equality,
                                          HermMat::identity(m), 1.0),
                    mup});
    pipe.push_back({ConvexSetSpec::affine(SetKind::si_rx_null, Relation::equality,
                                          gram_product_hu(ctx.h_u), 0.0),
                    mup});
    pipe.push_back({ConvexSetSpec::psd(), mup});
    return pipe;
}

HermMat perturb_rank(const HermMat &x) {
    HermMat k = project_rank1(x);
    k -= x;
    return k;
}

HermMat perturb_minmax(const HermMat &x, const std::vector<double> &theta_l) {
    if (theta_l.empty())
        throw validation_error("perturb_minmax: empty mainlobe grid");
    const std::size_t m = x.dim();
    // ||A_theta||_H = ||a||^2 = M for unit-modulus steering entries
    const double a_norm = static_cast<double>(m);
    std::size_t i_max = 0, i_min = 0;
    double v_max = 0.0, v_min = 0.0;
    for (std::size_t i = 0; i < theta_l.size(); ++i) {
        const double v = x.quad_form(steering(theta_l[i], m)) / a_norm;
        if (i == 0 || v > v_max) {
            v_max = v;
            i_max = i;
        }
        if (i == 0 || v < v_min) {
            v_min = v;
            i_min = i;
        }
    }
    (void)i_max;
    HermMat y(m);
    if (v_max > v_min)
        y.axpy((v_max - v_min) / a_norm, HermMat::outer(steering(theta_l[i_min], m)));
    return y;
}

HermMat perturb_scale(const HermMat &x, const SolveContext &ctx) {
    const Scenario &sc = ctx.scenario;
    const std::size_t m = x.dim();
    const double tiny = 1e-18 * norm_h(x);
    double beta = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
        const double d = x(i, i).real();
        if (d > tiny)
            beta = std::min(beta, sc.p_ant / d);
    }
    for (const CVec &g : ctx.g_sat) {
        const double d = x.quad_form(g);
        if (d > tiny)
            beta = std::min(beta, sc.p_sat / d);
    }
    if (!std::isfinite(beta))
        beta = sc.solver.beta_clamp;
    beta = std::clamp(beta, 0.0, sc.solver.beta_clamp);
    HermMat b = x;
    b *= beta - 1.0;
    return b;
}

bool check_alignment(const CVec &w, const CVec &c, const std::vector<double> &theta_l) {
    if (theta_l.empty())
        throw validation_error("check_alignment: empty mainlobe grid");
    const std::size_t m = w.size();
    std::size_t i_w = 0, i_c = 0;
    double best_w = 0.0, best_c = 0.0;
    for (std::size_t i = 0; i < theta_l.size(); ++i) {
        const CVec a = steering(theta_l[i], m);
        const double vw = std::abs(vdot(a, w));
        const double vc = std::abs(vdot(c, a));
        if (i == 0 || vw < best_w) {
            best_w = vw;
            i_w = i;
        }
        if (i == 0 || vc < best_c) {
            best_c = vc;
            i_c = i;
        }
    }
    return i_w == i_c;
}

namespace {

double min_mainlobe(const HermMat &x, const std::vector<double> &theta_l) {
    double best = 0.0;
    for (std::size_t i = 0; i < theta_l.size(); ++i) {
        const double v = x.quad_form(steering(theta_l[i], x.dim()));
        if (i == 0 || v < best)
            best = v;
    }
    return best;
}

// per-family maxima of the absolute residuals
std::map<std::string, double> family_residuals(const Pipeline &pipe, const HermMat &x) {
    std::map<std::string, double> out;
    for (const RelaxedStep &st : pipe) {
        double &slot = out[set_kind_name(st.set.kind)];
        slot = std::max(slot, residual(st.set, x));
    }
    return out;
}

} // namespace

std::pair<HermMat, SolveReport> run_chain(const ChainInputs &in, const SolveContext &ctx) {
    const SolverConfig &cfg = in.cfg;
    HermMat x = in.x0;
    SolveReport rep;
    rep.objective_trajectory.reserve(cfg.max_iter);

    double c1 = 1.0, c2 = 1.0, c3 = 1.0;
    std::vector<std::map<std::string, double>> residual_history;
    std::vector<std::size_t> residual_iters;

    std::size_t i = 0;
    for (; i < cfg.max_iter; ++i) {
        HermMat k_dir = perturb_rank(x);
        HermMat y_dir = in.objective_pert ? in.objective_pert(x) : HermMat(x.dim());
        rep.perturbation_mass[0] += c1 * norm_h(k_dir);
        rep.perturbation_mass[1] += c2 * norm_h(y_dir);

        HermMat xp = x;
        xp.axpy(c1, k_dir);
        xp.axpy(c2, y_dir);
        if (in.with_scale_pert) {
            HermMat b_dir = perturb_scale(x, ctx);
            rep.perturbation_mass[2] += c3 * norm_h(b_dir);
            xp.axpy(c3, b_dir);
        }
        xp.symmetrize();

        for (const RelaxedStep &st : in.pipeline)
            apply_relaxed(st.set, xp, st.mu);
        xp.symmetrize();

        rep.objective_trajectory.push_back(min_mainlobe(xp, in.theta_l));
        if (i % 10 == 0) {
            std::map<std::string, double> fam = family_residuals(in.pipeline, xp);
            double worst = 0.0;
            for (const auto &[name, v] : fam)
                worst = std::max(worst, v);
            rep.residual_trajectory.push_back(worst);
            residual_history.push_back(std::move(fam));
            residual_iters.push_back(i);
        }

        HermMat diff = xp;
        diff -= x;
        const double nx = norm_h(xp);
        const double step = norm_h(diff) / std::max(nx, 1e-300);
        x = std::move(xp);
        rep.final_step = step;
        c1 *= cfg.a1;
        c2 *= cfg.a2;
        c3 *= cfg.a3;
        if (step < cfg.epsilon) {
            rep.converged = true;
            ++i;
            break;
        }
    }
    rep.iterations = i;

    rep.set_residuals = family_residuals(in.pipeline, x);
    rep.norm_x = norm_h(x);
    rep.trace_x = x.trace();
    HermMat r1 = project_rank1(x);
    r1 -= x;
    rep.rank_residual = rep.norm_x > 0.0 ? norm_h(r1) / rep.norm_x : 0.0;

    // stall detection: a set family whose residual is still material and has
    // not decreased by 1e-3 relative over the final 100 iterations
    if (residual_history.size() >= 2) {
        const std::map<std::string, double> &last = residual_history.back();
        const std::size_t last_iter = residual_iters.back();
        std::size_t j = residual_history.size() - 1;
        while (j > 0 && residual_iters[j - 1] + 100 > last_iter)
            --j;
        if (residual_iters[j] + 100 <= last_iter || j + 1 < residual_history.size()) {
            const std::map<std::string, double> &ref = residual_history[j];
            for (const auto &[name, now] : last) {
                auto it = ref.find(name);
                if (it == ref.end())
                    continue;
                if (now > 1e-9 * std::max(rep.norm_x, 1e-300) && now >= it->second * (1.0 - 1e-3))
                    rep.stalled_sets.push_back(name);
            }
        }
    }
    return {x, rep};
}

SolveResult superiorized_solve(const Scenario &sc) {
    SolveContext ctx = make_context(sc);
    const std::size_t m = sc.array.m();
    const CVec a_b = steering(sc.bin.center_theta_b, m);

    ChainInputs tx;
    tx.pipeline = build_tx_pipeline(ctx);
    tx.x0 = HermMat::outer(a_b);
    tx.x0 *= sc.p_ant; // per-antenna power exactly P_ant
    tx.cfg = sc.solver;
    tx.theta_l = ctx.grids.theta_l;
    tx.with_scale_pert = true;
    tx.objective_pert = [grid = ctx.grids.theta_l](const HermMat &x) {
        return perturb_minmax(x, grid);
    };

    ChainInputs rx;
    rx.pipeline = build_rx_pipeline(ctx);
    rx.x0 = HermMat::outer(a_b);
    rx.x0 *= 1.0 / static_cast<double>(m); // unit trace
    rx.cfg = sc.solver;
    rx.theta_l = ctx.grids.theta_l;
    rx.with_scale_pert = false;
    rx.objective_pert = tx.objective_pert;

    auto fut_tx = std::async(std::launch::async, [&] { return run_chain(tx, ctx); });
    auto fut_rx = std::async(std::launch::async, [&] { return run_chain(rx, ctx); });
    auto [w_mat, rep_tx] = fut_tx.get();
    auto [c_mat, rep_rx] = fut_rx.get();

    SolveResult out;
    out.pair.big_w = w_mat;
    out.pair.big_c = c_mat;

    PrincipalComponent pw = principal_component(w_mat);
    const double lam = std::max(pw.value, 0.0);
    CVec w(m, 0.0);
    const double amp = std::sqrt(lam);
    for (std::size_t i = 0; i < m; ++i)
        w[i] = amp * pw.vector[i];
    // rank-extraction error can push a power cap slightly past its limit;
    // one scalar down-scale restores feasibility without changing direction
    double viol = 1.0;
    for (std::size_t i = 0; i < m; ++i)
        viol = std::max(viol, std::norm(w[i]) / sc.p_ant);
    for (const CVec &g : ctx.g_sat)
        viol = std::max(viol, std::norm(vdot(g, w)) / sc.p_sat);
    if (viol > 1.0) {
        const double s = 1.0 / std::sqrt(viol);
        for (cxd &v : w)
            v *= s;
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
