// SPDX-License-Identifier: Apache-2.0
//
// isacbeam - analog ISAC beamformer synthesis and radar detection simulation
// Copyright (C) 2026 isacbeam authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#ifndef ISACBEAM_SOLVER_HPP
#define ISACBEAM_SOLVER_HPP

#include <array>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "isacbeam/convex_sets.hpp"
#include "isacbeam/scenario.hpp"

namespace isacbeam {

struct RelaxedStep {
    ConvexSetSpec set;
    double mu = 1.0;
};

using Pipeline = std::vector<RelaxedStep>;

struct SolveReport {
    std::size_t iterations = 0;
    double final_step = 0.0; // relative ||X_{i+1}-X_i|| / ||X_{i+1}|| at exit
    bool converged = false;  // epsilon stop reached before max_iter
    std::map<std::string, double> set_residuals; // per-family max, absolute
    std::vector<double> objective_trajectory;    // min_theta tr(A_theta X) per iteration
    std::vector<double> residual_trajectory;     // max over sets, sampled every 10 iterations
    double rank_residual = 0.0;                  // ||X - P_R(X)||_H / ||X||_H
    bool aligned = false;
    std::vector<std::string> stalled_sets; // residual not decreasing over the last 100 iterations
    std::array<double, 3> perturbation_mass{}; // sum_i c_k^i ||pert_i||_H
    double norm_x = 0.0;
    double trace_x = 0.0;
};

struct BeamformerPair {
    CVec w; // TX weights, |w_m|^2 in watts
    CVec c; // RX weights, unit norm
    HermMat big_w; // final TX iterate
    HermMat big_c; // final RX iterate
    double p_t = 0.0; // ||w||^2
};

struct SolveResult {
    BeamformerPair pair;
    SolveReport tx;
    SolveReport rx;
};

/// Precomputed scenario-dependent data shared by both chains.
struct SolveContext {
    Scenario scenario;
    CMat h_si, h_u, h_v;
    std::vector<CVec> g_sat;  // g_m = H_si^H e_m
    std::vector<CVec> user_h; // drawn from (seed, stream_user_channel + k)
    AngleGrids grids;
};

SolveContext make_context(const Scenario &sc);

/// TX sweep order: A_1..A_M, S_1..S_M, L over Theta_L x Theta_S
/// (sidelobe angle inner, ascending), N_1..N_K at mu; then V, P at mu'.
Pipeline build_tx_pipeline(const SolveContext &ctx);

/// RX sweep order: L sets at mu; then I, U, P at mu'.
Pipeline build_rx_pipeline(const SolveContext &ctx);

/// P_R(X) - X
HermMat perturb_rank(const HermMat &x);

/// (v_max - v_min) A_min / ||A_min||_H with v_theta = <A_theta, X>/||A_theta||_H;
/// ties broken toward the smallest grid index.
HermMat perturb_minmax(const HermMat &x, const std::vector<double> &theta_l);

/// (beta - 1) X with beta = min over antenna-power and saturation ratios,
/// clamped to [0, beta_clamp]; near-zero denominators count as inactive.
HermMat perturb_scale(const HermMat &x, const SolveContext &ctx);

/// True iff the mainlobe minima of |a^H w| and |c^H a| over Theta_L occur at
/// the same grid index (first index wins on ties).
bool check_alignment(const CVec &w, const CVec &c, const std::vector<double> &theta_l);

/// One superiorized chain. objective_pert returns the unscaled second
/// perturbation (the min-max supergradient here, an MSE descent direction in
/// the baseline); it is weighted by a2^i. The scale perturbation (a3^i) is
/// applied only when with_scale_pert is set.
struct ChainInputs {
    Pipeline pipeline;
    HermMat x0;
    SolverConfig cfg;
    std::vector<double> theta_l; // objective grid
    bool with_scale_pert = false;
    std::function<HermMat(const HermMat &)> objective_pert;
};

std::pair<HermMat, SolveReport> run_chain(const ChainInputs &in, const SolveContext &ctx);

/// Full synthesis: both chains (run concurrently), principal-component
/// extraction, feasibility rescale of w, alignment check.
SolveResult superiorized_solve(const Scenario &sc);

} // namespace isacbeam

#endif
