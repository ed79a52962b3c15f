// SPDX-License-Identifier: Apache-2.0
//
// isacbeam - analog ISAC beamformer synthesis and radar detection simulation
// Copyright (C) 2026 isacbeam authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "isacbeam/cli.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "isacbeam/baseline.hpp"
#include "isacbeam/config_io.hpp"
#include "isacbeam/detection.hpp"
#include "isacbeam/solver.hpp"

namespace isacbeam::cli {

namespace fs = std::filesystem;

namespace {

struct CommonOpts {
    std::string config;
    std::string out_dir = ".";
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::string method = "spocs";
    std::size_t trials = 5000;
    double eta_min = 5.0;
    double eta_max = 5e6;
    std::size_t eta_count = 100;
    unsigned threads = 0;
    double range_m = 2.0;
};

struct OutputSink {
    fs::path dir;
    std::vector<std::string> written;

    void write(const std::string &name, const std::string &content) {
        fs::create_directories(dir);
        std::ofstream f(dir / name, std::ios::binary);
        if (!f)
            throw numerical_error("cannot write " + (dir / name).string());
        f << content;
        written.push_back(name);
    }
};

Scenario load(const CommonOpts &o) {
    Scenario sc = o.config.empty() ? default_scenario() : load_scenario(o.config);
    if (o.seed_set)
        sc.seed = o.seed;
    validate(sc);
    return sc;
}

std::string vec_json(const CVec &v, bool imag) {
    std::ostringstream s;
    s << "[";
    for (std::size_t i = 0; i < v.size(); ++i)
        s << (i ? ", " : "") << fmt_g17(imag ? v[i].imag() : v[i].real());
    s << "]";
    return s.str();
}

std::string doubles_json(const std::vector<double> &v) {
    std::ostringstream s;
    s << "[";
    for (std::size_t i = 0; i < v.size(); ++i)
        s << (i ? ", " : "") << fmt_g17(v[i]);
    s << "]";
    return s.str();
}

std::string report_chain_json(const SolveReport &r, const std::string &indent) {
    std::ostringstream s;
    s << "{\n";
    s << indent << "  \"iterations\": " << r.iterations << ",\n";
    s << indent << "  \"converged\": " << (r.converged ? "true" : "false") << ",\n";
    s << indent << "  \"final_step\": " << fmt_g17(r.final_step) << ",\n";
    s << indent << "  \"norm_x\": " << fmt_g17(r.norm_x) << ",\n";
    s << indent << "  \"trace_x\": " << fmt_g17(r.trace_x) << ",\n";
    s << indent << "  \"rank_residual\": " << fmt_g17(r.rank_residual) << ",\n";
    s << indent << "  \"aligned\": " << (r.aligned ? "true" : "false") << ",\n";
    s << indent << "  \"set_residuals\": {";
    bool first = true;
    for (const auto &[k, v] : r.set_residuals) {
        s << (first ? "" : ", ") << "\"" << k << "\": " << fmt_g17(v);
        first = false;
    }
    s << "},\n";
    s << indent << "  \"stalled_sets\": [";
    for (std::size_t i = 0; i < r.stalled_sets.size(); ++i)
        s << (i ? ", " : "") << "\"" << r.stalled_sets[i] << "\"";
    s << "],\n";
    s << indent << "  \"perturbation_mass\": [" << fmt_g17(r.perturbation_mass[0]) << ", "
      << fmt_g17(r.perturbation_mass[1]) << ", " << fmt_g17(r.perturbation_mass[2]) << "],\n";
    s << indent << "  \"objective_trajectory\": " << doubles_json(r.objective_trajectory) << ",\n";
    s << indent << "  \"residual_trajectory\": " << doubles_json(r.residual_trajectory) << "\n";
    s << indent << "}";
    return s.str();
}

std::string beamformers_json(const SolveResult &res, const Scenario &sc, const std::string &digest) {
    const BeamformerPair &p = res.pair;
    const CMat h_si = si_channel(sc.array);
    const double si = std::norm(vdot(p.c, h_si * p.w));
    std::ostringstream s;
    s << "{\n";
    s << "  \"digest\": \"" << digest << "\",\n";
    s << "  \"artifact_version\": \"" << artifact_version << "\",\n";
    s << "  \"p_t_watt\": " << fmt_g17(p.p_t) << ",\n";
    s << "  \"w_re\": " << vec_json(p.w, false) << ",\n";
    s << "  \"w_im\": " << vec_json(p.w, true) << ",\n";
    s << "  \"c_re\": " << vec_json(p.c, false) << ",\n";
    s << "  \"c_im\": " << vec_json(p.c, true) << ",\n";
    s << "  \"diagnostics\": {\n";
    s << "    \"si_dbm\": " << fmt_g17(watt2dbm(si)) << ",\n";
    s << "    \"aligned\": " << (res.tx.aligned ? "true" : "false") << ",\n";
    s << "    \"tx_rank_residual\": " << fmt_g17(res.tx.rank_residual) << ",\n";
    s << "    \"rx_rank_residual\": " << fmt_g17(res.rx.rank_residual) << ",\n";
    s << "    \"tx_converged\": " << (res.tx.converged ? "true" : "false") << ",\n";
    s << "    \"rx_converged\": " << (res.rx.converged ? "true" : "false") << "\n";
    s << "  }\n";
    s << "}\n";
    return s.str();
}

std::string report_json(const SolveResult &res, const std::string &digest,
                        const std::string &extra = "") {
    std::ostringstream s;
    s << "{\n";
    s << "  \"digest\": \"" << digest << "\",\n";
    if (!extra.empty())
        s << extra;
    s << "  \"tx\": " << report_chain_json(res.tx, "  ") << ",\n";
    s << "  \"rx\": " << report_chain_json(res.rx, "  ") << "\n";
    s << "}\n";
    return s.str();
}

std::string aps_csv(const std::vector<ApsPoint> &points, const std::string &digest) {
    std::ostringstream s;
    s << "# digest=" << digest << "\n";
    s << "theta_deg,power_dbm\n";
    for (const ApsPoint &p : points)
        s << fmt_g17(rad2deg(p.theta)) << "," << fmt_g17(p.power_dbm) << "\n";
    return s.str();
}

std::string roc_csv(const std::vector<RocPoint> &roc, const std::string &digest) {
    std::ostringstream s;
    s << "# digest=" << digest << "\n";
    s << "eta,p_fa,p_d,trials\n";
    for (const RocPoint &p : roc)
        s << fmt_g17(p.eta) << "," << fmt_g17(p.p_fa) << "," << fmt_g17(p.p_d) << "," << p.trials
          << "\n";
    return s.str();
}

SolveResult solve_method(const Scenario &sc, const std::string &method) {
    if (method == "mse")
        return baseline_solve(sc);
    return superiorized_solve(sc);
}

std::vector<double> aps_grid(const Scenario &sc) {
    std::vector<double> grid;
    const double step = sc.bin.grid_step;
    const long k_hi = static_cast<long>(std::floor(pi / 2.0 / step + 1e-9));
    for (long k = -k_hi; k <= k_hi; ++k)
        grid.push_back(static_cast<double>(k) * step);
    return grid;
}

int finish(OutputSink &sink, RunManifest &mf,
           std::chrono::steady_clock::time_point t0, int code) {
    mf.duration_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    mf.outputs = sink.written;
    mf.outputs.push_back("manifest.json");
    sink.write("manifest.json", manifest_json(mf));
    return code;
}

int cmd_synthesize(const CommonOpts &o, const std::string &method, std::ostream &out) {
    const auto t0 = std::chrono::steady_clock::now();
    Scenario sc = load(o);
    const std::string digest = scenario_digest(sc);
    SolveResult res = solve_method(sc, method);
    OutputSink sink{fs::path(o.out_dir), {}};
    sink.write("beamformers.json", beamformers_json(res, sc, digest));
    sink.write("report.json", report_json(res, digest));
    RunManifest mf{digest, method == "mse" ? "baseline" : "synthesize", sc.seed,
                   artifact_version, {}, 0.0};
    const bool converged = res.tx.converged && res.rx.converged;
    out << (method == "mse" ? "baseline" : "synthesize") << ": digest " << digest
        << (converged ? "" : " (stopped at max_iter)") << "\n";
    return finish(sink, mf, t0, converged ? 0 : 3);
}

int cmd_aps(const CommonOpts &o, std::ostream &out) {
    const auto t0 = std::chrono::steady_clock::now();
    Scenario sc = load(o);
    const std::string digest = scenario_digest(sc);
    const std::string method = o.method == "both" ? "spocs" : o.method;
    SolveResult res = solve_method(sc, method);
    const CMat h_si = si_channel(sc.array);
    const std::vector<double> grid = aps_grid(sc);
    const double ple = sc.users.empty() ? 2.2 : sc.users.front().pathloss_exponent;

    OutputSink sink{fs::path(o.out_dir), {}};
    sink.write("aps_tx.csv", aps_csv(aps_tx(res.pair.w, grid, o.range_m, sc.array, ple), digest));
    ApsJointResult joint =
        aps_joint(res.pair.w, res.pair.c, grid, o.range_m, sc.array, h_si, sc.sigma_r2);
    sink.write("aps_joint.csv", aps_csv(joint.points, digest));
    std::ostringstream extra;
    extra << "  \"si_dbm\": " << fmt_g17(joint.si_dbm) << ",\n";
    extra << "  \"noise_dbm\": " << fmt_g17(joint.noise_dbm) << ",\n";
    extra << "  \"range_m\": " << fmt_g17(o.range_m) << ",\n";
    sink.write("report.json", report_json(res, digest, extra.str()));
    RunManifest mf{digest, "aps", sc.seed, artifact_version, {}, 0.0};
    out << "aps: " << grid.size() << " grid points, SI " << fmt_g17(joint.si_dbm) << " dBm\n";
    return finish(sink, mf, t0, 0);
}

int cmd_roc(const CommonOpts &o, std::ostream &out) {
    const auto t0 = std::chrono::steady_clock::now();
    Scenario sc = load(o);
    const std::string digest = scenario_digest(sc);
    const std::vector<double> etas = log_spaced(o.eta_min, o.eta_max, o.eta_count);
    RocOptions ropt;
    ropt.trials = o.trials;
    ropt.threads = o.threads;

    std::vector<std::string> methods;
    if (o.method == "both")
        methods = {"spocs", "mse"};
    else
        methods = {o.method};

    OutputSink sink{fs::path(o.out_dir), {}};
    for (const std::string &m : methods) {
        SolveResult res = solve_method(sc, m);
        std::vector<RocPoint> roc = simulate_roc(sc, res.pair, etas, ropt);
        const std::string name = methods.size() == 1 ? "roc.csv" : ("roc_" + m + ".csv");
        sink.write(name, roc_csv(roc, digest));
        out << "roc[" << m << "]: " << roc.size() << " thresholds x " << ropt.trials
            << " trials\n";
    }
    RunManifest mf{digest, "roc", sc.seed, artifact_version, {}, 0.0};
    return finish(sink, mf, t0, 0);
}

struct CheckOpts {
    double feas_tol = 1e-6;
    double rank_tol = 1e-3;
    double si_max_dbm = -55.0;
    double snr_slack_db = 0.1;
    double sll_slack_db = 0.5;
};

int cmd_check(const CommonOpts &o, const CheckOpts &c, std::ostream &out) {
    Scenario sc = load(o);
    SolveContext ctx = make_context(sc);
    SolveResult res = superiorized_solve(sc);
    const BeamformerPair &p = res.pair;
    bool all_ok = true;
    auto check = [&](const std::string &name, bool ok, const std::string &detail) {
        out << (ok ? "PASS " : "FAIL ") << name << ": " << detail << "\n";
        all_ok = all_ok && ok;
    };

    double worst = 0.0;
    for (const SolveReport *r : {&res.tx, &res.rx})
        for (const auto &[k, v] : r->set_residuals)
            worst = std::max(worst, v / std::max(r->norm_x, 1e-300));
    check("feasibility", worst <= c.feas_tol,
          "max set residual " + fmt_g17(worst) + " vs " + fmt_g17(c.feas_tol));

    const double rank = std::max(res.tx.rank_residual, res.rx.rank_residual);
    check("rank", rank <= c.rank_tol, "rank residual " + fmt_g17(rank) + " vs " + fmt_g17(c.rank_tol));

    const double si = watt2dbm(std::norm(vdot(p.c, ctx.h_si * p.w)));
    check("si", si <= c.si_max_dbm, "SI " + fmt_g17(si) + " dBm vs " + fmt_g17(c.si_max_dbm));

    bool snr_ok = true;
    std::ostringstream snr_detail;
    for (std::size_t k = 0; k < ctx.user_h.size(); ++k) {
        const UserSpec &u = sc.users[k];
        const double achieved = std::norm(vdot(ctx.user_h[k], p.w)) / u.noise_sigma2;
        const double margin_db = 10.0 * std::log10(achieved / u.snr_gamma);
        snr_ok = snr_ok && margin_db >= -c.snr_slack_db;
        snr_detail << (k ? ", " : "") << "user" << k << " margin " << fmt_g17(margin_db) << " dB";
    }
    check("snr", snr_ok, ctx.user_h.empty() ? "no users" : snr_detail.str());

    auto sll_margin = [&](const CVec &v, bool tx) {
        double main_min = 0.0, side_max = 0.0;
        for (std::size_t i = 0; i < ctx.grids.theta_l.size(); ++i) {
            const CVec a = steering(ctx.grids.theta_l[i], v.size());
            const double g = tx ? std::norm(vdot(a, v)) : std::norm(vdot(v, a));
            if (i == 0 || g < main_min)
                main_min = g;
        }
        for (std::size_t i = 0; i < ctx.grids.theta_s.size(); ++i) {
            const CVec a = steering(ctx.grids.theta_s[i], v.size());
            const double g = tx ? std::norm(vdot(a, v)) : std::norm(vdot(v, a));
            if (i == 0 || g > side_max)
                side_max = g;
        }
        return 10.0 * std::log10(main_min / (side_max * sc.gamma_s));
    };
    const double m_tx = sll_margin(p.w, true), m_rx = sll_margin(p.c, false);
    check("sll", m_tx >= -c.sll_slack_db && m_rx >= -c.sll_slack_db,
          "margin tx " + fmt_g17(m_tx) + " dB, rx " + fmt_g17(m_rx) + " dB");

    check("alignment", res.tx.aligned, res.tx.aligned ? "mainlobe minima agree" : "minima differ");
    return all_ok ? 0 : 1;
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"analog ISAC beamformer synthesis and detection simulation"};
    app.require_subcommand(1);

    CommonOpts o;
    CheckOpts c;
    auto add_common = [&](CLI::App *sub, bool with_method) {
        sub->add_option("--config", o.config, "scenario config (JSON); defaults when omitted");
        sub->add_option("--out", o.out_dir, "output directory");
        sub->add_option("--seed", o.seed, "seed override")->each([&](const std::string &) {
            o.seed_set = true;
        });
        if (with_method)
            sub->add_option("--method", o.method, "spocs|mse|both")
                ->check(CLI::IsMember({"spocs", "mse", "both"}));
    };

    CLI::App *syn = app.add_subcommand("synthesize", "superiorized beamformer synthesis");
    add_common(syn, false);
    CLI::App *base = app.add_subcommand("baseline", "MSE beampattern baseline synthesis");
    add_common(base, false);
    CLI::App *aps = app.add_subcommand("aps", "angular power spectra for fixed beamformers");
    add_common(aps, true);
    aps->add_option("--range-m", o.range_m, "evaluation range in meters");
    CLI::App *roc = app.add_subcommand("roc", "Monte-Carlo ROC curves");
    add_common(roc, true);
    roc->add_option("--trials", o.trials, "Monte-Carlo trials per threshold");
    roc->add_option("--eta-min", o.eta_min, "lowest threshold");
    roc->add_option("--eta-max", o.eta_max, "highest threshold");
    roc->add_option("--eta-count", o.eta_count, "number of thresholds");
    roc->add_option("--threads", o.threads, "worker threads (0 = auto)");
    CLI::App *chk = app.add_subcommand("check", "verify feasibility thresholds on a synthesis");
    add_common(chk, false);
    chk->add_option("--feas-tol", c.feas_tol, "max relative set residual");
    chk->add_option("--rank-tol", c.rank_tol, "max relative rank residual");
    chk->add_option("--si-max-dbm", c.si_max_dbm, "max SI power in dBm");
    chk->add_option("--snr-slack-db", c.snr_slack_db, "allowed user SNR shortfall in dB");
    chk->add_option("--sll-slack-db", c.sll_slack_db, "allowed sidelobe-ratio shortfall in dB");

    std::vector<std::string> argv_rev(args.rbegin(), args.rend());
    try {
        app.parse(argv_rev);
    } catch (const CLI::ParseError &e) {
        if (e.get_exit_code() == 0) { // --help
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 1;
    }

    auto write_error = [&](int code, const std::string &msg) {
        try {
            OutputSink sink{fs::path(o.out_dir), {}};
            sink.write("error.json",
                       "{\n  \"code\": " + std::to_string(code) + ",\n  \"error\": \"" + msg +
                           "\"\n}\n");
        } catch (...) { // the error report is best-effort
        }
        err << "error: " << msg << "\n";
        return code;
    };

    try {
        if (syn->parsed())
            return cmd_synthesize(o, "spocs", out);
        if (base->parsed())
            return cmd_synthesize(o, "mse", out);
        if (aps->parsed())
            return cmd_aps(o, out);
        if (roc->parsed())
            return cmd_roc(o, out);
        if (chk->parsed())
            return cmd_check(o, c, out);
    } catch (const validation_error &e) {
        return write_error(1, e.what());
    } catch (const numerical_error &e) {
        return write_error(2, e.what());
    } catch (const std::exception &e) {
        return write_error(2, e.what());
    }
    err << "error: no subcommand\n";
    return 1;
}

} // namespace isacbeam::cli
