// SPDX-License-Identifier: Apache-2.0
//
// isacbeam - analog ISAC beamformer synthesis and radar detection simulation
// Copyright (C) 2026 isacbeam authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "isacbeam/config_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace isacbeam {

using nlohmann::json;

std::string fmt_g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

[[noreturn]] void bad(const std::string &path, const std::string &why) {
    throw validation_error(path + ": " + why);
}

double need_number(const json &j, const std::string &path) {
    if (!j.is_number())
        bad(path, "expected a number");
    return j.get<double>();
}

void check_keys(const json &j, const std::string &path, const std::set<std::string> &allowed) {
    if (!j.is_object())
        bad(path, "expected an object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key()))
            bad(path + "." + it.key(), "unknown field");
}

double opt_num(const json &j, const std::string &key, const std::string &path, double dflt) {
    if (!j.contains(key))
        return dflt;
    return need_number(j.at(key), path + "." + key);
}

// the per-chain sidelobe ratio is the square root of the joint two-way target
double gamma_from_db(double joint_db) { return std::pow(10.0, joint_db / 20.0); }
double gamma_to_db(double per_chain) { return 20.0 * std::log10(per_chain); }

} // namespace

Scenario scenario_from_json_text(const std::string &text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error &e) {
        throw validation_error(std::string("config parse error: ") + e.what());
    }
    check_keys(j, "config",
               {"seed", "array", "bin", "power", "users", "targets", "solver", "waveform"});

    Scenario sc = default_scenario();

    if (j.contains("seed")) {
        if (!j.at("seed").is_number_unsigned() && !j.at("seed").is_number_integer())
            bad("seed", "expected an unsigned integer");
        sc.seed = j.at("seed").get<std::uint64_t>();
    }
    if (j.contains("array")) {
        const json &a = j.at("array");
        check_keys(a, "array", {"m_tx", "m_rx", "carrier_f0_hz", "element_spacing_m"});
        sc.array.m_tx = static_cast<std::size_t>(opt_num(a, "m_tx", "array", 10));
        sc.array.m_rx = static_cast<std::size_t>(opt_num(a, "m_rx", "array", 10));
        sc.array.carrier_f0 = opt_num(a, "carrier_f0_hz", "array", 28e9);
        sc.array.element_spacing = opt_num(a, "element_spacing_m", "array", 0.0);
    }
    if (j.contains("bin")) {
        const json &b = j.at("bin");
        check_keys(b, "bin", {"center_deg", "width_deg", "guard_deg", "grid_step_deg"});
        sc.bin.center_theta_b = deg2rad(opt_num(b, "center_deg", "bin", 0.0));
        sc.bin.width_delta = deg2rad(opt_num(b, "width_deg", "bin", 20.0));
        sc.bin.guard = deg2rad(opt_num(b, "guard_deg", "bin", 3.0));
        sc.bin.grid_step = deg2rad(opt_num(b, "grid_step_deg", "bin", 1.0));
    }
    if (j.contains("power")) {
        const json &p = j.at("power");
        check_keys(p, "power", {"p_ant_dbm", "p_sat_dbm", "sigma_r2_dbm", "gamma_s_db"});
        sc.p_ant = dbm2watt(opt_num(p, "p_ant_dbm", "power", 10.0));
        sc.p_sat = dbm2watt(opt_num(p, "p_sat_dbm", "power", -20.0));
        sc.sigma_r2 = dbm2watt(opt_num(p, "sigma_r2_dbm", "power", -88.0));
        sc.gamma_s = gamma_from_db(opt_num(p, "gamma_s_db", "power", 30.0));
    }
    if (j.contains("users")) {
        const json &us = j.at("users");
        if (!us.is_array())
            bad("users", "expected an array");
        sc.users.clear();
        for (std::size_t k = 0; k < us.size(); ++k) {
            const std::string path = "users[" + std::to_string(k) + "]";
            const json &u = us[k];
            check_keys(u, path,
                       {"angle_deg", "range_m", "snr_db", "noise_dbm", "rician_kappa",
                        "pathloss_exponent"});
            UserSpec spec;
            spec.angle_theta = deg2rad(opt_num(u, "angle_deg", path, 0.0));
            spec.range_r = opt_num(u, "range_m", path, 20.0);
            spec.snr_gamma = db2lin(opt_num(u, "snr_db", path, 3.0));
            spec.noise_sigma2 = dbm2watt(opt_num(u, "noise_dbm", path, -88.0));
            spec.rician_kappa = opt_num(u, "rician_kappa", path, 1000.0);
            spec.pathloss_exponent = opt_num(u, "pathloss_exponent", path, 2.2);
            sc.users.push_back(spec);
        }
    }
    if (j.contains("targets")) {
        const json &ts = j.at("targets");
        if (!ts.is_array())
            bad("targets", "expected an array");
        sc.targets.clear();
        for (std::size_t q = 0; q < ts.size(); ++q) {
            const std::string path = "targets[" + std::to_string(q) + "]";
            const json &t = ts[q];
            check_keys(t, path, {"rcs_m2", "range_m", "angle_deg"});
            TargetSpec spec;
            spec.rcs_xi = opt_num(t, "rcs_m2", path, 1.0);
            spec.range_r = opt_num(t, "range_m", path, 20.0);
            spec.angle_theta = deg2rad(opt_num(t, "angle_deg", path, 0.0));
            sc.targets.push_back(spec);
        }
    }
    if (j.contains("solver")) {
        const json &s = j.at("solver");
        check_keys(s, "solver",
                   {"mu", "mu_prime", "epsilon", "max_iter", "a1", "a2", "a3", "beta_clamp"});
        sc.solver.mu = opt_num(s, "mu", "solver", 1.5);
        sc.solver.mu_prime = opt_num(s, "mu_prime", "solver", 1.0);
        sc.solver.epsilon = opt_num(s, "epsilon", "solver", 1e-5);
        sc.solver.max_iter = static_cast<std::size_t>(opt_num(s, "max_iter", "solver", 1000));
        sc.solver.a1 = opt_num(s, "a1", "solver", 0.9999);
        sc.solver.a2 = opt_num(s, "a2", "solver", 0.99);
        sc.solver.a3 = opt_num(s, "a3", "solver", 0.9999);
        sc.solver.beta_clamp = opt_num(s, "beta_clamp", "solver", 10.0);
    }
    if (j.contains("waveform")) {
        const json &w = j.at("waveform");
        check_keys(w, "waveform",
                   {"n_samples", "slot_duration_s", "modulation", "numerology", "resource_blocks"});
        sc.waveform.n_samples = static_cast<std::size_t>(opt_num(w, "n_samples", "waveform", 4384));
        sc.waveform.slot_duration = opt_num(w, "slot_duration_s", "waveform", 2.23e-6);
        if (w.contains("modulation")) {
            if (!w.at("modulation").is_string())
                bad("waveform.modulation", "expected a string");
            sc.waveform.modulation = w.at("modulation").get<std::string>();
        }
        sc.waveform.numerology = static_cast<int>(opt_num(w, "numerology", "waveform", 5));
        sc.waveform.resource_blocks =
            static_cast<int>(opt_num(w, "resource_blocks", "waveform", 68));
    }

    validate(sc);
    return sc;
}

Scenario load_scenario(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw validation_error("config file not found: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return scenario_from_json_text(ss.str());
}

std::string serialize_scenario(const Scenario &sc) {
    std::ostringstream o;
    auto num = [&](double v) { return fmt_g17(v); };
    o << "{\n";
    o << "  \"seed\": " << sc.seed << ",\n";
    o << "  \"array\": {\"m_tx\": " << sc.array.m_tx << ", \"m_rx\": " << sc.array.m_rx
      << ", \"carrier_f0_hz\": " << num(sc.array.carrier_f0)
      << ", \"element_spacing_m\": " << num(sc.array.element_spacing) << "},\n";
    o << "  \"bin\": {\"center_deg\": " << num(rad2deg(sc.bin.center_theta_b))
      << ", \"width_deg\": " << num(rad2deg(sc.bin.width_delta))
      << ", \"guard_deg\": " << num(rad2deg(sc.bin.guard))
      << ", \"grid_step_deg\": " << num(rad2deg(sc.bin.grid_step)) << "},\n";
    o << "  \"power\": {\"p_ant_dbm\": " << num(watt2dbm(sc.p_ant))
      << ", \"p_sat_dbm\": " << num(watt2dbm(sc.p_sat))
      << ", \"sigma_r2_dbm\": " << num(watt2dbm(sc.sigma_r2))
      << ", \"gamma_s_db\": " << num(gamma_to_db(sc.gamma_s)) << "},\n";
    o << "  \"users\": [";
    for (std::size_t k = 0; k < sc.users.size(); ++k) {
        const UserSpec &u = sc.users[k];
        o << (k ? ", " : "") << "{\"angle_deg\": " << num(rad2deg(u.angle_theta))
          << ", \"range_m\": " << num(u.range_r)
          << ", \"snr_db\": " << num(10.0 * std::log10(u.snr_gamma))
          << ", \"noise_dbm\": " << num(watt2dbm(u.noise_sigma2))
          << ", \"rician_kappa\": " << num(u.rician_kappa)
          << ", \"pathloss_exponent\": " << num(u.pathloss_exponent) << "}";
    }
    o << "],\n";
    o << "  \"targets\": [";
    for (std::size_t q = 0; q < sc.targets.size(); ++q) {
        const TargetSpec &t = sc.targets[q];
        o << (q ? ", " : "") << "{\"rcs_m2\": " << num(t.rcs_xi)
          << ", \"range_m\": " << num(t.range_r)
          << ", \"angle_deg\": " << num(rad2deg(t.angle_theta)) << "}";
    }
    o << "],\n";
    const SolverConfig &s = sc.solver;
    o << "  \"solver\": {\"mu\": " << num(s.mu) << ", \"mu_prime\": " << num(s.mu_prime)
      << ", \"epsilon\": " << num(s.epsilon) << ", \"max_iter\": " << s.max_iter
      << ", \"a1\": " << num(s.a1) << ", \"a2\": " << num(s.a2) << ", \"a3\": " << num(s.a3)
      << ", \"beta_clamp\": " << num(s.beta_clamp) << "},\n";
    const WaveformConfig &w = sc.waveform;
    o << "  \"waveform\": {\"n_samples\": " << w.n_samples
      << ", \"slot_duration_s\": " << num(w.slot_duration) << ", \"modulation\": \""
      << w.modulation << "\", \"numerology\": " << w.numerology
      << ", \"resource_blocks\": " << w.resource_blocks << "}\n";
    o << "}\n";
    return o.str();
}

std::uint64_t fnv1a64(const std::string &bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string scenario_digest(const Scenario &sc) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(serialize_scenario(sc))));
    return buf;
}

std::string manifest_json(const RunManifest &m) {
    std::ostringstream o;
    o << "{\n";
    o << "  \"digest\": \"" << m.digest << "\",\n";
    o << "  \"command\": \"" << m.command << "\",\n";
    o << "  \"seed\": " << m.seed << ",\n";
    o << "  \"artifact_version\": \"" << m.version << "\",\n";
    o << "  \"outputs\": [";
    for (std::size_t i = 0; i < m.outputs.size(); ++i)
        o << (i ? ", " : "") << "\"" << m.outputs[i] << "\"";
    o << "],\n";
    o << "  \"duration_seconds\": " << fmt_g17(m.duration_seconds) << "\n";
    o << "}\n";
    return o.str();
}

} // namespace isacbeam
