#pragma once

// Run configuration: engineering-unit JSON document with strict key checking,
// reference-design defaults, and deterministic round-trip serialization.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qpf/cqed.hpp"
#include "qpf/designer.hpp"
#include "qpf/errors.hpp"
#include "qpf/netcore.hpp"
#include "qpf/numeric.hpp"
#include "qpf/readout.hpp"

namespace qpf {

using ordered_json = nlohmann::ordered_json;

struct CircuitConfig {
    double c_sigma_fF = 65.0;
    std::optional<double> l_j_nH{};        // either l_j or f_qubit pins the qubit
    std::optional<double> f_qubit_GHz = 5.0;
    double anharmonicity_MHz = -297.0;
    double c_r_fF = 500.0;
    double l_r_nH = 1.2;
    double z_env_ohm = 50.0;
    double c_f_fF = 0.5;
    double c_q_fF = 11.1;
    double c_kappa_fF = 14.3;
};

struct TargetsConfig {
    double g_target_MHz = 150.0;
    double kappa_over_2chi = 1.0;
    std::vector<double> t1_thresholds_ms{1.0, 10.0};
    std::optional<double> f_notch_GHz{};   // defaults to the qubit frequency
    double min_c_f_fF = 0.05;
};

struct SweepsConfig {
    double f_min_GHz = 4.0;
    double f_max_GHz = 6.5;
    std::uint32_t n_points = 2001;
    std::vector<double> c_f_list_fF{0.0, 0.25, 0.5, 1.0, 2.0};
    std::vector<double> c_q_list_fF{5.0, 8.0, 11.1, 15.0, 20.0};
    double snr_c_f_min_fF = 0.05;
    double snr_c_f_max_fF = 2.0;
    std::uint32_t snr_points = 25;
};

struct ReadoutConfig {
    double kappa_MHz = 5.0;
    double chi_MHz = 2.5;
    double nbar = 1.0;
    double t_m_us = 1.09;
    double eta = 1.0;
    double amp_gain = 1.0;
    double quadrature_angle_rad = 0.0;
    double map_nbar_min = 1.0;
    double map_nbar_max = 50.0;
    std::uint32_t map_nbar_points = 50;
    double map_tm_min_us = 0.005;
    double map_tm_max_us = 2.0;
    std::uint32_t map_tm_points = 60;
    std::vector<double> mc_nbar{1.0, 1.0, 1.0, 25.0, 25.0};
    std::vector<double> mc_tm_us{0.55, 1.09, 1.92, 0.044, 0.077};
    std::uint32_t mc_trajectories = 100000;
    std::uint32_t mc_samples_per_tm = 100;
};

struct RunConfig {
    CircuitConfig circuit;
    TargetsConfig targets;
    SweepsConfig sweeps;
    ReadoutConfig readout;
    std::uint64_t seed = 12345;
    std::string convention = "paper";  // "paper" (cyclic rates) or "angular"
    std::string output_dir = "out";
};

// ---------------------------------------------------------------------------
// Parsing helpers
// ---------------------------------------------------------------------------

namespace detail {

inline void fail_validation(const std::string& field, const std::string& why) {
    throw config_error(config_error::kind::validation, "config field '" + field + "': " + why);
}

inline double get_number(const ordered_json& j, const std::string& path) {
    if (!j.is_number()) {
        throw config_error(config_error::kind::parse, "config field '" + path + "' must be a number");
    }
    return j.get<double>();
}

inline std::uint64_t get_uint(const ordered_json& j, const std::string& path) {
    if (!j.is_number_unsigned()) {
        throw config_error(config_error::kind::parse,
                           "config field '" + path + "' must be a non-negative integer");
    }
    return j.get<std::uint64_t>();
}

inline std::vector<double> get_number_list(const ordered_json& j, const std::string& path) {
    if (!j.is_array()) {
        throw config_error(config_error::kind::parse, "config field '" + path + "' must be an array");
    }
    std::vector<double> out;
    for (const auto& v : j) out.push_back(get_number(v, path));
    return out;
}

inline void check_known_keys(const ordered_json& j, const std::string& section,
                             std::initializer_list<const char*> allowed) {
    for (const auto& item : j.items()) {
        bool ok = false;
        for (const char* key : allowed) {
            if (item.key() == key) {
                ok = true;
                break;
            }
        }
        if (!ok) {
            throw config_error(config_error::kind::unknown_key,
                               "unknown config key '" + (section.empty() ? item.key() : section + "." + item.key()) + "'");
        }
    }
}

inline void require_positive(double v, const std::string& field) {
    if (!(v > 0.0) || !std::isfinite(v)) fail_validation(field, "must be positive and finite");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// parse / serialize
// ---------------------------------------------------------------------------

[[nodiscard]] inline RunConfig parse_config_json(const ordered_json& root) {
    if (!root.is_object()) {
        throw config_error(config_error::kind::parse, "config document must be a JSON object");
    }
    detail::check_known_keys(root, "", {"circuit", "targets", "sweeps", "readout", "seed",
                                        "convention", "output_dir"});
    RunConfig cfg;

    if (root.contains("circuit")) {
        const auto& c = root.at("circuit");
        detail::check_known_keys(c, "circuit",
                                 {"c_sigma_fF", "l_j_nH", "f_qubit_GHz", "anharmonicity_MHz",
                                  "c_r_fF", "l_r_nH", "z_env_ohm", "c_f_fF", "c_q_fF", "c_kappa_fF"});
        auto& cc = cfg.circuit;
        if (c.contains("c_sigma_fF")) cc.c_sigma_fF = detail::get_number(c["c_sigma_fF"], "circuit.c_sigma_fF");
        if (c.contains("l_j_nH") || c.contains("f_qubit_GHz")) {
            cc.l_j_nH.reset();
            cc.f_qubit_GHz.reset();
            if (c.contains("l_j_nH")) cc.l_j_nH = detail::get_number(c["l_j_nH"], "circuit.l_j_nH");
            if (c.contains("f_qubit_GHz")) cc.f_qubit_GHz = detail::get_number(c["f_qubit_GHz"], "circuit.f_qubit_GHz");
        }
        if (c.contains("anharmonicity_MHz")) cc.anharmonicity_MHz = detail::get_number(c["anharmonicity_MHz"], "circuit.anharmonicity_MHz");
        if (c.contains("c_r_fF")) cc.c_r_fF = detail::get_number(c["c_r_fF"], "circuit.c_r_fF");
        if (c.contains("l_r_nH")) cc.l_r_nH = detail::get_number(c["l_r_nH"], "circuit.l_r_nH");
        if (c.contains("z_env_ohm")) cc.z_env_ohm = detail::get_number(c["z_env_ohm"], "circuit.z_env_ohm");
        if (c.contains("c_f_fF")) cc.c_f_fF = detail::get_number(c["c_f_fF"], "circuit.c_f_fF");
        if (c.contains("c_q_fF")) cc.c_q_fF = detail::get_number(c["c_q_fF"], "circuit.c_q_fF");
        if (c.contains("c_kappa_fF")) cc.c_kappa_fF = detail::get_number(c["c_kappa_fF"], "circuit.c_kappa_fF");
    }

    if (root.contains("targets")) {
        const auto& t = root.at("targets");
        detail::check_known_keys(t, "targets",
                                 {"g_target_MHz", "kappa_over_2chi", "t1_thresholds_ms",
                                  "f_notch_GHz", "min_c_f_fF"});
        auto& tc = cfg.targets;
        if (t.contains("g_target_MHz")) tc.g_target_MHz = detail::get_number(t["g_target_MHz"], "targets.g_target_MHz");
        if (t.contains("kappa_over_2chi")) tc.kappa_over_2chi = detail::get_number(t["kappa_over_2chi"], "targets.kappa_over_2chi");
        if (t.contains("t1_thresholds_ms")) tc.t1_thresholds_ms = detail::get_number_list(t["t1_thresholds_ms"], "targets.t1_thresholds_ms");
        if (t.contains("f_notch_GHz")) tc.f_notch_GHz = detail::get_number(t["f_notch_GHz"], "targets.f_notch_GHz");
        if (t.contains("min_c_f_fF")) tc.min_c_f_fF = detail::get_number(t["min_c_f_fF"], "targets.min_c_f_fF");
    }

    if (root.contains("sweeps")) {
        const auto& s = root.at("sweeps");
        detail::check_known_keys(s, "sweeps",
                                 {"f_min_GHz", "f_max_GHz", "n_points", "c_f_list_fF",
                                  "c_q_list_fF", "snr_c_f_min_fF", "snr_c_f_max_fF", "snr_points"});
        auto& sc = cfg.sweeps;
        if (s.contains("f_min_GHz")) sc.f_min_GHz = detail::get_number(s["f_min_GHz"], "sweeps.f_min_GHz");
        if (s.contains("f_max_GHz")) sc.f_max_GHz = detail::get_number(s["f_max_GHz"], "sweeps.f_max_GHz");
        if (s.contains("n_points")) sc.n_points = static_cast<std::uint32_t>(detail::get_uint(s["n_points"], "sweeps.n_points"));
        if (s.contains("c_f_list_fF")) sc.c_f_list_fF = detail::get_number_list(s["c_f_list_fF"], "sweeps.c_f_list_fF");
        if (s.contains("c_q_list_fF")) sc.c_q_list_fF = detail::get_number_list(s["c_q_list_fF"], "sweeps.c_q_list_fF");
        if (s.contains("snr_c_f_min_fF")) sc.snr_c_f_min_fF = detail::get_number(s["snr_c_f_min_fF"], "sweeps.snr_c_f_min_fF");
        if (s.contains("snr_c_f_max_fF")) sc.snr_c_f_max_fF = detail::get_number(s["snr_c_f_max_fF"], "sweeps.snr_c_f_max_fF");
        if (s.contains("snr_points")) sc.snr_points = static_cast<std::uint32_t>(detail::get_uint(s["snr_points"], "sweeps.snr_points"));
    }

    if (root.contains("readout")) {
        const auto& r = root.at("readout");
        detail::check_known_keys(r, "readout",
                                 {"kappa_MHz", "chi_MHz", "nbar", "t_m_us", "eta", "amp_gain",
                                  "quadrature_angle_rad", "map_nbar_min", "map_nbar_max",
                                  "map_nbar_points", "map_tm_min_us", "map_tm_max_us",
                                  "map_tm_points", "mc_nbar", "mc_tm_us", "mc_trajectories",
                                  "mc_samples_per_tm"});
        auto& rc = cfg.readout;
        if (r.contains("kappa_MHz")) rc.kappa_MHz = detail::get_number(r["kappa_MHz"], "readout.kappa_MHz");
        if (r.contains("chi_MHz")) rc.chi_MHz = detail::get_number(r["chi_MHz"], "readout.chi_MHz");
        if (r.contains("nbar")) rc.nbar = detail::get_number(r["nbar"], "readout.nbar");
        if (r.contains("t_m_us")) rc.t_m_us = detail::get_number(r["t_m_us"], "readout.t_m_us");
        if (r.contains("eta")) rc.eta = detail::get_number(r["eta"], "readout.eta");
        if (r.contains("amp_gain")) rc.amp_gain = detail::get_number(r["amp_gain"], "readout.amp_gain");
        if (r.contains("quadrature_angle_rad")) rc.quadrature_angle_rad = detail::get_number(r["quadrature_angle_rad"], "readout.quadrature_angle_rad");
        if (r.contains("map_nbar_min")) rc.map_nbar_min = detail::get_number(r["map_nbar_min"], "readout.map_nbar_min");
        if (r.contains("map_nbar_max")) rc.map_nbar_max = detail::get_number(r["map_nbar_max"], "readout.map_nbar_max");
        if (r.contains("map_nbar_points")) rc.map_nbar_points = static_cast<std::uint32_t>(detail::get_uint(r["map_nbar_points"], "readout.map_nbar_points"));
        if (r.contains("map_tm_min_us")) rc.map_tm_min_us = detail::get_number(r["map_tm_min_us"], "readout.map_tm_min_us");
        if (r.contains("map_tm_max_us")) rc.map_tm_max_us = detail::get_number(r["map_tm_max_us"], "readout.map_tm_max_us");
        if (r.contains("map_tm_points")) rc.map_tm_points = static_cast<std::uint32_t>(detail::get_uint(r["map_tm_points"], "readout.map_tm_points"));
        if (r.contains("mc_nbar")) rc.mc_nbar = detail::get_number_list(r["mc_nbar"], "readout.mc_nbar");
        if (r.contains("mc_tm_us")) rc.mc_tm_us = detail::get_number_list(r["mc_tm_us"], "readout.mc_tm_us");
        if (r.contains("mc_trajectories")) rc.mc_trajectories = static_cast<std::uint32_t>(detail::get_uint(r["mc_trajectories"], "readout.mc_trajectories"));
        if (r.contains("mc_samples_per_tm")) rc.mc_samples_per_tm = static_cast<std::uint32_t>(detail::get_uint(r["mc_samples_per_tm"], "readout.mc_samples_per_tm"));
    }

    if (root.contains("seed")) cfg.seed = detail::get_uint(root["seed"], "seed");
    if (root.contains("convention")) {
        if (!root["convention"].is_string()) {
            throw config_error(config_error::kind::parse, "config field 'convention' must be a string");
        }
        cfg.convention = root["convention"].get<std::string>();
    }
    if (root.contains("output_dir")) {
        if (!root["output_dir"].is_string()) {
            throw config_error(config_error::kind::parse, "config field 'output_dir' must be a string");
        }
        cfg.output_dir = root["output_dir"].get<std::string>();
    }
    return cfg;
}

inline void validate_config(const RunConfig& cfg) {
    using detail::fail_validation;
    using detail::require_positive;
    const auto& c = cfg.circuit;
    require_positive(c.c_sigma_fF, "circuit.c_sigma_fF");
    require_positive(c.c_r_fF, "circuit.c_r_fF");
    require_positive(c.l_r_nH, "circuit.l_r_nH");
    require_positive(c.z_env_ohm, "circuit.z_env_ohm");
    require_positive(c.c_q_fF, "circuit.c_q_fF");
    require_positive(c.c_kappa_fF, "circuit.c_kappa_fF");
    if (!(c.c_f_fF >= 0.0)) fail_validation("circuit.c_f_fF", "must be non-negative");
    if (!(c.anharmonicity_MHz < 0.0)) fail_validation("circuit.anharmonicity_MHz", "must be negative");
    if (!c.l_j_nH && !c.f_qubit_GHz) {
        fail_validation("circuit", "one of l_j_nH or f_qubit_GHz must be given");
    }
    if (c.l_j_nH) require_positive(*c.l_j_nH, "circuit.l_j_nH");
    if (c.f_qubit_GHz) require_positive(*c.f_qubit_GHz, "circuit.f_qubit_GHz");
    if (c.l_j_nH && c.f_qubit_GHz) {
        const double f_from_l =
            1.0 / (two_pi * std::sqrt(*c.l_j_nH * 1e-9 * c.c_sigma_fF * 1e-15)) / 1e9;
        if (std::abs(f_from_l / *c.f_qubit_GHz - 1.0) > 1e-9) {
            fail_validation("circuit.l_j_nH",
                            "inconsistent with f_qubit_GHz (frequency from l_j is " +
                                std::to_string(f_from_l) + " GHz)");
        }
    }

    require_positive(cfg.targets.g_target_MHz, "targets.g_target_MHz");
    require_positive(cfg.targets.kappa_over_2chi, "targets.kappa_over_2chi");
    require_positive(cfg.targets.min_c_f_fF, "targets.min_c_f_fF");
    if (cfg.targets.t1_thresholds_ms.empty()) fail_validation("targets.t1_thresholds_ms", "must be non-empty");
    for (const double t : cfg.targets.t1_thresholds_ms) {
        if (!(t > 0.0)) fail_validation("targets.t1_thresholds_ms", "entries must be positive");
    }
    if (cfg.targets.f_notch_GHz) require_positive(*cfg.targets.f_notch_GHz, "targets.f_notch_GHz");

    const auto& s = cfg.sweeps;
    require_positive(s.f_min_GHz, "sweeps.f_min_GHz");
    if (!(s.f_max_GHz > s.f_min_GHz)) fail_validation("sweeps.f_max_GHz", "must exceed f_min_GHz");
    if (s.n_points < 2) fail_validation("sweeps.n_points", "must be at least 2");
    for (const double v : s.c_f_list_fF) {
        if (!(v >= 0.0)) fail_validation("sweeps.c_f_list_fF", "entries must be non-negative");
    }
    for (const double v : s.c_q_list_fF) {
        if (!(v > 0.0)) fail_validation("sweeps.c_q_list_fF", "entries must be positive");
    }
    require_positive(s.snr_c_f_min_fF, "sweeps.snr_c_f_min_fF");
    if (!(s.snr_c_f_max_fF > s.snr_c_f_min_fF)) fail_validation("sweeps.snr_c_f_max_fF", "must exceed snr_c_f_min_fF");
    if (s.snr_points < 2) fail_validation("sweeps.snr_points", "must be at least 2");

    const auto& r = cfg.readout;
    require_positive(r.kappa_MHz, "readout.kappa_MHz");
    if (!(r.chi_MHz >= 0.0)) fail_validation("readout.chi_MHz", "must be non-negative");
    if (!(r.nbar >= 0.0)) fail_validation("readout.nbar", "must be non-negative");
    require_positive(r.t_m_us, "readout.t_m_us");
    if (!(r.eta > 0.0) || !(r.eta <= 1.0)) fail_validation("readout.eta", "must lie in (0, 1]");
    require_positive(r.amp_gain, "readout.amp_gain");
    require_positive(r.map_nbar_min, "readout.map_nbar_min");
    if (!(r.map_nbar_max > r.map_nbar_min)) fail_validation("readout.map_nbar_max", "must exceed map_nbar_min");
    if (r.map_nbar_points < 2) fail_validation("readout.map_nbar_points", "must be at least 2");
    require_positive(r.map_tm_min_us, "readout.map_tm_min_us");
    if (!(r.map_tm_max_us > r.map_tm_min_us)) fail_validation("readout.map_tm_max_us", "must exceed map_tm_min_us");
    if (r.map_tm_points < 2) fail_validation("readout.map_tm_points", "must be at least 2");
    if (r.mc_nbar.size() != r.mc_tm_us.size() || r.mc_nbar.empty()) {
        fail_validation("readout.mc_nbar", "mc_nbar and mc_tm_us must be equal-length, non-empty lists");
    }
    for (const double v : r.mc_nbar) {
        if (!(v >= 0.0)) fail_validation("readout.mc_nbar", "entries must be non-negative");
    }
    for (const double v : r.mc_tm_us) {
        if (!(v > 0.0)) fail_validation("readout.mc_tm_us", "entries must be positive");
    }
    if (r.mc_trajectories < 1000) fail_validation("readout.mc_trajectories", "must be at least 1000");
    if (r.mc_samples_per_tm < 50) fail_validation("readout.mc_samples_per_tm", "must be at least 50");

    if (cfg.convention != "paper" && cfg.convention != "angular") {
        fail_validation("convention", "must be 'paper' or 'angular'");
    }
    if (cfg.output_dir.empty()) fail_validation("output_dir", "must be non-empty");
}

[[nodiscard]] inline RunConfig parse_config_text(const std::string& text) {
    ordered_json root;
    try {
        root = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw config_error(config_error::kind::parse, std::string("config parse error: ") + e.what());
    }
    RunConfig cfg = parse_config_json(root);
    validate_config(cfg);
    return cfg;
}

[[nodiscard]] inline RunConfig parse_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw config_error(config_error::kind::missing_file,
                           "config file not found: " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

[[nodiscard]] inline ordered_json serialize_config(const RunConfig& cfg) {
    ordered_json root;
    auto& c = root["circuit"];
    c["c_sigma_fF"] = cfg.circuit.c_sigma_fF;
    if (cfg.circuit.l_j_nH) c["l_j_nH"] = *cfg.circuit.l_j_nH;
    if (cfg.circuit.f_qubit_GHz) c["f_qubit_GHz"] = *cfg.circuit.f_qubit_GHz;
    c["anharmonicity_MHz"] = cfg.circuit.anharmonicity_MHz;
    c["c_r_fF"] = cfg.circuit.c_r_fF;
    c["l_r_nH"] = cfg.circuit.l_r_nH;
    c["z_env_ohm"] = cfg.circuit.z_env_ohm;
    c["c_f_fF"] = cfg.circuit.c_f_fF;
    c["c_q_fF"] = cfg.circuit.c_q_fF;
    c["c_kappa_fF"] = cfg.circuit.c_kappa_fF;

    auto& t = root["targets"];
    t["g_target_MHz"] = cfg.targets.g_target_MHz;
    t["kappa_over_2chi"] = cfg.targets.kappa_over_2chi;
    t["t1_thresholds_ms"] = cfg.targets.t1_thresholds_ms;
    if (cfg.targets.f_notch_GHz) t["f_notch_GHz"] = *cfg.targets.f_notch_GHz;
    t["min_c_f_fF"] = cfg.targets.min_c_f_fF;

    auto& s = root["sweeps"];
    s["f_min_GHz"] = cfg.sweeps.f_min_GHz;
    s["f_max_GHz"] = cfg.sweeps.f_max_GHz;
    s["n_points"] = cfg.sweeps.n_points;
    s["c_f_list_fF"] = cfg.sweeps.c_f_list_fF;
    s["c_q_list_fF"] = cfg.sweeps.c_q_list_fF;
    s["snr_c_f_min_fF"] = cfg.sweeps.snr_c_f_min_fF;
    s["snr_c_f_max_fF"] = cfg.sweeps.snr_c_f_max_fF;
    s["snr_points"] = cfg.sweeps.snr_points;

    auto& r = root["readout"];
    r["kappa_MHz"] = cfg.readout.kappa_MHz;
    r["chi_MHz"] = cfg.readout.chi_MHz;
    r["nbar"] = cfg.readout.nbar;
    r["t_m_us"] = cfg.readout.t_m_us;
    r["eta"] = cfg.readout.eta;
    r["amp_gain"] = cfg.readout.amp_gain;
    r["quadrature_angle_rad"] = cfg.readout.quadrature_angle_rad;
    r["map_nbar_min"] = cfg.readout.map_nbar_min;
    r["map_nbar_max"] = cfg.readout.map_nbar_max;
    r["map_nbar_points"] = cfg.readout.map_nbar_points;
    r["map_tm_min_us"] = cfg.readout.map_tm_min_us;
    r["map_tm_max_us"] = cfg.readout.map_tm_max_us;
    r["map_tm_points"] = cfg.readout.map_tm_points;
    r["mc_nbar"] = cfg.readout.mc_nbar;
    r["mc_tm_us"] = cfg.readout.mc_tm_us;
    r["mc_trajectories"] = cfg.readout.mc_trajectories;
    r["mc_samples_per_tm"] = cfg.readout.mc_samples_per_tm;

    root["seed"] = cfg.seed;
    root["convention"] = cfg.convention;
    root["output_dir"] = cfg.output_dir;
    return root;
}

// ---------------------------------------------------------------------------
// Derived physics objects
// ---------------------------------------------------------------------------

[[nodiscard]] inline TransmonParams transmon_from(const RunConfig& cfg) {
    const double c_sigma = cfg.circuit.c_sigma_fF * 1e-15;
    const double delta = mhz_to_rad(cfg.circuit.anharmonicity_MHz);
    if (cfg.circuit.f_qubit_GHz) {
        return TransmonParams::from_frequency(c_sigma, ghz_to_rad(*cfg.circuit.f_qubit_GHz), delta);
    }
    return TransmonParams::from_inductance(c_sigma, *cfg.circuit.l_j_nH * 1e-9, delta);
}

[[nodiscard]] inline ResonatorParams resonator_from(const RunConfig& cfg) {
    return ResonatorParams::from_lc(cfg.circuit.l_r_nH * 1e-9, cfg.circuit.c_r_fF * 1e-15);
}

[[nodiscard]] inline CouplingSet couplings_from(const RunConfig& cfg) {
    return CouplingSet::from_delta({cfg.circuit.c_f_fF * 1e-15, cfg.circuit.c_q_fF * 1e-15,
                                    cfg.circuit.c_kappa_fF * 1e-15},
                                   cfg.circuit.z_env_ohm);
}

/// Rates enter the measurement model in the convention selected by the
/// config: "paper" keeps cyclic 1/s values (kappa_MHz = 5 -> 5e6), "angular"
/// multiplies by 2pi.
[[nodiscard]] inline MeasurementConfig measurement_from(const RunConfig& cfg) {
    const double scale = cfg.convention == "angular" ? two_pi : 1.0;
    MeasurementConfig m;
    m.rate_convention = cfg.convention == "angular" ? RateConvention::angular : RateConvention::cyclic;
    m.kappa = cfg.readout.kappa_MHz * 1e6 * scale;
    m.chi = cfg.readout.chi_MHz * 1e6 * scale;
    m.t_m = cfg.readout.t_m_us * 1e-6;
    m.amp_gain = cfg.readout.amp_gain;
    m.quadrature_angle = cfg.readout.quadrature_angle_rad;
    m.set_efficiency(cfg.readout.eta);
    m.set_drive_for_photons(cfg.readout.nbar);
    return m;
}

[[nodiscard]] inline DesignTargets design_targets_from(const RunConfig& cfg) {
    DesignTargets t;
    const double f_q = cfg.circuit.f_qubit_GHz
                           ? *cfg.circuit.f_qubit_GHz
                           : 1.0 / (two_pi * std::sqrt(*cfg.circuit.l_j_nH * 1e-9 *
                                                       cfg.circuit.c_sigma_fF * 1e-15)) /
                                 1e9;
    t.omega_ge_target = ghz_to_rad(cfg.targets.f_notch_GHz.value_or(f_q));
    t.g_target = mhz_to_rad(cfg.targets.g_target_MHz);
    t.kappa_over_2chi_target = cfg.targets.kappa_over_2chi;
    t.t1_thresholds.clear();
    for (const double ms : cfg.targets.t1_thresholds_ms) t.t1_thresholds.push_back(ms * 1e-3);
    t.min_c_f = cfg.targets.min_c_f_fF * 1e-15;
    return t;
}

[[nodiscard]] inline SweepSpec sweep_spec_from(const RunConfig& cfg) {
    SweepSpec s;
    s.omega_min = ghz_to_rad(cfg.sweeps.f_min_GHz);
    s.omega_max = ghz_to_rad(cfg.sweeps.f_max_GHz);
    s.n_points = cfg.sweeps.n_points;
    s.c_f_list.clear();
    for (const double v : cfg.sweeps.c_f_list_fF) s.c_f_list.push_back(v * 1e-15);
    s.c_q_list.clear();
    for (const double v : cfg.sweeps.c_q_list_fF) s.c_q_list.push_back(v * 1e-15);
    s.snr_c_f_min = cfg.sweeps.snr_c_f_min_fF * 1e-15;
    s.snr_c_f_max = cfg.sweeps.snr_c_f_max_fF * 1e-15;
    s.snr_points = cfg.sweeps.snr_points;
    return s;
}

}  // namespace qpf
