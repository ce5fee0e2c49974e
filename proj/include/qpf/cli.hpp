#pragma once

// CLI command implementations. Each command renders deterministic CSV with
// 9-significant-digit fields so outputs diff cleanly run to run.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "qpf/config.hpp"
#include "qpf/designer.hpp"
#include "qpf/readout.hpp"

namespace qpf::cli {

// Exit codes, one per documented failure class.
enum ExitCode : int {
    ok = 0,
    internal = 1,
    usage = 2,
    config_missing_file = 3,
    config_parse = 4,
    config_validation = 5,
    config_unknown_key = 6,
    solver_convergence = 7,
    solver_infeasible = 8,
    search_window = 9,
    oracle_mismatch = 10,
};

namespace detail {

inline std::string fmt9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

}  // namespace detail

/// Column-stable CSV accumulator; every row must match the header width.
class CsvDoc {
public:
    explicit CsvDoc(std::vector<std::string> header) : width_(header.size()) {
        append_row(header);
    }

    void add_row(const std::vector<double>& values) {
        std::vector<std::string> cells;
        cells.reserve(values.size());
        for (const double v : values) cells.push_back(detail::fmt9(v));
        append_row(cells);
    }

    void add_row_tagged(const std::string& tag, const std::vector<double>& values) {
        std::vector<std::string> cells{tag};
        for (const double v : values) cells.push_back(detail::fmt9(v));
        append_row(cells);
    }

    [[nodiscard]] const std::string& text() const { return text_; }

    void write(const std::filesystem::path& path) const {
        std::ofstream out(path, std::ios::binary);
        out << text_;
    }

private:
    void append_row(const std::vector<std::string>& cells) {
        if (cells.size() != width_) {
            throw std::logic_error("CsvDoc: row width does not match the header");
        }
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) text_ += ',';
            text_ += cells[i];
        }
        text_ += '\n';
    }

    std::size_t width_;
    std::string text_;
};

// ---------------------------------------------------------------------------
// Command bodies (string-returning so tests can check determinism in-process)
// ---------------------------------------------------------------------------

[[nodiscard]] inline CsvDoc make_t1_spectrum(const RunConfig& cfg) {
    const TransmonParams q = transmon_from(cfg);
    const ResonatorParams res = resonator_from(cfg);
    const SweepSpec spec = sweep_spec_from(cfg);
    const DeltaCaps base{cfg.circuit.c_f_fF * 1e-15, cfg.circuit.c_q_fF * 1e-15,
                         cfg.circuit.c_kappa_fF * 1e-15};
    const SweepTable table = t1_spectrum_dataset(q, res, base, cfg.circuit.z_env_ohm,
                                                 spec.c_f_list, spec.omega_min, spec.omega_max,
                                                 spec.n_points);
    std::vector<std::string> header{"omega_ge_GHz"};
    for (const auto& label : table.labels) header.push_back(label);
    CsvDoc doc(header);
    for (std::size_t i = 0; i < table.x.size(); ++i) {
        std::vector<double> row{rad_to_ghz(table.x[i])};
        for (const auto& col : table.columns) row.push_back(col[i]);
        doc.add_row(row);
    }
    return doc;
}

[[nodiscard]] inline CsvDoc make_coupling_sweep(const RunConfig& cfg) {
    const TransmonParams q = transmon_from(cfg);
    const ResonatorParams res = resonator_from(cfg);
    const SweepSpec spec = sweep_spec_from(cfg);
    const DeltaCaps base{cfg.circuit.c_f_fF * 1e-15, cfg.circuit.c_q_fF * 1e-15,
                         cfg.circuit.c_kappa_fF * 1e-15};
    const SweepTable table = coupling_sweep_dataset(q, res, base, cfg.circuit.z_env_ohm, spec);
    std::vector<std::string> header{"omega_ge_GHz"};
    for (const auto& label : table.labels) header.push_back("g_MHz_" + label);
    CsvDoc doc(header);
    for (std::size_t i = 0; i < table.x.size(); ++i) {
        std::vector<double> row{rad_to_ghz(table.x[i])};
        for (const auto& col : table.columns) row.push_back(rad_to_mhz(col[i]));
        doc.add_row(row);
    }
    return doc;
}

[[nodiscard]] inline CsvDoc make_snr_map(const RunConfig& cfg) {
    const TransmonParams q = transmon_from(cfg);
    const ResonatorParams res = resonator_from(cfg);
    const SweepSpec spec = sweep_spec_from(cfg);
    const DeltaCaps base{cfg.circuit.c_f_fF * 1e-15, cfg.circuit.c_q_fF * 1e-15,
                         cfg.circuit.c_kappa_fF * 1e-15};
    const SnrMap map = snr_map_dataset(q, res, base, cfg.circuit.z_env_ohm, spec);
    CsvDoc doc({"C_F_fF", "C_q_fF", "kappa_over_2chi"});
    for (std::size_t i = 0; i < map.ratio.size(); ++i) {
        doc.add_row({map.c_f[i] * 1e15, map.c_q[i] * 1e15, map.ratio[i]});
    }
    return doc;
}

struct FidelityMapDocs {
    CsvDoc map;
    CsvDoc contours;
};

[[nodiscard]] inline FidelityMapDocs make_fidelity_map(const RunConfig& cfg) {
    const MeasurementConfig m = measurement_from(cfg);
    const TransmonParams q = transmon_from(cfg);
    const ResonatorParams res = resonator_from(cfg);
    const double detuning = q.omega_ge - res.omega_r;
    const double g = mhz_to_rad(cfg.targets.g_target_MHz);
    const double n_crit = detuning * detuning / (4.0 * g * g);

    const auto& r = cfg.readout;
    std::vector<double> nbar_grid(r.map_nbar_points);
    for (std::uint32_t i = 0; i < r.map_nbar_points; ++i) {
        nbar_grid[i] = r.map_nbar_min +
                       (r.map_nbar_max - r.map_nbar_min) * i / double(r.map_nbar_points - 1);
    }
    std::vector<double> tm_grid(r.map_tm_points);
    for (std::uint32_t i = 0; i < r.map_tm_points; ++i) {
        tm_grid[i] = (r.map_tm_min_us +
                      (r.map_tm_max_us - r.map_tm_min_us) * i / double(r.map_tm_points - 1)) *
                     1e-6;
    }
    const FidelityMap map = fidelity_map(m, nbar_grid, tm_grid, n_crit);

    CsvDoc map_doc({"nbar", "t_m_us", "F"});
    for (std::size_t i = 0; i < map.nbar.size(); ++i) {
        for (std::size_t k = 0; k < map.t_m.size(); ++k) {
            map_doc.add_row({map.nbar[i], map.t_m[k] * 1e6, map.at(i, k)});
        }
    }

    // iso-fidelity curves t_m(nbar) plus the critical-photon marker
    CsvDoc contour_doc({"curve", "nbar", "t_m_us"});
    const double eta = m.efficiency();
    for (const double level : map.contour_levels) {
        for (const double nb : map.nbar) {
            const double tm = required_measurement_time(level, nb, m.kappa, eta);
            contour_doc.add_row_tagged("F_" + detail::fmt9(level), {nb, tm * 1e6});
        }
    }
    for (const double tm : map.t_m) {
        contour_doc.add_row_tagged("n_crit", {map.n_crit, tm * 1e6});
    }
    return {std::move(map_doc), std::move(contour_doc)};
}

[[nodiscard]] inline CsvDoc make_mc_validate(const RunConfig& cfg, bool* all_within_3sigma) {
    MeasurementConfig m = measurement_from(cfg);
    CsvDoc doc({"nbar", "t_m_us", "R_analytic", "R_empirical", "F_analytic", "F_empirical",
                "stderr_F", "n_sigma"});
    bool ok = true;
    for (std::size_t i = 0; i < cfg.readout.mc_nbar.size(); ++i) {
        m.t_m = cfg.readout.mc_tm_us[i] * 1e-6;
        m.set_drive_for_photons(cfg.readout.mc_nbar[i]);
        const double dt = m.t_m / cfg.readout.mc_samples_per_tm;
        const McResult r = monte_carlo_fidelity(m, cfg.readout.mc_trajectories, dt,
                                                cfg.seed + 1000 * i);
        const double n_sigma = std::abs(r.empirical_f - r.analytic_f) / r.stderr_f;
        if (n_sigma > 3.0) ok = false;
        doc.add_row({cfg.readout.mc_nbar[i], cfg.readout.mc_tm_us[i], r.analytic_r, r.empirical_r,
                     r.analytic_f, r.empirical_f, r.stderr_f, n_sigma});
    }
    if (all_within_3sigma) *all_within_3sigma = ok;
    return doc;
}

[[nodiscard]] inline ordered_json make_design_document(const RunConfig& cfg) {
    const TransmonParams q = transmon_from(cfg);
    const ResonatorParams res = resonator_from(cfg);
    const DesignTargets targets = design_targets_from(cfg);
    const DesignReport rep = design_report(q, res, targets, cfg.circuit.z_env_ohm, sweep_spec_from(cfg));

    ordered_json j;
    j["circuit"]["c_sigma_fF"] = rep.qubit.c_sigma * 1e15;
    j["circuit"]["l_j_nH"] = rep.qubit.l_j * 1e9;
    j["circuit"]["f_qubit_GHz"] = rad_to_ghz(rep.qubit.omega_ge);
    j["circuit"]["anharmonicity_MHz"] = rad_to_mhz(rep.qubit.delta_anh);
    j["circuit"]["c_r_fF"] = res.c_r * 1e15;
    j["circuit"]["l_r_nH"] = res.l_r * 1e9;
    j["circuit"]["f_resonator_GHz"] = rad_to_ghz(res.omega_r);
    j["circuit"]["z_r_ohm"] = res.z_r;
    j["circuit"]["z_env_ohm"] = rep.couplings.z_env;

    j["capacitors"]["delta"]["c_f_fF"] = rep.couplings.delta.c_f * 1e15;
    j["capacitors"]["delta"]["c_q_fF"] = rep.couplings.delta.c_q * 1e15;
    j["capacitors"]["delta"]["c_kappa_fF"] = rep.couplings.delta.c_kappa * 1e15;
    j["capacitors"]["y"]["c_f_prime_fF"] = rep.couplings.y.c_f_prime * 1e15;
    j["capacitors"]["y"]["c_q_prime_fF"] = rep.couplings.y.c_q_prime * 1e15;
    j["capacitors"]["y"]["c_kappa_prime_fF"] = rep.couplings.y.c_kappa_prime * 1e15;

    j["results"]["f_notch_GHz"] = rad_to_ghz(rep.omega_f);
    j["results"]["f_notch_target_GHz"] = rad_to_ghz(targets.omega_ge_target);
    j["results"]["g_MHz"] = rad_to_mhz(rep.g);
    j["results"]["g_target_MHz"] = rad_to_mhz(targets.g_target);
    j["results"]["g_residual"] = rep.diagnostics.residual_g;
    j["results"]["kappa_MHz"] = rad_to_mhz(rep.kappa);
    j["results"]["kappa_simple_MHz"] = rad_to_mhz(rep.kappa_simple);
    j["results"]["chi_MHz"] = rad_to_mhz(rep.dispersive.chi);
    j["results"]["kappa_over_2chi"] = rep.kappa / (2.0 * std::abs(rep.dispersive.chi));
    j["results"]["kappa_over_2chi_target"] = targets.kappa_over_2chi_target;
    j["results"]["kappa_residual"] = rep.diagnostics.residual_kappa;
    j["results"]["n_crit"] = rep.dispersive.n_crit;
    j["results"]["dispersive_ok"] = rep.dispersive.dispersive_ok;
    for (std::size_t i = 0; i < rep.bandwidths.size(); ++i) {
        j["results"]["bandwidths"][i]["t1_threshold_ms"] = targets.t1_thresholds[i] * 1e3;
        j["results"]["bandwidths"][i]["bandwidth_MHz"] = rad_to_mhz(rep.bandwidths[i]);
    }
    j["solver"]["iterations"] = rep.diagnostics.iterations;
    return j;
}

// ---------------------------------------------------------------------------
// Command drivers
// ---------------------------------------------------------------------------

inline void write_and_report(const CsvDoc& doc, const std::filesystem::path& path) {
    doc.write(path);
    std::cout << "wrote " << path.string() << "\n";
}

[[nodiscard]] inline int run_command(const std::string& command, const RunConfig& cfg,
                                     const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    if (command == "t1-spectrum") {
        write_and_report(make_t1_spectrum(cfg), out_dir / "t1_spectrum.csv");
        return ok;
    }
    if (command == "coupling-sweep") {
        write_and_report(make_coupling_sweep(cfg), out_dir / "coupling_sweep.csv");
        return ok;
    }
    if (command == "snr-map") {
        write_and_report(make_snr_map(cfg), out_dir / "snr_map.csv");
        return ok;
    }
    if (command == "fidelity-map") {
        const FidelityMapDocs docs = make_fidelity_map(cfg);
        write_and_report(docs.map, out_dir / "fidelity_map.csv");
        write_and_report(docs.contours, out_dir / "fidelity_contours.csv");
        return ok;
    }
    if (command == "design") {
        const ordered_json j = make_design_document(cfg);
        const auto path = out_dir / "design_report.json";
        std::ofstream out(path, std::ios::binary);
        out << j.dump(2) << "\n";
        std::cout << "wrote " << path.string() << "\n";
        std::cout << "designed couplings: C_q = " << detail::fmt9(j["capacitors"]["delta"]["c_q_fF"].get<double>())
                  << " fF, C_kappa = " << detail::fmt9(j["capacitors"]["delta"]["c_kappa_fF"].get<double>())
                  << " fF, C_F = " << detail::fmt9(j["capacitors"]["delta"]["c_f_fF"].get<double>())
                  << " fF\n";
        std::cout << "g = " << detail::fmt9(j["results"]["g_MHz"].get<double>())
                  << " MHz, kappa = " << detail::fmt9(j["results"]["kappa_MHz"].get<double>())
                  << " MHz, chi = " << detail::fmt9(j["results"]["chi_MHz"].get<double>())
                  << " MHz, n_crit = " << detail::fmt9(j["results"]["n_crit"].get<double>()) << "\n";
        return ok;
    }
    if (command == "mc-validate") {
        bool within = false;
        const CsvDoc doc = make_mc_validate(cfg, &within);
        write_and_report(doc, out_dir / "mc_validate.csv");
        if (!within) {
            std::cerr << "mc-validate: empirical fidelity deviates from the closed form by more than "
                         "3 standard errors\n";
            return oracle_mismatch;
        }
        return ok;
    }
    std::cerr << "unknown command: " << command << "\n";
    return usage;
}

/// Exception-to-exit-code mapping shared by the binary and the tests.
[[nodiscard]] inline int guarded(const std::function<int()>& body) {
    try {
        return body();
    } catch (const config_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.error_kind()) {
            case config_error::kind::missing_file: return config_missing_file;
            case config_error::kind::parse: return config_parse;
            case config_error::kind::validation: return config_validation;
            case config_error::kind::unknown_key: return config_unknown_key;
        }
        return internal;
    } catch (const convergence_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return solver_convergence;
    } catch (const infeasible_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return solver_infeasible;
    } catch (const search_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return search_window;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return internal;
    }
}

}  // namespace qpf::cli
