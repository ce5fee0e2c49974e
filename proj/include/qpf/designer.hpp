#pragma once

// Parameter synthesis for the combined readout/filter circuit: place the
// notch at the qubit frequency, iterate the coupling capacitors to hit a
// coupling target and kappa = 2|chi|, and extract filter bandwidths from the
// exact T1 spectrum.

#include <cmath>
#include <cstddef>
#include <cstdio>
#include <string>
#include <vector>

#include "qpf/cqed.hpp"
#include "qpf/errors.hpp"
#include "qpf/netcore.hpp"
#include "qpf/numeric.hpp"

namespace qpf {

// ---------------------------------------------------------------------------
// Targets
// ---------------------------------------------------------------------------

struct DesignTargets {
    double omega_ge_target;              // notch and qubit frequency [rad/s]
    double g_target;                     // coupling target [rad/s]
    double kappa_over_2chi_target = 1.0;
    std::vector<double> t1_thresholds{1e-3, 10e-3};  // [s]
    double min_c_f = 0.05e-15;           // smallest realizable direct capacitance [F]
};

// ---------------------------------------------------------------------------
// Closed-form notch placement
// ---------------------------------------------------------------------------

/// C'_F = 1/(L_R omega_F^2) - C_R; infeasible at or above the bare resonance.
[[nodiscard]] inline double solve_filter_cap(const ResonatorParams& res, double omega_f_target) {
    if (!(omega_f_target > 0.0)) {
        throw std::domain_error("solve_filter_cap: target frequency must be positive");
    }
    if (omega_f_target >= res.omega_r) {
        throw infeasible_error("solve_filter_cap: notch target at or above the bare resonator frequency");
    }
    return 1.0 / (res.l_r * omega_f_target * omega_f_target) - res.c_r;
}

// ---------------------------------------------------------------------------
// Coupling-capacitor iteration
// ---------------------------------------------------------------------------

struct SolveDiagnostics {
    int iterations = 0;
    double residual_g = 0.0;      // relative
    double residual_kappa = 0.0;  // relative, on kappa/(2|chi|)
};

namespace detail {

[[nodiscard]] inline std::string fF_label(const char* prefix, double farads) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%s%gfF", prefix, farads * 1e15);
    return buf;
}

/// Delta-side filter capacitance that keeps the transformed C'_F pinned at
/// c_f_prime_target for the given couplings (exact by the transform algebra).
[[nodiscard]] inline double pinned_c_f(double c_f_prime_target, double c_q, double c_kappa) {
    const double den = c_f_prime_target - c_q - c_kappa;
    if (!(den > 0.0)) {
        throw infeasible_error("solve_couplings: couplings too large for the requested notch");
    }
    return c_q * c_kappa / den;
}

}  // namespace detail

/// Damped alternating one-dimensional Newton iteration: C_q drives g_exact to
/// the target, C_kappa drives kappa_exact/(2|chi|) to the target ratio, and
/// the delta-side C_F is re-solved every evaluation so the notch stays at
/// omega_ge_target. Converges when both relative residuals drop below 1e-4.
[[nodiscard]] inline CouplingSet solve_couplings(const TransmonParams& q, const ResonatorParams& res,
                                                 const DesignTargets& targets, double z_env,
                                                 SolveDiagnostics* diag = nullptr) {
    const double detuning = targets.omega_ge_target - res.omega_r;
    if (!(targets.g_target > 0.0)) {
        throw std::domain_error("solve_couplings: g_target must be positive");
    }
    if (!(targets.g_target < std::abs(detuning) / 5.0)) {
        throw infeasible_error("solve_couplings: g_target violates the dispersive guard g < |Delta|/5");
    }
    if (!(targets.kappa_over_2chi_target > 0.0)) {
        throw std::domain_error("solve_couplings: kappa_over_2chi_target must be positive");
    }

    const double c_fp = solve_filter_cap(res, targets.omega_ge_target);
    const TransmonParams qubit = q.retuned(targets.omega_ge_target);

    const auto coupling_set = [&](double c_q, double c_kappa) {
        return CouplingSet::from_delta({detail::pinned_c_f(c_fp, c_q, c_kappa), c_q, c_kappa}, z_env);
    };
    const auto eval_g = [&](double c_q, double c_kappa) {
        return g_exact(qubit, res, coupling_set(c_q, c_kappa));
    };
    const auto eval_ratio = [&](double c_q, double c_kappa) {
        const CouplingSet cs = coupling_set(c_q, c_kappa);
        const double g = g_exact(qubit, res, cs);
        const double chi = std::abs(chi_shifts(g, detuning, qubit.delta_anh).chi);
        return kappa_exact(qubit, res, cs) / (2.0 * chi);
    };

    // approximate closed forms as starting points
    double c_q = 2.0 * targets.g_target /
                 std::sqrt(targets.omega_ge_target * res.omega_r / (qubit.c_sigma * res.c_r));
    const double chi0 = std::abs(chi_shifts(targets.g_target, detuning, qubit.delta_anh).chi);
    const double kappa0 = 2.0 * chi0 * targets.kappa_over_2chi_target;
    double c_kappa = std::sqrt(kappa0 / (targets.omega_ge_target * targets.omega_ge_target *
                                         res.omega_r * res.z_r * z_env));

    constexpr double damping = 0.5;
    constexpr double tol = 1e-4;
    constexpr int max_iter = 200;
    double res_g = 0.0;
    double res_k = 0.0;
    for (int iter = 1; iter <= max_iter; ++iter) {
        const double g = eval_g(c_q, c_kappa);
        const double hq = c_q * 1e-5;
        const double slope_g = (eval_g(c_q + hq, c_kappa) - g) / hq;
        c_q += damping * (targets.g_target - g) / slope_g;
        if (!(c_q > 0.0)) {
            throw convergence_error("solve_couplings: C_q iterate left the admissible range");
        }

        const double ratio = eval_ratio(c_q, c_kappa);
        const double hk = c_kappa * 1e-5;
        const double slope_r = (eval_ratio(c_q, c_kappa + hk) - ratio) / hk;
        c_kappa += damping * (targets.kappa_over_2chi_target - ratio) / slope_r;
        if (!(c_kappa > 0.0)) {
            throw convergence_error("solve_couplings: C_kappa iterate left the admissible range");
        }

        res_g = std::abs(eval_g(c_q, c_kappa) / targets.g_target - 1.0);
        res_k = std::abs(eval_ratio(c_q, c_kappa) / targets.kappa_over_2chi_target - 1.0);
        if (res_g < tol && res_k < tol) {
            const CouplingSet solved = coupling_set(c_q, c_kappa);
            if (solved.delta.c_f < targets.min_c_f) {
                throw infeasible_error(
                    "solve_couplings: design needs a direct capacitance below the realizable floor");
            }
            if (diag) *diag = {iter, res_g, res_k};
            return solved;
        }
    }
    throw convergence_error("solve_couplings: residuals g=" + std::to_string(res_g) +
                            " kappa/2chi=" + std::to_string(res_k) + " after 200 iterations");
}

// ---------------------------------------------------------------------------
// Filter bandwidth from the exact T1 spectrum
// ---------------------------------------------------------------------------

/// Full width of the band around the notch where exact T1 exceeds the
/// threshold: march outward from omega_F on each side, bisect the crossing.
[[nodiscard]] inline double filter_bandwidth(const TransmonParams& q, const ResonatorParams& res,
                                             const CouplingSet& c, double t1_threshold) {
    if (!(t1_threshold > 0.0)) throw std::domain_error("filter_bandwidth: threshold must be positive");
    const double omega_f = notch_frequency(res, c.y.c_f_prime);
    if (!(t1_exact(q, res, c, omega_f) > t1_threshold)) {
        throw std::domain_error("filter_bandwidth: T1 at the notch does not exceed the threshold");
    }
    const double window = two_pi * 1e9;
    const auto crossing = [&](int direction) {
        const double step = two_pi * 1e6;
        double prev = omega_f;
        for (int i = 1; i <= 1000; ++i) {
            const double w = omega_f + direction * i * step;
            if (std::abs(w - omega_f) > window) break;
            if (t1_exact(q, res, c, w) < t1_threshold) {
                const double lo = direction > 0 ? prev : w;
                const double hi = direction > 0 ? w : prev;
                return detail::bisect(
                    [&](double m) {
                        const double t = t1_exact(q, res, c, m);
                        return (std::isinf(t) ? 1.0 : t / t1_threshold - 1.0);
                    },
                    lo, hi);
            }
            prev = w;
        }
        throw search_error("filter_bandwidth: threshold not crossed within 1 GHz of the notch");
    };
    return crossing(+1) - crossing(-1);
}

// ---------------------------------------------------------------------------
// Report assembly with the sweep datasets
// ---------------------------------------------------------------------------

/// One named column family over a shared abscissa.
struct SweepTable {
    std::vector<double> x;
    std::vector<std::string> labels;          // one per column
    std::vector<std::vector<double>> columns; // columns[c][i] pairs with x[i]
};

/// Long-format (c_f, c_q) -> kappa/(2|chi|) samples.
struct SnrMap {
    std::vector<double> c_f;
    std::vector<double> c_q;
    std::vector<double> ratio;
};

struct SweepSpec {
    std::vector<double> c_f_list{0.0, 0.25e-15, 0.5e-15, 1.0e-15, 2.0e-15};
    std::vector<double> c_q_list{5e-15, 8e-15, 11.1e-15, 15e-15, 20e-15};
    double omega_min = ghz_to_rad(4.0);
    double omega_max = ghz_to_rad(6.5);
    std::size_t n_points = 2001;
    double snr_c_f_min = 0.05e-15;
    double snr_c_f_max = 2.0e-15;
    std::size_t snr_points = 25;
};

struct DesignReport {
    TransmonParams qubit;
    ResonatorParams resonator;
    CouplingSet couplings;
    DesignTargets targets;
    double omega_f = 0.0;
    double g = 0.0;
    double kappa = 0.0;          // kappa_exact of the designed circuit
    double kappa_simple = 0.0;   // closed-form estimate with C'_kappa
    DispersiveParams dispersive{};
    std::vector<double> bandwidths;  // one per threshold [rad/s]
    SolveDiagnostics diagnostics{};
    SweepTable t1_spectrum;
    SweepTable coupling_sweep;
    SnrMap snr_map;
};

/// Exact T1 spectrum columns for a list of delta-side filter capacitances
/// with the couplings held fixed.
[[nodiscard]] inline SweepTable t1_spectrum_dataset(const TransmonParams& q,
                                                    const ResonatorParams& res,
                                                    const DeltaCaps& base, double z_env,
                                                    const std::vector<double>& c_f_list,
                                                    double omega_min, double omega_max,
                                                    std::size_t n_points) {
    SweepTable table;
    table.x.resize(n_points);
    for (std::size_t i = 0; i < n_points; ++i) {
        table.x[i] = omega_min + (omega_max - omega_min) * static_cast<double>(i) /
                                     static_cast<double>(n_points - 1);
    }
    for (const double c_f : c_f_list) {
        const CouplingSet cs = CouplingSet::from_delta({c_f, base.c_q, base.c_kappa}, z_env);
        std::vector<double> col(n_points);
        for (std::size_t i = 0; i < n_points; ++i) col[i] = t1_exact(q, res, cs, table.x[i]);
        table.labels.push_back(detail::fF_label("T1_s_CF_", c_f));
        table.columns.push_back(std::move(col));
    }
    return table;
}

/// g(omega_ge) columns: one family over the filter capacitance, one over the
/// qubit coupling capacitance. L_J varies with omega_ge, C_sigma is fixed.
[[nodiscard]] inline SweepTable coupling_sweep_dataset(const TransmonParams& q,
                                                       const ResonatorParams& res,
                                                       const DeltaCaps& base, double z_env,
                                                       const SweepSpec& spec) {
    SweepTable table;
    table.x.resize(spec.n_points);
    for (std::size_t i = 0; i < spec.n_points; ++i) {
        table.x[i] = spec.omega_min + (spec.omega_max - spec.omega_min) * static_cast<double>(i) /
                                          static_cast<double>(spec.n_points - 1);
    }
    const auto add_column = [&](const DeltaCaps& d, const std::string& label) {
        const CouplingSet cs = CouplingSet::from_delta(d, z_env);
        std::vector<double> col(spec.n_points);
        for (std::size_t i = 0; i < spec.n_points; ++i) {
            col[i] = g_exact(q.retuned(table.x[i]), res, cs);
        }
        table.labels.push_back(label);
        table.columns.push_back(std::move(col));
    };
    for (const double c_f : spec.c_f_list) {
        add_column({c_f, base.c_q, base.c_kappa}, detail::fF_label("CF_", c_f));
    }
    for (const double c_q : spec.c_q_list) {
        add_column({base.c_f, c_q, base.c_kappa}, detail::fF_label("CQ_", c_q));
    }
    return table;
}

/// kappa/(2|chi|) over the (C_F, C_q) plane with C_kappa fixed.
[[nodiscard]] inline SnrMap snr_map_dataset(const TransmonParams& q, const ResonatorParams& res,
                                            const DeltaCaps& base, double z_env,
                                            const SweepSpec& spec) {
    SnrMap map;
    const double detuning = q.omega_ge - res.omega_r;
    for (const double c_q : spec.c_q_list) {
        for (std::size_t i = 0; i < spec.snr_points; ++i) {
            const double c_f = spec.snr_c_f_min +
                               (spec.snr_c_f_max - spec.snr_c_f_min) * static_cast<double>(i) /
                                   static_cast<double>(spec.snr_points - 1);
            const CouplingSet cs = CouplingSet::from_delta({c_f, c_q, base.c_kappa}, z_env);
            const double g = g_exact(q, res, cs);
            const double chi = std::abs(chi_shifts(g, detuning, q.delta_anh).chi);
            map.c_f.push_back(c_f);
            map.c_q.push_back(c_q);
            map.ratio.push_back(kappa_exact(q, res, cs) / (2.0 * chi));
        }
    }
    return map;
}

/// Full synthesis: solve the couplings, evaluate every reported quantity from
/// scratch, and attach the three sweep datasets.
[[nodiscard]] inline DesignReport design_report(const TransmonParams& q, const ResonatorParams& res,
                                                const DesignTargets& targets, double z_env,
                                                const SweepSpec& spec = {}) {
    DesignReport report;
    report.resonator = res;
    report.targets = targets;
    report.qubit = q.retuned(targets.omega_ge_target);
    report.couplings = solve_couplings(report.qubit, res, targets, z_env, &report.diagnostics);
    report.omega_f = notch_frequency(res, report.couplings.y.c_f_prime);
    report.g = g_exact(report.qubit, res, report.couplings);
    report.kappa = kappa_exact(report.qubit, res, report.couplings);
    report.kappa_simple =
        kappa_approx_simple(report.qubit, res, report.couplings.y.c_kappa_prime, z_env);
    report.dispersive = dispersive_params(report.g, report.qubit.omega_ge - res.omega_r,
                                          report.qubit.delta_anh, report.kappa);
    for (const double threshold : targets.t1_thresholds) {
        report.bandwidths.push_back(filter_bandwidth(report.qubit, res, report.couplings, threshold));
    }
    report.t1_spectrum = t1_spectrum_dataset(report.qubit, res, report.couplings.delta, z_env,
                                             spec.c_f_list, spec.omega_min, spec.omega_max,
                                             spec.n_points);
    report.coupling_sweep = coupling_sweep_dataset(report.qubit, res, report.couplings.delta, z_env, spec);
    report.snr_map = snr_map_dataset(report.qubit, res, report.couplings.delta, z_env, spec);
    return report;
}

}  // namespace qpf
