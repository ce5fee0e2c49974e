#pragma once

// Circuit-QED analysis of the combined readout-resonator/notch-filter
// circuit: admittance seen by the qubit (both circuit configurations),
// Purcell-limited T1, notch frequency, exact and approximate coupling g,
// resonator linewidth extraction, dispersive shifts and the filter-function
// decomposition of T1.
//
// All frequencies are angular (rad/s); engineering-unit conversion happens
// at the CLI boundary.

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

#include "qpf/errors.hpp"
#include "qpf/netcore.hpp"
#include "qpf/numeric.hpp"

namespace qpf {

// ---------------------------------------------------------------------------
// Parameter records
// ---------------------------------------------------------------------------

/// Qubit-side constants. The qubit is treated as a linear L_J / C_sigma
/// oscillator for admittance purposes; omega_ge and l_j are locked together
/// by omega_ge = 1/sqrt(l_j * c_sigma).
struct TransmonParams {
    double c_sigma;    // total qubit capacitance [F]
    double l_j;        // Josephson inductance [H]
    double omega_ge;   // qubit transition frequency [rad/s]
    double delta_anh;  // anharmonicity, negative for a transmon [rad/s]

    [[nodiscard]] static TransmonParams from_inductance(double c_sigma, double l_j, double delta_anh) {
        validate(c_sigma, l_j, delta_anh);
        return {c_sigma, l_j, 1.0 / std::sqrt(l_j * c_sigma), delta_anh};
    }

    [[nodiscard]] static TransmonParams from_frequency(double c_sigma, double omega_ge, double delta_anh) {
        if (!(omega_ge > 0.0)) throw std::domain_error("TransmonParams: omega_ge must be positive");
        const double l_j = 1.0 / (omega_ge * omega_ge * c_sigma);
        validate(c_sigma, l_j, delta_anh);
        return {c_sigma, l_j, omega_ge, delta_anh};
    }

    /// Same qubit retuned to a new frequency: l_j changes, c_sigma is fixed.
    [[nodiscard]] TransmonParams retuned(double new_omega_ge) const {
        return from_frequency(c_sigma, new_omega_ge, delta_anh);
    }

private:
    static void validate(double c_sigma, double l_j, double delta_anh) {
        if (!(c_sigma > 0.0) || !std::isfinite(c_sigma)) {
            throw std::domain_error("TransmonParams: c_sigma must be positive");
        }
        if (!(l_j > 0.0) || !std::isfinite(l_j)) {
            throw std::domain_error("TransmonParams: l_j must be positive");
        }
        if (!(delta_anh < 0.0)) {
            throw std::domain_error("TransmonParams: anharmonicity must be negative");
        }
    }
};

/// Readout resonator constants; omega_r and z_r are derived from l_r, c_r.
struct ResonatorParams {
    double l_r;      // [H]
    double c_r;      // [F]
    double omega_r;  // bare 1/sqrt(L_R C_R) [rad/s]
    double z_r;      // sqrt(L_R / C_R) [ohm]

    [[nodiscard]] static ResonatorParams from_lc(double l_r, double c_r) {
        if (!(l_r > 0.0) || !(c_r > 0.0) || !std::isfinite(l_r) || !std::isfinite(c_r)) {
            throw std::domain_error("ResonatorParams: l_r and c_r must be positive");
        }
        return {l_r, c_r, 1.0 / std::sqrt(l_r * c_r), std::sqrt(l_r / c_r)};
    }
};

// ---------------------------------------------------------------------------
// Notch and subcircuit impedance
// ---------------------------------------------------------------------------

/// Notch frequency omega_F = 1/sqrt(L_R (C_R + C'_F)); always below omega_r.
/// An infinite c_f_prime (shorted filter branch) maps to omega_F = 0.
[[nodiscard]] inline double notch_frequency(const ResonatorParams& res, double c_f_prime) {
    if (!(c_f_prime > 0.0)) throw std::domain_error("notch_frequency: c_f_prime must be positive");
    if (std::isinf(c_f_prime)) return 0.0;
    return 1.0 / std::sqrt(res.l_r * (res.c_r + c_f_prime));
}

namespace detail {

/// Reactance of the series C'_F + (L_R || C_R) subcircuit, Z_sub = j*X_s.
/// Closed form with the notch explicit; returns +/-inf at the bare resonator
/// antiresonance. omega_f == 0 reproduces the bare parallel LC.
[[nodiscard]] inline double subcircuit_reactance(const ResonatorParams& res, double omega_f, double omega) {
    const double wr2 = res.omega_r * res.omega_r;
    const double wf2 = omega_f * omega_f;
    const double num = -res.omega_r * wr2 * res.z_r * (wf2 - omega * omega);
    const double den = omega * (wr2 - wf2) * (wr2 - omega * omega);
    return num / den;
}

}  // namespace detail

/// Impedance to ground of the filter-capacitor + resonator subcircuit.
/// Purely imaginary; zero at the notch, open sentinel at the bare
/// antiresonance omega == omega_r.
[[nodiscard]] inline Impedance z_sub(const ResonatorParams& res, double c_f_prime, double omega) {
    if (!(omega > 0.0)) throw std::domain_error("z_sub: omega must be positive");
    const double x = detail::subcircuit_reactance(res, notch_frequency(res, c_f_prime), omega);
    if (!std::isfinite(x)) return Impedance::open_circuit();
    return Impedance::of(0.0, x);
}

// ---------------------------------------------------------------------------
// Admittance seen by the qubit and Purcell T1
// ---------------------------------------------------------------------------

/// Admittance seen by the qubit in the Y configuration:
/// Y_q = 1 / (1/(jwC'_q) + Z_sub || (1/(jwC'_kappa) + Z_env)).
/// The real part is computed from the dissipated-power form
/// Re = Z_env X_s^2 / (|Z_q|^2 (Z_env^2 + (X_s + X_k)^2)), which vanishes
/// identically at the notch instead of by cancellation.
[[nodiscard]] inline std::complex<double> qubit_admittance(const ResonatorParams& res,
                                                           const CouplingSet& c, double omega) {
    if (!(omega > 0.0)) throw std::domain_error("qubit_admittance: omega must be positive");
    const double omega_f = notch_frequency(res, c.y.c_f_prime);
    const double xs = detail::subcircuit_reactance(res, omega_f, omega);
    const double xk = -1.0 / (omega * c.y.c_kappa_prime);
    const double r = c.z_env;

    double re_p;
    double im_p;
    if (!std::isfinite(xs)) {
        // subcircuit antiresonance: the coupling branch alone remains
        re_p = r;
        im_p = xk;
    } else {
        const double d2 = r * r + (xs + xk) * (xs + xk);
        re_p = r * xs * xs / d2;
        im_p = (xs * r * r + xs * xk * (xs + xk)) / d2;
    }
    const double im_q = im_p - 1.0 / (omega * c.y.c_q_prime);
    const double mag2 = re_p * re_p + im_q * im_q;
    return {re_p / mag2, -im_q / mag2};
}

/// Admittance seen by the qubit in the Delta configuration, evaluated by
/// nodal analysis of the bridge (nodes: resonator top T, environment E).
/// The real part comes from the power dissipated in Z_env.
[[nodiscard]] inline std::complex<double> qubit_admittance_delta(const ResonatorParams& res,
                                                                 const CouplingSet& c, double omega) {
    if (!(omega > 0.0)) throw std::domain_error("qubit_admittance_delta: omega must be positive");
    using cd = std::complex<double>;
    const cd j(0.0, 1.0);
    const cd y_q = j * omega * c.delta.c_q;
    const cd y_f = j * omega * c.delta.c_f;
    const cd y_k = j * omega * c.delta.c_kappa;
    const cd y_t = j * (omega * res.c_r - 1.0 / (omega * res.l_r));
    const cd y_e = cd(1.0 / c.z_env, 0.0);

    const cd a00 = y_q + y_k + y_t;
    const cd a11 = y_f + y_k + y_e;
    const cd det = a00 * a11 - y_k * y_k;
    const cd v_t = (y_q * a11 + y_k * y_f) / det;
    const cd v_e = (a00 * y_f + y_k * y_q) / det;

    const cd i_q = y_q * (1.0 - v_t) + y_f * (1.0 - v_e);
    const double re = std::norm(v_e) / c.z_env;
    return {re, i_q.imag()};
}

/// Purcell bound from the admittance seen by the qubit: T1 = C_sigma / Re[Y_q].
/// Real parts below 1e-25 S report +infinity; a negative real part is a
/// passivity violation and raises a logic error.
[[nodiscard]] inline double t1_purcell(const TransmonParams& q, std::complex<double> y_q) {
    const double re = y_q.real();
    if (re < 0.0) throw std::logic_error("t1_purcell: negative Re[Y_q] (passivity violation)");
    if (re < 1e-25) return std::numeric_limits<double>::infinity();
    return q.c_sigma / re;
}

/// T1 spectrum shortcut through the Y-configuration admittance.
[[nodiscard]] inline double t1_exact(const TransmonParams& q, const ResonatorParams& res,
                                     const CouplingSet& c, double omega) {
    return t1_purcell(q, qubit_admittance(res, c, omega));
}

// ---------------------------------------------------------------------------
// Coupling g
// ---------------------------------------------------------------------------

/// Exact qubit-resonator coupling from the Delta-configuration circuit with
/// renormalized capacitances
///   C~_sigma = C_sigma + C_F,  C~_R = C_R + C_q,  C~_q = C_q,  C~_k = C_kappa,
///   D = C~_sigma C~_R + C~_sigma C~_k + C~_q C~_R,
///   1/C_1 = (C~_R + C~_q)/D,  1/C_2 = (C~_sigma + C~_q)/D,
///   g = C~_q / (2 sqrt(Z_1 Z_2) D),  Z_1 = sqrt(L_J/C_1), Z_2 = sqrt(L_R/C_2).
/// With the reference design values this reproduces g/2pi = 150 MHz.
[[nodiscard]] inline double g_exact(const TransmonParams& q, const ResonatorParams& res,
                                    const CouplingSet& c) {
    const double c_sig = q.c_sigma + c.delta.c_f;
    const double c_res = res.c_r + c.delta.c_q;
    const double c_qb = c.delta.c_q;
    const double c_kb = c.delta.c_kappa;
    const double d = c_sig * c_res + c_sig * c_kb + c_qb * c_res;
    const double c1 = d / (c_res + c_qb);
    const double c2 = d / (c_sig + c_qb);
    const double z1 = std::sqrt(q.l_j / c1);
    const double z2 = std::sqrt(res.l_r / c2);
    return c_qb / (2.0 * std::sqrt(z1 * z2) * d);
}

/// Leading-order coupling g ~ (C_q/2) sqrt(w_ge w_R / (C_sigma C_R)).
[[nodiscard]] inline double g_approx(double omega_ge, const ResonatorParams& res, double c_q,
                                     double c_sigma) {
    return 0.5 * c_q * std::sqrt(omega_ge * res.omega_r / (c_sigma * res.c_r));
}

[[nodiscard]] inline double g_approx(const TransmonParams& q, const ResonatorParams& res,
                                     const CouplingSet& c) {
    return g_approx(q.omega_ge, res, c.delta.c_q, q.c_sigma);
}

// ---------------------------------------------------------------------------
// Resonator linewidth kappa
// ---------------------------------------------------------------------------

/// Closed-form estimate kappa ~ w_ge^2 w_R Z_R C_kappa^2 Z_env. The caller
/// chooses which coupling capacitance (primed or unprimed) to insert.
[[nodiscard]] inline double kappa_approx_simple(double omega_ge, const ResonatorParams& res,
                                                double c_kappa, double z_env) {
    if (!(c_kappa >= 0.0) || !(z_env > 0.0)) {
        throw std::domain_error("kappa_approx_simple: need c_kappa >= 0 and z_env > 0");
    }
    return omega_ge * omega_ge * res.omega_r * res.z_r * c_kappa * c_kappa * z_env;
}

[[nodiscard]] inline double kappa_approx_simple(const TransmonParams& q, const ResonatorParams& res,
                                                double c_kappa, double z_env) {
    return kappa_approx_simple(q.omega_ge, res, c_kappa, z_env);
}

/// Effective-RC linewidth: kappa ~ w_R/R_eff(w_R) * sqrt(L_R/(C_R + C_eff(w_R)))
/// with R_eff(w) = Z_env + (1/C'_k + 1/C'_F)^2/(w^2 Z_env) and
/// C_eff(w) = (1/C'_k + 1/C'_F) / (w^2 Z_env^2 + (1/C'_k + 1/C'_F)^2).
[[nodiscard]] inline double kappa_effective(const ResonatorParams& res, const CouplingSet& c) {
    const double u = 1.0 / c.y.c_kappa_prime +
                     (std::isinf(c.y.c_f_prime) ? 0.0 : 1.0 / c.y.c_f_prime);
    const double w = res.omega_r;
    const double r_eff = c.z_env + u * u / (w * w * c.z_env);
    const double c_eff = u / (w * w * c.z_env * c.z_env + u * u);
    return w / r_eff * std::sqrt(res.l_r / (res.c_r + c_eff));
}

namespace detail {

/// Reactance of the lossless network seen from the environment port with
/// Z_env removed: C'_kappa in series with the X-node parallel combination of
/// the filter/resonator branch and the qubit branch.
[[nodiscard]] inline double env_port_reactance(const TransmonParams& q, const ResonatorParams& res,
                                               const CouplingSet& c, double omega) {
    const double x_t = omega * res.l_r / (1.0 - omega * omega * res.l_r * res.c_r);
    const double x_q = omega * q.l_j / (1.0 - omega * omega * q.l_j * q.c_sigma);
    const double x_a = x_t - (std::isinf(c.y.c_f_prime) ? 0.0 : 1.0 / (omega * c.y.c_f_prime));
    const double x_b = x_q - 1.0 / (omega * c.y.c_q_prime);
    const double x_par = x_a * x_b / (x_a + x_b);
    return x_par - 1.0 / (omega * c.y.c_kappa_prime);
}

/// Locate the loaded-resonator zero of a monotone-through-zero reactance
/// (Foster: upward crossings are modes, downward jumps are poles). Returns
/// the crossing nearest omega_r.
template <typename F>
[[nodiscard]] double reactance_zero_near(F&& x_of, double lo, double hi, int scan_points) {
    double best = std::numeric_limits<double>::quiet_NaN();
    double prev_w = lo;
    double prev_x = x_of(lo);
    for (int i = 1; i <= scan_points; ++i) {
        const double w = lo + (hi - lo) * i / scan_points;
        const double x = x_of(w);
        if (std::isfinite(prev_x) && std::isfinite(x) && prev_x < 0.0 && x >= 0.0) {
            best = bisect([&](double m) { return x_of(m); }, prev_w, w);
        }
        prev_w = w;
        prev_x = x;
    }
    if (std::isnan(best)) {
        throw search_error("reactance_zero_near: no mode crossing inside the scan window");
    }
    return best;
}

}  // namespace detail

/// Loaded-resonator linewidth as the full width at half maximum of
/// Re[1/(Z_env + jX(w))] seen by the environment source: the reactance
/// crosses zero at the loaded mode and the half-maximum points sit at
/// X = -Z_env and X = +Z_env.
[[nodiscard]] inline double kappa_exact(const TransmonParams& q, const ResonatorParams& res,
                                        const CouplingSet& c) {
    const auto x_of = [&](double w) { return detail::env_port_reactance(q, res, c, w); };
    const double w0 = detail::reactance_zero_near(x_of, 0.90 * res.omega_r, 1.005 * res.omega_r, 400);

    const auto crossing = [&](double target, int direction) {
        double step = w0 * 1e-7;
        double w = w0;
        for (int i = 0; i < 400; ++i) {
            const double wn = w + direction * step;
            const double x = x_of(wn);
            const bool past = direction < 0 ? (x <= target) : (x >= target);
            if (past) {
                const double lo = direction < 0 ? wn : w;
                const double hi = direction < 0 ? w : wn;
                return detail::bisect([&](double m) { return x_of(m) - target; }, lo, hi);
            }
            w = wn;
            step *= 1.4;
        }
        throw search_error("kappa_exact: half-maximum crossing not found");
    };

    const double w_lo = crossing(-c.z_env, -1);
    const double w_hi = crossing(+c.z_env, +1);
    return w_hi - w_lo;
}

/// Alternative linewidth from the complex natural frequency of the loaded
/// network: Newton root of the total node-T admittance in complex omega.
/// Under the e^{+j w t} convention used here a decaying mode has
/// Im[omega_c] > 0 and kappa = 2 Im[omega_c]. Cross-checks kappa_exact and
/// stays valid for strongly under- or over-coupled ports.
[[nodiscard]] inline double kappa_natural(const TransmonParams& q, const ResonatorParams& res,
                                          const CouplingSet& c) {
    using cd = std::complex<double>;
    const auto y_total = [&](cd wc) {
        const cd s = cd(0.0, 1.0) * wc;
        const cd z_qubit = 1.0 / (s * q.c_sigma + 1.0 / (s * q.l_j));
        const cd z_qb = 1.0 / (s * c.y.c_q_prime) + z_qubit;
        const cd z_kb = 1.0 / (s * c.y.c_kappa_prime) + c.z_env;
        const cd z_x = 1.0 / (1.0 / z_qb + 1.0 / z_kb);
        const cd z_f = (std::isinf(c.y.c_f_prime) ? cd(0.0) : 1.0 / (s * c.y.c_f_prime)) + z_x;
        return s * res.c_r + 1.0 / (s * res.l_r) + 1.0 / z_f;
    };

    const auto x_of = [&](double w) { return detail::env_port_reactance(q, res, c, w); };
    const double w0 = detail::reactance_zero_near(x_of, 0.90 * res.omega_r, 1.005 * res.omega_r, 400);

    cd wc(w0, 1e-4 * w0);
    for (int i = 0; i < 80; ++i) {
        const cd f0 = y_total(wc);
        const double h = std::abs(wc) * 1e-8;
        const cd d = (y_total(wc + h) - y_total(wc - h)) / (2.0 * h);
        const cd next = wc - f0 / d;
        if (std::abs(next - wc) < 1e-12 * std::abs(wc)) {
            wc = next;
            break;
        }
        wc = next;
    }
    if (!(wc.real() > 0.0) || !(wc.imag() > 0.0)) {
        throw search_error("kappa_natural: pole search did not converge to a decaying mode");
    }
    return 2.0 * wc.imag();
}

/// Frequency at which the imaginary part of the loaded node-T admittance
/// crosses zero near omega_r; strictly below the bare frequency for any
/// positive external coupling.
[[nodiscard]] inline double loaded_resonator_frequency(const TransmonParams& q,
                                                       const ResonatorParams& res,
                                                       const CouplingSet& c) {
    using cd = std::complex<double>;
    const auto im_y = [&](double w) {
        const cd s(0.0, w);
        const cd z_qubit = 1.0 / (s * q.c_sigma + 1.0 / (s * q.l_j));
        const cd z_qb = 1.0 / (s * c.y.c_q_prime) + z_qubit;
        const cd z_kb = 1.0 / (s * c.y.c_kappa_prime) + c.z_env;
        const cd z_x = 1.0 / (1.0 / z_qb + 1.0 / z_kb);
        const cd z_f = (std::isinf(c.y.c_f_prime) ? cd(0.0) : 1.0 / (s * c.y.c_f_prime)) + z_x;
        return (s * res.c_r + 1.0 / (s * res.l_r) + 1.0 / z_f).imag();
    };
    return detail::reactance_zero_near(im_y, 0.90 * res.omega_r, 1.0008 * res.omega_r, 500);
}

// ---------------------------------------------------------------------------
// Dispersive shifts
// ---------------------------------------------------------------------------

struct ChiShifts {
    double chi0;  // -g^2/Delta
    double chi1;  // g^2 (delta - Delta) / (Delta (Delta + delta))
    double chi;   // (chi1 - chi0)/2 == g^2 delta / (Delta (Delta + delta))
};

[[nodiscard]] inline ChiShifts chi_shifts(double g, double detuning, double delta_anh) {
    if (detuning == 0.0 || detuning + delta_anh == 0.0) {
        throw std::domain_error("chi_shifts: drive straddles a resonance (Delta == 0 or Delta == -delta)");
    }
    const double chi0 = -g * g / detuning;
    const double chi1 = g * g * (delta_anh - detuning) / (detuning * (detuning + delta_anh));
    return {chi0, chi1, 0.5 * (chi1 - chi0)};
}

/// Derived dispersive quantities used by the readout and designer modules.
struct DispersiveParams {
    double g;
    double detuning;
    double chi0;
    double chi1;
    double chi;
    double kappa;
    double n_crit;
    bool dispersive_ok;  // |g/detuning| < 1
};

[[nodiscard]] inline DispersiveParams dispersive_params(double g, double detuning, double delta_anh,
                                                        double kappa) {
    const ChiShifts s = chi_shifts(g, detuning, delta_anh);
    return {g,        detuning,
            s.chi0,   s.chi1,
            s.chi,    kappa,
            detuning * detuning / (4.0 * g * g),
            std::abs(g / detuning) < 1.0};
}

// ---------------------------------------------------------------------------
// Filter-function decomposition of T1
// ---------------------------------------------------------------------------

/// Notch filter function F(w) = w_R^2 (w_F^2 - w^2) / (w^2 (w_R^2 - w_F^2)).
[[nodiscard]] inline double filter_function(const ResonatorParams& res, double omega_f, double omega) {
    const double wr2 = res.omega_r * res.omega_r;
    const double wf2 = omega_f * omega_f;
    return wr2 * (wf2 - omega * omega) / (omega * omega * (wr2 - wf2));
}

/// Cavity filter function F_cQED(w) = beta w^2 / (w_R^2 - w^2), beta = C_q/C_R.
[[nodiscard]] inline double cavity_filter_function(double beta_ratio, const ResonatorParams& res,
                                                   double omega) {
    return beta_ratio * omega * omega / (res.omega_r * res.omega_r - omega * omega);
}

/// Direct capacitive decay: T1 ~ C_sigma / (w^2 C_kappa^2 Z_env).
[[nodiscard]] inline double t1_cap(const TransmonParams& q, double c_kappa, double z_env,
                                   double omega) {
    return q.c_sigma / (omega * omega * c_kappa * c_kappa * z_env);
}

/// Plain-cQED estimate T1 ~ w_R (w_R^2 - w^2)^2 / (4 kappa g^2 w^3).
[[nodiscard]] inline double t1_cqed_approx(double kappa, double g, const ResonatorParams& res,
                                           double omega) {
    if (!(omega > 0.0)) throw std::domain_error("t1_cqed_approx: omega must be positive");
    const double wr2 = res.omega_r * res.omega_r;
    const double d = wr2 - omega * omega;
    return res.omega_r * d * d / (4.0 * kappa * g * g * omega * omega * omega);
}

/// Filtered estimate with the notch pole explicit:
/// T1 ~ w (w_R^2 - w_F^2)^2 (w_R^2 - w^2)^2 / (4 kappa g^2 w_R^3 (w_F^2 - w^2)^2).
/// Equals t1_cqed_approx(w)/|F(w)|^2; the pole at w == w_F maps to +infinity.
[[nodiscard]] inline double t1_filter_approx(double kappa, double g, const ResonatorParams& res,
                                             double omega_f, double omega) {
    if (!(omega > 0.0)) throw std::domain_error("t1_filter_approx: omega must be positive");
    const double wr2 = res.omega_r * res.omega_r;
    const double wf2 = omega_f * omega_f;
    const double a = wr2 - wf2;
    const double b = wr2 - omega * omega;
    const double p = wf2 - omega * omega;
    const double wr3 = res.omega_r * wr2;
    return omega * a * a * b * b / (4.0 * kappa * g * g * wr3 * p * p);
}

}  // namespace qpf
