#pragma once

// Dispersive-measurement model: steady-state pointer separation, photon
// number, Fisher separation and assignment fidelity, plus a seeded Monte
// Carlo homodyne-trajectory oracle with LDA classification.
//
// Rates (kappa, chi, drive_amp) carry the convention recorded in the config:
// "cyclic" rates reproduce the reference measurement times with
// kappa = 5e6 1/s; "angular" rates are the same quantities times 2pi, which
// rescales every t_m-coupled output accordingly.

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "qpf/errors.hpp"
#include "qpf/numeric.hpp"

namespace qpf {

enum class RateConvention { angular, cyclic };

// ---------------------------------------------------------------------------
// Measurement configuration
// ---------------------------------------------------------------------------

struct MeasurementConfig {
    double kappa = 5.0e6;            // resonator linewidth [1/s]
    double chi = 2.5e6;              // dispersive shift magnitude [1/s]
    double drive_amp = 0.0;          // measurement drive amplitude E_m [1/s]
    double t_m = 1.09e-6;            // measurement time [s]
    double amp_gain = 1.0;           // amplifier gain G
    double amp_added_noise = 0.0;    // added noise A; efficiency = 1/(1+2A)
    double quadrature_angle = 0.0;   // theta of the information quadrature
    RateConvention rate_convention = RateConvention::cyclic;

    [[nodiscard]] double efficiency() const { return 1.0 / (1.0 + 2.0 * amp_added_noise); }

    /// Set A from a target efficiency eta in (0, 1].
    void set_efficiency(double eta) {
        if (!(eta > 0.0) || !(eta <= 1.0)) {
            throw std::domain_error("MeasurementConfig: efficiency must lie in (0, 1]");
        }
        amp_added_noise = 0.5 * (1.0 / eta - 1.0);
    }

    /// Set the drive so the steady-state photon number equals nbar.
    void set_drive_for_photons(double nbar) {
        if (!(nbar >= 0.0)) throw std::domain_error("MeasurementConfig: nbar must be non-negative");
        drive_amp = std::sqrt(0.5 * nbar * (0.25 * kappa * kappa + chi * chi));
    }

    void validate() const {
        if (!(kappa > 0.0)) throw std::domain_error("MeasurementConfig: kappa must be positive");
        if (!(t_m > 0.0)) throw std::domain_error("MeasurementConfig: t_m must be positive");
        if (!(amp_gain > 0.0)) throw std::domain_error("MeasurementConfig: amp_gain must be positive");
        if (!(amp_added_noise >= 0.0)) {
            throw std::domain_error("MeasurementConfig: amp_added_noise must be non-negative");
        }
        if (!(chi >= 0.0)) throw std::domain_error("MeasurementConfig: chi must be non-negative");
        if (!(drive_amp >= 0.0)) throw std::domain_error("MeasurementConfig: drive_amp must be non-negative");
    }
};

// ---------------------------------------------------------------------------
// Closed-form measurement statistics
// ---------------------------------------------------------------------------

/// Steady-state photon number n = 2 E_m^2 / (kappa^2/4 + chi^2).
[[nodiscard]] inline double mean_photons(const MeasurementConfig& cfg) {
    cfg.validate();
    const double d = 0.25 * cfg.kappa * cfg.kappa + cfg.chi * cfg.chi;
    return 2.0 * cfg.drive_amp * cfg.drive_amp / d;
}

/// Steady-state pointer-separation rate |beta|^2 = 2 chi^2 n / (kappa^2/4 + chi^2)
/// (equivalently 4 chi^2 E_m^2 / (kappa^2/4 + chi^2)^2). The time-integrated
/// two-norm over a measurement is this value times t_m.
[[nodiscard]] inline double pointer_separation_norm(const MeasurementConfig& cfg) {
    cfg.validate();
    const double d = 0.25 * cfg.kappa * cfg.kappa + cfg.chi * cfg.chi;
    return 4.0 * cfg.chi * cfg.chi * cfg.drive_amp * cfg.drive_amp / (d * d);
}

/// Fisher separation R = 8 kappa t_m chi^2 n / ((1+2A)(kappa^2/4 + chi^2));
/// reduces to 4 kappa t_m eta n at the optimum kappa = 2 chi.
[[nodiscard]] inline double fisher_separation(const MeasurementConfig& cfg) {
    const double nbar = mean_photons(cfg);
    const double d = 0.25 * cfg.kappa * cfg.kappa + cfg.chi * cfg.chi;
    return 8.0 * cfg.kappa * cfg.t_m * cfg.chi * cfg.chi * nbar /
           ((1.0 + 2.0 * cfg.amp_added_noise) * d);
}

/// Assignment fidelity F = (1 + erf(sqrt(R/8)))/2.
[[nodiscard]] inline double assignment_fidelity(double r) {
    if (!(r >= 0.0)) throw std::domain_error("assignment_fidelity: R must be non-negative");
    return 0.5 * (1.0 + std::erf(std::sqrt(r / 8.0)));
}

/// Invert F = (1 + erf(sqrt(kappa t_m eta n / 2)))/2 for the measurement time.
[[nodiscard]] inline double required_measurement_time(double f_target, double nbar, double kappa,
                                                      double eta) {
    if (!(f_target > 0.5) || !(f_target < 1.0)) {
        throw std::domain_error("required_measurement_time: target fidelity must lie in (0.5, 1)");
    }
    if (!(nbar > 0.0) || !(kappa > 0.0) || !(eta > 0.0)) {
        throw std::domain_error("required_measurement_time: nbar, kappa, eta must be positive");
    }
    const double x = erf_inv(2.0 * f_target - 1.0);
    return 2.0 * x * x / (kappa * eta * nbar);
}

// ---------------------------------------------------------------------------
// LDA kernel
// ---------------------------------------------------------------------------

/// w(t) = (<I0(t)> - <I1(t)>) / var. Constant in time for steady-state means.
[[nodiscard]] inline std::vector<double> lda_kernel(std::span<const double> mean_traj_0,
                                                    std::span<const double> mean_traj_1,
                                                    double noise_var) {
    if (!(noise_var > 0.0)) throw std::domain_error("lda_kernel: noise variance must be positive");
    if (mean_traj_0.size() != mean_traj_1.size() || mean_traj_0.empty()) {
        throw std::invalid_argument("lda_kernel: mean trajectories must share a non-empty grid");
    }
    std::vector<double> w(mean_traj_0.size());
    for (std::size_t k = 0; k < w.size(); ++k) {
        w[k] = (mean_traj_0[k] - mean_traj_1[k]) / noise_var;
    }
    return w;
}

// ---------------------------------------------------------------------------
// Monte Carlo trajectory oracle
// ---------------------------------------------------------------------------

/// Sampled real-quadrature records for both preparations. Records are stored
/// row-major: trajectory i occupies [i*n_samples, (i+1)*n_samples). The same
/// seed regenerates the batch bit-exactly.
struct TrajectoryBatch {
    std::size_t n_per_class = 0;
    std::size_t n_samples = 0;
    double dt = 0.0;
    std::uint64_t seed = 0;
    std::vector<double> records;        // 2*n_per_class rows
    std::vector<std::uint8_t> labels;   // prepared state per row

    [[nodiscard]] std::span<const double> record(std::size_t i) const {
        return {records.data() + i * n_samples, n_samples};
    }
    [[nodiscard]] std::size_t n_total() const { return 2 * n_per_class; }
};

namespace detail {

[[nodiscard]] inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Per-trajectory RNG stream derived from (batch seed, row index).
[[nodiscard]] inline std::mt19937_64 trajectory_rng(std::uint64_t seed, std::uint64_t row) {
    return std::mt19937_64(splitmix64(seed ^ splitmix64(row + 1)));
}

/// Steady-state class means on the optimal quadrature: +/- sqrt(G kappa)|beta|/2.
[[nodiscard]] inline double signal_mean(const MeasurementConfig& cfg) {
    return 0.5 * std::sqrt(cfg.amp_gain * cfg.kappa * pointer_separation_norm(cfg));
}

/// Per-sample noise variance G(1+2A)/(4 dt): integrated statistics are
/// independent of the discretization step.
[[nodiscard]] inline double sample_noise_var(const MeasurementConfig& cfg, double dt) {
    return cfg.amp_gain * (1.0 + 2.0 * cfg.amp_added_noise) / (4.0 * dt);
}

}  // namespace detail

[[nodiscard]] inline TrajectoryBatch generate_trajectories(const MeasurementConfig& cfg,
                                                           std::size_t n_per_class, double dt,
                                                           std::uint64_t seed) {
    cfg.validate();
    if (n_per_class < 1) throw std::domain_error("generate_trajectories: need at least one trajectory");
    if (!(dt > 0.0) || dt > cfg.t_m / 50.0) {
        throw std::domain_error("generate_trajectories: dt must be positive and at most t_m/50");
    }
    TrajectoryBatch batch;
    batch.n_per_class = n_per_class;
    batch.n_samples = static_cast<std::size_t>(std::ceil(cfg.t_m / dt));
    batch.dt = dt;
    batch.seed = seed;
    batch.records.resize(2 * n_per_class * batch.n_samples);
    batch.labels.resize(2 * n_per_class);

    const double mu = detail::signal_mean(cfg);
    const double sigma = std::sqrt(detail::sample_noise_var(cfg, dt));
    for (std::size_t i = 0; i < 2 * n_per_class; ++i) {
        const std::uint8_t label = i < n_per_class ? 0 : 1;
        batch.labels[i] = label;
        const double mean = label == 0 ? mu : -mu;
        auto rng = detail::trajectory_rng(seed, i);
        std::normal_distribution<double> noise(0.0, sigma);
        double* row = batch.records.data() + i * batch.n_samples;
        for (std::size_t k = 0; k < batch.n_samples; ++k) {
            row[k] = mean + noise(rng);
        }
    }
    return batch;
}

struct KernelScore {
    double empirical_r = 0.0;
    double empirical_f = 0.0;
};

/// Integrate every record against the kernel, split scores by preparation,
/// and classify against the midpoint of the class means.
[[nodiscard]] inline KernelScore integrate_with_kernel(const TrajectoryBatch& batch,
                                                       std::span<const double> w) {
    if (w.size() != batch.n_samples) {
        throw std::invalid_argument("integrate_with_kernel: kernel grid mismatch");
    }
    const std::size_t n = batch.n_per_class;
    std::vector<double> score(batch.n_total());
    for (std::size_t i = 0; i < batch.n_total(); ++i) {
        const auto row = batch.record(i);
        double s = 0.0;
        for (std::size_t k = 0; k < batch.n_samples; ++k) s += w[k] * row[k];
        score[i] = s * batch.dt;
    }

    double m0 = 0.0;
    double m1 = 0.0;
    for (std::size_t i = 0; i < n; ++i) m0 += score[i];
    for (std::size_t i = n; i < 2 * n; ++i) m1 += score[i];
    m0 /= static_cast<double>(n);
    m1 /= static_cast<double>(n);

    double v0 = 0.0;
    for (std::size_t i = 0; i < n; ++i) v0 += (score[i] - m0) * (score[i] - m0);
    v0 /= static_cast<double>(n - 1);

    KernelScore out;
    out.empirical_r = v0 > 0.0 ? (m0 - m1) * (m0 - m1) / v0 : 0.0;

    const double threshold = 0.5 * (m0 + m1);
    std::size_t correct = 0;
    for (std::size_t i = 0; i < batch.n_total(); ++i) {
        const int assigned = score[i] > threshold ? 0 : 1;
        if (assigned == batch.labels[i]) ++correct;
    }
    out.empirical_f = static_cast<double>(correct) / static_cast<double>(batch.n_total());
    return out;
}

struct McResult {
    double empirical_f = 0.0;
    double empirical_r = 0.0;
    double stderr_f = 0.0;    // binomial standard error of empirical_f
    double analytic_f = 0.0;  // matched to the discretized duration n_samples*dt
    double analytic_r = 0.0;
    std::size_t n_total = 0;
};

/// Full oracle: generate seeded trajectories, build the LDA kernel from the
/// model means, integrate, classify. Deterministic given the seed.
[[nodiscard]] inline McResult monte_carlo_fidelity(const MeasurementConfig& cfg, std::size_t n_traj,
                                                   double dt, std::uint64_t seed) {
    if (n_traj < 1000) {
        throw std::domain_error("monte_carlo_fidelity: need n_traj >= 1000 for a meaningful stderr");
    }
    const std::size_t n_per_class = n_traj / 2;
    const TrajectoryBatch batch = generate_trajectories(cfg, n_per_class, dt, seed);

    const double mu = detail::signal_mean(cfg);
    const std::vector<double> mean0(batch.n_samples, mu);
    const std::vector<double> mean1(batch.n_samples, -mu);
    const std::vector<double> w = lda_kernel(mean0, mean1, detail::sample_noise_var(cfg, dt));
    const KernelScore score = integrate_with_kernel(batch, w);

    McResult out;
    out.empirical_f = score.empirical_f;
    out.empirical_r = score.empirical_r;
    out.n_total = batch.n_total();
    out.stderr_f = std::sqrt(std::max(score.empirical_f * (1.0 - score.empirical_f), 1e-12) /
                             static_cast<double>(out.n_total));

    MeasurementConfig effective = cfg;
    effective.t_m = static_cast<double>(batch.n_samples) * batch.dt;
    out.analytic_r = fisher_separation(effective);
    out.analytic_f = assignment_fidelity(out.analytic_r);
    return out;
}

// ---------------------------------------------------------------------------
// Fidelity map
// ---------------------------------------------------------------------------

struct FidelityMap {
    std::vector<double> nbar;
    std::vector<double> t_m;
    std::vector<double> f;  // row-major over (nbar, t_m)
    std::vector<double> contour_levels{0.95, 0.99, 0.999};
    double n_crit = 0.0;

    [[nodiscard]] double at(std::size_t i_nbar, std::size_t i_tm) const {
        return f[i_nbar * t_m.size() + i_tm];
    }
};

/// Assignment fidelity over an (nbar, t_m) grid with kappa and eta fixed by
/// cfg_base, plus the iso-fidelity contour levels and the critical-photon
/// marker carried for plotting.
[[nodiscard]] inline FidelityMap fidelity_map(const MeasurementConfig& cfg_base,
                                              std::vector<double> nbar_grid,
                                              std::vector<double> tm_grid, double n_crit) {
    for (std::size_t i = 1; i < nbar_grid.size(); ++i) {
        if (!(nbar_grid[i] > nbar_grid[i - 1])) {
            throw std::domain_error("fidelity_map: nbar grid must be strictly increasing");
        }
    }
    for (std::size_t i = 1; i < tm_grid.size(); ++i) {
        if (!(tm_grid[i] > tm_grid[i - 1])) {
            throw std::domain_error("fidelity_map: t_m grid must be strictly increasing");
        }
    }
    if (nbar_grid.empty() || !(nbar_grid.front() > 0.0) || tm_grid.empty() || !(tm_grid.front() >= 0.0)) {
        throw std::domain_error("fidelity_map: grids must be positive");
    }
    FidelityMap map;
    map.n_crit = n_crit;
    map.nbar = std::move(nbar_grid);
    map.t_m = std::move(tm_grid);
    map.f.resize(map.nbar.size() * map.t_m.size());
    const double eta = cfg_base.efficiency();
    for (std::size_t i = 0; i < map.nbar.size(); ++i) {
        for (std::size_t k = 0; k < map.t_m.size(); ++k) {
            const double r = 4.0 * cfg_base.kappa * map.t_m[k] * eta * map.nbar[i];
            map.f[i * map.t_m.size() + k] = assignment_fidelity(r);
        }
    }
    return map;
}

}  // namespace qpf
