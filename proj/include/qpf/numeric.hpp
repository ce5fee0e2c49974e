#pragma once

// Small numeric helpers: constants, bracketing/bisection root finding and an
// inverse error function. Nothing here is circuit-specific.

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "qpf/errors.hpp"

namespace qpf {

inline constexpr double two_pi = 6.283185307179586476925286766559;

/// GHz (cyclic) to rad/s.
[[nodiscard]] inline double ghz_to_rad(double f_ghz) { return two_pi * f_ghz * 1e9; }

/// rad/s to GHz (cyclic).
[[nodiscard]] inline double rad_to_ghz(double omega) { return omega / (two_pi * 1e9); }

[[nodiscard]] inline double mhz_to_rad(double f_mhz) { return two_pi * f_mhz * 1e6; }

[[nodiscard]] inline double rad_to_mhz(double omega) { return omega / (two_pi * 1e6); }

namespace detail {

/// Bisect f over [lo, hi]; requires f(lo) and f(hi) of opposite sign.
template <typename F>
double bisect(F&& f, double lo, double hi, int max_iter = 200) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0)) {
        throw search_error("bisect: endpoints do not bracket a root");
    }
    for (int i = 0; i < max_iter && hi - lo > 1e-15 * (std::abs(lo) + std::abs(hi)); ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace detail

/// Inverse of std::erf on (-1, 1). Bisection bracket plus Newton polish.
[[nodiscard]] inline double erf_inv(double y) {
    if (!(y > -1.0 && y < 1.0)) {
        throw std::domain_error("erf_inv: argument must lie in (-1, 1)");
    }
    if (y == 0.0) return 0.0;
    const double ay = std::abs(y);
    double x = detail::bisect([ay](double t) { return std::erf(t) - ay; }, 0.0, 7.0, 80);
    // Newton refinement; erf'(x) = 2/sqrt(pi) * exp(-x^2)
    for (int i = 0; i < 3; ++i) {
        const double slope = 1.1283791670955126 * std::exp(-x * x);
        if (slope == 0.0) break;
        x -= (std::erf(x) - ay) / slope;
    }
    return y > 0.0 ? x : -x;
}

}  // namespace qpf
