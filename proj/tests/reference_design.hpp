#pragma once

// Reference transmon/resonator design used across the test suites.

#include "qpf/cqed.hpp"
#include "qpf/netcore.hpp"
#include "qpf/numeric.hpp"

namespace refdes {

inline constexpr double c_sigma = 65e-15;
inline constexpr double l_j = 15.6e-9;
inline constexpr double c_r = 500e-15;
inline constexpr double l_r = 1.2e-9;
inline constexpr double z_env = 50.0;
inline constexpr double c_f_prime = 345e-15;
inline constexpr double c_q_prime = 12.0e-15;
inline constexpr double c_kappa_prime = 15.4e-15;
inline constexpr double c_f = 0.5e-15;
inline constexpr double c_q = 11.1e-15;
inline constexpr double c_kappa = 14.3e-15;

inline double delta_anh() { return -qpf::mhz_to_rad(297.0); }

inline qpf::TransmonParams qubit() {
    return qpf::TransmonParams::from_frequency(c_sigma, qpf::ghz_to_rad(5.0), delta_anh());
}

inline qpf::ResonatorParams resonator() { return qpf::ResonatorParams::from_lc(l_r, c_r); }

inline qpf::CouplingSet couplings() {
    return qpf::CouplingSet::from_y({c_f_prime, c_q_prime, c_kappa_prime}, z_env);
}

inline qpf::CouplingSet couplings_delta_rounded() {
    return qpf::CouplingSet::from_delta({c_f, c_q, c_kappa}, z_env);
}

inline qpf::CouplingSet couplings_no_filter() {
    return qpf::CouplingSet::from_delta({0.0, c_q, c_kappa}, z_env);
}

}  // namespace refdes
