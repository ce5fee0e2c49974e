#pragma once

// Complex-impedance algebra for one-port lumped R/L/C networks:
// element impedances, series/parallel composition over an expression tree,
// and the Y-Delta transformation for capacitor triples.

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qpf/errors.hpp"
#include "qpf/numeric.hpp"

namespace qpf {

// ---------------------------------------------------------------------------
// Impedance value with an explicit open-circuit sentinel
// ---------------------------------------------------------------------------

/// One-port impedance. `open` marks an infinite impedance so that the
/// parallel identity parallel(Z, open) == Z holds exactly; a short circuit
/// is the exact value 0 + j0.
struct Impedance {
    std::complex<double> z{0.0, 0.0};
    bool open = false;

    [[nodiscard]] static Impedance open_circuit() { return {{0.0, 0.0}, true}; }
    [[nodiscard]] static Impedance short_circuit() { return {{0.0, 0.0}, false}; }
    [[nodiscard]] static Impedance of(double re, double im) { return {{re, im}, false}; }

    [[nodiscard]] double re() const { return z.real(); }
    [[nodiscard]] double im() const { return z.imag(); }
    [[nodiscard]] bool is_short() const { return !open && z == std::complex<double>(0.0, 0.0); }

    /// Admittance; an open circuit maps to exactly zero.
    [[nodiscard]] std::complex<double> admittance() const {
        if (open) return {0.0, 0.0};
        return 1.0 / z;
    }
};

[[nodiscard]] inline Impedance series(const Impedance& a, const Impedance& b) {
    if (a.open || b.open) return Impedance::open_circuit();
    return {a.z + b.z, false};
}

[[nodiscard]] inline Impedance parallel(const Impedance& a, const Impedance& b) {
    if (a.is_short() || b.is_short()) return Impedance::short_circuit();
    if (a.open) return b;
    if (b.open) return a;
    const std::complex<double> y = a.admittance() + b.admittance();
    if (y == std::complex<double>(0.0, 0.0)) return Impedance::open_circuit();
    return {1.0 / y, false};
}

// ---------------------------------------------------------------------------
// Elements and network trees
// ---------------------------------------------------------------------------

enum class ElementKind { resistor, capacitor, inductor };

/// Leaf element; value is ohms, farads or henries according to kind.
struct Element {
    ElementKind kind;
    double value;
};

/// Z_R = R, Z_L = jwL, Z_C = 1/(jwC). Throws on non-positive inputs.
[[nodiscard]] inline Impedance element_impedance(const Element& e, double omega) {
    if (!(omega > 0.0) || !std::isfinite(omega)) {
        throw std::domain_error("element_impedance: omega must be positive and finite");
    }
    if (!(e.value > 0.0) || !std::isfinite(e.value)) {
        throw std::domain_error("element_impedance: element value must be positive and finite");
    }
    switch (e.kind) {
        case ElementKind::resistor: return Impedance::of(e.value, 0.0);
        case ElementKind::inductor: return Impedance::of(0.0, omega * e.value);
        case ElementKind::capacitor: return Impedance::of(0.0, -1.0 / (omega * e.value));
    }
    throw std::logic_error("element_impedance: unreachable");
}

/// Immutable series/parallel expression tree of R/L/C leaves plus open and
/// short sentinels. Evaluation is a pure function of (tree, omega).
class OnePortNetwork {
public:
    [[nodiscard]] static OnePortNetwork resistor(double ohms) { return leaf({ElementKind::resistor, ohms}); }
    [[nodiscard]] static OnePortNetwork capacitor(double farads) { return leaf({ElementKind::capacitor, farads}); }
    [[nodiscard]] static OnePortNetwork inductor(double henries) { return leaf({ElementKind::inductor, henries}); }

    [[nodiscard]] static OnePortNetwork open() {
        OnePortNetwork n;
        n.kind_ = Kind::open;
        return n;
    }

    [[nodiscard]] static OnePortNetwork short_circuit() {
        OnePortNetwork n;
        n.kind_ = Kind::short_leaf;
        return n;
    }

    [[nodiscard]] static OnePortNetwork series(std::vector<OnePortNetwork> children) {
        return combine(Kind::series, std::move(children));
    }

    [[nodiscard]] static OnePortNetwork parallel(std::vector<OnePortNetwork> children) {
        return combine(Kind::parallel, std::move(children));
    }

    [[nodiscard]] Impedance impedance(double omega) const {
        switch (kind_) {
            case Kind::element: return element_impedance(elem_, omega);
            case Kind::open: return Impedance::open_circuit();
            case Kind::short_leaf: return Impedance::short_circuit();
            case Kind::series: {
                Impedance acc = Impedance::short_circuit();
                for (const auto& c : children_) acc = qpf::series(acc, c.impedance(omega));
                return acc;
            }
            case Kind::parallel: {
                Impedance acc = Impedance::open_circuit();
                for (const auto& c : children_) acc = qpf::parallel(acc, c.impedance(omega));
                return acc;
            }
        }
        throw std::logic_error("OnePortNetwork: unreachable");
    }

private:
    enum class Kind { element, open, short_leaf, series, parallel };

    OnePortNetwork() = default;

    static OnePortNetwork leaf(Element e) {
        if (!(e.value > 0.0) || !std::isfinite(e.value)) {
            throw std::domain_error("OnePortNetwork: element value must be positive and finite");
        }
        OnePortNetwork n;
        n.kind_ = Kind::element;
        n.elem_ = e;
        return n;
    }

    static OnePortNetwork combine(Kind k, std::vector<OnePortNetwork> children) {
        if (children.size() < 2) {
            throw std::invalid_argument("OnePortNetwork: combinator needs at least two children");
        }
        OnePortNetwork n;
        n.kind_ = k;
        n.children_ = std::move(children);
        return n;
    }

    Kind kind_ = Kind::open;
    Element elem_{ElementKind::resistor, 1.0};
    std::vector<OnePortNetwork> children_;
};

/// Evaluate a network tree at angular frequency omega.
[[nodiscard]] inline Impedance compose(const OnePortNetwork& net, double omega) {
    if (!(omega > 0.0) || !std::isfinite(omega)) {
        throw std::domain_error("compose: omega must be positive and finite");
    }
    return net.impedance(omega);
}

// ---------------------------------------------------------------------------
// Y-Delta transformation for capacitor triples
// ---------------------------------------------------------------------------

/// Star (Y) capacitances: c_f_prime on the resonator branch, c_q_prime on the
/// qubit branch, c_kappa_prime on the environment branch. c_f_prime may be
/// +infinity to denote a shorted filter branch (no notch).
struct YCaps {
    double c_f_prime;
    double c_q_prime;
    double c_kappa_prime;
};

/// Loop (Delta) capacitances: c_f qubit<->environment, c_q qubit<->resonator,
/// c_kappa resonator<->environment. c_f == 0 denotes no filter branch.
struct DeltaCaps {
    double c_f;
    double c_q;
    double c_kappa;
};

namespace detail {

inline void require_positive_triple(double a, double b, double c, const char* who) {
    if (!(a > 0.0) || !(b > 0.0) || !(c > 0.0) ||
        !std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c)) {
        throw std::domain_error(std::string(who) + ": all capacitances must be positive and finite");
    }
}

}  // namespace detail

/// Star-to-delta for capacitors (admittances combine like conductances):
/// each delta branch takes the product of the two star capacitors that meet
/// its terminals, over the star sum.
[[nodiscard]] inline DeltaCaps y_to_delta(const YCaps& y) {
    detail::require_positive_triple(y.c_f_prime, y.c_q_prime, y.c_kappa_prime, "y_to_delta");
    const double s = y.c_f_prime + y.c_q_prime + y.c_kappa_prime;
    return {
        y.c_q_prime * y.c_kappa_prime / s,   // qubit<->environment
        y.c_q_prime * y.c_f_prime / s,       // qubit<->resonator
        y.c_kappa_prime * y.c_f_prime / s,   // resonator<->environment
    };
}

/// Exact inverse of y_to_delta.
[[nodiscard]] inline YCaps delta_to_y(const DeltaCaps& d) {
    detail::require_positive_triple(d.c_f, d.c_q, d.c_kappa, "delta_to_y");
    const double p = d.c_f * d.c_q + d.c_q * d.c_kappa + d.c_kappa * d.c_f;
    return {p / d.c_f, p / d.c_kappa, p / d.c_q};
}

// ---------------------------------------------------------------------------
// Coupling set: both configurations plus the environment impedance
// ---------------------------------------------------------------------------

/// The three coupling capacitances in both configurations, kept mutually
/// consistent by construction, plus the real environment impedance.
struct CouplingSet {
    YCaps y;
    DeltaCaps delta;
    double z_env;

    [[nodiscard]] static CouplingSet from_y(const YCaps& y, double z_env) {
        validate_env(z_env);
        if (!(y.c_q_prime > 0.0) || !(y.c_kappa_prime > 0.0) || !(y.c_f_prime > 0.0)) {
            throw std::domain_error("CouplingSet: coupling capacitances must be positive");
        }
        if (std::isinf(y.c_f_prime)) {
            return {y, {0.0, y.c_q_prime, y.c_kappa_prime}, z_env};
        }
        return {y, y_to_delta(y), z_env};
    }

    [[nodiscard]] static CouplingSet from_delta(const DeltaCaps& d, double z_env) {
        validate_env(z_env);
        if (!(d.c_q > 0.0) || !(d.c_kappa > 0.0) || !(d.c_f >= 0.0) || !std::isfinite(d.c_f)) {
            throw std::domain_error("CouplingSet: coupling capacitances must be positive (c_f >= 0)");
        }
        if (d.c_f == 0.0) {
            return {{std::numeric_limits<double>::infinity(), d.c_q, d.c_kappa}, d, z_env};
        }
        return {delta_to_y(d), d, z_env};
    }

private:
    static void validate_env(double z_env) {
        if (!(z_env > 0.0) || !std::isfinite(z_env)) {
            throw std::domain_error("CouplingSet: z_env must be positive and finite");
        }
    }
};

}  // namespace qpf
