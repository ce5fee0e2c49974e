#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "qpf/netcore.hpp"
#include "qpf/numeric.hpp"

using namespace qpf;
using Catch::Approx;

namespace {

// Reference design values (fF)
constexpr double kCfp = 345e-15;
constexpr double kCqp = 12.0e-15;
constexpr double kCkp = 15.4e-15;

OnePortNetwork random_network(std::mt19937_64& rng, int depth) {
    std::uniform_int_distribution<int> kind(0, depth > 0 ? 4 : 2);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    switch (kind(rng)) {
        case 0: return OnePortNetwork::resistor(std::pow(10.0, -1.0 + 5.0 * u(rng)));
        case 1: return OnePortNetwork::capacitor(std::pow(10.0, -16.0 + 6.0 * u(rng)));
        case 2: return OnePortNetwork::inductor(std::pow(10.0, -12.0 + 6.0 * u(rng)));
        default: {
            std::uniform_int_distribution<int> n_children(2, 4);
            std::vector<OnePortNetwork> children;
            const int n = n_children(rng);
            for (int i = 0; i < n; ++i) children.push_back(random_network(rng, depth - 1));
            if (kind(rng) % 2 == 0) return OnePortNetwork::series(std::move(children));
            return OnePortNetwork::parallel(std::move(children));
        }
    }
}

}  // namespace

TEST_CASE("element impedances match hand evaluation", "[netcore]") {
    const double w65 = ghz_to_rad(6.5);
    const Impedance zc = element_impedance({ElementKind::capacitor, 500e-15}, w65);
    CHECK(zc.re() == 0.0);
    CHECK(zc.im() == Approx(-48.9706).margin(5e-4));

    const Impedance zr = element_impedance({ElementKind::resistor, 50.0}, ghz_to_rad(1.0));
    CHECK(zr.re() == 50.0);
    CHECK(zr.im() == 0.0);

    const Impedance zl = element_impedance({ElementKind::inductor, 1.2e-9}, w65);
    CHECK(zl.re() == 0.0);
    CHECK(zl.im() == Approx(49.0088).margin(5e-4));
}

TEST_CASE("element impedance rejects bad inputs", "[netcore]") {
    CHECK_THROWS_AS(element_impedance({ElementKind::resistor, 50.0}, 0.0), std::domain_error);
    CHECK_THROWS_AS(element_impedance({ElementKind::resistor, 50.0}, -1.0), std::domain_error);
    CHECK_THROWS_AS(element_impedance({ElementKind::capacitor, 0.0}, 1e9), std::domain_error);
    CHECK_THROWS_AS(element_impedance({ElementKind::inductor, -1e-9}, 1e9), std::domain_error);
}

TEST_CASE("series and parallel identities are exact", "[netcore]") {
    const double w = ghz_to_rad(5.0);
    const auto s = OnePortNetwork::series(
        {OnePortNetwork::resistor(50.0), OnePortNetwork::short_circuit()});
    const Impedance zs = compose(s, w);
    CHECK(zs.re() == 50.0);
    CHECK(zs.im() == 0.0);

    const auto p = OnePortNetwork::parallel(
        {OnePortNetwork::inductor(1.2e-9), OnePortNetwork::open()});
    const Impedance zp = compose(p, w);
    const Impedance zl = element_impedance({ElementKind::inductor, 1.2e-9}, w);
    CHECK(zp.re() == zl.re());
    CHECK(zp.im() == zl.im());

    const auto all_open = OnePortNetwork::parallel({OnePortNetwork::open(), OnePortNetwork::open()});
    CHECK(compose(all_open, w).open);
    const auto with_short = OnePortNetwork::parallel(
        {OnePortNetwork::resistor(10.0), OnePortNetwork::short_circuit()});
    CHECK(compose(with_short, w).is_short());
    const auto open_series = OnePortNetwork::series(
        {OnePortNetwork::resistor(10.0), OnePortNetwork::open()});
    CHECK(compose(open_series, w).open);
}

TEST_CASE("parallel LC matches the closed form", "[netcore]") {
    // jwL / (1 - w^2 L C) at 2pi*5 GHz, L = 1.2 nH, C = 500 fF
    const double w = ghz_to_rad(5.0);
    const double expected = w * 1.2e-9 / (1.0 - w * w * 1.2e-9 * 500e-15);
    CHECK(expected == Approx(92.4397).margin(1e-3));

    const auto lc = OnePortNetwork::parallel(
        {OnePortNetwork::inductor(1.2e-9), OnePortNetwork::capacitor(500e-15)});
    const Impedance z = compose(lc, w);
    CHECK(z.re() == Approx(0.0).margin(1e-12));
    CHECK(z.im() == Approx(expected).epsilon(1e-12));
}

TEST_CASE("network trees need two children per combinator", "[netcore]") {
    CHECK_THROWS_AS(OnePortNetwork::series({OnePortNetwork::resistor(1.0)}), std::invalid_argument);
    CHECK_THROWS_AS(OnePortNetwork::parallel({}), std::invalid_argument);
    CHECK_THROWS_AS(OnePortNetwork::capacitor(-1e-15), std::domain_error);
}

TEST_CASE("passivity of random networks", "[netcore]") {
    std::mt19937_64 rng(0xC0FFEEULL);
    std::uniform_real_distribution<double> logw(8.0, 12.0);
    for (int trial = 0; trial < 300; ++trial) {
        const OnePortNetwork net = random_network(rng, 3);
        const double w = std::pow(10.0, logw(rng));
        const Impedance z = compose(net, w);
        if (!z.open) {
            CHECK(z.re() >= -1e-15);
        }
    }
}

TEST_CASE("composition is permutation invariant under evaluation", "[netcore]") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> logw(8.5, 11.5);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<OnePortNetwork> parts{
            random_network(rng, 1), random_network(rng, 1), random_network(rng, 1)};
        const double w = std::pow(10.0, logw(rng));

        const Impedance s_abc = compose(OnePortNetwork::series({parts[0], parts[1], parts[2]}), w);
        const Impedance s_cab = compose(OnePortNetwork::series({parts[2], parts[0], parts[1]}), w);
        const Impedance s_nested = compose(
            OnePortNetwork::series({OnePortNetwork::series({parts[0], parts[1]}), parts[2]}), w);
        const Impedance p_abc = compose(OnePortNetwork::parallel({parts[0], parts[1], parts[2]}), w);
        const Impedance p_bca = compose(OnePortNetwork::parallel({parts[1], parts[2], parts[0]}), w);

        if (!s_abc.open) {
            CHECK(std::abs(s_abc.z - s_cab.z) <= 1e-12 * std::abs(s_abc.z));
            CHECK(std::abs(s_abc.z - s_nested.z) <= 1e-12 * std::abs(s_abc.z));
        }
        if (!p_abc.open && std::abs(p_abc.z) > 0.0) {
            CHECK(std::abs(p_abc.z - p_bca.z) <= 1e-12 * std::abs(p_abc.z));
        }
    }
}

TEST_CASE("y_to_delta reproduces the reference capacitor table", "[netcore]") {
    const DeltaCaps d = y_to_delta({kCfp, kCqp, kCkp});
    CHECK(d.c_f == Approx(0.50e-15).epsilon(0.01));
    CHECK(d.c_q == Approx(11.1e-15).epsilon(0.01));
    CHECK(d.c_kappa == Approx(14.3e-15).epsilon(0.01));

    const YCaps y = delta_to_y({0.50e-15, 11.1e-15, 14.3e-15});
    CHECK(y.c_f_prime == Approx(345e-15).epsilon(0.01));
    CHECK(y.c_q_prime == Approx(12.0e-15).epsilon(0.01));
    CHECK(y.c_kappa_prime == Approx(15.4e-15).epsilon(0.01));
}

TEST_CASE("symmetric star maps to c/3 and back", "[netcore]") {
    const double c = 7.3e-15;
    const DeltaCaps d = y_to_delta({c, c, c});
    CHECK(d.c_f == Approx(c / 3.0).epsilon(1e-14));
    CHECK(d.c_q == Approx(c / 3.0).epsilon(1e-14));
    CHECK(d.c_kappa == Approx(c / 3.0).epsilon(1e-14));
    const YCaps y = delta_to_y({c / 3.0, c / 3.0, c / 3.0});
    CHECK(y.c_f_prime == Approx(c).epsilon(1e-14));
    CHECK(y.c_q_prime == Approx(c).epsilon(1e-14));
    CHECK(y.c_kappa_prime == Approx(c).epsilon(1e-14));
}

TEST_CASE("y-delta round trips on random triples", "[netcore]") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> logc(std::log10(0.01e-15), std::log10(1000e-15));
    for (int trial = 0; trial < 1000; ++trial) {
        const YCaps y{std::pow(10.0, logc(rng)), std::pow(10.0, logc(rng)),
                      std::pow(10.0, logc(rng))};
        const YCaps back = delta_to_y(y_to_delta(y));
        CHECK(back.c_f_prime == Approx(y.c_f_prime).epsilon(1e-12));
        CHECK(back.c_q_prime == Approx(y.c_q_prime).epsilon(1e-12));
        CHECK(back.c_kappa_prime == Approx(y.c_kappa_prime).epsilon(1e-12));

        const DeltaCaps d{std::pow(10.0, logc(rng)), std::pow(10.0, logc(rng)),
                          std::pow(10.0, logc(rng))};
        const DeltaCaps back_d = y_to_delta(delta_to_y(d));
        CHECK(back_d.c_f == Approx(d.c_f).epsilon(1e-12));
        CHECK(back_d.c_q == Approx(d.c_q).epsilon(1e-12));
        CHECK(back_d.c_kappa == Approx(d.c_kappa).epsilon(1e-12));
    }
}

TEST_CASE("y-delta inverse scaling and homogeneity", "[netcore]") {
    const DeltaCaps d = y_to_delta({kCfp, kCqp, kCkp});
    CHECK(d.c_f < kCfp);              // filter branch shrinks dramatically
    CHECK(d.c_q / kCqp > 0.5);        // coupling branches stay comparable
    CHECK(d.c_q / kCqp < 1.0);
    CHECK(d.c_kappa / kCkp > 0.5);
    CHECK(d.c_kappa / kCkp < 1.0);

    const double s = 3.7;
    const DeltaCaps scaled = y_to_delta({s * kCfp, s * kCqp, s * kCkp});
    CHECK(scaled.c_f == Approx(s * d.c_f).epsilon(1e-12));
    CHECK(scaled.c_q == Approx(s * d.c_q).epsilon(1e-12));
    CHECK(scaled.c_kappa == Approx(s * d.c_kappa).epsilon(1e-12));
}

TEST_CASE("transforms reject non-positive capacitances", "[netcore]") {
    CHECK_THROWS_AS(y_to_delta({0.0, 1e-15, 1e-15}), std::domain_error);
    CHECK_THROWS_AS(y_to_delta({1e-15, -1e-15, 1e-15}), std::domain_error);
    CHECK_THROWS_AS(delta_to_y({1e-15, 1e-15, 0.0}), std::domain_error);
}

TEST_CASE("coupling set keeps both configurations consistent", "[netcore]") {
    const CouplingSet cs = CouplingSet::from_y({kCfp, kCqp, kCkp}, 50.0);
    const YCaps y = delta_to_y(cs.delta);
    CHECK(y.c_f_prime == Approx(cs.y.c_f_prime).epsilon(1e-12));
    CHECK(y.c_q_prime == Approx(cs.y.c_q_prime).epsilon(1e-12));
    CHECK(y.c_kappa_prime == Approx(cs.y.c_kappa_prime).epsilon(1e-12));

    const CouplingSet nofilter = CouplingSet::from_delta({0.0, 11.1e-15, 14.3e-15}, 50.0);
    CHECK(std::isinf(nofilter.y.c_f_prime));
    CHECK(nofilter.y.c_q_prime == 11.1e-15);
    CHECK_THROWS_AS(CouplingSet::from_delta({1e-15, 1e-15, 1e-15}, 0.0), std::domain_error);
}
