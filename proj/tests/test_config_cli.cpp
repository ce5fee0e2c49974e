#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <random>
#include <sstream>
#include <string>

#include "qpf/cli.hpp"
#include "qpf/config.hpp"

using namespace qpf;
using Catch::Approx;

namespace {

std::size_t count_fields(const std::string& line) {
    return static_cast<std::size_t>(std::count(line.begin(), line.end(), ',')) + 1;
}

}  // namespace

TEST_CASE("empty document yields the full reference defaults", "[config]") {
    const RunConfig cfg = parse_config_text("{}");
    CHECK(cfg.circuit.c_sigma_fF == 65.0);
    CHECK(cfg.circuit.l_r_nH == 1.2);
    CHECK(cfg.circuit.c_r_fF == 500.0);
    CHECK(cfg.circuit.z_env_ohm == 50.0);
    CHECK(cfg.circuit.c_q_fF == 11.1);
    CHECK(cfg.circuit.c_kappa_fF == 14.3);
    CHECK(cfg.circuit.anharmonicity_MHz == -297.0);
    REQUIRE(cfg.circuit.f_qubit_GHz.has_value());
    CHECK(*cfg.circuit.f_qubit_GHz == 5.0);
    CHECK(cfg.targets.g_target_MHz == 150.0);
    CHECK(cfg.readout.kappa_MHz == 5.0);
    CHECK(cfg.convention == "paper");

    const TransmonParams q = transmon_from(cfg);
    CHECK(q.l_j == Approx(15.59e-9).epsilon(0.01));
}

TEST_CASE("config errors carry distinct kinds and name the field", "[config]") {
    try {
        (void)parse_config(std::filesystem::path("/nonexistent/qpf.json"));
        FAIL("expected missing-file error");
    } catch (const config_error& e) {
        CHECK(e.error_kind() == config_error::kind::missing_file);
    }

    try {
        (void)parse_config_text("{not json");
        FAIL("expected parse error");
    } catch (const config_error& e) {
        CHECK(e.error_kind() == config_error::kind::parse);
    }

    try {
        (void)parse_config_text(R"({"circuit": {"c_sigma_fF": -1}})");
        FAIL("expected validation error");
    } catch (const config_error& e) {
        CHECK(e.error_kind() == config_error::kind::validation);
        CHECK(std::string(e.what()).find("c_sigma_fF") != std::string::npos);
    }

    try {
        (void)parse_config_text(R"({"circuit": {"c_sigme_fF": 65}})");
        FAIL("expected unknown-key error");
    } catch (const config_error& e) {
        CHECK(e.error_kind() == config_error::kind::unknown_key);
        CHECK(std::string(e.what()).find("c_sigme_fF") != std::string::npos);
    }

    try {
        (void)parse_config_text(R"({"circuit": {"c_sigma_fF": "sixty-five"}})");
        FAIL("expected parse error");
    } catch (const config_error& e) {
        CHECK(e.error_kind() == config_error::kind::parse);
    }
}

TEST_CASE("supplying l_j or f_qubit pins the other; both must agree", "[config]") {
    const RunConfig from_l = parse_config_text(R"({"circuit": {"l_j_nH": 15.6}})");
    CHECK_FALSE(from_l.circuit.f_qubit_GHz.has_value());
    CHECK(rad_to_ghz(transmon_from(from_l).omega_ge) == Approx(4.998).margin(1e-3));

    CHECK_THROWS_AS(
        parse_config_text(R"({"circuit": {"l_j_nH": 15.6, "f_qubit_GHz": 5.0}})"),
        config_error);

    const double consistent = 1.0 / (two_pi * std::sqrt(15.6e-9 * 65e-15)) / 1e9;
    std::ostringstream doc;
    doc.precision(17);
    doc << R"({"circuit": {"l_j_nH": 15.6, "f_qubit_GHz": )" << consistent << "}}";
    CHECK_NOTHROW(parse_config_text(doc.str()));
}

TEST_CASE("config round-trips through serialization", "[config]") {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> u(0.5, 2.0);
    for (int i = 0; i < 20; ++i) {
        RunConfig cfg;
        cfg.circuit.c_sigma_fF = 65.0 * u(rng);
        cfg.circuit.c_r_fF = 500.0 * u(rng);
        cfg.circuit.l_r_nH = 1.2 * u(rng);
        cfg.circuit.c_q_fF = 11.1 * u(rng);
        cfg.circuit.c_kappa_fF = 14.3 * u(rng);
        cfg.circuit.f_qubit_GHz = 5.0 * u(rng);
        cfg.targets.g_target_MHz = 150.0 * u(rng);
        cfg.readout.nbar = u(rng);
        cfg.seed = rng();
        cfg.convention = (i % 2 == 0) ? "paper" : "angular";

        const std::string text = serialize_config(cfg).dump(2);
        const RunConfig back = parse_config_text(text);
        const std::string text2 = serialize_config(back).dump(2);
        REQUIRE(text == text2);
        REQUIRE(back.circuit.c_sigma_fF == cfg.circuit.c_sigma_fF);
        REQUIRE(back.readout.nbar == cfg.readout.nbar);
        REQUIRE(back.seed == cfg.seed);
    }
}

TEST_CASE("convention flag scales measurement rates by 2pi", "[config]") {
    RunConfig paper;
    RunConfig angular;
    angular.convention = "angular";
    const MeasurementConfig mp = measurement_from(paper);
    const MeasurementConfig ma = measurement_from(angular);
    CHECK(mp.kappa == 5e6);
    CHECK(mp.rate_convention == RateConvention::cyclic);
    CHECK(ma.kappa == Approx(two_pi * 5e6).epsilon(1e-15));
    CHECK(ma.chi == Approx(two_pi * mp.chi).epsilon(1e-15));
    CHECK(ma.rate_convention == RateConvention::angular);
    CHECK(mean_photons(ma) == Approx(mean_photons(mp)).epsilon(1e-12));
}

TEST_CASE("csv documents are column-stable and deterministic", "[config]") {
    RunConfig cfg;
    cfg.sweeps.n_points = 101;
    cfg.sweeps.c_f_list_fF = {0.0, 0.5};
    cfg.sweeps.c_q_list_fF = {11.1};
    cfg.sweeps.snr_points = 3;
    cfg.readout.map_nbar_points = 6;
    cfg.readout.map_tm_points = 5;

    const std::string a = cli::make_t1_spectrum(cfg).text();
    const std::string b = cli::make_t1_spectrum(cfg).text();
    REQUIRE(a == b);

    std::istringstream lines(a);
    std::string header;
    std::getline(lines, header);
    const std::size_t width = count_fields(header);
    CHECK(width == 3);
    std::string line;
    std::size_t rows = 0;
    while (std::getline(lines, line)) {
        REQUIRE(count_fields(line) == width);
        ++rows;
    }
    CHECK(rows == 101);

    const std::string snr = cli::make_snr_map(cfg).text();
    REQUIRE(snr == cli::make_snr_map(cfg).text());

    const auto fmap = cli::make_fidelity_map(cfg);
    REQUIRE(fmap.map.text() == cli::make_fidelity_map(cfg).map.text());
    REQUIRE(fmap.contours.text() == cli::make_fidelity_map(cfg).contours.text());
}

TEST_CASE("t1 spectrum without a filter column stays finite", "[config]") {
    RunConfig cfg;
    cfg.sweeps.n_points = 201;
    cfg.sweeps.c_f_list_fF = {0.0};
    const std::string text = cli::make_t1_spectrum(cfg).text();
    CHECK(text.find("inf") == std::string::npos);
    CHECK(text.find("nan") == std::string::npos);
}

TEST_CASE("fidelity map command hits the reference corner", "[config]") {
    RunConfig cfg;
    cfg.readout.map_nbar_min = 25.0;
    cfg.readout.map_nbar_max = 26.0;
    cfg.readout.map_nbar_points = 2;
    cfg.readout.map_tm_min_us = 0.022;
    cfg.readout.map_tm_max_us = 0.044;
    cfg.readout.map_tm_points = 2;
    const auto docs = cli::make_fidelity_map(cfg);
    std::istringstream lines(docs.map.text());
    std::string line;
    std::getline(lines, line);  // header
    std::getline(lines, line);  // nbar=25, t_m=22ns
    const double f_22 = std::stod(line.substr(line.rfind(',') + 1));
    CHECK(f_22 >= 0.95);
    std::getline(lines, line);  // nbar=25, t_m=44ns
    const double f_44 = std::stod(line.substr(line.rfind(',') + 1));
    CHECK(f_44 >= 0.99);
    CHECK(docs.contours.text().find("n_crit") != std::string::npos);
}

TEST_CASE("design command document reproduces the reference table", "[config]") {
    RunConfig cfg;
    cfg.sweeps.n_points = 41;  // keep the dataset small
    cfg.sweeps.snr_points = 2;
    cfg.sweeps.c_q_list_fF = {11.1};
    const ordered_json j = cli::make_design_document(cfg);
    CHECK(j["capacitors"]["delta"]["c_q_fF"].get<double>() == Approx(11.1).epsilon(0.25));
    CHECK(j["capacitors"]["delta"]["c_kappa_fF"].get<double>() == Approx(14.3).epsilon(0.25));
    CHECK(j["capacitors"]["y"]["c_f_prime_fF"].get<double>() == Approx(345.0).epsilon(0.01));
    CHECK(j["results"]["g_MHz"].get<double>() == Approx(150.0).epsilon(1e-3));
    CHECK(j["results"]["kappa_over_2chi"].get<double>() == Approx(1.0).margin(1e-3));
    CHECK(std::abs(j["results"]["chi_MHz"].get<double>()) == Approx(2.5).margin(0.1));
    CHECK(j["results"]["n_crit"].get<double>() == Approx(25.0).epsilon(0.08));
    CHECK(j["results"]["bandwidths"][0]["bandwidth_MHz"].get<double>() == Approx(138.0).epsilon(0.15));
    CHECK(j["results"]["bandwidths"][1]["bandwidth_MHz"].get<double>() == Approx(43.0).epsilon(0.15));

    // the reported Y/Delta sets are mutual transforms
    const double p = j["capacitors"]["delta"]["c_f_fF"].get<double>() *
                         j["capacitors"]["delta"]["c_q_fF"].get<double>() +
                     j["capacitors"]["delta"]["c_q_fF"].get<double>() *
                         j["capacitors"]["delta"]["c_kappa_fF"].get<double>() +
                     j["capacitors"]["delta"]["c_kappa_fF"].get<double>() *
                         j["capacitors"]["delta"]["c_f_fF"].get<double>();
    CHECK(p / j["capacitors"]["delta"]["c_f_fF"].get<double>() ==
          Approx(j["capacitors"]["y"]["c_f_prime_fF"].get<double>()).epsilon(1e-12));
}

TEST_CASE("exception classes map to the documented exit codes", "[config]") {
    auto code_of = [](const std::function<int()>& body) { return cli::guarded(body); };
    CHECK(code_of([] { return cli::ok; }) == 0);
    CHECK(code_of([]() -> int { throw config_error(config_error::kind::missing_file, "x"); }) == 3);
    CHECK(code_of([]() -> int { throw config_error(config_error::kind::parse, "x"); }) == 4);
    CHECK(code_of([]() -> int { throw config_error(config_error::kind::validation, "x"); }) == 5);
    CHECK(code_of([]() -> int { throw config_error(config_error::kind::unknown_key, "x"); }) == 6);
    CHECK(code_of([]() -> int { throw convergence_error("x"); }) == 7);
    CHECK(code_of([]() -> int { throw infeasible_error("x"); }) == 8);
    CHECK(code_of([]() -> int { throw search_error("x"); }) == 9);
    CHECK(code_of([]() -> int { throw std::runtime_error("x"); }) == 1);
}

TEST_CASE("mc-validate agrees with the closed form on a small grid", "[config][mc]") {
    RunConfig cfg;
    cfg.readout.mc_nbar = {1.0, 25.0};
    cfg.readout.mc_tm_us = {1.09, 0.044};
    cfg.readout.mc_trajectories = 20000;
    bool ok = false;
    const cli::CsvDoc doc = cli::make_mc_validate(cfg, &ok);
    CHECK(ok);
    std::istringstream lines(doc.text());
    std::string header;
    std::getline(lines, header);
    const std::size_t width = count_fields(header);
    std::string line;
    std::size_t rows = 0;
    while (std::getline(lines, line)) {
        REQUIRE(count_fields(line) == width);
        ++rows;
    }
    CHECK(rows == 2);
}
