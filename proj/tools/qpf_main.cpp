// qpf command-line tool: analyze and synthesize the combined
// readout-resonator/notch-filter circuit and its measurement performance.

#include <CLI11.hpp>

#include <filesystem>
#include <functional>
#include <iostream>
#include <string>

#include "qpf/cli.hpp"
#include "qpf/config.hpp"

namespace {

constexpr const char* kExitCodeHelp =
    "Exit codes: 0 ok, 2 usage, 3 missing config file, 4 config parse error,\n"
    "5 config validation error, 6 unknown config key, 7 solver non-convergence,\n"
    "8 infeasible targets, 9 search window exhausted, 10 oracle mismatch.";

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qpf - combined readout/Purcell-filter circuit toolkit"};
    app.footer(kExitCodeHelp);
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::string convention;
    std::uint64_t seed = 0;
    bool seed_given = false;

    app.add_option("--config", config_path, "JSON config file (defaults follow the reference design)");
    app.add_option("--out", out_dir, "output directory (default: config output_dir)");
    app.add_option("--convention", convention, "rate convention: paper | angular")
        ->check(CLI::IsMember({"paper", "angular"}));
    app.add_option("--seed", seed, "RNG seed override")->each([&](const std::string&) {
        seed_given = true;
    });

    const std::vector<std::pair<std::string, std::string>> commands = {
        {"t1-spectrum", "exact Purcell T1 spectrum per filter capacitance"},
        {"coupling-sweep", "coupling g versus qubit frequency per C_F and per C_q"},
        {"snr-map", "kappa/2chi over the (C_F, C_q) plane"},
        {"fidelity-map", "assignment fidelity over (nbar, t_m) with contour sidecar"},
        {"design", "solve capacitors for the notch, g and kappa/2chi targets"},
        {"mc-validate", "Monte Carlo trajectory oracle versus the closed-form fidelity"},
    };
    for (const auto& [name, desc] : commands) app.add_subcommand(name, desc)->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : qpf::cli::usage;
    }

    return qpf::cli::guarded([&]() -> int {
        qpf::RunConfig cfg;
        if (!config_path.empty()) {
            cfg = qpf::parse_config(config_path);
        }
        if (!convention.empty()) cfg.convention = convention;
        if (seed_given) cfg.seed = seed;
        const std::filesystem::path out = out_dir.empty() ? cfg.output_dir : out_dir;

        for (const auto* sub : app.get_subcommands()) {
            const int rc = qpf::cli::run_command(sub->get_name(), cfg, out);
            if (rc != qpf::cli::ok) return rc;
        }
        return qpf::cli::ok;
    });
}
