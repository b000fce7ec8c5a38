// Command-line driver: single runs, closed-form certificates, gain sweeps,
// observability estimation and generator spectra for the delayed-feedback
// Hirota-Satsuma solver.

#include <CLI11.hpp>
#include <iostream>
#include <optional>

#include "hs/experiments.hpp"

namespace {

hs::RunConfig load_or_exit(const std::string& path) {
    try {
        return hs::load_config(path);
    } catch (const hs::ConfigError& e) {
        if (e.line() > 0) {
            std::cerr << path << ":" << e.line() << ": " << e.what() << "\n";
        } else {
            std::cerr << path << ": " << e.what() << "\n";
        }
        std::exit(hs::kConfigError);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hirota-Satsuma boundary-feedback simulator and certificate toolkit"};
    app.require_subcommand(1);

    std::string config_path;

    auto* run = app.add_subcommand("run", "simulate one configuration");
    run->add_option("config", config_path, "config file")->required();

    auto* sweep = app.add_subcommand("sweep", "gain sweep over the stability region");
    sweep->add_option("config", config_path, "config file")->required();

    auto* obs = app.add_subcommand("observability",
                                   "Monte-Carlo observability constant estimate");
    obs->add_option("config", config_path, "config file")->required();

    auto* spec = app.add_subcommand("spectrum", "generator abscissa and dissipativity");
    spec->add_option("config", config_path, "config file")->required();

    double c_alpha = 0.0, c_beta = 0.0, c_len = 1.0, c_delay = 1.0;
    std::optional<double> c_mu1, c_mu2, c_r;
    auto* cert = app.add_subcommand("certify", "closed-form certificate for one point");
    cert->add_option("alpha", c_alpha, "damping gain")->required();
    cert->add_option("beta", c_beta, "delayed gain")->required();
    cert->add_option("length", c_len, "domain length L")->required();
    cert->add_option("delay", c_delay, "delay h")->required();
    cert->add_option("--mu1", c_mu1, "first weight (default: half the bound)");
    cert->add_option("--mu2", c_mu2, "second weight (default: half the bound)");
    cert->add_option("--r", c_r, "data amplitude (default 0)");

    CLI11_PARSE(app, argc, argv);

    if (cert->parsed()) {
        hs::certify_point(c_alpha, c_beta, c_len, c_delay, c_mu1, c_mu2, c_r,
                          std::cout);
        return hs::kOk;
    }

    const hs::RunConfig cfg = load_or_exit(config_path);
    if (run->parsed()) return hs::run_experiment(cfg, std::cout);
    if (sweep->parsed()) return hs::run_sweep(cfg, std::cout);
    if (obs->parsed()) return hs::run_observability(cfg, std::cout);
    if (spec->parsed()) return hs::run_spectrum(cfg, std::cout);
    return hs::kConfigError;
}
