#pragma once

#include <optional>
#include <string>

#include "hs/initial_data.hpp"
#include "hs/integrator.hpp"

namespace hs {

/// One experiment description, parsed from line-based `key = value` text.
/// Unknown keys and malformed lines raise ConfigError with the line number.
struct RunConfig {
    // system
    double alpha = 0.1;
    double beta = 0.1;
    double length = 1.0;
    double delay = 1.0;

    // discretization / solver
    int n = 128;
    int m = 64;
    double theta = 0.5;
    std::string mode = "linear";  // linear | nonlinear | picard
    double horizon = 10.0;
    int snapshot_stride = 0;
    double picard_tol = 1e-9;
    int picard_maxiter = 50;

    // certificate
    double mu1 = 0.0;
    double mu2 = 0.0;
    std::optional<double> r;       // defaults to the data H-norm
    bool verdict = false;
    std::optional<double> fit_window_start;
    std::optional<double> fit_window_end;

    // data
    FieldSpec u0;
    FieldSpec v0;
    HistorySpec z0;
    std::optional<double> normalize_h_norm;

    // sweep
    double alpha_min = 0.0, alpha_max = 0.0;
    int alpha_steps = 0;
    double beta_min = 0.0, beta_max = 0.0;
    int beta_steps = 0;
    bool sweep_simulate = false;
    bool sweep_spectrum = false;

    // observability
    int samples = 100;
    std::optional<double> obs_horizon;  // defaults to 2 h
    std::uint64_t seed = 20240901;

    // outputs
    std::string energy_csv;
    std::string trace_csv;
    std::string sweep_csv;
    std::string obs_csv;

    SystemParams params() const { return make_params(length, delay, alpha, beta); }
    SolverOptions solver_options() const;
};

RunConfig parse_config_text(const std::string& text);
RunConfig load_config(const std::string& path);

}  // namespace hs
