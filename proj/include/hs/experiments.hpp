#pragma once

#include <iosfwd>
#include <optional>

#include "hs/config.hpp"

namespace hs {

/// Exit codes shared by every subcommand.
enum ExitCode {
    kOk = 0,
    kVerdictFailed = 1,
    kConfigError = 2,
    kNumericalError = 3,
};

/// Executes one simulation per the config, writes the requested CSV files and
/// an optional certificate verdict to `out`.
int run_experiment(const RunConfig& cfg, std::ostream& out);

/// Prints the complete closed-form certificate for one parameter point.
/// Inadmissible points are reported, never rejected.
void certify_point(double alpha, double beta, double length, double delay,
                   std::optional<double> mu1, std::optional<double> mu2,
                   std::optional<double> r, std::ostream& out);

/// Gain sweep; one CSV row per point in lexicographic order.
int run_sweep(const RunConfig& cfg, std::ostream& out);

/// Monte-Carlo observability estimate over seeded random unit-norm data.
int run_observability(const RunConfig& cfg, std::ostream& out);

/// Generator assembly, abscissa and dissipativity summary.
int run_spectrum(const RunConfig& cfg, std::ostream& out);

}  // namespace hs
