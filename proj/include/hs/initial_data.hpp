#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "hs/discretization.hpp"

namespace hs {

/// Named initial-field families; experiments are reproducible from the
/// descriptor alone, no raw fields are serialized.
struct FieldSpec {
    enum class Kind { Zero, Sine, Gaussian };
    Kind kind = Kind::Zero;
    std::vector<double> coeffs;  // sine series over sin(k pi x / L)
    double center = 0.5;         // gaussian bump, relative to L
    double width = 0.1;          // relative to L
    double amplitude = 1.0;

    static FieldSpec zero() { return {}; }
    static FieldSpec sine(std::vector<double> c);
    static FieldSpec gaussian(double center, double width, double amplitude);
};

/// Delay-history families on rho in [0, 1].
struct HistorySpec {
    enum class Kind { Zero, Constant, Linear, Sine };
    Kind kind = Kind::Zero;
    double value = 0.0;      // constant
    double from = 0.0;       // linear: value at rho = 0
    double to = 0.0;         // linear: value at rho = 1
    double amplitude = 0.0;  // sine
    double cycles = 1.0;     // sine: amplitude * sin(pi * cycles * rho)

    static HistorySpec zero() { return {}; }
    static HistorySpec constant(double v);
    static HistorySpec linear(double from, double to);
    static HistorySpec sine(double amplitude, double cycles);
};

double evaluate_field(const FieldSpec& spec, double x, double length);
Vec sample_field(const FieldSpec& spec, const Grid& grid);
std::function<double(double)> history_function(const HistorySpec& spec);

/// Discrete H-norm squared of a data triple (trapezoid quadratures,
/// the delay part weighted by beta h).
double h_norm_sq(const SystemParams& p, const Grid& grid, const Vec& u, const Vec& v,
                 const std::function<double(double)>& z0, int delay_cells);

/// Initial data compatible with the boundary conditions: a sine series for u
/// with the given coefficients, a constant history equal to the initial trace
/// u_x(L), and a first-mode v profile matching the feedback condition
/// v_x(L) = alpha u_x(L) + beta z(1) at t = 0.
struct DataTriple {
    Vec u0;
    Vec v0;
    std::function<double(double)> z0;
};

DataTriple trace_matched_data(const SystemParams& p, const Grid& grid,
                              const std::vector<double>& u_coeffs, double amplitude);

/// Scales a data triple to the requested H-norm (discrete).
DataTriple scale_to_h_norm(const SystemParams& p, const Grid& grid, DataTriple d,
                           int delay_cells, double target_norm);

/// Deterministic uniform double in [-1, 1) from a standard mt19937_64 stream.
double uniform_pm1(std::mt19937_64& rng);

/// Random observability sample: truncated sine series for both fields (first
/// `modes` modes, uniform coefficients) and a piecewise-linear history on
/// `knots` uniformly spaced breakpoints, normalized to unit H-norm.
DataTriple random_unit_data(const SystemParams& p, const Grid& grid, int delay_cells,
                            std::mt19937_64& rng, int modes = 10, int knots = 5);

}  // namespace hs
