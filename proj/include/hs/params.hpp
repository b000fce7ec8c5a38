#pragma once

#include <optional>

#include "hs/errors.hpp"

namespace hs {

/// Boundary feedback gains. The damping gain `alpha` multiplies the current
/// trace, the delayed gain `beta` the trace one delay ago. Instances are only
/// produced by validate_gains(), so an existing Gains value is admissible.
struct Gains {
    double alpha = 0.0;
    double beta = 0.0;
};

/// Domain length, delay length and validated gains.
struct SystemParams {
    double length = 1.0;  // L > 0
    double delay = 1.0;   // h > 0
    Gains gains;
};

/// Symmetric 2x2 matrix, stored as the upper triangle.
struct SymMatrix2 {
    double a11 = 0.0;
    double a12 = 0.0;
    double a22 = 0.0;
};

/// Weights of the perturbed energy functional. Valid values are strictly
/// positive and below the bounds returned by lyapunov_weight_bounds().
struct LyapunovWeights {
    double mu1 = 0.0;
    double mu2 = 0.0;
};

/// Certified decay parameters: E(t) <= kappa * E(0) * exp(-lambda t) for data
/// of H-norm below r_max.
struct DecayBound {
    double lambda = 0.0;
    double kappa = 1.0;
    double r_max = 0.0;
};

struct WeightBounds {
    double mu1_max = 0.0;                 // +inf when the alpha = 0 branch is vacuous
    std::optional<double> mu2_max;        // present when mu1 was supplied
};

/// Admissibility margin of the gain condition: 1/2 - (2 alpha^2 + 3/2 beta).
double gain_margin(double alpha, double beta);

/// Margin of the weaker variant 1/2 - (alpha^2 + 3/2 beta); reported in
/// certificates next to gain_margin (the two differ in the alpha^2 factor).
double gain_margin_weak(double alpha, double beta);

/// Validates the gain condition beta > 0, 0 < 2 alpha^2 + 3/2 beta < 1/2.
/// Throws OutOfAdmissibleRegion with the offending constraint and margin.
Gains validate_gains(double alpha, double beta);

/// Validates L > 0, h > 0 and the gains.
SystemParams make_params(double length, double delay, double alpha, double beta);

/// Quadratic form of the energy rate in the traces (u_x(t,L), u_x(t-h,L)):
/// [[a^2 - 1/2 + b, ab], [ab, b^2 - b]]. Pure formula, no admissibility check.
SymMatrix2 energy_dissipation_matrix(const Gains& g);

/// Adjoint counterpart: [[2a^2 + b - 1, ab], [ab, 2b^2 - b]].
SymMatrix2 adjoint_dissipation_matrix(const Gains& g);

/// Perturbed form used by the decay certificate:
/// Phi + L*mu1*[[a^2, ab],[ab, b^2]] + mu2*[[b, 0],[0, 0]].
SymMatrix2 perturbed_dissipation_matrix(const Gains& g, const LyapunovWeights& w,
                                        double length);

/// Leading-principal-minor test with absolute tolerance `tol` on each minor:
/// a11 < -tol and det > tol.
bool is_negative_definite(const SymMatrix2& m, double tol = 1e-12);

/// Upper bounds on the perturbation weights keeping the perturbed form
/// negative definite. With `mu1` supplied also returns the admissible mu2
/// range and throws Mu1TooLarge when mu1 >= mu1_max.
WeightBounds lyapunov_weight_bounds(const Gains& g, double length,
                                    std::optional<double> mu1 = std::nullopt);

/// Amplitude threshold of the decay certificate: 3 / (16 L^{3/2}).
double smallness_radius(double length);

/// Closed-form decay certificate (lambda, kappa, r_max) for weights w and
/// data amplitude r. Throws WeightsInadmissible / RadiusTooLarge.
DecayBound theoretical_decay_rate(const SystemParams& p, const LyapunovWeights& w,
                                  double r);

/// Sharpest constant K with E' <= -K [u_x^2(t,L) + u_x^2(t-h,L) + v_x^2(t,0)]:
/// min(-lambda_max(Phi)/2, 1/2). Throws GainsInadmissible when the form is not
/// negative definite (the constant would vanish).
double dissipation_constant(const Gains& g);

/// Constant of the smoothing estimate, (4/3) L (1 + alpha^2 + beta^2).
double kato_smoothing_constant(double length, const Gains& g);

}  // namespace hs
