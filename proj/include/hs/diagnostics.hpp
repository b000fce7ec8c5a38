#pragma once

#include <utility>
#include <vector>

#include "hs/integrator.hpp"

namespace hs {

/// Total energy: (1/2) trapezoid(u^2 + v^2) + (beta/2) h trapezoid(z^2).
double energy(const SystemParams& p, const Grid& grid, const State& s);
double energy(const SystemParams& p, const Grid& grid, const Vec& u, const Vec& v,
              const DelayLine& line);

/// Perturbed energy V = E + mu1 * (1/2) trapz((L-x) u^2 + x v^2)
///                     + mu2 * (beta h / 2) trapz((1-rho) z^2).
/// Raw-weight form used for recording; no admissibility check.
double lyapunov_value(const SystemParams& p, const Grid& grid, const State& s,
                      double mu1, double mu2);

/// Checked form: throws WeightsInadmissible when w is outside the admissible
/// box for the run's gains.
double lyapunov(const SystemParams& p, const Grid& grid, const State& s,
                const LyapunovWeights& w);

/// Energy rate predicted by the boundary quadratic form:
/// (1/2) (ux_L, ux_delayed) Phi (ux_L, ux_delayed)^T - (1/2) vx_0^2.
double dissipation_rhs(const Gains& g, const TraceSample& tr);

struct IdentityReport {
    double max_residual = 0.0;
    std::vector<double> per_step;
};

/// Residual of the discrete energy identity on a linear run: per step,
///
///   |(E_{k+1}-E_k)/dt - dissipation_rhs(midpoint traces) - q_k|,
///
/// where q_k = (beta/8) [(Delta ux_L)^2 - (Delta ux_delayed)^2] restates the
/// delay line's trapezoid quadrature (which exchanges averages of endpoint
/// squares) in terms of the midpoint traces. What remains measures the
/// spatial closure error, O(dx^2 + dt^2). Throws NotLinearRun.
IdentityReport check_energy_identity(const SimulationRecord& rec);

struct DecayEstimate {
    double lambda_emp = 0.0;
    double kappa_emp = 0.0;
    double residual = 0.0;  // rms residual of the log-linear fit
    double window_start = 0.0;
    double window_end = 0.0;
};

/// Least-squares line on (t, ln E) over the window; lambda_emp = -slope,
/// kappa_emp = exp(intercept)/E(0). The window is shrunk to its positive-E
/// prefix; throws NonPositiveEnergy if that prefix is empty and EmptyWindow
/// when fewer than two samples remain.
DecayEstimate fit_decay(const std::vector<double>& energies,
                        const std::vector<double>& times, double window_start,
                        double window_end);

struct CertificateReport {
    DecayBound bound;
    bool envelope_ok = false;
    double max_envelope_ratio = 0.0;  // max_k E(t_k) / (slack kappa E0 e^{-lambda t})
    DecayEstimate fit;
    bool lambda_fit_ok = false;       // lambda_emp >= lambda
    double v_decay_max_increase = 0.0;  // max relative step increase of V e^{lambda t}
    std::vector<std::string> precondition_violations;

    bool passed() const { return envelope_ok && lambda_fit_ok; }
};

/// Checks E(t_k) <= slack * kappa * E(0) * exp(-lambda t_k) pointwise with
/// (lambda, kappa) from theoretical_decay_rate, fits the empirical rate over
/// the given window (default [0.2 T, T]) and reports whether V e^{lambda t}
/// is non-increasing. Precondition problems (inadmissible weights, data above
/// the radius) are reported in the result, not thrown.
CertificateReport check_decay_certificate(const SimulationRecord& rec,
                                          const LyapunovWeights& w, double r,
                                          double slack = 1.05,
                                          double fit_window_start = -1.0,
                                          double fit_window_end = -1.0);

struct SmoothingReport {
    double lhs = 0.0;    // iint (u_x^2 + v_x^2)
    double bound = 0.0;  // C(L, gains) (||(u0,v0)||^2 + ||z0||^2)
    double ratio = 0.0;  // 0 when both sides vanish
};

/// Smoothing estimate on a linear run; gradients and time integral by
/// trapezoid. Throws NotLinearRun.
SmoothingReport kato_check(const SimulationRecord& rec);

/// ||(u0,v0,z0)||_H^2 / int_0^T (ux_L^2 + ux_delayed^2 + vx_0^2) dt.
/// Throws HorizonTooShort for T <= h, NotDefined for zero data, and returns
/// +inf when only the denominator underflows.
double observability_quotient(const SimulationRecord& rec, double horizon);

struct ObservabilityDecay {
    double delta = 0.0;  // C/(1+C)
    double mu0 = 0.0;    // ln(1 + 1/C)/T
};

ObservabilityDecay observability_decay(double c_obs, double horizon);

struct SmallnessReport {
    double h_norm = 0.0;
    double r = 0.0;
    double r_max = 0.0;
    bool within_radius = false;  // ||data|| <= r and r < r_max (open condition)
    double cubic_lhs = 0.0;      // int u^3
    double cubic_rhs = 0.0;      // L^{3/2} r ||u_x||^2
    double mixed_lhs = 0.0;      // 3 int (L-2x) u v v_x
    double mixed_rhs = 0.0;      // 3 L^{3/2} r ||v_x||^2
    bool cubic_ok = false;
    bool mixed_ok = false;
};

/// Evaluates the data norm against the certified amplitude radius and the
/// two trilinear estimates on the initial fields.
SmallnessReport smallness_check(const SystemParams& p, const Grid& grid, const Vec& u0,
                                const Vec& v0, const DelayLine& line, double r);

}  // namespace hs
