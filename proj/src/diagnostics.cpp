#include "hs/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace hs {

double energy(const SystemParams& p, const Grid& grid, const Vec& u, const Vec& v,
              const DelayLine& line) {
    return 0.5 * (l2_sq(grid, u) + l2_sq(grid, v)) +
           0.5 * p.gains.beta * p.delay * line.l2_norm_sq();
}

double energy(const SystemParams& p, const Grid& grid, const State& s) {
    return energy(p, grid, s.u, s.v, s.line);
}

double lyapunov_value(const SystemParams& p, const Grid& grid, const State& s,
                      double mu1, double mu2) {
    double tilted = 0.0;
    for (int i = 0; i < grid.n; ++i) {
        const double x = (i + 1) * grid.dx;
        tilted += (p.length - x) * s.u[i] * s.u[i] + x * s.v[i] * s.v[i];
    }
    tilted *= 0.5 * grid.dx;
    const double ramp = 0.5 * p.gains.beta * p.delay * s.line.ramp_weighted_l2_sq();
    return energy(p, grid, s) + mu1 * tilted + mu2 * ramp;
}

double lyapunov(const SystemParams& p, const Grid& grid, const State& s,
                const LyapunovWeights& w) {
    const WeightBounds wb = lyapunov_weight_bounds(p.gains, p.length, w.mu1);
    if (!(w.mu2 > 0.0) || !(w.mu2 < *wb.mu2_max)) {
        std::ostringstream os;
        os << "mu2 = " << w.mu2 << " outside (0, " << *wb.mu2_max << ")";
        throw WeightsInadmissible(os.str());
    }
    return lyapunov_value(p, grid, s, w.mu1, w.mu2);
}

double dissipation_rhs(const Gains& g, const TraceSample& tr) {
    const SymMatrix2 m = energy_dissipation_matrix(g);
    const double q = m.a11 * tr.ux_L * tr.ux_L +
                     2.0 * m.a12 * tr.ux_L * tr.ux_delayed +
                     m.a22 * tr.ux_delayed * tr.ux_delayed;
    return 0.5 * q - 0.5 * tr.vx_0 * tr.vx_0;
}

IdentityReport check_energy_identity(const SimulationRecord& rec) {
    if (rec.mode != Mode::Linear)
        throw NotLinearRun("energy identity check requires a linear-mode record");
    IdentityReport out;
    const int steps = rec.steps();
    out.per_step.reserve(steps);
    const double beta = rec.params.gains.beta;
    for (int k = 0; k < steps; ++k) {
        const TraceSample& a = rec.traces[static_cast<std::size_t>(k)];
        const TraceSample& b = rec.traces[static_cast<std::size_t>(k) + 1];
        TraceSample mid;
        mid.ux_L = 0.5 * (a.ux_L + b.ux_L);
        mid.ux_delayed = 0.5 * (a.ux_delayed + b.ux_delayed);
        mid.vx_0 = 0.5 * (a.vx_0 + b.vx_0);
        const double dg = b.ux_L - a.ux_L;
        const double dz = b.ux_delayed - a.ux_delayed;
        const double quad_corr = beta / 8.0 * (dg * dg - dz * dz);
        const double rate = (rec.energy[static_cast<std::size_t>(k) + 1] -
                             rec.energy[static_cast<std::size_t>(k)]) /
                            rec.dt;
        const double resid =
            std::abs(rate - dissipation_rhs(rec.params.gains, mid) - quad_corr);
        out.per_step.push_back(resid);
        out.max_residual = std::max(out.max_residual, resid);
    }
    return out;
}

DecayEstimate fit_decay(const std::vector<double>& energies,
                        const std::vector<double>& times, double window_start,
                        double window_end) {
    if (energies.size() != times.size() || energies.empty())
        throw Error("energy and time series must have equal nonzero length");

    std::vector<std::size_t> idx;
    bool truncated = false;
    for (std::size_t k = 0; k < times.size(); ++k) {
        if (times[k] < window_start - 1e-12 || times[k] > window_end + 1e-12) continue;
        if (!(energies[k] > 0.0)) {
            truncated = true;
            break;  // keep the positive prefix only
        }
        idx.push_back(k);
    }
    if (idx.empty() && truncated) throw NonPositiveEnergy("no positive energies in window");
    if (idx.size() < 2) throw EmptyWindow("fit window holds fewer than two samples");

    double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
    const double n = static_cast<double>(idx.size());
    for (std::size_t k : idx) {
        const double y = std::log(energies[k]);
        st += times[k];
        sy += y;
        stt += times[k] * times[k];
        sty += times[k] * y;
    }
    const double denom = n * stt - st * st;
    if (denom <= 0.0) throw EmptyWindow("degenerate fit window");
    const double slope = (n * sty - st * sy) / denom;
    const double intercept = (sy - slope * st) / n;

    double rss = 0.0;
    for (std::size_t k : idx) {
        const double r = std::log(energies[k]) - (intercept + slope * times[k]);
        rss += r * r;
    }

    DecayEstimate est;
    est.lambda_emp = -slope;
    est.kappa_emp = std::exp(intercept) / energies.front();
    est.residual = std::sqrt(rss / n);
    est.window_start = times[idx.front()];
    est.window_end = times[idx.back()];
    return est;
}

CertificateReport check_decay_certificate(const SimulationRecord& rec,
                                          const LyapunovWeights& w, double r,
                                          double slack, double fit_window_start,
                                          double fit_window_end) {
    CertificateReport out;
    try {
        out.bound = theoretical_decay_rate(rec.params, w, r);
    } catch (const Error& e) {
        out.precondition_violations.push_back(e.what());
        return out;
    }
    const double h0 = std::sqrt(rec.h_norm0_sq());
    if (h0 > r * (1.0 + 1e-9)) {
        std::ostringstream os;
        os << "data norm " << h0 << " exceeds the certificate amplitude " << r;
        out.precondition_violations.push_back(os.str());
    }

    const double e0 = rec.energy.front();
    out.envelope_ok = true;
    for (std::size_t k = 0; k < rec.times.size(); ++k) {
        const double cap =
            slack * out.bound.kappa * e0 * std::exp(-out.bound.lambda * rec.times[k]);
        const double ratio = cap > 0.0 ? rec.energy[k] / cap : 0.0;
        out.max_envelope_ratio = std::max(out.max_envelope_ratio, ratio);
        if (rec.energy[k] > cap) out.envelope_ok = false;
    }

    const double t_end = rec.times.back();
    if (fit_window_start < 0.0) fit_window_start = 0.2 * t_end;
    if (fit_window_end < 0.0) fit_window_end = t_end;
    try {
        out.fit = fit_decay(rec.energy, rec.times, fit_window_start, fit_window_end);
        out.lambda_fit_ok = out.fit.lambda_emp >= out.bound.lambda;
    } catch (const Error& e) {
        out.precondition_violations.push_back(e.what());
    }

    // The proof mechanism: V e^{lambda t} non-increasing along the flow.
    double worst = 0.0;
    const double v0 = rec.lyapunov.front();
    if (v0 > 0.0) {
        for (std::size_t k = 0; k + 1 < rec.times.size(); ++k) {
            const double a = rec.lyapunov[k] * std::exp(out.bound.lambda * rec.times[k]);
            const double b =
                rec.lyapunov[k + 1] * std::exp(out.bound.lambda * rec.times[k + 1]);
            worst = std::max(worst, (b - a) / v0);
        }
    }
    out.v_decay_max_increase = worst;
    return out;
}

SmoothingReport kato_check(const SimulationRecord& rec) {
    if (rec.mode != Mode::Linear)
        throw NotLinearRun("smoothing check requires a linear-mode record");
    SmoothingReport out;
    const std::size_t last = rec.grad_sq.size() - 1;
    double acc = 0.5 * (rec.grad_sq.front() + rec.grad_sq.back());
    for (std::size_t k = 1; k < last; ++k) acc += rec.grad_sq[k];
    out.lhs = rec.dt * acc;
    const double c = kato_smoothing_constant(rec.params.length, rec.params.gains);
    out.bound = c * (rec.x0_sq.front() + rec.initial_z_l2_sq);
    out.ratio = out.bound > 0.0 ? out.lhs / out.bound : 0.0;
    return out;
}

double observability_quotient(const SimulationRecord& rec, double horizon) {
    if (!(horizon > rec.params.delay)) {
        std::ostringstream os;
        os << "observability horizon " << horizon << " must exceed the delay "
           << rec.params.delay;
        throw HorizonTooShort(os.str());
    }
    if (rec.times.back() < horizon - 1e-9)
        throw Error("record shorter than the requested horizon");

    double acc = 0.0;
    double prev = 0.0;
    bool first = true;
    for (std::size_t k = 0; k < rec.times.size() && rec.times[k] <= horizon + 1e-9; ++k) {
        const TraceSample& tr = rec.traces[k];
        const double val = tr.ux_L * tr.ux_L + tr.ux_delayed * tr.ux_delayed +
                           tr.vx_0 * tr.vx_0;
        if (!first) acc += 0.5 * rec.dt * (prev + val);
        prev = val;
        first = false;
    }
    const double num = rec.h_norm0_sq();
    if (num == 0.0 && acc < 1e-300)
        throw NotDefined("observability quotient undefined for zero data");
    if (acc < 1e-300) return std::numeric_limits<double>::infinity();
    return num / acc;
}

ObservabilityDecay observability_decay(double c_obs, double horizon) {
    if (!(c_obs > 0.0)) throw Error("observability constant must be positive");
    if (!(horizon > 0.0)) throw Error("horizon must be positive");
    ObservabilityDecay out;
    out.delta = c_obs / (1.0 + c_obs);
    out.mu0 = std::log(1.0 + 1.0 / c_obs) / horizon;
    return out;
}

SmallnessReport smallness_check(const SystemParams& p, const Grid& grid, const Vec& u0,
                                const Vec& v0, const DelayLine& line, double r) {
    SmallnessReport out;
    out.r = r;
    out.r_max = smallness_radius(p.length);
    const double h_sq = l2_sq(grid, u0) + l2_sq(grid, v0) +
                        p.gains.beta * p.delay * line.l2_norm_sq();
    out.h_norm = std::sqrt(h_sq);
    out.within_radius = out.h_norm <= r && r < out.r_max;

    const double l32r = std::pow(p.length, 1.5) * r;
    double cubic = 0.0, mixed = 0.0;
    Vec dv(grid.n);
    {
        const double inv = 1.0 / (2.0 * grid.dx);
        dv[0] = v0[1] * inv;
        for (int i = 1; i < grid.n - 1; ++i) dv[i] = (v0[i + 1] - v0[i - 1]) * inv;
        dv[grid.n - 1] = -v0[grid.n - 2] * inv;
    }
    for (int i = 0; i < grid.n; ++i) {
        const double x = (i + 1) * grid.dx;
        cubic += u0[i] * u0[i] * u0[i];
        mixed += (p.length - 2.0 * x) * u0[i] * v0[i] * dv[i];
    }
    out.cubic_lhs = grid.dx * cubic;
    out.cubic_rhs = l32r * gradient_sq(grid, u0);
    out.mixed_lhs = 3.0 * grid.dx * mixed;
    out.mixed_rhs = 3.0 * l32r * gradient_sq(grid, v0);
    out.cubic_ok = out.cubic_lhs <= out.cubic_rhs + 1e-15;
    out.mixed_ok = out.mixed_lhs <= out.mixed_rhs + 1e-15;
    return out;
}

}  // namespace hs
