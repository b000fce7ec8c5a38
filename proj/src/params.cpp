#include "hs/params.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace hs {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double gain_margin(double alpha, double beta) {
    return 0.5 - (2.0 * alpha * alpha + 1.5 * beta);
}

double gain_margin_weak(double alpha, double beta) {
    return 0.5 - (alpha * alpha + 1.5 * beta);
}

Gains validate_gains(double alpha, double beta) {
    if (!(beta > 0.0)) {
        std::ostringstream os;
        os << "gain beta must be strictly positive, got " << beta;
        throw OutOfAdmissibleRegion(os.str());
    }
    const double s = 2.0 * alpha * alpha + 1.5 * beta;
    if (!(s < 0.5)) {
        std::ostringstream os;
        os << "gains outside admissible region: 2a^2 + 1.5b = " << s
           << " >= 0.5 (margin " << gain_margin(alpha, beta) << ")";
        throw OutOfAdmissibleRegion(os.str());
    }
    // s > 0 is implied by beta > 0.
    return Gains{alpha, beta};
}

SystemParams make_params(double length, double delay, double alpha, double beta) {
    if (!(length > 0.0)) throw Error("domain length must be positive");
    if (!(delay > 0.0)) throw Error("delay must be positive");
    return SystemParams{length, delay, validate_gains(alpha, beta)};
}

SymMatrix2 energy_dissipation_matrix(const Gains& g) {
    const double a = g.alpha, b = g.beta;
    return SymMatrix2{a * a - 0.5 + b, a * b, b * b - b};
}

SymMatrix2 adjoint_dissipation_matrix(const Gains& g) {
    const double a = g.alpha, b = g.beta;
    return SymMatrix2{2.0 * a * a + b - 1.0, a * b, 2.0 * b * b - b};
}

SymMatrix2 perturbed_dissipation_matrix(const Gains& g, const LyapunovWeights& w,
                                        double length) {
    if (!(length > 0.0)) throw Error("domain length must be positive");
    const double a = g.alpha, b = g.beta;
    SymMatrix2 m = energy_dissipation_matrix(g);
    m.a11 += length * w.mu1 * a * a + w.mu2 * b;
    m.a12 += length * w.mu1 * a * b;
    m.a22 += length * w.mu1 * b * b;
    return m;
}

bool is_negative_definite(const SymMatrix2& m, double tol) {
    const double det = m.a11 * m.a22 - m.a12 * m.a12;
    return m.a11 < -tol && det > tol;
}

WeightBounds lyapunov_weight_bounds(const Gains& g, double length,
                                    std::optional<double> mu1) {
    if (!(length > 0.0)) throw Error("domain length must be positive");
    const double a = g.alpha, b = g.beta, L = length;
    const double a2 = a * a;

    // alpha = 0 makes the first constraint vacuous (it stems from an
    // alpha^2-weighted entry).
    const double b1 = a2 > 0.0 ? (1.0 - 2.0 * b - 2.0 * a2) / (2.0 * L * a2) : kInf;
    const double b2 = (1.0 - 2.0 * a2 - 3.0 * b) / (L * (2.0 * a2 + b));
    WeightBounds out;
    out.mu1_max = std::min(b1, b2);

    if (mu1.has_value()) {
        if (!(*mu1 < out.mu1_max)) {
            std::ostringstream os;
            os << "mu1 = " << *mu1 << " >= mu1_max = " << out.mu1_max;
            throw Mu1TooLarge(os.str());
        }
        const double m = 1.0 + L * (*mu1);
        const double c1 = (1.0 - 2.0 * b - 2.0 * m * a2) / (2.0 * b);
        const double c2 = (1.0 - 2.0 * m * a2 - m * b - 2.0 * b) / (2.0 * b);
        out.mu2_max = std::min(c1, c2);
    }
    return out;
}

double smallness_radius(double length) {
    if (!(length > 0.0)) throw Error("domain length must be positive");
    return 3.0 / (16.0 * std::pow(length, 1.5));
}

DecayBound theoretical_decay_rate(const SystemParams& p, const LyapunovWeights& w,
                                  double r) {
    const double L = p.length, h = p.delay;
    const WeightBounds wb = lyapunov_weight_bounds(p.gains, L, w.mu1);
    if (!(w.mu1 > 0.0) || !(w.mu2 > 0.0) || !(w.mu2 < *wb.mu2_max)) {
        std::ostringstream os;
        os << "weights (" << w.mu1 << ", " << w.mu2 << ") outside the admissible box"
           << " (mu1_max = " << wb.mu1_max << ", mu2_max = " << *wb.mu2_max << ")";
        throw WeightsInadmissible(os.str());
    }
    const double rmax = smallness_radius(L);
    if (r < 0.0 || !(r <= rmax)) {
        std::ostringstream os;
        os << "amplitude r = " << r << " outside [0, " << rmax << "]";
        throw RadiusTooLarge(os.str());
    }
    const double pi = 3.14159265358979323846;
    const double branch1 = pi * pi * w.mu1 * (3.0 - 16.0 * std::pow(L, 1.5) * r) /
                           (2.0 * L * L * (1.0 + L * w.mu1));
    const double branch2 = w.mu2 / (h * (1.0 + w.mu2));
    DecayBound out;
    out.lambda = std::min(branch1, branch2);
    out.kappa = 1.0 + std::max(w.mu1 * L, w.mu2);
    out.r_max = rmax;
    return out;
}

double dissipation_constant(const Gains& g) {
    const SymMatrix2 m = energy_dissipation_matrix(g);
    // Exact eigenvalues of the symmetric 2x2 form.
    const double mean = 0.5 * (m.a11 + m.a22);
    const double disc = std::sqrt(0.25 * (m.a11 - m.a22) * (m.a11 - m.a22) +
                                  m.a12 * m.a12);
    const double lam_max = mean + disc;
    if (!(lam_max < 0.0)) {
        std::ostringstream os;
        os << "trace form is not negative definite (lambda_max = " << lam_max << ")";
        throw GainsInadmissible(os.str());
    }
    return std::min(0.5 * (-lam_max), 0.5);
}

double kato_smoothing_constant(double length, const Gains& g) {
    if (!(length > 0.0)) throw Error("domain length must be positive");
    return (4.0 / 3.0) * length * (1.0 + g.alpha * g.alpha + g.beta * g.beta);
}

}  // namespace hs
