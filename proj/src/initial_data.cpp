#include "hs/initial_data.hpp"

#include <cmath>

namespace hs {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

FieldSpec FieldSpec::sine(std::vector<double> c) {
    FieldSpec s;
    s.kind = Kind::Sine;
    s.coeffs = std::move(c);
    return s;
}

FieldSpec FieldSpec::gaussian(double center, double width, double amplitude) {
    FieldSpec s;
    s.kind = Kind::Gaussian;
    s.center = center;
    s.width = width;
    s.amplitude = amplitude;
    return s;
}

HistorySpec HistorySpec::constant(double v) {
    HistorySpec s;
    s.kind = Kind::Constant;
    s.value = v;
    return s;
}

HistorySpec HistorySpec::linear(double from, double to) {
    HistorySpec s;
    s.kind = Kind::Linear;
    s.from = from;
    s.to = to;
    return s;
}

HistorySpec HistorySpec::sine(double amplitude, double cycles) {
    HistorySpec s;
    s.kind = Kind::Sine;
    s.amplitude = amplitude;
    s.cycles = cycles;
    return s;
}

double evaluate_field(const FieldSpec& spec, double x, double length) {
    switch (spec.kind) {
        case FieldSpec::Kind::Zero:
            return 0.0;
        case FieldSpec::Kind::Sine: {
            double acc = 0.0;
            for (std::size_t k = 0; k < spec.coeffs.size(); ++k) {
                acc += spec.coeffs[k] *
                       std::sin((static_cast<double>(k) + 1.0) * kPi * x / length);
            }
            return spec.amplitude * acc;
        }
        case FieldSpec::Kind::Gaussian: {
            const double c = spec.center * length;
            const double w = spec.width * length;
            const double s = (x - c) / w;
            return spec.amplitude * std::exp(-s * s);
        }
    }
    return 0.0;
}

Vec sample_field(const FieldSpec& spec, const Grid& grid) {
    Vec f(grid.n);
    for (int i = 0; i < grid.n; ++i) {
        f[i] = evaluate_field(spec, (i + 1) * grid.dx, grid.length);
    }
    return f;
}

std::function<double(double)> history_function(const HistorySpec& spec) {
    switch (spec.kind) {
        case HistorySpec::Kind::Zero:
            return [](double) { return 0.0; };
        case HistorySpec::Kind::Constant:
            return [v = spec.value](double) { return v; };
        case HistorySpec::Kind::Linear:
            return [a = spec.from, b = spec.to](double rho) { return a + (b - a) * rho; };
        case HistorySpec::Kind::Sine:
            return [a = spec.amplitude, c = spec.cycles](double rho) {
                return a * std::sin(kPi * c * rho);
            };
    }
    return [](double) { return 0.0; };
}

double h_norm_sq(const SystemParams& p, const Grid& grid, const Vec& u, const Vec& v,
                 const std::function<double(double)>& z0, int delay_cells) {
    const DelayLine line(z0, delay_cells, p.delay);
    return l2_sq(grid, u) + l2_sq(grid, v) +
           p.gains.beta * p.delay * line.l2_norm_sq();
}

DataTriple trace_matched_data(const SystemParams& p, const Grid& grid,
                              const std::vector<double>& u_coeffs, double amplitude) {
    FieldSpec uspec = FieldSpec::sine(u_coeffs);
    uspec.amplitude = amplitude;
    DataTriple d;
    d.u0 = sample_field(uspec, grid);

    double ux_l = 0.0;  // exact derivative of the series at x = L
    for (std::size_t k = 0; k < u_coeffs.size(); ++k) {
        const double kk = static_cast<double>(k) + 1.0;
        ux_l += u_coeffs[k] * kk * kPi / grid.length * std::cos(kk * kPi);
    }
    ux_l *= amplitude;

    // v_x(L) = alpha u_x(L) + beta z(1) with the constant history z = u_x(L):
    // a first-mode profile d sin(pi x/L) has v_x(L) = -d pi/L.
    const double dcoef =
        -(p.gains.alpha + p.gains.beta) * ux_l * grid.length / kPi;
    FieldSpec vspec = FieldSpec::sine({dcoef});
    d.v0 = sample_field(vspec, grid);
    d.z0 = [ux_l](double) { return ux_l; };
    return d;
}

DataTriple scale_to_h_norm(const SystemParams& p, const Grid& grid, DataTriple d,
                           int delay_cells, double target_norm) {
    const double norm = std::sqrt(h_norm_sq(p, grid, d.u0, d.v0, d.z0, delay_cells));
    if (!(norm > 0.0)) throw Error("cannot normalize zero data");
    const double s = target_norm / norm;
    d.u0 *= s;
    d.v0 *= s;
    d.z0 = [inner = d.z0, s](double rho) { return s * inner(rho); };
    return d;
}

double uniform_pm1(std::mt19937_64& rng) {
    // (x >> 11) * 2^-53 in [0,1); affine map keeps the stream portable.
    const double u01 = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return 2.0 * u01 - 1.0;
}

DataTriple random_unit_data(const SystemParams& p, const Grid& grid, int delay_cells,
                            std::mt19937_64& rng, int modes, int knots) {
    std::vector<double> cu(static_cast<std::size_t>(modes));
    std::vector<double> cv(static_cast<std::size_t>(modes));
    for (double& c : cu) c = uniform_pm1(rng);
    for (double& c : cv) c = uniform_pm1(rng);
    std::vector<double> zk(static_cast<std::size_t>(knots));
    for (double& z : zk) z = uniform_pm1(rng);

    DataTriple d;
    d.u0 = sample_field(FieldSpec::sine(cu), grid);
    d.v0 = sample_field(FieldSpec::sine(cv), grid);
    d.z0 = [zk](double rho) {
        const double pos = rho * (static_cast<double>(zk.size()) - 1.0);
        const std::size_t j = std::min(static_cast<std::size_t>(pos), zk.size() - 2);
        const double frac = pos - static_cast<double>(j);
        return zk[j] + frac * (zk[j + 1] - zk[j]);
    };
    return scale_to_h_norm(p, grid, std::move(d), delay_cells, 1.0);
}

}  // namespace hs
