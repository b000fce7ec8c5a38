#include "hs/discretization.hpp"

#include <sstream>
#include <vector>

namespace hs {

Grid make_grid(int n, double length) {
    if (n < 8) {
        std::ostringstream os;
        os << "grid too coarse: need at least 8 interior points, got " << n;
        throw GridTooCoarse(os.str());
    }
    if (!(length > 0.0)) throw Error("domain length must be positive");
    return Grid{n, length / (n + 1), length};
}

SpatialOperator build_linear_operator(const Grid& grid, const Gains& g) {
    if (grid.n < 8) throw GridTooCoarse("operator needs at least 8 interior points");
    const int n = grid.n;
    const double dx = grid.dx;
    const double c3 = 1.0 / (2.0 * dx * dx * dx);

    SpatialOperator op;
    op.grid = grid;
    op.gains = g;
    op.delay_coupling = Vec::Zero(2 * n);

    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<std::size_t>(12 * n));
    auto add = [&](int row, int col, double w) { trip.emplace_back(row, col, w); };

    // u_t = (1/2) u_xxx
    const double cu = 0.5 * c3;
    auto u_of = [&](int i) { return op.dof(false, i); };
    // ghost row at x = 0 (u_x(0) = 0 eliminated)
    add(u_of(1), u_of(1), -cu);
    add(u_of(1), u_of(2), -2.0 * cu);
    add(u_of(1), u_of(3), cu);
    add(u_of(2), u_of(1), 2.0 * cu);
    add(u_of(2), u_of(3), -2.0 * cu);
    add(u_of(2), u_of(4), cu);
    for (int i = 3; i <= n - 2; ++i) {
        add(u_of(i), u_of(i - 2), -cu);
        add(u_of(i), u_of(i - 1), 2.0 * cu);
        add(u_of(i), u_of(i + 1), -2.0 * cu);
        add(u_of(i), u_of(i + 2), cu);
    }
    // telescoping rows at the radiating end x = L
    add(u_of(n - 1), u_of(n - 3), -cu);
    add(u_of(n - 1), u_of(n - 2), 2.0 * cu);
    add(u_of(n - 1), u_of(n - 1), -0.25 * cu);
    add(u_of(n - 1), u_of(n), -1.5 * cu);
    add(u_of(n), u_of(n - 2), -cu);
    add(u_of(n), u_of(n - 1), 3.5 * cu);
    add(u_of(n), u_of(n), -4.0 * cu);

    // v_t = -v_xxx + feedback; rows are the reflection of the u pattern.
    auto v_of = [&](int i) { return op.dof(true, i); };
    // telescoping rows at the radiating end x = 0
    add(v_of(1), v_of(1), -4.0 * c3);
    add(v_of(1), v_of(2), 3.5 * c3);
    add(v_of(1), v_of(3), -c3);
    add(v_of(2), v_of(1), -1.5 * c3);
    add(v_of(2), v_of(2), -0.25 * c3);
    add(v_of(2), v_of(3), 2.0 * c3);
    add(v_of(2), v_of(4), -c3);
    for (int i = 3; i <= n - 2; ++i) {
        add(v_of(i), v_of(i - 2), c3);
        add(v_of(i), v_of(i - 1), -2.0 * c3);
        add(v_of(i), v_of(i + 1), 2.0 * c3);
        add(v_of(i), v_of(i + 2), -c3);
    }
    add(v_of(n - 1), v_of(n - 3), c3);
    add(v_of(n - 1), v_of(n - 2), -2.0 * c3);
    add(v_of(n - 1), v_of(n), 2.0 * c3);
    // ghost row at x = L: v_x(L) = alpha u_x(L) + beta z(t,1) eliminated
    add(v_of(n), v_of(n - 2), c3);
    add(v_of(n), v_of(n - 1), -2.0 * c3);
    add(v_of(n), v_of(n), -c3);
    // u part of the feedback value, -(alpha/dx^2) * (u_{n-1} - 4 u_n)/(2 dx)
    add(v_of(n), u_of(n - 1), -g.alpha * c3);
    add(v_of(n), u_of(n), 4.0 * g.alpha * c3);
    // delayed part, -(beta/dx^2) * z(t,1)
    op.delay_coupling[v_of(n)] = -g.beta / (dx * dx);

    op.interior.resize(2 * n, 2 * n);
    op.interior.setFromTriplets(trip.begin(), trip.end());
    op.interior.makeCompressed();
    return op;
}

void SpatialOperator::apply(const Vec& state, double z1, Vec& out) const {
    out.noalias() = interior * state;
    out += delay_coupling * z1;
}

double trace_ux_L(const Grid& grid, const Vec& u) {
    const int n = grid.n;
    return (u[n - 2] - 4.0 * u[n - 1]) / (2.0 * grid.dx);
}

double trace_vx_0(const Grid& grid, const Vec& v) {
    return (4.0 * v[0] - v[1]) / (2.0 * grid.dx);
}

TraceSample boundary_traces(const Grid& grid, const Vec& u, const Vec& v,
                            const DelayLine& line) {
    TraceSample tr;
    tr.ux_L = trace_ux_L(grid, u);
    tr.ux_delayed = line.delayed_value();
    tr.vx_0 = trace_vx_0(grid, v);
    return tr;
}

namespace {
// Centered derivative with zero end values, one-sided reach at i = 1, N.
void centered_gradient(const Grid& grid, const Vec& f, Vec& g) {
    const int n = grid.n;
    const double inv = 1.0 / (2.0 * grid.dx);
    g.resize(n);
    g[0] = f[1] * inv;
    for (int i = 1; i < n - 1; ++i) g[i] = (f[i + 1] - f[i - 1]) * inv;
    g[n - 1] = -f[n - 2] * inv;
}
}  // namespace

void nonlinear_rhs(const Grid& grid, const Vec& u, const Vec& v, Vec& f_u, Vec& f_v) {
    Vec du, dv;
    centered_gradient(grid, u, du);
    centered_gradient(grid, v, dv);
    f_u = 3.0 * (u.cwiseProduct(du) + v.cwiseProduct(dv));
    f_v = -3.0 * u.cwiseProduct(dv);
}

double l2_sq(const Grid& grid, const Vec& f) { return grid.dx * f.squaredNorm(); }

double gradient_sq(const Grid& grid, const Vec& f) {
    const int n = grid.n;
    Vec g;
    centered_gradient(grid, f, g);
    const double g0 = (4.0 * f[0] - f[1]) / (2.0 * grid.dx);
    const double gl = (f[n - 2] - 4.0 * f[n - 1]) / (2.0 * grid.dx);
    return grid.dx * (g.squaredNorm() + 0.5 * g0 * g0 + 0.5 * gl * gl);
}

}  // namespace hs
