#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "hs/delay_line.hpp"
#include "hs/params.hpp"

namespace hs {

using Vec = Eigen::VectorXd;
using SpMat = Eigen::SparseMatrix<double>;

/// Uniform grid of N interior points on (0, L); the Dirichlet end values are
/// eliminated from the state.
struct Grid {
    int n = 0;        // interior point count
    double dx = 0.0;  // spacing L/(N+1)
    double length = 0.0;
};

/// Requires n >= 8 (stencil width), throws GridTooCoarse otherwise.
Grid make_grid(int n, double length);

/// Boundary traces of one state: the fed-back derivative at x = L, its
/// delayed copy, and the radiating derivative of v at x = 0.
struct TraceSample {
    double t = 0.0;
    double ux_L = 0.0;
    double ux_delayed = 0.0;
    double vx_0 = 0.0;
};

/// Linear spatial operator of the coupled system on the interior unknowns.
///
/// DOFs are interleaved, idx(u_i) = 2(i-1), idx(v_i) = 2(i-1)+1, which keeps
/// the matrix banded. `interior` maps the stacked state to its time
/// derivative; the delayed trace z(t,1) enters additively through
/// `delay_coupling` (nonzero only in the last v row, where the feedback
/// condition is eliminated).
///
/// Boundary closure: the Dirichlet values are eliminated; u_x(0) = 0 and the
/// feedback condition on v_x(L) are imposed through ghost values; the two
/// radiating ends use one-sided rows chosen so that the discrete energy rate
/// telescopes exactly to the boundary quadratic form
///
///   d/dt (1/2)||(u,v)||^2 = -(1/4) g_L(u)^2 + (1/2) W^2 - (1/2) g_0(v)^2
///                           - (1/4)(u_1/dx)^2 - (1/2)(v_N/dx + W)^2,
///
/// with g_L, g_0 the second-order one-sided traces reported by
/// boundary_traces() and W = alpha g_L(u) + beta z(t,1). The last two terms
/// vanish at second order for smooth compatible fields; the identity is what
/// makes the semigroup generator dissipative in exact arithmetic (see the
/// spectral tests).
struct SpatialOperator {
    Grid grid;
    Gains gains;
    SpMat interior;      // 2N x 2N
    Vec delay_coupling;  // 2N

    int dof(bool v_field, int i) const { return 2 * (i - 1) + (v_field ? 1 : 0); }

    /// du/dt and dv/dt for the given state and delayed trace.
    void apply(const Vec& state, double z1, Vec& out) const;
};

SpatialOperator build_linear_operator(const Grid& grid, const Gains& g);

/// Second-order one-sided derivative at x = L using u(L) = 0.
double trace_ux_L(const Grid& grid, const Vec& u);

/// Second-order one-sided derivative at x = 0 using v(0) = 0.
double trace_vx_0(const Grid& grid, const Vec& v);

TraceSample boundary_traces(const Grid& grid, const Vec& u, const Vec& v,
                            const DelayLine& line);

/// Nonlinear right-hand sides f_u = 3 u u_x + 3 v v_x, f_v = -3 u v_x with
/// centered second-order derivatives (boundary zeros at the ends).
void nonlinear_rhs(const Grid& grid, const Vec& u, const Vec& v, Vec& f_u, Vec& f_v);

/// Trapezoid of f^2 with zero end values.
double l2_sq(const Grid& grid, const Vec& f);

/// Trapezoid of the squared gradient over [0, L]; centered differences at
/// interior nodes, the one-sided trace stencils at the two ends.
double gradient_sq(const Grid& grid, const Vec& f);

}  // namespace hs
