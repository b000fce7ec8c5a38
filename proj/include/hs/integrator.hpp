#pragma once

#include <Eigen/SparseLU>
#include <functional>
#include <optional>
#include <vector>

#include "hs/discretization.hpp"

namespace hs {

/// One point of the flow: fields at time t plus the trace history. The
/// stepper maintains line.latest() == trace_ux_L(grid, u) after every step.
struct State {
    double t = 0.0;
    Vec u;
    Vec v;
    DelayLine line;
};

/// Forcing fields sampled on the run's grid and time partition; entry k is
/// used on the step from t_k to t_{k+1} (explicit in the source).
struct SourcePair {
    std::vector<Vec> f1;
    std::vector<Vec> f2;
};

enum class Mode { Linear, Nonlinear };

struct SolverOptions {
    int delay_cells = 64;      // M; the time step is locked to h/M
    double theta = 0.5;        // implicitness of the dispersive part
    int snapshot_stride = 0;   // 0 keeps only the first and last state
    double picard_tol = 1e-9;  // fixed-point tolerance in the trajectory norm
    int picard_maxiter = 50;
    double mu1 = 0.0;          // weights used for the recorded V series
    double mu2 = 0.0;

    double dt(double delay) const { return delay / delay_cells; }
};

/// Time series of one run. All per-step sequences have length steps+1.
struct SimulationRecord {
    SystemParams params;
    Grid grid;
    Mode mode = Mode::Linear;
    double dt = 0.0;
    double theta = 0.5;

    std::vector<double> times;
    std::vector<TraceSample> traces;
    std::vector<double> energy;     // E(t_k)
    std::vector<double> lyapunov;   // V(t_k) for the options' weights
    std::vector<double> x0_sq;      // ||(u,v)||_{X0}^2
    std::vector<double> grad_sq;    // ||(u_x,v_x)||_{X0}^2
    double initial_z_l2_sq = 0.0;   // ||z0||_{L2(0,1)}^2 (unweighted)

    std::vector<int> snapshot_steps;
    std::vector<State> snapshots;

    int steps() const { return static_cast<int>(times.size()) - 1; }
    double h_norm0_sq() const { return 2.0 * energy.front(); }
};

/// Theta-scheme stepper with a cached factorization of the implicit matrix.
/// The delayed trace is taken from the history (it is known at both ends of
/// the step, so the theta average is exact); the new trace is pushed after
/// the solve.
class Stepper {
public:
    Stepper(const SpatialOperator& op, const SolverOptions& opts, double delay);

    /// One linear step, with optional explicit forcing sampled at t_k.
    State step(const State& s, const Vec* f_u = nullptr, const Vec* f_v = nullptr) const;

    /// One IMEX step: linear part implicit, nonlinear_rhs(u,v) explicit,
    /// plus optional forcing. Throws NonFiniteState on blow-up.
    State step_nonlinear(const State& s, const Vec* f_u = nullptr,
                         const Vec* f_v = nullptr) const;

    double dt() const { return dt_; }

private:
    State advance(const State& s, const Vec* add_u, const Vec* add_v,
                  bool with_nonlinearity) const;

    const SpatialOperator* op_;
    SolverOptions opts_;
    double dt_ = 0.0;
    SpMat explicit_part_;
    Eigen::SparseLU<SpMat> lu_;
};

/// Single linear step (factorizes on each call; use Stepper for runs).
State step_linear(const State& s, const SpatialOperator& op, const SolverOptions& opts);

/// Single IMEX step.
State step_nonlinear(const State& s, const SpatialOperator& op, const SolverOptions& opts);

/// Integrates from t = 0 to t >= horizon, recording traces and energies every
/// step and snapshots every snapshot_stride steps. `sources`, when present,
/// are added explicitly to the right-hand side each step.
SimulationRecord simulate(const SystemParams& p, const Grid& grid, const Vec& u0,
                          const Vec& v0, const std::function<double(double)>& z0,
                          double horizon, const SolverOptions& opts, Mode mode,
                          const SourcePair* sources = nullptr);

struct PicardResult {
    SimulationRecord record;   // the converged trajectory
    int iterations = 0;
    std::vector<double> contraction_factors;
};

/// Fixed-point iteration for the nonlinear problem: each sweep solves the
/// linear system with the previous iterate's nonlinearity as source, until
/// successive trajectories differ by less than picard_tol in the trajectory
/// norm (sup-in-time of the X0 norm plus the L2-in-time gradient norm).
/// Throws NoConvergence after picard_maxiter sweeps or on blow-up.
PicardResult picard_solve(const SystemParams& p, const Grid& grid, const Vec& u0,
                          const Vec& v0, const std::function<double(double)>& z0,
                          double horizon, const SolverOptions& opts);

/// Trajectory norm used by the Picard iteration, computed from full-stride
/// snapshots: max_k ||(u,v)(t_k)||_{X0} + sqrt(trapz_t ||(u_x,v_x)||^2).
double trajectory_norm(const Grid& grid, const std::vector<State>& traj, double dt);

}  // namespace hs
