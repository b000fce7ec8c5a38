#include "hs/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hs/diagnostics.hpp"

namespace hs {

namespace {

Vec stack(const Vec& u, const Vec& v) {
    const int n = static_cast<int>(u.size());
    Vec w(2 * n);
    for (int i = 0; i < n; ++i) {
        w[2 * i] = u[i];
        w[2 * i + 1] = v[i];
    }
    return w;
}

void unstack(const Vec& w, Vec& u, Vec& v) {
    const int n = static_cast<int>(w.size()) / 2;
    u.resize(n);
    v.resize(n);
    for (int i = 0; i < n; ++i) {
        u[i] = w[2 * i];
        v[i] = w[2 * i + 1];
    }
}

}  // namespace

Stepper::Stepper(const SpatialOperator& op, const SolverOptions& opts, double delay)
    : op_(&op), opts_(opts) {
    if (opts.delay_cells < 1) throw InvalidCellCount("delay_cells must be >= 1");
    if (opts.theta < 0.0 || opts.theta > 1.0) throw Error("theta must be in [0, 1]");
    dt_ = opts.dt(delay);
    const int m = static_cast<int>(op.interior.rows());
    SpMat eye(m, m);
    eye.setIdentity();
    SpMat implicit_part = eye - (dt_ * opts_.theta) * op.interior;
    explicit_part_ = eye + (dt_ * (1.0 - opts_.theta)) * op.interior;
    lu_.compute(implicit_part);
    if (lu_.info() != Eigen::Success) {
        std::ostringstream os;
        os << "theta-scheme matrix is singular (dt = " << dt_
           << ", dx = " << op.grid.dx << ")";
        throw SingularSystem(os.str());
    }
}

State Stepper::advance(const State& s, const Vec* add_u, const Vec* add_v,
                       bool with_nonlinearity) const {
    const int n = op_->grid.n;
    if (s.line.cells() != opts_.delay_cells)
        throw Error("state delay line does not match the stepper's cell count");
    // Both ends of the delayed trace are history values, so the theta
    // average is exact, not extrapolated.
    const double z_now = s.line.delayed_value();
    const double z_next = s.line.sample(s.line.cells() - 1);
    const double z_bar = (1.0 - opts_.theta) * z_now + opts_.theta * z_next;

    Vec w = stack(s.u, s.v);
    Vec rhs = explicit_part_ * w + (dt_ * z_bar) * op_->delay_coupling;

    if (with_nonlinearity) {
        Vec f_u, f_v;
        nonlinear_rhs(op_->grid, s.u, s.v, f_u, f_v);
        for (int i = 0; i < n; ++i) {
            rhs[2 * i] += dt_ * f_u[i];
            rhs[2 * i + 1] += dt_ * f_v[i];
        }
    }
    if (add_u) {
        for (int i = 0; i < n; ++i) rhs[2 * i] += dt_ * (*add_u)[i];
    }
    if (add_v) {
        for (int i = 0; i < n; ++i) rhs[2 * i + 1] += dt_ * (*add_v)[i];
    }

    Vec w_next = lu_.solve(rhs);
    if (lu_.info() != Eigen::Success) throw SingularSystem("theta-scheme solve failed");

    State out{s.t + dt_, Vec(), Vec(), s.line};
    unstack(w_next, out.u, out.v);
    if (!out.u.allFinite() || !out.v.allFinite()) {
        std::ostringstream os;
        os << "state became non-finite at t = " << out.t;
        throw NonFiniteState(os.str());
    }
    out.line.push(trace_ux_L(op_->grid, out.u));
    return out;
}

State Stepper::step(const State& s, const Vec* f_u, const Vec* f_v) const {
    return advance(s, f_u, f_v, false);
}

State Stepper::step_nonlinear(const State& s, const Vec* f_u, const Vec* f_v) const {
    return advance(s, f_u, f_v, true);
}

State step_linear(const State& s, const SpatialOperator& op, const SolverOptions& opts) {
    return Stepper(op, opts, s.line.delay()).step(s);
}

State step_nonlinear(const State& s, const SpatialOperator& op,
                     const SolverOptions& opts) {
    return Stepper(op, opts, s.line.delay()).step_nonlinear(s);
}

namespace {

void record_step(SimulationRecord& rec, const SystemParams& p, const Grid& grid,
                 const State& s, const SolverOptions& opts) {
    rec.times.push_back(s.t);
    TraceSample tr = boundary_traces(grid, s.u, s.v, s.line);
    tr.t = s.t;
    rec.traces.push_back(tr);
    rec.energy.push_back(energy(p, grid, s));
    rec.lyapunov.push_back(
        lyapunov_value(p, grid, s, opts.mu1, opts.mu2));
    rec.x0_sq.push_back(l2_sq(grid, s.u) + l2_sq(grid, s.v));
    rec.grad_sq.push_back(gradient_sq(grid, s.u) + gradient_sq(grid, s.v));
}

}  // namespace

SimulationRecord simulate(const SystemParams& p, const Grid& grid, const Vec& u0,
                          const Vec& v0, const std::function<double(double)>& z0,
                          double horizon, const SolverOptions& opts, Mode mode,
                          const SourcePair* sources) {
    if (!(horizon > 0.0)) throw Error("horizon must be positive");
    if (u0.size() != grid.n || v0.size() != grid.n)
        throw Error("initial fields must have grid.n entries");

    const SpatialOperator op = build_linear_operator(grid, p.gains);
    const Stepper stepper(op, opts, p.delay);
    const double dt = stepper.dt();
    const int steps = static_cast<int>(std::ceil(horizon / dt - 1e-12));

    if (sources) {
        if (static_cast<int>(sources->f1.size()) < steps ||
            static_cast<int>(sources->f2.size()) < steps)
            throw Error("source pair shorter than the run");
    }

    State s{0.0, u0, v0, DelayLine(z0, opts.delay_cells, p.delay)};

    SimulationRecord rec;
    rec.params = p;
    rec.grid = grid;
    rec.mode = mode;
    rec.dt = dt;
    rec.theta = opts.theta;
    rec.times.reserve(steps + 1);
    rec.initial_z_l2_sq = s.line.l2_norm_sq();

    record_step(rec, p, grid, s, opts);
    auto want_snapshot = [&](int k) {
        if (k == 0 || k == steps) return true;
        return opts.snapshot_stride > 0 && k % opts.snapshot_stride == 0;
    };
    if (want_snapshot(0)) {
        rec.snapshot_steps.push_back(0);
        rec.snapshots.push_back(s);
    }

    for (int k = 0; k < steps; ++k) {
        const Vec* f_u = sources ? &sources->f1[k] : nullptr;
        const Vec* f_v = sources ? &sources->f2[k] : nullptr;
        s = (mode == Mode::Nonlinear) ? stepper.step_nonlinear(s, f_u, f_v)
                                      : stepper.step(s, f_u, f_v);
        record_step(rec, p, grid, s, opts);
        if (want_snapshot(k + 1)) {
            rec.snapshot_steps.push_back(k + 1);
            rec.snapshots.push_back(s);
        }
    }
    return rec;
}

double trajectory_norm(const Grid& grid, const std::vector<State>& traj, double dt) {
    double sup = 0.0;
    double grad_acc = 0.0;
    const int k_last = static_cast<int>(traj.size()) - 1;
    for (int k = 0; k <= k_last; ++k) {
        const State& s = traj[static_cast<std::size_t>(k)];
        sup = std::max(sup, std::sqrt(l2_sq(grid, s.u) + l2_sq(grid, s.v)));
        const double g = gradient_sq(grid, s.u) + gradient_sq(grid, s.v);
        grad_acc += (k == 0 || k == k_last) ? 0.5 * g : g;
    }
    return sup + std::sqrt(dt * grad_acc);
}

PicardResult picard_solve(const SystemParams& p, const Grid& grid, const Vec& u0,
                          const Vec& v0, const std::function<double(double)>& z0,
                          double horizon, const SolverOptions& opts) {
    SolverOptions inner = opts;
    inner.snapshot_stride = 1;

    auto solve_with = [&](const SourcePair* src) {
        return simulate(p, grid, u0, v0, z0, horizon, inner, Mode::Linear, src);
    };
    auto nonlinear_sources = [&](const SimulationRecord& rec) {
        SourcePair src;
        const int steps = rec.steps();
        src.f1.resize(steps);
        src.f2.resize(steps);
        for (int k = 0; k < steps; ++k) {
            nonlinear_rhs(grid, rec.snapshots[static_cast<std::size_t>(k)].u,
                          rec.snapshots[static_cast<std::size_t>(k)].v, src.f1[k],
                          src.f2[k]);
        }
        return src;
    };
    auto diff_norm = [&](const SimulationRecord& a, const SimulationRecord& b) {
        std::vector<State> d;
        d.reserve(a.snapshots.size());
        for (std::size_t k = 0; k < a.snapshots.size(); ++k) {
            State s = a.snapshots[k];
            s.u -= b.snapshots[k].u;
            s.v -= b.snapshots[k].v;
            d.push_back(std::move(s));
        }
        return trajectory_norm(grid, d, a.dt);
    };

    SimulationRecord prev = solve_with(nullptr);
    std::vector<double> factors;
    double prev_diff = -1.0;
    for (int it = 1; it <= opts.picard_maxiter; ++it) {
        SourcePair src = nonlinear_sources(prev);
        SimulationRecord cur = [&]() {
            try {
                return solve_with(&src);
            } catch (const NonFiniteState&) {
                std::ostringstream os;
                os << "fixed-point sweep " << it << " blew up; data too large";
                throw NoConvergence(os.str());
            }
        }();
        const double d = diff_norm(cur, prev);
        if (prev_diff > 0.0) factors.push_back(d / prev_diff);
        prev = std::move(cur);
        if (!std::isfinite(d)) {
            std::ostringstream os;
            os << "fixed-point increment non-finite at sweep " << it;
            throw NoConvergence(os.str());
        }
        if (d < opts.picard_tol) {
            PicardResult out;
            out.record = std::move(prev);
            out.record.mode = Mode::Nonlinear;
            out.iterations = it;
            out.contraction_factors = std::move(factors);
            return out;
        }
        prev_diff = d;
    }
    std::ostringstream os;
    os << "no fixed point within " << opts.picard_maxiter << " sweeps";
    if (!factors.empty()) os << " (last contraction factor " << factors.back() << ")";
    throw NoConvergence(os.str());
}

}  // namespace hs
