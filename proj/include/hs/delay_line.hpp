#pragma once

#include <functional>
#include <vector>

#include "hs/errors.hpp"

namespace hs {

/// Shift-register realization of the delayed boundary trace. Cell j holds the
/// trace recorded j steps ago, so the register is the exact nodal solution of
/// the transport equation h z_t + z_rho = 0 on rho in [0, 1]:
///
///   sample(0) = u_x(t, L),  sample(M) = u_x(t - h, L) = z(t, 1).
///
/// Pushing a new trace advances time by dt = h/M and discards the oldest cell.
/// Storage is a circular index; the observable contract is the shifted
/// sequence.
class DelayLine {
public:
    /// Samples the history z0 at the nodes rho_j = j/M. Time is set to 0,
    /// so sample(j) = z0(j/M). Throws InvalidCellCount for M < 1.
    DelayLine(const std::function<double(double)>& z0, int cells, double delay);

    /// Constant history shortcut.
    DelayLine(double value, int cells, double delay);

    int cells() const { return cells_; }
    double dt() const { return delay_ / cells_; }
    double delay() const { return delay_; }

    /// sample(j) = trace recorded j steps ago (j = 0..M).
    double sample(int j) const { return buf_[(head_ + j) % buf_.size()]; }

    /// Most recent trace, z(t, 0).
    double latest() const { return sample(0); }

    /// Oldest trace, z(t, 1) = u_x(t - h, L).
    double delayed_value() const { return sample(cells_); }

    /// Shifts the register by one cell and stores the new trace in front.
    void push(double new_trace);

    /// Composite trapezoid of z^2 over rho in [0, 1] on the M+1 nodes.
    double l2_norm_sq() const;

    /// Trapezoid of (1 - rho) z^2; the tilted weight of the perturbed energy.
    double ramp_weighted_l2_sq() const;

private:
    std::vector<double> buf_;
    std::size_t head_ = 0;
    int cells_ = 0;
    double delay_ = 0.0;
};

}  // namespace hs
