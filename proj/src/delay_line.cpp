#include "hs/delay_line.hpp"

#include <sstream>

namespace hs {

DelayLine::DelayLine(const std::function<double(double)>& z0, int cells, double delay)
    : cells_(cells), delay_(delay) {
    if (cells < 1) {
        std::ostringstream os;
        os << "delay line needs at least one cell, got " << cells;
        throw InvalidCellCount(os.str());
    }
    if (!(delay > 0.0)) throw Error("delay must be positive");
    buf_.resize(static_cast<std::size_t>(cells) + 1);
    for (int j = 0; j <= cells; ++j) {
        buf_[static_cast<std::size_t>(j)] = z0(static_cast<double>(j) / cells);
    }
}

DelayLine::DelayLine(double value, int cells, double delay)
    : DelayLine([value](double) { return value; }, cells, delay) {}

void DelayLine::push(double new_trace) {
    // Move the head one slot back; the cell it lands on held sample(M),
    // which is exactly the value transported out at z(t, 1).
    head_ = (head_ + buf_.size() - 1) % buf_.size();
    buf_[head_] = new_trace;
}

double DelayLine::l2_norm_sq() const {
    double acc = 0.5 * (sample(0) * sample(0) + sample(cells_) * sample(cells_));
    for (int j = 1; j < cells_; ++j) acc += sample(j) * sample(j);
    return acc / cells_;
}

double DelayLine::ramp_weighted_l2_sq() const {
    // (1 - rho) vanishes at rho = 1, so the oldest node drops out.
    double acc = 0.5 * sample(0) * sample(0);
    for (int j = 1; j < cells_; ++j) {
        const double rho = static_cast<double>(j) / cells_;
        acc += (1.0 - rho) * sample(j) * sample(j);
    }
    return acc / cells_;
}

}  // namespace hs
