#include "hs/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "hs/diagnostics.hpp"

namespace hs {

GeneratorMatrix assemble_generator(const Grid& grid, const SystemParams& p,
                                   int delay_cells) {
    if (delay_cells < 4) throw InvalidCellCount("generator needs at least 4 delay cells");
    const SpatialOperator op = build_linear_operator(grid, p.gains);
    const int n = grid.n;
    const int m = delay_cells;
    const int size = 2 * n + m + 1;
    const int zoff = 2 * n;

    GeneratorMatrix gm;
    gm.grid = grid;
    gm.params = p;
    gm.delay_cells = m;
    gm.m = Mat::Zero(size, size);

    for (int k = 0; k < op.interior.outerSize(); ++k) {
        for (SpMat::InnerIterator it(op.interior, k); it; ++it) {
            gm.m(it.row(), it.col()) = it.value();
        }
    }
    // feedback column: the delayed trace is the last transport node
    for (int i = 0; i < 2 * n; ++i) gm.m(i, zoff + m) += op.delay_coupling[i];

    const double rate = m / p.delay;
    // inflow row tied to the discrete u_x(.,L) stencil
    const double inv2dx = 1.0 / (2.0 * grid.dx);
    gm.m(zoff, zoff) = -2.0 * rate;
    gm.m(zoff, op.dof(false, n - 1)) = 2.0 * rate * inv2dx;
    gm.m(zoff, op.dof(false, n)) = -2.0 * rate * 4.0 * inv2dx;
    // upwind transport in rho
    for (int j = 1; j <= m; ++j) {
        gm.m(zoff + j, zoff + j) = -rate;
        gm.m(zoff + j, zoff + j - 1) = rate;
    }
    return gm;
}

Vec generator_weights(const GeneratorMatrix& gm) {
    const int n = gm.grid.n;
    const int m = gm.delay_cells;
    Vec w(2 * n + m + 1);
    w.head(2 * n).setConstant(gm.grid.dx);
    const double wz = gm.params.gains.beta * gm.params.delay / m;
    for (int j = 0; j <= m; ++j) {
        w[2 * n + j] = (j == 0 || j == m) ? 0.5 * wz : wz;
    }
    return w;
}

double spectral_abscissa(const GeneratorMatrix& gm) {
    Eigen::EigenSolver<Mat> es(gm.m, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success) throw EigensolveFailure("dense eigensolve failed");
    return es.eigenvalues().real().maxCoeff();
}

DissipativityReport dissipativity_check(const GeneratorMatrix& gm) {
    const Vec w = generator_weights(gm);
    const Vec ws = w.cwiseSqrt();
    Mat b = ws.asDiagonal() * gm.m * ws.cwiseInverse().asDiagonal();
    Mat s = 0.5 * (b + b.transpose());
    Eigen::SelfAdjointEigenSolver<Mat> es(s, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw EigensolveFailure("symmetric eigensolve failed");
    DissipativityReport out;
    out.max_eigenvalue = es.eigenvalues().maxCoeff();
    out.scale = es.eigenvalues().cwiseAbs().maxCoeff();
    return out;
}

SpectrumReport spectrum_report(const GeneratorMatrix& gm) {
    Eigen::EigenSolver<Mat> es(gm.m, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success) throw EigensolveFailure("dense eigensolve failed");
    SpectrumReport out;
    const auto& ev = es.eigenvalues();
    out.eigenvalues.reserve(static_cast<std::size_t>(ev.size()));
    for (Eigen::Index i = 0; i < ev.size(); ++i) out.eigenvalues.push_back(ev[i]);
    std::sort(out.eigenvalues.begin(), out.eigenvalues.end(),
              [](const std::complex<double>& a, const std::complex<double>& b) {
                  if (a.real() != b.real()) return a.real() > b.real();
                  return a.imag() > b.imag();
              });
    out.abscissa = out.eigenvalues.front().real();
    const DissipativityReport d = dissipativity_check(gm);
    out.dissipativity_max = d.max_eigenvalue;
    out.dissipativity_scale = d.scale;
    return out;
}

AbscissaDecayReport abscissa_vs_decay(const GeneratorMatrix& gm,
                                      const SimulationRecord& rec,
                                      double fit_window_start, double fit_window_end) {
    if (rec.grid.n != gm.grid.n || std::abs(rec.grid.length - gm.grid.length) > 1e-12) {
        std::ostringstream os;
        os << "record grid (n = " << rec.grid.n << ") does not match the generator (n = "
           << gm.grid.n << ")";
        throw GridMismatch(os.str());
    }
    const double t_end = rec.times.back();
    if (fit_window_start < 0.0) fit_window_start = 0.2 * t_end;
    if (fit_window_end < 0.0) fit_window_end = t_end;

    AbscissaDecayReport out;
    out.abscissa = spectral_abscissa(gm);
    out.lambda_emp =
        fit_decay(rec.energy, rec.times, fit_window_start, fit_window_end).lambda_emp;
    const double target = 2.0 * std::abs(out.abscissa);
    out.relative_gap = target > 0.0
                           ? std::abs(out.lambda_emp - target) / target
                           : std::numeric_limits<double>::infinity();
    return out;
}

}  // namespace hs
