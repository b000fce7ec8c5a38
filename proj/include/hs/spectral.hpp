#pragma once

#include <complex>
#include <vector>

#include "hs/integrator.hpp"

namespace hs {

using Mat = Eigen::MatrixXd;

/// Dense generator of the coupled semigroup: PDE block (identical to the
/// spatial operator, entry for entry), first-order upwind transport for the
/// delay variable, and the feedback coupling column. Unlike the time stepper,
/// the delay here is a genuine method-of-lines block: this matrix is meant to
/// approximate the continuous generator itself.
///
/// DOF layout: [interleaved (u, v) block of size 2N | z_0 .. z_M].
/// The inflow row relaxes z_0 onto the discrete trace at rate 2M/h; the
/// factor two against the half trapezoid weight of the boundary node is what
/// makes the weighted block dissipative.
struct GeneratorMatrix {
    Mat m;
    Grid grid;
    SystemParams params;
    int delay_cells = 0;

    int size() const { return static_cast<int>(m.rows()); }
};

GeneratorMatrix assemble_generator(const Grid& grid, const SystemParams& p,
                                   int delay_cells);

/// Diagonal of the discrete H inner product: trapezoid mass in x for both
/// fields, beta h times the trapezoid mass in rho for the delay nodes.
Vec generator_weights(const GeneratorMatrix& gm);

struct SpectrumReport {
    std::vector<std::complex<double>> eigenvalues;  // sorted by real part, desc
    double abscissa = 0.0;
    double dissipativity_max = 0.0;
    double dissipativity_scale = 0.0;  // spectral radius of the symmetrized form
};

/// Max real part of the dense spectrum. Throws EigensolveFailure.
double spectral_abscissa(const GeneratorMatrix& gm);

struct DissipativityReport {
    double max_eigenvalue = 0.0;  // largest eigenvalue of sym(W^1/2 A W^-1/2)
    double scale = 0.0;           // largest |eigenvalue| of the same form
};

/// Largest eigenvalue of (W A + A^T W)/2 against W, computed as the symmetric
/// eigenproblem for W^{1/2} A W^{-1/2}. A nonpositive value certifies
/// discrete dissipativity of the generator in the weighted inner product.
DissipativityReport dissipativity_check(const GeneratorMatrix& gm);

/// Full spectrum plus both dissipativity numbers.
SpectrumReport spectrum_report(const GeneratorMatrix& gm);

struct AbscissaDecayReport {
    double abscissa = 0.0;
    double lambda_emp = 0.0;
    double relative_gap = 0.0;  // |lambda_emp - 2|abscissa|| / (2|abscissa|)
};

/// Compares the fitted energy decay rate of a linear run against twice the
/// spectral abscissa (the energy is quadratic in the state). The fit window
/// defaults to [0.2 T, T]. Throws GridMismatch when the record was produced
/// on a different grid.
AbscissaDecayReport abscissa_vs_decay(const GeneratorMatrix& gm,
                                      const SimulationRecord& rec,
                                      double fit_window_start = -1.0,
                                      double fit_window_end = -1.0);

}  // namespace hs
