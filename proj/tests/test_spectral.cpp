#include <doctest.h>

#include <cmath>
#include <random>

#include "hs/initial_data.hpp"
#include "hs/spectral.hpp"

using namespace hs;

TEST_CASE("generator dimensions and zero action") {
    const Grid grid = make_grid(24, 1.0);
    const SystemParams p = make_params(1.0, 1.0, 0.1, 0.1);
    const GeneratorMatrix gm = assemble_generator(grid, p, 12);
    CHECK(gm.size() == 2 * 24 + 12 + 1);
    CHECK((gm.m * Vec::Zero(gm.size())).norm() == 0.0);
    CHECK_THROWS_AS(assemble_generator(grid, p, 3), InvalidCellCount);
}

TEST_CASE("PDE block equals the spatial operator entry for entry") {
    const Grid grid = make_grid(32, 1.3);
    const SystemParams p = make_params(1.3, 0.7, 0.2, 0.1);
    const GeneratorMatrix gm = assemble_generator(grid, p, 16);
    const SpatialOperator op = build_linear_operator(grid, p.gains);
    const Mat dense = Mat(op.interior);
    CHECK((gm.m.topLeftCorner(2 * grid.n, 2 * grid.n) - dense).cwiseAbs().maxCoeff() ==
          0.0);
}

TEST_CASE("delay block spectrum with the feedback zeroed") {
    const Grid grid = make_grid(16, 1.0);
    const SystemParams p = make_params(1.0, 2.0, 0.1, 0.1);
    const int m = 8;
    GeneratorMatrix gm = assemble_generator(grid, p, m);
    // detach the transport block from the trace
    gm.m.block(2 * grid.n, 0, m + 1, 2 * grid.n).setZero();
    const Mat zblock = gm.m.bottomRightCorner(m + 1, m + 1);
    Eigen::EigenSolver<Mat> es(zblock);
    REQUIRE(es.info() == Eigen::Success);
    const double rate = m / p.delay;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        CHECK(es.eigenvalues()[i].real() <= 1e-10);
        // upwind spectrum: the relaxed inflow node and the transport chain
        const double re = es.eigenvalues()[i].real();
        const bool near_known = std::abs(re + rate) < 0.5 * rate ||
                                std::abs(re + 2.0 * rate) < 0.5 * rate;
        CHECK(near_known);
    }
}

TEST_CASE("abscissa basics") {
    const Grid grid = make_grid(8, 1.0);
    const SystemParams p = make_params(1.0, 1.0, 0.1, 0.1);
    GeneratorMatrix gm = assemble_generator(grid, p, 4);
    SUBCASE("diagonal matrix") {
        gm.m.setZero();
        for (int i = 0; i < gm.size(); ++i) gm.m(i, i) = -1.0 - i;
        CHECK(spectral_abscissa(gm) == doctest::Approx(-1.0));
    }
    SUBCASE("invariant under diagonal similarity") {
        const double a0 = spectral_abscissa(gm);
        Vec d(gm.size());
        std::mt19937_64 rng(2);
        for (int i = 0; i < gm.size(); ++i) d[i] = 1.0 + 0.5 * uniform_pm1(rng);
        GeneratorMatrix scaled = gm;
        scaled.m = d.asDiagonal() * gm.m * d.cwiseInverse().asDiagonal();
        CHECK(spectral_abscissa(scaled) == doctest::Approx(a0).epsilon(1e-3));
    }
}

TEST_CASE("weighted dissipativity for admissible gains") {
    std::mt19937_64 rng(31);
    const Grid grid = make_grid(48, 1.0);
    int found = 0;
    while (found < 10) {
        const double a = 0.5 * uniform_pm1(rng);
        const double b = (uniform_pm1(rng) + 1.0) / 6.0 + 1e-4;
        if (!(2 * a * a + 1.5 * b > 0 && 2 * a * a + 1.5 * b < 0.5)) continue;
        ++found;
        const SystemParams p = make_params(1.0, 1.0, a, b);
        const GeneratorMatrix gm = assemble_generator(grid, p, 24);
        const DissipativityReport rep = dissipativity_check(gm);
        CHECK(rep.max_eigenvalue <= 1e-10 * rep.scale);
        CHECK(spectral_abscissa(gm) < 0.0);
    }
}

TEST_CASE("gross violators may lose dissipativity; only the sign is recorded") {
    const Grid grid = make_grid(32, 1.0);
    const SystemParams p{1.0, 1.0, Gains{0.6, 0.3}};  // outside the gain region
    const GeneratorMatrix gm = assemble_generator(grid, p, 16);
    const DissipativityReport rep = dissipativity_check(gm);
    CHECK(std::isfinite(rep.max_eigenvalue));
    MESSAGE("violating gains (0.6, 0.3): max weighted eigenvalue = ",
            rep.max_eigenvalue);
}

TEST_CASE("abscissa versus fitted decay") {
    const Grid grid = make_grid(24, 1.0);
    const SystemParams p = make_params(1.0, 1.0, 0.1, 0.1);
    const GeneratorMatrix gm = assemble_generator(grid, p, 8);
    const double a = spectral_abscissa(gm);

    SUBCASE("synthetic record at exactly twice the abscissa has zero gap") {
        SimulationRecord rec;
        rec.params = p;
        rec.grid = grid;
        rec.mode = Mode::Linear;
        rec.dt = 0.01;
        for (int k = 0; k <= 1000; ++k) {
            rec.times.push_back(0.01 * k);
            rec.energy.push_back(std::exp(-2.0 * std::abs(a) * 0.01 * k));
        }
        const AbscissaDecayReport rep = abscissa_vs_decay(gm, rec);
        CHECK(rep.relative_gap <= 1e-9);
    }
    SUBCASE("zero records propagate the fit error") {
        SimulationRecord rec;
        rec.params = p;
        rec.grid = grid;
        rec.dt = 0.01;
        for (int k = 0; k <= 100; ++k) {
            rec.times.push_back(0.01 * k);
            rec.energy.push_back(0.0);
        }
        CHECK_THROWS_AS(abscissa_vs_decay(gm, rec), NonPositiveEnergy);
    }
    SUBCASE("grid mismatch is rejected") {
        SimulationRecord rec;
        rec.params = p;
        rec.grid = make_grid(32, 1.0);
        rec.times = {0.0, 1.0};
        rec.energy = {1.0, 0.5};
        rec.dt = 1.0;
        CHECK_THROWS_AS(abscissa_vs_decay(gm, rec), GridMismatch);
    }
}
