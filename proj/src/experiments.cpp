#include "hs/experiments.hpp"

#include <cmath>
#include <iostream>
#include <sstream>

#include "hs/csv.hpp"
#include "hs/diagnostics.hpp"
#include "hs/spectral.hpp"

namespace hs {

namespace {

DataTriple config_data(const RunConfig& cfg, const SystemParams& p, const Grid& grid) {
    DataTriple d;
    d.u0 = sample_field(cfg.u0, grid);
    d.v0 = sample_field(cfg.v0, grid);
    d.z0 = history_function(cfg.z0);
    if (cfg.normalize_h_norm) {
        d = scale_to_h_norm(p, grid, std::move(d), cfg.m, *cfg.normalize_h_norm);
    }
    return d;
}

void write_trace_csv(const std::string& path, const SimulationRecord& rec) {
    CsvWriter csv(path, "t,ux_L,ux_delayed,vx_0,dissipation_rhs");
    for (std::size_t k = 0; k < rec.times.size(); ++k) {
        const TraceSample& tr = rec.traces[k];
        csv.row(fmt(rec.times[k]), fmt(tr.ux_L), fmt(tr.ux_delayed), fmt(tr.vx_0),
                fmt(dissipation_rhs(rec.params.gains, tr)));
    }
}

void write_energy_csv(const std::string& path, const SimulationRecord& rec,
                      const std::optional<DecayBound>& bound) {
    CsvWriter csv(path, "t,E,V,E_bound");
    const double e0 = rec.energy.front();
    for (std::size_t k = 0; k < rec.times.size(); ++k) {
        std::string cap;
        if (bound) {
            cap = fmt(bound->kappa * e0 * std::exp(-bound->lambda * rec.times[k]));
        }
        csv.row(fmt(rec.times[k]), fmt(rec.energy[k]), fmt(rec.lyapunov[k]), cap);
    }
}

void print_matrix(std::ostream& out, const char* name, const SymMatrix2& m) {
    out << "  " << name << " = [[" << fmt(m.a11) << ", " << fmt(m.a12) << "], ["
        << fmt(m.a12) << ", " << fmt(m.a22) << "]]  minors: " << fmt(m.a11) << ", "
        << fmt(m.a11 * m.a22 - m.a12 * m.a12)
        << (is_negative_definite(m) ? "  (negative definite)" : "  (NOT negative definite)")
        << "\n";
}

}  // namespace

int run_experiment(const RunConfig& cfg, std::ostream& out) {
    SystemParams p;
    Grid grid;
    try {
        p = cfg.params();
        grid = make_grid(cfg.n, cfg.length);
    } catch (const Error& e) {
        out << "configuration error: " << e.what() << "\n";
        return kConfigError;
    }

    try {
        const DataTriple d = config_data(cfg, p, grid);
        const SolverOptions opts = cfg.solver_options();

        SimulationRecord rec;
        if (cfg.mode == "picard") {
            PicardResult pr =
                picard_solve(p, grid, d.u0, d.v0, d.z0, cfg.horizon, opts);
            out << "picard: converged after " << pr.iterations << " sweeps";
            if (!pr.contraction_factors.empty()) {
                out << ", contraction factors:";
                for (double f : pr.contraction_factors) out << " " << fmt(f);
            }
            out << "\n";
            rec = std::move(pr.record);
        } else {
            const Mode mode = cfg.mode == "nonlinear" ? Mode::Nonlinear : Mode::Linear;
            rec = simulate(p, grid, d.u0, d.v0, d.z0, cfg.horizon, opts, mode);
        }

        std::optional<DecayBound> bound;
        int code = kOk;
        if (cfg.verdict) {
            const double r = cfg.r ? *cfg.r : std::sqrt(rec.h_norm0_sq());
            const CertificateReport rep = check_decay_certificate(
                rec, LyapunovWeights{cfg.mu1, cfg.mu2}, r, 1.05,
                cfg.fit_window_start.value_or(-1.0), cfg.fit_window_end.value_or(-1.0));
            for (const std::string& msg : rep.precondition_violations) {
                out << "precondition: " << msg << "\n";
            }
            const bool zero_data = rec.energy.front() == 0.0;
            const bool pass = zero_data || rep.passed();
            out << "verdict: " << (pass ? "pass" : "fail")
                << "  lambda = " << fmt(rep.bound.lambda)
                << "  kappa = " << fmt(rep.bound.kappa)
                << "  max envelope ratio = " << fmt(rep.max_envelope_ratio)
                << "  lambda_emp = " << fmt(rep.fit.lambda_emp) << " (window ["
                << fmt(rep.fit.window_start) << ", " << fmt(rep.fit.window_end) << "])"
                << "  V-decay max increase = " << fmt(rep.v_decay_max_increase) << "\n";
            if (!zero_data) bound = rep.bound;
            if (!pass) code = kVerdictFailed;
        }

        if (!cfg.energy_csv.empty()) write_energy_csv(cfg.energy_csv, rec, bound);
        if (!cfg.trace_csv.empty()) write_trace_csv(cfg.trace_csv, rec);
        out << "run: " << rec.steps() << " steps, dt = " << fmt(rec.dt)
            << ", E(0) = " << fmt(rec.energy.front())
            << ", E(T) = " << fmt(rec.energy.back()) << "\n";
        return code;
    } catch (const NoConvergence& e) {
        out << "numerical failure: " << e.what() << "\n";
        return kNumericalError;
    } catch (const NonFiniteState& e) {
        out << "numerical failure: " << e.what() << "\n";
        return kNumericalError;
    } catch (const SingularSystem& e) {
        out << "numerical failure: " << e.what() << "\n";
        return kNumericalError;
    } catch (const Error& e) {
        out << "configuration error: " << e.what() << "\n";
        return kConfigError;
    }
}

void certify_point(double alpha, double beta, double length, double delay,
                   std::optional<double> mu1, std::optional<double> mu2,
                   std::optional<double> r, std::ostream& out) {
    out << "certificate for alpha = " << fmt(alpha) << ", beta = " << fmt(beta)
        << ", L = " << fmt(length) << ", h = " << fmt(delay) << "\n";
    const double margin = gain_margin(alpha, beta);
    const double margin_weak = gain_margin_weak(alpha, beta);
    out << "  gain condition margin: " << fmt(margin)
        << "  (weaker variant margin: " << fmt(margin_weak) << ")\n";

    const Gains g{alpha, beta};
    print_matrix(out, "Phi     ", energy_dissipation_matrix(g));
    print_matrix(out, "Phi_adj ", adjoint_dissipation_matrix(g));

    bool admissible = true;
    try {
        validate_gains(alpha, beta);
        out << "  admissible: yes\n";
    } catch (const OutOfAdmissibleRegion& e) {
        admissible = false;
        out << "  admissible: no (" << e.what() << ")\n";
    }
    out << "  smoothing constant C(L, gains) = "
        << fmt(kato_smoothing_constant(length, g)) << "\n";
    out << "  r_max = " << fmt(smallness_radius(length)) << "\n";
    if (!admissible) return;

    try {
        out << "  dissipation constant K = " << fmt(dissipation_constant(g)) << "\n";
        WeightBounds wb = lyapunov_weight_bounds(g, length);
        out << "  mu1_max = " << fmt(wb.mu1_max) << "\n";
        const double m1 = mu1.value_or(0.5 * wb.mu1_max);
        wb = lyapunov_weight_bounds(g, length, m1);
        out << "  mu1 = " << fmt(m1) << "  mu2_max = " << fmt(*wb.mu2_max) << "\n";
        const double m2 = mu2.value_or(0.5 * (*wb.mu2_max));
        if (!(m2 > 0.0) || !(m2 < *wb.mu2_max)) {
            out << "  mu2 = " << fmt(m2) << " outside (0, " << fmt(*wb.mu2_max)
                << "); no certificate\n";
            return;
        }
        const LyapunovWeights w{m1, m2};
        print_matrix(out, "Psi     ",
                     perturbed_dissipation_matrix(g, w, length));
        const SystemParams p = make_params(length, delay, alpha, beta);
        const DecayBound b = theoretical_decay_rate(p, w, r.value_or(0.0));
        out << "  mu2 = " << fmt(m2) << "  r = " << fmt(r.value_or(0.0)) << "\n";
        out << "  lambda = " << fmt(b.lambda) << "  kappa = " << fmt(b.kappa) << "\n";
    } catch (const Error& e) {
        out << "  " << e.what() << "\n";
    }
}

int run_sweep(const RunConfig& cfg, std::ostream& out) {
    if (cfg.sweep_csv.empty()) {
        out << "configuration error: sweep requires sweep_csv\n";
        return kConfigError;
    }
    try {
        CsvWriter csv(cfg.sweep_csv,
                      "alpha,beta,admissible,lambda_theory,kappa_theory,lambda_emp,"
                      "kappa_emp,abscissa,error");
        auto grid_value = [](double lo, double hi, int steps, int i) {
            if (steps <= 1) return lo;
            return lo + (hi - lo) * i / (steps - 1);
        };
        int simulated = 0;
        for (int i = 0; i < cfg.alpha_steps; ++i) {
            for (int j = 0; j < cfg.beta_steps; ++j) {
                const double a = grid_value(cfg.alpha_min, cfg.alpha_max,
                                            cfg.alpha_steps, i);
                const double b = grid_value(cfg.beta_min, cfg.beta_max,
                                            cfg.beta_steps, j);
                std::string lam_th, kap_th, lam_emp, kap_emp, absc, err;
                bool admissible = true;
                try {
                    validate_gains(a, b);
                } catch (const OutOfAdmissibleRegion&) {
                    admissible = false;
                }
                if (admissible) {
                    try {
                        const Gains g{a, b};
                        const SystemParams p = make_params(cfg.length, cfg.delay, a, b);
                        WeightBounds wb = lyapunov_weight_bounds(g, cfg.length);
                        const double m1 = 0.5 * wb.mu1_max;
                        wb = lyapunov_weight_bounds(g, cfg.length, m1);
                        const LyapunovWeights w{m1, 0.5 * (*wb.mu2_max)};
                        const DecayBound bound = theoretical_decay_rate(p, w, 0.0);
                        lam_th = fmt(bound.lambda);
                        kap_th = fmt(bound.kappa);
                        if (cfg.sweep_simulate) {
                            const Grid grid = make_grid(cfg.n, cfg.length);
                            RunConfig run_cfg = cfg;
                            run_cfg.alpha = a;
                            run_cfg.beta = b;
                            const DataTriple d = config_data(run_cfg, p, grid);
                            const SimulationRecord rec =
                                simulate(p, grid, d.u0, d.v0, d.z0, cfg.horizon,
                                         cfg.solver_options(), Mode::Linear);
                            const DecayEstimate est = fit_decay(
                                rec.energy, rec.times,
                                cfg.fit_window_start.value_or(0.2 * cfg.horizon),
                                cfg.fit_window_end.value_or(cfg.horizon));
                            lam_emp = fmt(est.lambda_emp);
                            kap_emp = fmt(est.kappa_emp);
                            ++simulated;
                        }
                        if (cfg.sweep_spectrum) {
                            const Grid grid = make_grid(cfg.n, cfg.length);
                            absc = fmt(spectral_abscissa(
                                assemble_generator(grid, p, cfg.m)));
                        }
                    } catch (const Error& e) {
                        err = e.what();
                    }
                }
                csv.row(fmt(a), fmt(b), admissible ? 1 : 0, lam_th, kap_th, lam_emp,
                        kap_emp, absc, err);
            }
        }
        out << "sweep: " << cfg.alpha_steps * cfg.beta_steps << " points, "
            << simulated << " simulated, written to " << cfg.sweep_csv << "\n";
        return kOk;
    } catch (const Error& e) {
        out << "sweep failed: " << e.what() << "\n";
        return kNumericalError;
    }
}

int run_observability(const RunConfig& cfg, std::ostream& out) {
    try {
        const SystemParams p = cfg.params();
        const Grid grid = make_grid(cfg.n, cfg.length);
        const double horizon = cfg.obs_horizon.value_or(2.0 * cfg.delay);
        if (!(horizon > cfg.delay)) {
            out << "configuration error: observability horizon must exceed the delay\n";
            return kConfigError;
        }
        std::mt19937_64 rng(cfg.seed);
        SolverOptions opts = cfg.solver_options();
        opts.snapshot_stride = 0;

        std::optional<CsvWriter> csv;
        if (!cfg.obs_csv.empty()) csv.emplace(cfg.obs_csv, "sample,quotient");

        double c_emp = 0.0;
        for (int s = 0; s < cfg.samples; ++s) {
            const DataTriple d = random_unit_data(p, grid, cfg.m, rng);
            const SimulationRecord rec =
                simulate(p, grid, d.u0, d.v0, d.z0, horizon, opts, Mode::Linear);
            const double q = observability_quotient(rec, horizon);
            if (csv) csv->row(s, fmt(q));
            c_emp = std::max(c_emp, q);
        }
        const ObservabilityDecay dec = observability_decay(c_emp, horizon);
        out << "observability: samples = " << cfg.samples << ", T = " << fmt(horizon)
            << ", C_emp = " << fmt(c_emp) << ", delta = " << fmt(dec.delta)
            << ", mu0 = " << fmt(dec.mu0) << "\n";
        return kOk;
    } catch (const NotDefined& e) {
        out << "numerical failure: " << e.what() << "\n";
        return kNumericalError;
    } catch (const Error& e) {
        out << "observability failed: " << e.what() << "\n";
        return kNumericalError;
    }
}

int run_spectrum(const RunConfig& cfg, std::ostream& out) {
    try {
        const SystemParams p = cfg.params();
        const Grid grid = make_grid(cfg.n, cfg.length);
        const GeneratorMatrix gm = assemble_generator(grid, p, cfg.m);
        const SpectrumReport rep = spectrum_report(gm);
        out << "generator size: " << gm.size() << "\n";
        out << "spectral abscissa: " << fmt(rep.abscissa) << "\n";
        out << "dissipativity: max eigenvalue " << fmt(rep.dissipativity_max)
            << " (scale " << fmt(rep.dissipativity_scale) << ")\n";
        out << "rightmost eigenvalues:\n";
        for (std::size_t k = 0; k < rep.eigenvalues.size() && k < 5; ++k) {
            out << "  " << fmt(rep.eigenvalues[k].real()) << " + "
                << fmt(rep.eigenvalues[k].imag()) << "i\n";
        }
        return kOk;
    } catch (const Error& e) {
        out << "spectrum failed: " << e.what() << "\n";
        return kNumericalError;
    }
}

}  // namespace hs
