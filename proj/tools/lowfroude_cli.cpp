// Command-line driver: single ODE solves, Stokes maps, prefactor
// extraction, divergence fits, point predictions, figure sweeps and the
// acceptance suite, all emitting CSV suitable for any plotting tool.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>

#include "CLI11.hpp"
#include "acceptance.hpp"
#include "lowfroude/amplitude.hpp"
#include "lowfroude/ode.hpp"
#include "lowfroude/recurrence.hpp"
#include "lowfroude/singulant.hpp"
#include "lowfroude/sweep.hpp"

namespace {

using namespace lowfroude;

struct SpecArgs {
    std::string kind = "single";
    double a = 0.5;
    double a1 = 0.75;
    double a2 = 0.25;
    double beta = 1.0;
    std::string sigma1 = "1/3";
    std::string sigma2 = "1/6";
};

void add_spec_options(CLI::App* cmd, SpecArgs& s) {
    cmd->add_option("--spec", s.kind, "forcing family: single|separated|coalescing")
        ->check(CLI::IsMember({"single", "separated", "coalescing"}));
    cmd->add_option("--a", s.a, "singularity position (single/coalescing)");
    cmd->add_option("--a1", s.a1, "first singularity (separated)");
    cmd->add_option("--a2", s.a2, "second singularity (separated)");
    cmd->add_option("--beta", s.beta, "coalescence scale beta");
    cmd->add_option("--sigma1", s.sigma1, "power sigma1 as p/q");
    cmd->add_option("--sigma2", s.sigma2, "power sigma2 as p/q");
}

ForcingSpec make_spec(const SpecArgs& s) {
    const Rational s1 = Rational::parse(s.sigma1);
    const Rational s2 = Rational::parse(s.sigma2);
    if (s.kind == "single") return SingleForcing(s.a, s1);
    if (s.kind == "separated") return SeparatedForcing(s.a1, s.a2, s1, s2);
    return CoalescingForcing(s.a, s.beta, s1, s2);
}

std::unique_ptr<std::ostream> open_out(const std::string& path) {
    if (path.empty()) return nullptr;  // caller falls back to stdout
    auto os = std::make_unique<std::ofstream>(path, std::ios::binary);
    if (!*os) throw std::runtime_error("cannot open output file: " + path);
    return os;
}

std::ostream& out_or_stdout(const std::unique_ptr<std::ostream>& os) {
    return os ? *os : std::cout;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"low-Froude ship-wave toolkit: exponentially small waves by "
                 "direct integration and exponential asymptotics"};
    app.require_subcommand(1);

    // ---- solve ----
    SpecArgs solve_spec;
    double solve_eps = 0.15, solve_w0 = 1e-5, solve_wend = 0.0, solve_tol = 1e-10;
    std::string solve_out;
    bool solve_measure = false;
    auto* solve = app.add_subcommand("solve", "integrate the wave ODE, export trajectory CSV");
    add_spec_options(solve, solve_spec);
    solve->add_option("--eps", solve_eps, "Froude parameter epsilon")->required();
    solve->add_option("--w0", solve_w0, "start point (default 1e-5)");
    solve->add_option("--w-end", solve_wend, "end point (default max(10, 20 a))");
    solve->add_option("--tol", solve_tol, "integrator tolerance");
    solve->add_option("--out", solve_out, "output CSV path (default stdout)");
    solve->add_flag("--measure", solve_measure, "print far-field amplitude/wavelength to stderr");
    solve->set_config("--config");

    // ---- stokes ----
    SpecArgs stokes_spec;
    int stokes_k = -1;
    double stokes_step = 5e-4, stokes_arc = 8.0;
    std::string stokes_out = "stokes.csv";
    auto* stokes = app.add_subcommand("stokes", "trace Stokes lines Im chi = 0, export CSV");
    add_spec_options(stokes, stokes_spec);
    stokes->add_option("--k", stokes_k, "singularity index (default: all)");
    stokes->add_option("--step", stokes_step, "marching step");
    stokes->add_option("--max-arc", stokes_arc, "arc-length budget");
    stokes->add_option("--eps", solve_eps, "epsilon (coalescing spec only)");
    stokes->add_option("--out", stokes_out, "output CSV path (suffixed _k<N> for multiple)");
    stokes->set_config("--config");

    // ---- omega ----
    std::string omega_sigma = "1/3", omega_sigma2;
    double omega_a = 0.5, omega_beta = -1.0;
    int omega_nmax = 2000;
    auto* omega = app.add_subcommand(
        "omega", "prefactor constants: Omega(sigma), or Omega_cc with --beta");
    omega->add_option("--sigma1", omega_sigma, "sigma (or sigma1 with --beta) as p/q");
    omega->add_option("--sigma2", omega_sigma2, "sigma2 as p/q (coalescing)");
    omega->add_option("--a", omega_a, "singularity position");
    omega->add_option("--beta", omega_beta, "coalescence scale (enables Omega_cc)");
    omega->add_option("--nmax", omega_nmax, "recurrence length");
    omega->set_config("--config");

    // ---- fit ----
    std::string fit_rec = "coalescing", fit_out;
    SpecArgs fit_spec;
    int fit_m = 2, fit_nmax = 2000, fit_nlo = 0, fit_nhi = 0;
    auto* fit = app.add_subcommand("fit", "divergence-constant fit of a coefficient sequence");
    fit->add_option("--recurrence", fit_rec, "toy|separated|coalescing")
        ->check(CLI::IsMember({"toy", "separated", "coalescing"}));
    add_spec_options(fit, fit_spec);
    fit->add_option("--m", fit_m, "ansatz order m");
    fit->add_option("--nmax", fit_nmax, "sequence length");
    fit->add_option("--nlo", fit_nlo, "tail start (default nmax/3)");
    fit->add_option("--nhi", fit_nhi, "tail end (default nmax)");
    fit->add_option("--out", fit_out, "CSV of n,re_A,im_A,abs_H,arg_H");
    fit->set_config("--config");

    // ---- amp ----
    std::string amp_regime = "single";
    SpecArgs amp_spec;
    double amp_eps = 0.075;
    int amp_nmax = 2000;
    auto* amp = app.add_subcommand("amp", "closed-form wave-amplitude predictions");
    amp->add_option("--regime", amp_regime, "single|separated|coalescing")
        ->check(CLI::IsMember({"single", "separated", "coalescing"}));
    add_spec_options(amp, amp_spec);
    amp->add_option("--eps", amp_eps, "epsilon")->required();
    amp->add_option("--nmax", amp_nmax, "recurrence length for the prefactor constants");
    amp->set_config("--config");

    // ---- sweep ----
    std::string sweep_exp = "fig10", sweep_out;
    SweepConfig sweep_cfg;
    double sweep_eps = -1.0, sweep_a1min = -1.0, sweep_a1max = -1.0, sweep_tol = -1.0;
    int sweep_grid = -1, sweep_nmax = -1;
    std::string sweep_s1, sweep_s2;
    auto* sweep = app.add_subcommand("sweep", "figure-reproduction sweeps, CSV output");
    sweep->add_option("--experiment", sweep_exp, "fig3|fig8|fig9|fig10|stokes-map|custom");
    sweep->add_option("--eps", sweep_eps, "override epsilon");
    sweep->add_option("--a1-min", sweep_a1min, "override a1 grid start");
    sweep->add_option("--a1-max", sweep_a1max, "override a1 grid end");
    sweep->add_option("--grid", sweep_grid, "grid points (default 40)");
    sweep->add_option("--nmax", sweep_nmax, "recurrence length");
    sweep->add_option("--tol", sweep_tol, "ODE tolerance");
    sweep->add_option("--sigma1", sweep_s1, "override sigma1 (p/q)");
    sweep->add_option("--sigma2", sweep_s2, "override sigma2 (p/q)");
    sweep->add_option("--out", sweep_out, "output CSV path (default stdout)");
    sweep->set_config("--config");

    // ---- accept ----
    std::string accept_filter;
    auto* accept = app.add_subcommand("accept", "run the acceptance suite");
    accept->add_option("--filter", accept_filter, "run only criteria whose name contains this");
    accept->set_config("--config");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*solve) {
            const ForcingSpec spec = make_spec(solve_spec);
            double w_end = solve_wend;
            if (w_end <= 0.0) {
                double a_big = 0.0;
                for (double a : singularity_positions(spec, solve_eps))
                    a_big = std::max(a_big, a);
                w_end = std::max(10.0, 20.0 * a_big);
            }
            const Trajectory traj = integrate_phi(spec, solve_eps, solve_w0, w_end, solve_tol);
            const auto os = open_out(solve_out);
            write_trajectory_csv(traj, out_or_stdout(os));
            if (solve_measure) {
                // window over the last 40% of the trajectory
                const WaveMeasurement m =
                    measure_wave(traj, {w_end - 0.4 * (w_end - solve_w0), w_end}, solve_tol);
                std::cerr << "amplitude " << m.amplitude << "  wavelength " << m.wavelength
                          << "  extrema " << m.extrema_count << "\n";
            }
        } else if (*stokes) {
            const ForcingSpec spec = make_spec(stokes_spec);
            const auto sings = singularity_positions(spec, solve_eps);
            std::vector<int> ks;
            if (stokes_k >= 0) ks.push_back(stokes_k);
            else for (int k = 0; k < static_cast<int>(sings.size()); ++k) ks.push_back(k);
            for (int k : ks) {
                const StokesPath p = trace_stokes_line(spec, k, stokes_step, stokes_arc, solve_eps);
                std::string path = stokes_out;
                if (ks.size() > 1) {
                    const auto dot = path.rfind('.');
                    path = path.substr(0, dot) + "_k" + std::to_string(k + 1) +
                           (dot == std::string::npos ? ".csv" : path.substr(dot));
                }
                std::ofstream os(path, std::ios::binary);
                write_stokes_csv(p, os);
                std::cerr << "k=" << k + 1 << " -> " << path << "  ("
                          << (p.terminated_by == StokesPath::Termination::CrossedRealAxis
                                  ? "crossed real axis at w = " + std::to_string(p.crossing())
                                  : "no crossing")
                          << ")\n";
            }
        } else if (*omega) {
            if (omega_beta >= 0.0) {
                const Rational s1 = Rational::parse(omega_sigma);
                const Rational s2 =
                    omega_sigma2.empty() ? s1 : Rational::parse(omega_sigma2);
                const CoalescingForcing probe(omega_a, std::max(omega_beta, 1e-12), s1, s2);
                const DivergenceFit f =
                    omega_cc(s1, s2, omega_a, omega_beta, probe.ell, probe.m, omega_nmax);
                std::cout << "omega_cc = " << f.omega << "\ntau = " << f.tau
                          << "\nerr_estimate = " << f.omega_err
                          << "\nalternating = " << (f.alternating_sign ? "yes" : "no") << "\n";
            } else {
                double err = 0.0;
                const double om = omega_separated(Rational::parse(omega_sigma), omega_nmax, &err);
                std::cout << "omega = " << om << "\nerr_estimate = " << err << "\n";
            }
        } else if (*fit) {
            CoeffSeq seq;
            if (fit_rec == "toy") {
                seq = toy_recurrence(fit_nmax);
            } else if (fit_rec == "separated") {
                seq = inner_separated(Rational::parse(fit_spec.sigma1), fit_nmax);
                fit_m = 1;
            } else {
                const CoalescingForcing spec(fit_spec.a, fit_spec.beta,
                                             Rational::parse(fit_spec.sigma1),
                                             Rational::parse(fit_spec.sigma2));
                seq = inner_coalescing(spec, fit_nmax);
                fit_m = static_cast<int>(spec.m);
            }
            const int lo = fit_nlo > 0 ? fit_nlo : fit_nmax / 3;
            const int hi = fit_nhi > 0 ? fit_nhi : fit_nmax;
            const DivergenceFit f = fit_divergence(seq, fit_m, lo, hi);
            std::cout << "m = " << f.m << "\ngamma = " << f.gamma.real() << " + "
                      << f.gamma.imag() << "i\n";
            for (std::size_t j = 0; j < f.mu.size(); ++j)
                std::cout << "mu" << j + 1 << " = " << f.mu[j].real() << " + " << f.mu[j].imag()
                          << "i  (|.| " << std::abs(f.mu[j]) << ")\n";
            std::cout << "omega = " << f.omega << "\ntau = " << f.tau
                      << "\nresidual = " << f.residual
                      << "\nalternating = " << (f.alternating_sign ? "yes" : "no") << "\n";
            if (!fit_out.empty()) {
                const auto h = h_sequence(seq, f.m, f.gamma, f.mu, f.alternating_sign);
                std::ofstream os(fit_out, std::ios::binary);
                write_sequence_csv(seq, h, os);
            }
        } else if (*amp) {
            const Rational s1 = Rational::parse(amp_spec.sigma1);
            const Rational s2 = Rational::parse(amp_spec.sigma2);
            if (amp_regime == "single") {
                const double om = omega_separated(s1, amp_nmax);
                const AmplitudePrediction p = amp_single(amp_spec.a, s1, amp_eps, om);
                std::cout << "amplitude = " << p.amplitude << "\nprefactor = " << p.prefactor
                          << "\nexponent_rate = " << p.exponent_rate << "  (Omega = " << om
                          << ")\n";
            } else if (amp_regime == "separated") {
                const SeparatedForcing spec(amp_spec.a1, amp_spec.a2, s1, s2);
                std::map<Rational, double> table{{s1, omega_separated(s1, amp_nmax)}};
                if (!(s2 == s1)) table.emplace(s2, omega_separated(s2, amp_nmax));
                const auto parts = amp_separated(spec, amp_eps, table);
                for (std::size_t k = 0; k < parts.size(); ++k) {
                    std::cout << "wave " << k + 1 << ": ";
                    if (!parts[k].stokes_crossing) {
                        std::cout << "excluded (Stokes line misses w > 0)\n";
                        continue;
                    }
                    std::cout << "amplitude " << parts[k].amplitude << ", Re chi "
                              << parts[k].exponent_rate << ", phase " << parts[k].phase << "\n";
                }
                std::cout << "combined = " << combined_amplitude(parts) << "\n";
            } else {
                const CoalescingForcing probe(amp_spec.a, amp_spec.beta, s1, s2);
                const DivergenceFit f = omega_cc(s1, s2, amp_spec.a, amp_spec.beta, probe.ell,
                                                 probe.m, amp_nmax);
                const AmplitudePrediction p =
                    amp_coalescing(amp_spec.a, amp_spec.beta, s1, s2, amp_eps, f.omega,
                                   std::numeric_limits<double>::infinity());
                std::cout << "amplitude = " << p.amplitude << "\nprefactor = " << p.prefactor
                          << "\nexponent_rate = " << p.exponent_rate
                          << "\nsecondary_rate = " << p.secondary_rate
                          << "  (Omega_cc = " << f.omega << ")\n";
            }
        } else if (*sweep) {
            SweepConfig cfg = SweepConfig::preset(experiment_from_name(sweep_exp));
            if (sweep_eps > 0.0) cfg.epsilon = sweep_eps;
            if (sweep_a1min > 0.0) cfg.a1_min = sweep_a1min;
            if (sweep_a1max > 0.0) cfg.a1_max = sweep_a1max;
            if (sweep_grid > 0) cfg.grid = sweep_grid;
            if (sweep_nmax > 0) cfg.n_max = sweep_nmax;
            if (sweep_tol > 0.0) cfg.ode_tol = sweep_tol;
            if (!sweep_s1.empty()) cfg.sigma1 = Rational::parse(sweep_s1);
            if (!sweep_s2.empty()) cfg.sigma2 = Rational::parse(sweep_s2);
            const auto rows = run_sweep(cfg);
            const auto os = open_out(sweep_out);
            write_sweep_csv(cfg, rows, out_or_stdout(os));
        } else if (*accept) {
            return lowfroude::acceptance::report(lowfroude::acceptance::run(accept_filter));
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
