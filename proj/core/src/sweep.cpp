#include "lowfroude/sweep.hpp"

#include <cmath>
#include <map>
#include <ostream>

#include "lowfroude/amplitude.hpp"
#include "lowfroude/csv.hpp"
#include "lowfroude/ode.hpp"
#include "lowfroude/recurrence.hpp"
#include "lowfroude/singulant.hpp"

namespace lowfroude {
namespace {

double ode_far_field_amplitude(const ForcingSpec& spec, double eps, double tol, double w_end) {
    const Trajectory traj = integrate_phi(spec, eps, 1e-5, w_end, tol);
    // measure over the last 20% of the range, far enough out that the
    // algebraic background has decayed below the wave scale
    const std::pair<double, double> window{0.8 * w_end, w_end};
    return measure_wave(traj, window, tol).amplitude;
}

std::vector<SweepRow> sweep_amplitude_vs_a1(const SweepConfig& cfg, bool with_coalescing) {
    // Omega values shared across rows
    const double om1 = omega_separated(cfg.sigma1, 2000);
    const double om2 = cfg.sigma2 == cfg.sigma1 ? om1 : omega_separated(cfg.sigma2, 2000);
    std::map<Rational, double> omega_table{{cfg.sigma1, om1}, {cfg.sigma2, om2}};
    const Rational sigma_merged = cfg.sigma1 + cfg.sigma2;
    const double om_merged = omega_separated(sigma_merged, 2000);

    std::vector<SweepRow> rows;
    for (int i = 0; i < cfg.grid; ++i) {
        const double a1 = cfg.a1_min + (cfg.a1_max - cfg.a1_min) * i /
                                           std::max(1, cfg.grid - 1);
        const double a2 = 1.0 - a1;  // a1 + a2 = 1 enforced
        const bool merged = a1 - a2 < 1e-9;  // coincident pair: merged forcing
        SweepRow row;
        row.x = a1;
        try {
            const double a_mid = 0.5 * (a1 + a2);
            if (merged) {
                row.ode_amplitude = ode_far_field_amplitude(
                    SingleForcing(a_mid, sigma_merged), cfg.epsilon, cfg.ode_tol, cfg.w_end);
            } else {
                const SeparatedForcing spec(a1, a2, cfg.sigma1, cfg.sigma2);
                row.ode_amplitude =
                    ode_far_field_amplitude(spec, cfg.epsilon, cfg.ode_tol, cfg.w_end);
                row.pred_separated =
                    combined_amplitude(amp_separated(spec, cfg.epsilon, omega_table,
                                                     /*check_stokes=*/true));
            }
            row.pred_single =
                amp_single(a_mid, sigma_merged, cfg.epsilon, om_merged).amplitude;
            if (with_coalescing) {
                const double beta = (a1 - a2) / (2.0 * std::sqrt(cfg.epsilon));
                double occ;
                if (beta < 1e-9) {
                    occ = om_merged;  // merged limit
                } else {
                    occ = omega_cc(cfg.sigma1, cfg.sigma2, a_mid, beta, 1, 2, cfg.n_max).omega;
                }
                row.pred_coalescing =
                    amp_coalescing(a_mid, beta, cfg.sigma1, cfg.sigma2, cfg.epsilon, occ,
                                   std::numeric_limits<double>::infinity())
                        .amplitude;
            }
            const double num = *row.ode_amplitude;
            if (row.pred_separated) row.err_separated = std::fabs(num - *row.pred_separated) / num;
            if (row.pred_coalescing)
                row.err_coalescing = std::fabs(num - *row.pred_coalescing) / num;
            if (row.pred_single) row.err_single = std::fabs(num - *row.pred_single) / num;
        } catch (const Error& e) {
            row.failed = true;
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<SweepRow> sweep_omega_vs_beta(const SweepConfig& cfg, bool beta_squared_axis) {
    const double om_merged = omega_separated(cfg.sigma1 + cfg.sigma2, 2000);
    const double om_local = omega_separated(cfg.sigma2, 2000);
    std::vector<SweepRow> rows;
    for (int i = 0; i < cfg.grid; ++i) {
        const double t = cfg.grid == 1 ? 0.0
                                       : static_cast<double>(i) / (cfg.grid - 1);
        const double beta_sq = beta_squared_axis
                                   ? cfg.beta_min * cfg.beta_min +
                                         t * (cfg.beta_max * cfg.beta_max -
                                              cfg.beta_min * cfg.beta_min)
                                   : 0.0;
        const double beta = beta_squared_axis ? std::sqrt(beta_sq)
                                              : cfg.beta_min + t * (cfg.beta_max - cfg.beta_min);
        SweepRow row;
        row.x = beta_squared_axis ? beta_sq : beta;
        try {
            const double occ =
                omega_cc(cfg.sigma1, cfg.sigma2, cfg.a, beta, 1, 2, cfg.n_max).omega;
            row.pred_coalescing = occ;
            if (beta_squared_axis) {
                // matched large-beta form of the prefactor
                row.pred_separated = 2.0 * std::pow(cfg.a / (9.0 * beta * beta), 1.0 / 3.0) *
                                     std::exp(kPi * beta * beta / (8.0 * cfg.a)) * om_local;
                row.err_separated = std::fabs(occ / *row.pred_separated - 1.0);
            } else {
                row.pred_single = om_merged;
                row.err_single = std::fabs(occ - om_merged) / om_merged;
            }
        } catch (const Error& e) {
            row.failed = true;
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<SweepRow> sweep_stokes_map(const SweepConfig& cfg) {
    // Crossing abscissae of the two separated lines plus the merged reference.
    std::vector<SweepRow> rows;
    const SeparatedForcing sep(0.75, 0.35, cfg.sigma1, cfg.sigma2);
    const SingleForcing merged(0.5, {1, 2});
    int idx = 0;
    const auto add = [&](const ForcingSpec& spec, int k) {
        SweepRow row;
        row.x = idx++;
        try {
            const StokesPath p = trace_stokes_line(spec, k, 5e-4, 8.0);
            if (p.terminated_by == StokesPath::Termination::CrossedRealAxis) {
                row.ode_amplitude = p.crossing();           // crossing abscissa
                row.pred_single = p.chi.back().real();      // Re chi at the crossing
            } else {
                row.failed = true;
                row.error = "no real-axis crossing";
            }
        } catch (const Error& e) {
            row.failed = true;
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    };
    add(sep, 0);
    add(sep, 1);
    add(merged, 0);
    return rows;
}

} // namespace

SweepConfig SweepConfig::preset(Experiment e) {
    SweepConfig cfg;
    cfg.experiment = e;
    switch (e) {
        case Experiment::Fig3:
            cfg.sigma1 = cfg.sigma2 = {1, 4};
            cfg.epsilon = 0.15;
            cfg.a1_min = 0.51;
            cfg.a1_max = 0.95;
            cfg.ode_tol = 1e-12;
            break;
        case Experiment::Fig10:
            cfg.sigma1 = cfg.sigma2 = {1, 6};
            cfg.epsilon = 0.075;
            cfg.a1_min = 0.5;
            cfg.a1_max = 0.95;
            cfg.ode_tol = 1e-13;
            break;
        case Experiment::Fig8:
            cfg.sigma1 = cfg.sigma2 = {1, 6};
            cfg.a = 0.5;
            cfg.beta_min = 0.05;
            cfg.beta_max = 1.5;
            break;
        case Experiment::Fig9:
            cfg.sigma1 = cfg.sigma2 = {1, 6};
            cfg.a = 0.5;
            cfg.beta_min = 1.0;
            cfg.beta_max = 2.0;
            break;
        case Experiment::StokesMap:
            cfg.sigma1 = cfg.sigma2 = {1, 4};
            break;
        case Experiment::Custom:
            break;
    }
    return cfg;
}

std::vector<SweepRow> run_sweep(const SweepConfig& cfg) {
    switch (cfg.experiment) {
        case Experiment::Fig3:
            return sweep_amplitude_vs_a1(cfg, /*with_coalescing=*/false);
        case Experiment::Fig10:
            return sweep_amplitude_vs_a1(cfg, /*with_coalescing=*/true);
        case Experiment::Fig8:
            return sweep_omega_vs_beta(cfg, /*beta_squared_axis=*/false);
        case Experiment::Fig9:
            return sweep_omega_vs_beta(cfg, /*beta_squared_axis=*/true);
        case Experiment::StokesMap:
            return sweep_stokes_map(cfg);
        case Experiment::Custom:
            return sweep_amplitude_vs_a1(cfg, cfg.sigma1 + cfg.sigma2 == Rational{1, 3});
    }
    throw DomainError("unknown experiment");
}

void write_sweep_csv(const SweepConfig& cfg, const std::vector<SweepRow>& rows,
                     std::ostream& os) {
    const bool omega_axis =
        cfg.experiment == Experiment::Fig8 || cfg.experiment == Experiment::Fig9;
    std::vector<std::string> header;
    if (cfg.experiment == Experiment::Fig8)
        header = {"beta", "omega_cc", "omega_merged", "rel_gap", "error"};
    else if (cfg.experiment == Experiment::Fig9)
        header = {"beta_sq", "omega_cc", "omega_matched", "rel_gap", "error"};
    else if (cfg.experiment == Experiment::StokesMap)
        header = {"line", "crossing", "re_chi", "error"};
    else
        header = {"a1",          "ode_amplitude", "pred_separated", "pred_coalescing",
                  "pred_single", "err_separated", "err_coalescing", "err_single",
                  "error"};
    CsvWriter csv(os, header);
    const auto cell = [](const std::optional<double>& v) {
        return v ? CsvWriter::format(*v) : std::string();
    };
    for (const auto& r : rows) {
        if (omega_axis) {
            csv.row({CsvWriter::format(r.x), cell(r.pred_coalescing),
                     cell(cfg.experiment == Experiment::Fig8 ? r.pred_single : r.pred_separated),
                     cell(cfg.experiment == Experiment::Fig8 ? r.err_single : r.err_separated),
                     r.error});
        } else if (cfg.experiment == Experiment::StokesMap) {
            csv.row({CsvWriter::format(r.x), cell(r.ode_amplitude), cell(r.pred_single),
                     r.error});
        } else {
            csv.row({CsvWriter::format(r.x), cell(r.ode_amplitude), cell(r.pred_separated),
                     cell(r.pred_coalescing), cell(r.pred_single), cell(r.err_separated),
                     cell(r.err_coalescing), cell(r.err_single), r.error});
        }
    }
}

Experiment experiment_from_name(const std::string& name) {
    if (name == "fig3") return Experiment::Fig3;
    if (name == "fig8") return Experiment::Fig8;
    if (name == "fig9") return Experiment::Fig9;
    if (name == "fig10") return Experiment::Fig10;
    if (name == "stokes-map") return Experiment::StokesMap;
    if (name == "custom") return Experiment::Custom;
    throw DomainError("unknown experiment name: " + name);
}

std::string experiment_name(Experiment e) {
    switch (e) {
        case Experiment::Fig3: return "fig3";
        case Experiment::Fig8: return "fig8";
        case Experiment::Fig9: return "fig9";
        case Experiment::Fig10: return "fig10";
        case Experiment::StokesMap: return "stokes-map";
        case Experiment::Custom: return "custom";
    }
    return "?";
}

} // namespace lowfroude
