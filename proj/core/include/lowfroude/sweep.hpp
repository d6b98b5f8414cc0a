#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lowfroude/types.hpp"

namespace lowfroude {

enum class Experiment { Fig3, Fig8, Fig9, Fig10, StokesMap, Custom };

/// Configuration for one figure-reproduction sweep. Experiment presets fill
/// the benchmark parameter regimes; Custom takes everything from the fields.
struct SweepConfig {
    Experiment experiment = Experiment::Custom;
    double epsilon = 0.15;
    Rational sigma1{1, 4};
    Rational sigma2{1, 4};
    // Fig3/Fig10: the a1 grid, with a2 = 1 - a1 enforced
    double a1_min = 0.55;
    double a1_max = 0.95;
    // Fig8/Fig9: the beta grid at fixed a
    double a = 0.5;
    double beta_min = 0.05;
    double beta_max = 2.0;
    int grid = 40;
    double ode_tol = 1e-12;
    double w_end = 30.0;
    int n_max = 1600;
    std::string out;  // CSV path ("" = stdout)

    static SweepConfig preset(Experiment e);
};

struct SweepRow {
    double x = 0.0;  // independent variable (a1, beta or beta^2)
    std::optional<double> ode_amplitude;
    std::optional<double> pred_separated;
    std::optional<double> pred_coalescing;
    std::optional<double> pred_single;
    std::optional<double> err_separated;   // |numeric - prediction| / numeric
    std::optional<double> err_coalescing;
    std::optional<double> err_single;
    bool failed = false;
    std::string error;
};

std::vector<SweepRow> run_sweep(const SweepConfig& cfg);

void write_sweep_csv(const SweepConfig& cfg, const std::vector<SweepRow>& rows, std::ostream& os);

/// Parse Experiment from its lowercase name ("fig3", "fig8", ...).
Experiment experiment_from_name(const std::string& name);
std::string experiment_name(Experiment e);

} // namespace lowfroude
