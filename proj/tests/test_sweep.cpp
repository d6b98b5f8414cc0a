#include <cmath>
#include <sstream>

#include "doctest.h"
#include "lowfroude/amplitude.hpp"
#include "lowfroude/ode.hpp"
#include "lowfroude/recurrence.hpp"
#include "lowfroude/sweep.hpp"

using namespace lowfroude;

TEST_CASE("degenerate single-point sweep equals direct module calls") {
    SweepConfig cfg = SweepConfig::preset(Experiment::Fig3);
    cfg.grid = 1;
    cfg.a1_min = cfg.a1_max = 0.8;
    cfg.w_end = 20.0;
    const auto rows = run_sweep(cfg);
    REQUIRE(rows.size() == 1);
    REQUIRE(!rows[0].failed);

    const SeparatedForcing spec(0.8, 0.2, {1, 4}, {1, 4});
    const Trajectory traj = integrate_phi(spec, cfg.epsilon, 1e-5, cfg.w_end, cfg.ode_tol);
    const double amp = measure_wave(traj, {16.0, 20.0}, cfg.ode_tol).amplitude;
    CHECK(*rows[0].ode_amplitude == doctest::Approx(amp).epsilon(1e-12));

    const double om = omega_separated({1, 4}, 2000);
    const double pred =
        combined_amplitude(amp_separated(spec, cfg.epsilon, {{{1, 4}, om}}, true));
    CHECK(*rows[0].pred_separated == doctest::Approx(pred).epsilon(1e-12));
}

TEST_CASE("sweep rows recompute their own error columns") {
    SweepConfig cfg = SweepConfig::preset(Experiment::Fig3);
    cfg.grid = 3;
    cfg.a1_min = 0.7;
    cfg.a1_max = 0.9;
    cfg.w_end = 20.0;
    const auto rows = run_sweep(cfg);
    for (const auto& r : rows) {
        REQUIRE(!r.failed);
        REQUIRE(r.ode_amplitude);
        REQUIRE(r.pred_separated);
        const double expect = std::fabs(*r.ode_amplitude - *r.pred_separated) / *r.ode_amplitude;
        CHECK(*r.err_separated == doctest::Approx(expect).epsilon(1e-14));
    }
}

TEST_CASE("sweep output is byte-identical across runs") {
    SweepConfig cfg = SweepConfig::preset(Experiment::Fig8);
    cfg.grid = 4;
    cfg.beta_min = 0.2;
    cfg.beta_max = 0.8;
    cfg.n_max = 800;
    std::ostringstream a, b;
    write_sweep_csv(cfg, run_sweep(cfg), a);
    write_sweep_csv(cfg, run_sweep(cfg), b);
    CHECK(a.str() == b.str());
    CHECK(a.str().find("beta,omega_cc,omega_merged,rel_gap,error\n") == 0);
    // LF endings only
    CHECK(a.str().find('\r') == std::string::npos);
}

TEST_CASE("fig8 sweep approaches the merged prefactor at small beta") {
    SweepConfig cfg = SweepConfig::preset(Experiment::Fig8);
    cfg.grid = 3;
    cfg.beta_min = 0.05;
    cfg.beta_max = 0.6;
    cfg.n_max = 1200;
    const auto rows = run_sweep(cfg);
    REQUIRE(rows.size() == 3);
    REQUIRE(!rows.front().failed);
    CHECK(*rows.front().err_single < 0.01);        // beta = 0.05 sits on Omega(1/3)
    CHECK(*rows.front().err_single < *rows.back().err_single);
}

TEST_CASE("fig9 sweep reports the matched large-beta comparison") {
    SweepConfig cfg = SweepConfig::preset(Experiment::Fig9);
    cfg.grid = 2;
    cfg.beta_min = std::sqrt(2.0);
    cfg.beta_max = 2.0;
    cfg.n_max = 2000;
    const auto rows = run_sweep(cfg);
    REQUIRE(rows.size() == 2);
    for (const auto& r : rows) {
        REQUIRE(!r.failed);
        CHECK(*r.err_separated < 0.05);
    }
}

TEST_CASE("stokes-map sweep lists the three crossings") {
    SweepConfig cfg = SweepConfig::preset(Experiment::StokesMap);
    const auto rows = run_sweep(cfg);
    REQUIRE(rows.size() == 3);
    for (const auto& r : rows) {
        REQUIRE(!r.failed);
        CHECK(*r.ode_amplitude > 0.0);  // crossing abscissa
    }
    CHECK(*rows[0].ode_amplitude == doctest::Approx(0.3171240574).epsilon(2e-3));
    CHECK(*rows[1].ode_amplitude == doctest::Approx(0.3064053536).epsilon(2e-3));
    CHECK(*rows[2].ode_amplitude == doctest::Approx(0.3174565811).epsilon(2e-3));
}

TEST_CASE("fig10 sweep: separated error blows up toward merging, coalescing stays bounded") {
    SweepConfig cfg = SweepConfig::preset(Experiment::Fig10);
    cfg.grid = 3;
    cfg.a1_min = 0.52;
    cfg.a1_max = 0.62;
    cfg.n_max = 1200;
    const auto rows = run_sweep(cfg);
    REQUIRE(rows.size() == 3);
    for (const auto& r : rows) REQUIRE(!r.failed);
    // separated prediction degenerates as the singularities merge ...
    CHECK(*rows[0].err_separated > 1.0);
    CHECK(*rows[0].err_separated > 3.0 * *rows[2].err_separated);
    // ... while the coalescing prediction error stays bounded
    for (const auto& r : rows) CHECK(*r.err_coalescing < 0.6);
}

TEST_CASE("experiment names round-trip") {
    for (Experiment e : {Experiment::Fig3, Experiment::Fig8, Experiment::Fig9, Experiment::Fig10,
                         Experiment::StokesMap, Experiment::Custom})
        CHECK(experiment_from_name(experiment_name(e)) == e);
    CHECK_THROWS_AS(experiment_from_name("fig42"), DomainError);
}
