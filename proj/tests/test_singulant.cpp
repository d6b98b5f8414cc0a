#include <cmath>

#include "doctest.h"
#include "lowfroude/quadrature.hpp"
#include "lowfroude/singulant.hpp"

using namespace lowfroude;

TEST_CASE("chi_merged closed-form checks") {
    const double a = 0.5;
    // chi(a) = a pi + 2 i a
    CHECK(std::abs(chi_merged({a, 0.0}, a) - Complex(a * kPi, 2.0 * a)) < 1e-15);
    // Re chi = a pi exactly on w > 0
    for (double w : {0.01, 0.3, 1.0, 42.0})
        CHECK(std::fabs(chi_merged({w, 0.0}, a).real() - a * kPi) < 1e-14);
    // chi(-a) -> 0 from the upper side
    CHECK(std::abs(chi_merged({-a, 1e-9}, a)) < 1e-6);
    CHECK_THROWS_AS(chi_merged({-0.2, 0.0}, a), BranchCutHit);
    CHECK_THROWS_AS(chi_merged({0.0, 0.0}, a), BranchCutHit);
}

TEST_CASE("chi_numeric matches chi_merged for the single sigma=1/3 forcing") {
    const double a = 0.5;
    const ForcingSpec spec = SingleForcing(a, {1, 3});
    for (const Complex w : {Complex(0.5, 0.0), Complex(0.9, 0.7), Complex(-0.8, 0.5)}) {
        const Complex numeric = chi_to(spec, 0, w, 0.0, 1e-11);
        CHECK(std::abs(numeric - chi_merged(w, a)) < 1e-8);
    }
}

TEST_CASE("chi of a zero-length path is zero") {
    const ForcingSpec spec = SingleForcing(0.5, {1, 3});
    const Complex chi = chi_numeric(spec, 0, {-0.5, 0.0}, {});
    CHECK(std::abs(chi) < 1e-12);
}

TEST_CASE("path independence across homotopic detours") {
    const ForcingSpec spec = SeparatedForcing(0.75, 0.25, {1, 6}, {1, 6});
    const Complex w(1.0, 0.0);
    const Complex a = chi_numeric(spec, 0, w, {{-0.75, 0.4}, {1.0, 0.4}});
    const Complex b = chi_numeric(spec, 0, w, {{-0.75, 1.1}, {1.0, 1.1}});
    const Complex c = chi_numeric(spec, 0, w, {{-0.9, 0.8}, {0.3, 1.3}, {1.0, 0.6}});
    CHECK(std::abs(a - b) < 1e-8);
    CHECK(std::abs(a - c) < 1e-8);
}

TEST_CASE("Re chi_1 on w > 0 equals the residue value pi (a1 + a2)/2 for sixth powers") {
    const ForcingSpec spec = SeparatedForcing(0.75, 0.25, {1, 6}, {1, 6});
    const Complex chi1 = chi_to(spec, 0, {1.0, 0.0}, 0.0, 1e-11);
    CHECK(std::fabs(chi1.real() - kPi * 0.5) < 1e-8);
}

TEST_CASE("paths violating clearance are rejected") {
    const ForcingSpec spec = SeparatedForcing(0.75, 0.25, {1, 6}, {1, 6});
    // straight path through the other singularity
    CHECK_THROWS_AS(chi_numeric(spec, 0, {1.0, 0.0}, {}), PathTooClose);
}

TEST_CASE("re_chi2_separated") {
    const double a = 0.5, beta = 1.0, eps = 0.075;
    SUBCASE("merged limit beta = 0") {
        CHECK(re_chi2_separated(a, 0.0, eps) == doctest::Approx(kPi * a).epsilon(1e-15));
    }
    SUBCASE("matches quadrature for the near-merged pair") {
        const double d = std::sqrt(eps) * beta;
        const ForcingSpec spec = SeparatedForcing(a + d, a - d, {1, 6}, {1, 6});
        const double quad = chi_to(spec, 1, {1.0, 0.0}, 0.0, 1e-11).real();
        CHECK(std::fabs(re_chi2_separated(a, beta, eps) - quad) < 1e-6);
    }
    SUBCASE("expansion pi a - re_chi2 ~ pi eps beta^2 / 2a") {
        const double eps_small = 1e-5;
        const double gap = kPi * a - re_chi2_separated(a, beta, eps_small);
        CHECK(gap == doctest::Approx(kPi * eps_small * beta * beta / (2.0 * a)).epsilon(1e-4));
    }
    SUBCASE("domain guard") {
        CHECK_THROWS_AS(re_chi2_separated(0.5, 2.0, 0.1), DomainError);
    }
}

TEST_CASE("stokes line of the merged sigma=1/3 forcing") {
    const ForcingSpec spec = SingleForcing(0.5, {1, 3});
    const StokesPath p = trace_stokes_line(spec, 0, 5e-4, 6.0);
    REQUIRE(p.terminated_by == StokesPath::Termination::CrossedRealAxis);
    // crossing solves x = a e^{-(x+a)/a}: x* = 0.13923227...
    CHECK(p.crossing() == doctest::Approx(0.1392322714).epsilon(2e-3));
    // Re chi at the crossing approaches pi a
    CHECK(p.chi.back().real() == doctest::Approx(kPi * 0.5).epsilon(5e-3));
}

TEST_CASE("stokes lines of the separated quarter-power pair both cross w > 0") {
    const ForcingSpec spec = SeparatedForcing(0.75, 0.35, {1, 4}, {1, 4});
    const StokesPath p1 = trace_stokes_line(spec, 0, 5e-4, 8.0);
    const StokesPath p2 = trace_stokes_line(spec, 1, 5e-4, 8.0);
    REQUIRE(p1.terminated_by == StokesPath::Termination::CrossedRealAxis);
    REQUIRE(p2.terminated_by == StokesPath::Termination::CrossedRealAxis);
    CHECK(p1.crossing() == doctest::Approx(0.3171240574).epsilon(2e-3));
    CHECK(p2.crossing() == doctest::Approx(0.3064053536).epsilon(2e-3));
}

TEST_CASE("Re chi increases monotonically along a traced line") {
    const ForcingSpec spec = SingleForcing(0.5, {1, 2});
    const StokesPath p = trace_stokes_line(spec, 0, 5e-4, 6.0);
    REQUIRE(p.terminated_by == StokesPath::Termination::CrossedRealAxis);
    CHECK(p.crossing() == doctest::Approx(0.3174565811).epsilon(2e-3));
    for (std::size_t i = 1; i < p.chi.size(); ++i)
        CHECK(p.chi[i].real() > p.chi[i - 1].real());
    // |Im chi| pinned to the line
    for (std::size_t i = 0; i + 1 < p.chi.size(); ++i)
        CHECK(std::fabs(p.chi[i].imag()) < 1e-8);
}

TEST_CASE("d chi/dw = i/q_s^3 along the path, by central differences") {
    const ForcingSpec spec = SingleForcing(0.5, {1, 3});
    const StokesPath p = trace_stokes_line(spec, 0, 1.2e-4, 6.0);
    // compare successive chi increments with the midpoint derivative
    for (std::size_t i = 120; i + 120 < p.points.size(); i += 97) {
        const Complex dw = p.points[i + 1] - p.points[i - 1];
        const Complex dchi = p.chi[i + 1] - p.chi[i - 1];
        const Complex q = eval_qs(spec, p.points[i]);
        const Complex expect = Complex(0, 1) / (q * q * q);
        CHECK(std::abs(dchi / dw - expect) / std::abs(expect) < 1e-6);
    }
}

TEST_CASE("sigma1 -> sigma2 flattens the first line onto the inter-singularity segment") {
    // seed angle shrinks toward zero and the path hugs the real axis
    const ForcingSpec tilted = SeparatedForcing(0.75, 0.35, {1, 4}, {1, 6});
    const ForcingSpec nearly = SeparatedForcing(0.75, 0.35, {9, 50}, {1, 6});
    const StokesPath pt = trace_stokes_line(tilted, 0, 5e-4, 8.0);
    const StokesPath pn = trace_stokes_line(nearly, 0, 5e-4, 8.0);
    const auto max_im_over_segment = [](const StokesPath& p) {
        double m = 0.0;
        for (const Complex& w : p.points)
            if (w.real() > -0.75 && w.real() < -0.35) m = std::max(m, std::fabs(w.imag()));
        return m;
    };
    CHECK(std::fabs(pn.seed_angle) < std::fabs(pt.seed_angle));
    CHECK(max_im_over_segment(pn) < max_im_over_segment(pt));
    CHECK(max_im_over_segment(pn) < 0.12);
}

TEST_CASE("step guard") {
    const ForcingSpec spec = SingleForcing(0.5, {1, 3});
    CHECK_THROWS_AS(trace_stokes_line(spec, 0, 0.1, 6.0), DomainError);
}
