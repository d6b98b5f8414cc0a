#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

#include "lowfroude/forcing.hpp"
#include "lowfroude/types.hpp"

namespace lowfroude {

/// Sampled complex solution phi(w) along real w.
struct Trajectory {
    std::vector<double> w;     // strictly increasing, w.front() == w0
    std::vector<Complex> phi;
    double epsilon = 0.0;
    ForcingSpec spec = SingleForcing(1.0, {1, 3});
    double w0 = 0.0;
    double w_end = 0.0;
};

/// Integrates d phi/dw = (phi - q_s^2)/(i eps q_s phi) from w0 with
/// phi(w0) = q_s^2 + 2 i eps q_s^4 q_s' by an embedded Dormand-Prince 5(4)
/// pair on the complex field. Steps are capped at eps/6 so the far-field
/// oscillation stays resolved in the samples.
Trajectory integrate_phi(const ForcingSpec& spec, double epsilon, double w0, double w_end,
                         double tol);

struct WaveMeasurement {
    double amplitude = 0.0;
    double wavelength = 0.0;
    std::pair<double, double> window{0.0, 0.0};
    int extrema_count = 0;
};

/// Extracts the far-field wave from Re(phi) by subtracting the asymptotic
/// background through O(eps^2):
///   q_s^2 + eps Re(2i q_s^4 q_s') + eps^2 (-12 q_s^6 q_s'^2 - 2 q_s^7 q_s''),
/// (the O(eps) term vanishes identically on real w) then measuring
/// half the mean peak-to-trough and the mean peak spacing.
/// WindowTooShort with fewer than 3 extrema; NoWaveDetected when the
/// residual is below 100x the integrator tolerance.
WaveMeasurement measure_wave(const Trajectory& traj, std::pair<double, double> window,
                             double tol_used);

/// Background that measure_wave subtracts, exposed for tests.
double wave_background(const ForcingSpec& spec, double w, double epsilon);

/// CSV export: w,re_phi,im_phi.
void write_trajectory_csv(const Trajectory& traj, std::ostream& os);

} // namespace lowfroude
