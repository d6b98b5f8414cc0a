#pragma once

#include <iosfwd>
#include <vector>

#include "lowfroude/forcing.hpp"
#include "lowfroude/types.hpp"

namespace lowfroude {

/// chi_k(w) = int_{-a_k}^w i/q_s^3 by adaptive quadrature along the
/// piecewise-linear path -a_k -> waypoints... -> w. The path interior must
/// clear every singularity and the origin by at least `clearance`
/// (PathTooClose otherwise); only the starting endpoint may touch -a_k.
Complex chi_numeric(const ForcingSpec& spec, int k, Complex w,
                    const std::vector<Complex>& waypoints, double epsilon = 0.0,
                    double abs_tol = 1e-10, double clearance = 1e-6);

/// Rectangular detour waypoints -a_k -> -a_k + ih -> Re(w) + ih used by the
/// convenience overload below; h defaults to half the largest geometry scale.
std::vector<Complex> default_chi_waypoints(const ForcingSpec& spec, int k, Complex w,
                                           double epsilon = 0.0, double h = 0.0);

/// chi_numeric along the default detour path.
Complex chi_to(const ForcingSpec& spec, int k, Complex w, double epsilon = 0.0,
               double abs_tol = 1e-10);

/// int_{-a_{k_from}}^{-a_{k_to}} i/q_s^3 along the upper side of the real
/// segment (both endpoint singularities are integrable); feeds the relative
/// phase of the two separated wave contributions.
Complex chi_between_singularities(const ForcingSpec& spec, int k_from, int k_to,
                                  double epsilon = 0.0, double abs_tol = 1e-12);

/// Closed-form merged singulant for sigma = 1/3:
/// chi(w) = a pi + i[(w+a) + a log(w/a)], principal log.
/// Re chi = a pi exactly for real w > 0. BranchCutHit on (-inf, 0].
Complex chi_merged(Complex w, double a);

/// Re chi_2 on w > 0 for the near-merged pair a1 = a + sqrt(eps) beta,
/// a2 = a - sqrt(eps) beta with sigma1 = sigma2 = 1/6:
/// pi a sqrt(1 - eps (beta/a)^2). DomainError if eps (beta/a)^2 >= 1.
double re_chi2_separated(double a, double beta, double epsilon);

struct StokesPath {
    enum class Termination { CrossedRealAxis, MaxLength, LeftDomain };
    Complex origin;
    std::vector<Complex> points;
    std::vector<Complex> chi;  // accumulated singulant at each point
    Termination terminated_by = Termination::MaxLength;
    double seed_angle = 0.0;

    /// Real-axis crossing abscissa (only meaningful for CrossedRealAxis).
    [[nodiscard]] double crossing() const;
};

/// Traces the Stokes line Im chi = 0, Re chi >= 0 from singularity k by
/// predictor-corrector marching. Seed directions come from the local model
/// chi ~ X_k (w + a_k)^{1+3 sigma_k}; seeds are marched and the preferred
/// path (crossing the positive real axis, upper half-plane first) returned.
StokesPath trace_stokes_line(const ForcingSpec& spec, int k, double step, double max_arc,
                             double epsilon = 0.0, double bbox = 4.0);

/// All admissible seed traces (diagnostics; trace_stokes_line picks from these).
std::vector<StokesPath> trace_stokes_seeds(const ForcingSpec& spec, int k, double step,
                                           double max_arc, double epsilon = 0.0,
                                           double bbox = 4.0);

/// CSV export: re_w,im_w,re_chi,im_chi
void write_stokes_csv(const StokesPath& path, std::ostream& os);

} // namespace lowfroude
