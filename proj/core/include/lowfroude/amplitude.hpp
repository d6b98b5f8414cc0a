#pragma once

#include <map>
#include <vector>

#include "lowfroude/forcing.hpp"
#include "lowfroude/types.hpp"

namespace lowfroude {

/// gamma_k = 6 sigma / (1 + 3 sigma).
double gamma_k(Rational sigma);

enum class Regime { Single, Separated, Coalescing };

struct AmplitudePrediction {
    Regime regime = Regime::Single;
    double amplitude = 0.0;       // prefactor * exp(-exponent_rate/eps - secondary_rate/sqrt(eps))
    double prefactor = 0.0;
    double exponent_rate = 0.0;   // coefficient of -1/eps  (= Re chi on w > 0)
    double secondary_rate = 0.0;  // coefficient of -1/sqrt(eps)
    double phase = 0.0;           // Psi_k (far-field phase shift)
    bool stokes_crossing = true;  // false when the Stokes line misses w > 0
    // inputs echoed
    double epsilon = 0.0;
    double a_k = 0.0;
    Rational sigma_k{0, 1};
    double omega_used = 0.0;
};

/// One-singularity far-field amplitude. Re chi is the closed form a pi for
/// sigma = 1/3 and quadrature otherwise.
AmplitudePrediction amp_single(double a, Rational sigma, double epsilon, double omega);

/// Per-singularity far-field wave of the well-separated analysis. Entries
/// whose Stokes line does not reach the positive real axis are returned with
/// stokes_crossing = false and zero amplitude. omega_table supplies
/// Omega(sigma_k) per distinct power.
std::vector<AmplitudePrediction> amp_separated(const SeparatedForcing& spec, double epsilon,
                                               const std::map<Rational, double>& omega_table,
                                               bool check_stokes = true);

/// |sum_k A_k e^{i Psi_k}| over contributing entries: the far-field
/// amplitude of the coherent two-wave superposition.
double combined_amplitude(const std::vector<AmplitudePrediction>& parts);

/// Near-merged special form of the separated prediction for
/// sigma1 = sigma2 = 1/6 with a1 = a + sqrt(eps) beta, a2 = a - sqrt(eps) beta:
/// [2 a^{4/3} e^{pi beta^2/2a} / (3 beta)^{2/3}] Omega(1/6) (pi/eps) e^{-pi a/eps}.
double amp_separated_sixth_wrapper(double a, double beta, double epsilon, double omega_sixth);

/// Coalescing-regime amplitude (sigma1 + sigma2 = 1/3 only):
/// [pi a Omega_cc / (eps q0^4(w))] exp[-(9 pi beta^2/4a)(2 f1^2 - f2)]
///   * exp[-a pi/eps - 3 pi beta |sigma2 - sigma1| / sqrt(eps)].
/// Pass w = +infinity for the far-field form (q0 -> 1).
AmplitudePrediction amp_coalescing(double a, double beta, Rational sigma1, Rational sigma2,
                                   double epsilon, double omega_cc, double w);

/// Coalescing wrapper at sigma1 = sigma2 = 1/6:
/// a e^{3 pi beta^2/8a} Omega_cc (pi/eps) e^{-pi a/eps}.
double amp_coalescing_sixth_wrapper(double a, double beta, double epsilon, double omega_cc);

/// r_1(w) = 3 i beta f_1 log(-w/a) / sqrt(2 chi), log branch fixed so that
/// F_1 = sqrt(2 chi) r_1 = -3 pi beta |sigma2 - sigma1| + 3 i beta (sigma2-sigma1) log(w/a)
/// on w > 0 (decaying secondary exponential).
Complex r1_eval(Complex w, double a, double beta, Rational sigma1, Rational sigma2);

/// F_1 = sqrt(2 chi) r_1.
Complex f1_exponent(Complex w, double a, double beta, Rational sigma1, Rational sigma2);

/// Late-order prefactor P(w) = (c^6 X)^gamma [Omega_cc e^{i tau}]
/// q0^{2(1-3 gamma)} exp[(r_1^2 - mu_1^2)/4], with Arg(c^6 X) fixed to 3 pi/2.
Complex p_eval(Complex w, double a, double beta, Rational sigma1, Rational sigma2,
               double omega_cc, double tau);

} // namespace lowfroude
