#pragma once

#include <variant>
#include <vector>

#include "lowfroude/scaled_complex.hpp"
#include "lowfroude/types.hpp"

namespace lowfroude {

// The three forcing families q_s(w). Complex powers of every (w + a_k)
// factor use the principal branch, so each factor's cut runs along the
// negative real axis from its own singularity and Arg(-a) = +pi. That fixes
// c = (-a)^sigma = a^sigma e^{i pi sigma} and all downstream phases.

struct SingleForcing {
    double a;
    Rational sigma;

    SingleForcing(double a_, Rational sigma_);
};

struct SeparatedForcing {
    double a1;
    double a2;
    Rational sigma1;
    Rational sigma2;

    SeparatedForcing(double a1_, double a2_, Rational s1, Rational s2);
};

struct CoalescingForcing {
    double a;
    double beta;
    Rational sigma1;
    Rational sigma2;
    long long ell;
    long long m;

    /// ell/m is derived from 1/(1 + 3(sigma1+sigma2)) in lowest terms.
    CoalescingForcing(double a_, double beta_, Rational s1, Rational s2);

    [[nodiscard]] double singularity_offset(double epsilon) const;   // epsilon^{ell/m} * beta
    [[nodiscard]] Rational sigma() const { return sigma1 + sigma2; }
    [[nodiscard]] Complex inner_scale_x() const;                     // X = i/[c^3(1+3 sigma)]
};

using ForcingSpec = std::variant<SingleForcing, SeparatedForcing, CoalescingForcing>;

/// Pole-type singularities of q_s on the negative real axis (-a_k values).
std::vector<double> singularity_positions(const ForcingSpec& spec, double epsilon);

/// q_s(w). SingularityHit within the exclusion radius of a singularity.
/// epsilon is only consulted for the coalescing family, which is evaluated
/// in exact product form.
Complex eval_qs(const ForcingSpec& spec, Complex w, double epsilon = 0.0);

/// Closed-form dq_s/dw and d^2 q_s/dw^2 (log-derivative of the product form).
Complex qs_derivative(const ForcingSpec& spec, Complex w, double epsilon = 0.0);
Complex qs_second_derivative(const ForcingSpec& spec, Complex w, double epsilon = 0.0);

/// f_n of the coalescing series expansion: the finite Gamma-function sum.
/// Evaluated through log-gamma so large n cannot overflow.
double series_f(int n, Rational sigma1, Rational sigma2);

/// e_n = (beta/(w+a))^n f_n.
Complex eval_e(int n, Complex w, const CoalescingForcing& spec);

/// ehat_n = beta^{n/ell} X^{n/m} f_{n/ell} for ell | n, else 0 (inner-variable
/// series coefficients). Scaled form, since beta^{n} X^{n/m} overflows for
/// large n when beta is not small.
ScaledComplex eval_ehat_scaled(int n, const CoalescingForcing& spec);
Complex eval_ehat(int n, const CoalescingForcing& spec);

/// Local behaviour q_s ~ c_k (w + a_k)^{-sigma_k} at singularity k (0-based),
/// plus the inner scale X_k = i/[c_k^3 (1+3 sigma_k)].
struct LocalSingularity {
    double a_k;
    Rational sigma_k;
    Complex c_k;
    Complex x_k;
};
LocalSingularity local_expansion(const ForcingSpec& spec, int k, double epsilon = 0.0);

} // namespace lowfroude
