#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lowfroude/forcing.hpp"
#include "lowfroude/scaled_complex.hpp"
#include "lowfroude/types.hpp"

namespace lowfroude {

/// Coefficient sequence produced by one of the inner-problem recurrences.
/// Values are held in scaled form so indices up to the thousands stay
/// representable; generation is deterministic bit-for-bit.
class CoeffSeq {
public:
    CoeffSeq() = default;
    CoeffSeq(std::vector<ScaledComplex> values, std::string meta)
        : values_(std::move(values)), meta_(std::move(meta)) {}

    [[nodiscard]] int size() const { return static_cast<int>(values_.size()); }
    [[nodiscard]] const std::string& meta() const { return meta_; }
    [[nodiscard]] const ScaledComplex& scaled(int n) const { return values_.at(n); }
    [[nodiscard]] bool is_zero(int n) const { return values_.at(n).is_zero(); }

    /// Plain complex value; infinite components once past double range.
    [[nodiscard]] Complex value(int n) const { return values_.at(n).value(); }

    /// Complex log, or nullopt for zero entries.
    [[nodiscard]] std::optional<Complex> log_value(int n) const { return values_.at(n).log(); }

private:
    std::vector<ScaledComplex> values_;
    std::string meta_;
};

/// A_1 = A_2 = 1, A_n = (n/2-1) A_{n-2} + (n/2-3/2) A_{n-3}; A_0 := 0.
CoeffSeq toy_recurrence(int n_max);

/// Inner recurrence of the one-singularity problem:
/// A_0 = 1, A_n = sum_{m<n} (m + 2 sigma/(1+3 sigma)) A_m A_{n-m-1}.
CoeffSeq inner_separated(Rational sigma, int n_max);

/// General coalescing inner recurrence (ehat-forced double sum); the
/// ell = 1, m = 2 case reduces to the explicit sigma = 1/3 relation.
CoeffSeq inner_coalescing(Rational sigma1, Rational sigma2, double a, double beta,
                          long long ell, long long m, int n_max);
CoeffSeq inner_coalescing(const CoalescingForcing& spec, int n_max);

/// Omega(sigma) = lim A_n / Gamma(n + gamma_k), Richardson-accelerated with
/// an O(1/n) correction model (one extra level). err_estimate, when given,
/// receives the spread of the last two extrapolants.
double omega_separated(Rational sigma, int n_max, double* err_estimate = nullptr);

struct MuGamma {
    Complex mu1;
    Complex gamma;
    bool alternating;  // true when sigma1 > sigma2 (the (-1)^n ansatz branch)
};

/// mu_1 = 3 beta |sigma2-sigma1| sqrt(2|X|) e^{-i pi/4} (branch with
/// Re mu_1 > 0) and gamma = 1 - 3 beta^2 X (2 f_1^2 - f_2); m = 2 regime
/// (sigma1 + sigma2 = 1/3) only, WrongRegime otherwise.
MuGamma analytic_mu_gamma(Rational sigma1, Rational sigma2, double a, double beta);

struct DivergenceFit {
    int m = 1;
    Complex gamma;
    std::vector<Complex> mu;   // mu_1 .. mu_{m-1}
    double omega = 0.0;        // |H_inf| of the canonical residue class
    double tau = 0.0;          // Arg(H_inf), in (-pi, pi]
    int residue_class = 0;     // canonical class reported
    bool alternating_sign = false;
    double residual = 0.0;     // max |difference-model residual| over the tail
    double omega_err = 0.0;    // extrapolant spread
    std::vector<Complex> class_limits;  // H_inf per residue class (zero cls skipped -> 0)
};

/// Least-squares extraction of (gamma, mu_j, Omega, tau) from the tail
/// [n_lo, n_hi] of a sequence assumed to follow
///   A_n ~ Omega e^{i tau} Gamma(n/m + gamma) exp(sum_j mu_j n^{(m-j)/m}).
/// Works on differenced logs (log A_{n+m} - log A_n) so the class constants
/// drop out, with a Gauss-Newton update for gamma and decaying correction
/// columns to absorb the algebraic tail. For m = 2 the differences are
/// averaged across the two residue classes, cancelling the subdominant
/// (-1)^n branch. IllConditioned if the tail is shorter than 10 m.
DivergenceFit fit_divergence(const CoeffSeq& seq, int m, int n_lo, int n_hi);

/// Omega^cc extraction: runs inner_coalescing, takes (gamma, mu_1) from
/// analytic_mu_gamma in the m = 2 regime (fit_divergence otherwise), scales
/// the sequence to H_n and Richardson-extrapolates per residue class with an
/// O(n^{-1/m}) correction model.
DivergenceFit omega_cc(Rational sigma1, Rational sigma2, double a, double beta, long long ell,
                       long long m, int n_max);

/// H_n = A_n (-1)^{n?} / [Gamma(n/m + gamma) exp(sum_j mu_j n^{(m-j)/m})];
/// zero entries give (0,0).
std::vector<Complex> h_sequence(const CoeffSeq& seq, int m, Complex gamma,
                                const std::vector<Complex>& mu, bool alternating);

/// CSV export: n,re_A,im_A,abs_H,arg_H (A columns from the scaled values;
/// entries past double range export as +/-inf).
void write_sequence_csv(const CoeffSeq& seq, const std::vector<Complex>& h, std::ostream& os);

} // namespace lowfroude
