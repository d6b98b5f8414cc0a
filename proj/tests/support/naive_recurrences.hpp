#pragma once

// Straightforward reference evaluations of the inner-problem recurrences,
// kept deliberately independent of the scaled production path. Plain double
// arithmetic: valid while Gamma-scale growth stays in range (n <~ 250).

#include <complex>
#include <vector>

#include "lowfroude/forcing.hpp"

namespace lowfroude::testing {

inline std::vector<double> naive_toy(int n_max) {
    std::vector<double> a(n_max + 1, 0.0);
    a[1] = 1.0;
    a[2] = 1.0;
    for (int n = 3; n <= n_max; ++n)
        a[n] = (n / 2.0 - 1.0) * a[n - 2] + (n / 2.0 - 1.5) * a[n - 3];
    return a;
}

inline std::vector<double> naive_separated(double sigma, int n_max) {
    const double coef = 2.0 * sigma / (1.0 + 3.0 * sigma);
    std::vector<double> a(n_max + 1, 0.0);
    a[0] = 1.0;
    for (int n = 1; n <= n_max; ++n) {
        double s = 0.0;
        for (int j = 0; j < n; ++j) s += (j + coef) * a[j] * a[n - 1 - j];
        a[n] = s;
    }
    return a;
}

/// Explicit sigma = 1/3 (ell = 1, m = 2) relation, transcribed directly.
inline std::vector<Complex> naive_cc_m2(const CoalescingForcing& spec, int n_max) {
    std::vector<Complex> eh(n_max + 1);
    for (int n = 0; n <= n_max; ++n) eh[n] = eval_ehat(n, spec);
    std::vector<Complex> a(n_max + 1, Complex(0, 0));
    a[0] = 1.0;
    if (n_max >= 1) a[1] = eh[0] * eh[1] + eh[1] * eh[0];
    for (int n = 2; n <= n_max; ++n) {
        Complex s = 0.0;
        for (int j = 0; j <= n; ++j) s += eh[j] * eh[n - j];
        for (int k = 0; k <= n - 2; ++k) {
            Complex inner = 0.0;
            for (int j = 0; j <= n - 2 - k; ++j)
                inner += ((j + 2.0 / 3.0) / 2.0) * a[j] * a[n - 2 - k - j];
            s += eh[k] * inner;
        }
        a[n] = s;
    }
    return a;
}

/// General (ell, m) relation with the full uncached double sum.
inline std::vector<Complex> naive_cc_general(const CoalescingForcing& spec, int n_max) {
    const int m = static_cast<int>(spec.m);
    const double sig_ell = 2.0 * spec.sigma().value() * static_cast<double>(spec.ell);
    std::vector<Complex> eh(n_max + 1);
    for (int n = 0; n <= n_max; ++n) eh[n] = eval_ehat(n, spec);
    std::vector<Complex> a(n_max + 1, Complex(0, 0));
    a[0] = 1.0;
    for (int n = 1; n <= n_max; ++n) {
        Complex s = 0.0;
        for (int j = 0; j <= n; ++j) s += eh[j] * eh[n - j];
        if (n >= m) {
            for (int k = 0; k <= n - m; ++k) {
                Complex inner = 0.0;
                for (int j = 0; j <= n - m - k; ++j)
                    inner += ((j + sig_ell) / m) * a[j] * a[n - m - k - j];
                s += eh[k] * inner;
            }
        }
        a[n] = s;
    }
    return a;
}

} // namespace lowfroude::testing
