#include "lowfroude/recurrence.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "lowfroude/csv.hpp"
#include "lowfroude/special_functions.hpp"

namespace lowfroude {
namespace {

struct Richardson {
    Complex l1;
    Complex l2;
};

// two-level Richardson with anchors h(n), h(n/2), h(n/4) and correction
// exponents p1 then p2 (ratio-2 grid)
Richardson richardson2(Complex h1, Complex h2, Complex h3, double p1, double p2) {
    const double r1 = std::pow(2.0, p1) - 1.0;
    const Complex l1a = h1 + (h1 - h2) / r1;
    const Complex l1b = h2 + (h2 - h3) / r1;
    const double r2 = std::pow(2.0, p2) - 1.0;
    return {l1a, l1a + (l1a - l1b) / r2};
}

// ---- small complex least squares via modified Gram-Schmidt QR ----
// columns are scaled to unit norm first; rank loss is judged relative to the
// original column size
std::vector<Complex> lstsq(std::vector<std::vector<Complex>> cols, std::vector<Complex> rhs) {
    const std::size_t ncol = cols.size();
    const std::size_t nrow = rhs.size();
    std::vector<double> scale(ncol, 1.0);
    for (std::size_t j = 0; j < ncol; ++j) {
        double nrm = 0.0;
        for (const Complex& x : cols[j]) nrm += std::norm(x);
        nrm = std::sqrt(nrm);
        if (nrm == 0.0) throw IllConditioned("zero basis column in divergence fit");
        scale[j] = nrm;
        for (Complex& x : cols[j]) x /= nrm;
    }
    std::vector<std::vector<Complex>> q(ncol);
    std::vector<std::vector<Complex>> r(ncol, std::vector<Complex>(ncol, Complex(0, 0)));
    for (std::size_t j = 0; j < ncol; ++j) {
        std::vector<Complex> v = cols[j];
        for (int pass = 0; pass < 2; ++pass) {  // re-orthogonalize once
            for (std::size_t i = 0; i < j; ++i) {
                Complex dot = 0.0;
                for (std::size_t t = 0; t < nrow; ++t) dot += std::conj(q[i][t]) * v[t];
                r[i][j] += dot;
                for (std::size_t t = 0; t < nrow; ++t) v[t] -= dot * q[i][t];
            }
        }
        double nrm = 0.0;
        for (const Complex& x : v) nrm += std::norm(x);
        nrm = std::sqrt(nrm);
        if (nrm < 1e-12) throw IllConditioned("collinear basis column in divergence fit");
        r[j][j] = nrm;
        q[j] = std::move(v);
        for (Complex& x : q[j]) x /= nrm;
    }
    std::vector<Complex> qtb(ncol);
    for (std::size_t i = 0; i < ncol; ++i) {
        Complex dot = 0.0;
        for (std::size_t t = 0; t < nrow; ++t) dot += std::conj(q[i][t]) * rhs[t];
        qtb[i] = dot;
    }
    std::vector<Complex> x(ncol);
    for (int i = static_cast<int>(ncol) - 1; i >= 0; --i) {
        Complex s = qtb[i];
        for (std::size_t j = i + 1; j < ncol; ++j) s -= r[i][j] * x[j];
        x[i] = s / r[i][i];
    }
    for (std::size_t j = 0; j < ncol; ++j) x[j] /= scale[j];
    return x;
}

// unwrapped complex logs per residue class mod m; nullopt for zero entries
std::vector<std::optional<Complex>> unwrapped_logs(const CoeffSeq& seq, int m, bool alternating) {
    std::vector<std::optional<Complex>> out(seq.size());
    std::vector<std::optional<Complex>> prev(m);
    for (int n = 0; n < seq.size(); ++n) {
        auto lc = seq.log_value(n);
        if (!lc) continue;
        Complex v = *lc;
        if (alternating && n % 2 == 1) v += Complex(0, kPi);
        const int c = n % m;
        if (prev[c]) {
            const double k = std::round((prev[c]->imag() - v.imag()) / (2.0 * kPi));
            v += Complex(0, 2.0 * kPi * k);
        }
        prev[c] = v;
        out[n] = v;
    }
    return out;
}

double f1_of(Rational s1, Rational s2) { return s2.value() - s1.value(); }
double f2_of(Rational s1, Rational s2) {
    const double d = s1.value() - s2.value();
    return 0.5 * (d * d + s1.value() + s2.value());
}

} // namespace

CoeffSeq toy_recurrence(int n_max) {
    if (n_max < 3) throw DomainError("toy_recurrence needs n_max >= 3");
    std::vector<ScaledComplex> a(n_max + 1);
    a[0] = ScaledComplex();  // series starts at n = 1
    a[1] = ScaledComplex(1.0);
    a[2] = ScaledComplex(1.0);
    for (int n = 3; n <= n_max; ++n)
        a[n] = a[n - 2] * (0.5 * n - 1.0) + a[n - 3] * (0.5 * n - 1.5);
    return {std::move(a), "toy"};
}

CoeffSeq inner_separated(Rational sigma, int n_max) {
    if (!(sigma.value() > 0.0 && sigma.value() < 1.0))
        throw DomainError("inner_separated needs 0 < sigma < 1");
    if (n_max > 3000) throw Overflow("inner_separated capped at n_max = 3000");
    const double coef = 2.0 * sigma.value() / (1.0 + 3.0 * sigma.value());
    std::vector<ScaledComplex> a(n_max + 1);
    a[0] = ScaledComplex(1.0);
    for (int n = 1; n <= n_max; ++n) {
        ScaledComplex s;
        for (int j = 0; j < n; ++j) s += a[j] * a[n - 1 - j] * (j + coef);
        a[n] = s;
    }
    return {std::move(a), "inner_separated sigma=" + sigma.str()};
}

CoeffSeq inner_coalescing(const CoalescingForcing& spec, int n_max) {
    if (n_max > 4000) throw Overflow("inner_coalescing capped at n_max = 4000");
    const int m = static_cast<int>(spec.m);
    const double sig_ell = 2.0 * spec.sigma().value() * static_cast<double>(spec.ell);
    std::vector<ScaledComplex> eh(n_max + 1);
    for (int n = 0; n <= n_max; ++n) eh[n] = eval_ehat_scaled(n, spec);

    std::vector<ScaledComplex> a(n_max + 1);
    std::vector<ScaledComplex> c(std::max(0, n_max - m + 1));  // c[p] = sum (j+2 sig l)/m A_j A_{p-j}
    a[0] = ScaledComplex(1.0);
    for (int n = 1; n <= n_max; ++n) {
        ScaledComplex s;
        for (int j = 0; j <= n; ++j) s += eh[j] * eh[n - j];
        if (n >= m) {
            const int p = n - m;
            ScaledComplex cp;
            for (int j = 0; j <= p; ++j) cp += a[j] * a[p - j] * ((j + sig_ell) / m);
            c[p] = cp;
            for (int k = 0; k <= n - m; ++k) {
                if (eh[k].is_zero()) continue;
                s += eh[k] * c[n - m - k];
            }
        }
        a[n] = s;
    }
    return {std::move(a), "inner_coalescing s1=" + spec.sigma1.str() + " s2=" + spec.sigma2.str() +
                              " a=" + std::to_string(spec.a) + " beta=" + std::to_string(spec.beta)};
}

CoeffSeq inner_coalescing(Rational sigma1, Rational sigma2, double a, double beta, long long ell,
                          long long m, int n_max) {
    const CoalescingForcing spec(a, beta, sigma1, sigma2);
    if (spec.ell != ell || spec.m != m)
        throw DomainError("ell/m inconsistent with 1/(1+3 sigma): expected " +
                          std::to_string(spec.ell) + "/" + std::to_string(spec.m));
    return inner_coalescing(spec, n_max);
}

double omega_separated(Rational sigma, int n_max, double* err_estimate) {
    if (n_max < 64) throw DomainError("omega_separated needs n_max >= 64");
    const CoeffSeq seq = inner_separated(sigma, n_max);
    const double g = 6.0 * sigma.value() / (1.0 + 3.0 * sigma.value());
    const auto t = [&](int n) {
        return std::exp(seq.scaled(n).log_abs() - std::lgamma(n + g));
    };
    const Richardson r =
        richardson2(t(n_max), t(n_max / 2), t(n_max / 4), 1.0, 2.0);
    const double err = std::abs(r.l2 - r.l1);
    if (err_estimate) *err_estimate = err;
    if (err > 0.05 * std::abs(r.l2))
        throw NonConvergence("omega_separated extrapolants disagree by " + std::to_string(err));
    return r.l2.real();
}

MuGamma analytic_mu_gamma(Rational sigma1, Rational sigma2, double a, double beta) {
    const Rational sig = sigma1 + sigma2;
    if (!(sig == Rational{1, 3}))
        throw WrongRegime("analytic_mu_gamma needs sigma1 + sigma2 = 1/3, got " + sig.str());
    const CoalescingForcing spec(a, beta, sigma1, sigma2);
    const Complex x = spec.inner_scale_x();  // -i/2a for this regime
    const double f1 = f1_of(sigma1, sigma2);
    const double f2 = f2_of(sigma1, sigma2);
    const Complex mu1 = 3.0 * beta * std::fabs(f1) * std::sqrt(2.0 * std::abs(x)) *
                        std::exp(Complex(0, -kPi / 4.0));
    const Complex gamma = 1.0 - 3.0 * beta * beta * x * (2.0 * f1 * f1 - f2);
    return {mu1, gamma, f1 < 0.0};
}

std::vector<Complex> h_sequence(const CoeffSeq& seq, int m, Complex gamma,
                                const std::vector<Complex>& mu, bool alternating) {
    std::vector<Complex> h(seq.size(), Complex(0, 0));
    for (int n = 0; n < seq.size(); ++n) {
        const auto lc = seq.log_value(n);
        if (!lc) continue;
        Complex v = *lc - log_gamma(static_cast<double>(n) / m + gamma);
        for (std::size_t j = 0; j < mu.size(); ++j)
            v -= mu[j] * std::pow(static_cast<double>(n),
                                  static_cast<double>(m - 1 - static_cast<int>(j)) / m);
        Complex val = std::exp(v);
        if (alternating && n % 2 == 1) val = -val;
        h[n] = val;
    }
    return h;
}

DivergenceFit fit_divergence(const CoeffSeq& seq, int m, int n_lo, int n_hi) {
    if (m < 1) throw DomainError("fit_divergence needs m >= 1");
    if (n_hi >= seq.size()) throw DomainError("n_hi beyond sequence length");
    if (n_hi - n_lo < 10 * m) throw IllConditioned("tail shorter than 10 m");

    auto logs = unwrapped_logs(seq, m, false);

    // differenced logs u_n = log A_{n+m} - log A_n (stays within one class)
    std::vector<int> ns;
    std::vector<Complex> u;
    for (int n = n_lo; n + m <= n_hi; ++n) {
        if (logs[n] && logs[n + m]) {
            ns.push_back(n);
            u.push_back(*logs[n + m] - *logs[n]);
        }
    }
    if (static_cast<int>(ns.size()) < 8 * m) throw IllConditioned("too few usable tail entries");

    // average across residue classes when every class is populated; this
    // cancels the subdominant class-alternating branch of the recurrence
    std::vector<std::vector<int>> groups;
    {
        std::vector<int> have(seq.size(), -1);
        for (std::size_t i = 0; i < ns.size(); ++i) have[ns[i]] = static_cast<int>(i);
        if (m > 1) {
            for (int n = n_lo; n + m - 1 + m <= n_hi; ++n) {
                std::vector<int> g;
                for (int j = 0; j < m; ++j)
                    if (have[n + j] >= 0) g.push_back(have[n + j]);
                if (static_cast<int>(g.size()) == m) groups.push_back(std::move(g));
            }
        }
        if (groups.size() < 8 * static_cast<std::size_t>(m)) {
            groups.clear();
            for (std::size_t i = 0; i < ns.size(); ++i) groups.push_back({static_cast<int>(i)});
        }
    }

    const int ncorr = 3;
    Complex gamma(1.0, 0.0);
    std::vector<Complex> sol;
    std::vector<std::vector<Complex>> cols;
    std::vector<Complex> rhs;
    for (int iter = 0; iter < 40; ++iter) {
        cols.assign(m - 1 + 1 + ncorr, {});
        rhs.clear();
        for (const auto& grp : groups) {
            std::vector<Complex> row(cols.size(), Complex(0, 0));
            Complex b = 0.0;
            for (int idx : grp) {
                const double n = ns[idx];
                for (int j = 1; j < m; ++j) {
                    const double e = static_cast<double>(m - j) / m;
                    row[j - 1] += std::pow(n + m, e) - std::pow(n, e);
                }
                row[m - 1] += static_cast<double>(m) / (n + static_cast<double>(m) * gamma);
                for (int k = 1; k <= ncorr; ++k) {
                    const double e = -static_cast<double>(k) / m;
                    row[m - 1 + k] += std::pow(n + m, e) - std::pow(n, e);
                }
                b += u[idx] - std::log(n / m + gamma);
            }
            const double inv = 1.0 / static_cast<double>(grp.size());
            for (Complex& x : row) x *= inv;
            b *= inv;
            for (std::size_t c = 0; c < cols.size(); ++c) cols[c].push_back(row[c]);
            rhs.push_back(b);
        }
        sol = lstsq(cols, rhs);
        const Complex dg = sol[m - 1];
        gamma += dg;
        // a wandering gamma means no single late-term branch dominates the
        // tail (comparable-Re branch pairs beat against each other and the
        // log-difference model does not apply)
        if (!is_finite(gamma) || std::abs(gamma) > 1e4)
            throw NonConvergence("gamma iteration diverged; tail not described by a single "
                                 "exponential-over-power branch");
        if (std::abs(dg) < 1e-12) break;
    }

    DivergenceFit fit;
    fit.m = m;
    fit.gamma = gamma;
    fit.mu.assign(sol.begin(), sol.begin() + (m - 1));

    // residual of the difference model
    double resid = 0.0;
    for (std::size_t r = 0; r < rhs.size(); ++r) {
        Complex model = 0.0;
        for (std::size_t c = 0; c < cols.size(); ++c) {
            if (c == static_cast<std::size_t>(m - 1)) continue;  // gamma column folded into rhs
            model += sol[c] * cols[c][r];
        }
        resid = std::max(resid, std::abs(rhs[r] - model));
    }
    fit.residual = resid;

    // per-class constants from the scaled tail
    const auto h = h_sequence(seq, m, fit.gamma, fit.mu, false);
    fit.class_limits.assign(m, Complex(0, 0));
    std::vector<bool> populated(m, false);
    std::vector<double> errs(m, 0.0);
    for (int c = 0; c < m; ++c) {
        // anchors at the largest class indices <= n_hi, n_hi/2, n_hi/4
        const auto anchor = [&](int bound) -> std::optional<int> {
            for (int n = bound; n > 0; --n)
                if (n % m == c && n < seq.size() && h[n] != Complex(0, 0)) return n;
            return std::nullopt;
        };
        const auto a1 = anchor(n_hi), a2 = anchor(n_hi / 2), a3 = anchor(n_hi / 4);
        if (!a1 || !a2 || !a3) continue;
        const Richardson r = richardson2(h[*a1], h[*a2], h[*a3], 1.0 / m, 2.0 / m);
        fit.class_limits[c] = r.l2;
        errs[c] = std::abs(r.l2 - r.l1);
        populated[c] = true;
    }
    int canonical = -1;
    for (int c = 0; c < m; ++c)
        if (populated[c]) { canonical = c; break; }
    if (canonical < 0) throw NonConvergence("no populated residue class in fit tail");
    fit.residue_class = canonical;
    fit.omega_err = errs[canonical];

    // alternation: opposite-sign class constants mean the (-1)^n ansatz
    if (m == 2 && populated[0] && populated[1]) {
        const double gap = std::abs(std::arg(fit.class_limits[1] / fit.class_limits[0]));
        if (gap > kPi / 2.0) {
            fit.alternating_sign = true;
            fit.class_limits[1] = -fit.class_limits[1];
        }
    }
    const Complex lim = fit.class_limits[canonical];
    fit.omega = std::abs(lim);
    fit.tau = std::arg(lim);
    return fit;
}

DivergenceFit omega_cc(Rational sigma1, Rational sigma2, double a, double beta, long long ell,
                       long long m, int n_max) {
    const CoalescingForcing spec(a, beta, sigma1, sigma2);
    if (spec.ell != ell || spec.m != m)
        throw DomainError("ell/m inconsistent with 1/(1+3 sigma)");
    const CoeffSeq seq = inner_coalescing(spec, n_max);

    DivergenceFit fit;
    fit.m = static_cast<int>(m);
    if (m == 2) {
        const MuGamma mg = analytic_mu_gamma(sigma1, sigma2, a, beta);
        fit.gamma = mg.gamma;
        fit.mu = {mg.mu1};
        fit.alternating_sign = mg.alternating;
    } else {
        fit = fit_divergence(seq, static_cast<int>(m), n_max / 4, n_max);
    }

    const auto h = h_sequence(seq, fit.m, fit.gamma, fit.mu, fit.alternating_sign);
    fit.class_limits.assign(fit.m, Complex(0, 0));
    std::vector<bool> populated(fit.m, false);
    std::vector<double> errs(fit.m, 0.0);
    for (int c = 0; c < fit.m; ++c) {
        const auto anchor = [&](int bound) -> std::optional<int> {
            for (int n = bound; n > 0; --n)
                if (n % fit.m == c && h[n] != Complex(0, 0)) return n;
            return std::nullopt;
        };
        const auto a1 = anchor(n_max), a2 = anchor(n_max / 2), a3 = anchor(n_max / 4);
        if (!a1 || !a2 || !a3) continue;
        const Richardson r =
            richardson2(h[*a1], h[*a2], h[*a3], 1.0 / fit.m, 2.0 / fit.m);
        fit.class_limits[c] = r.l2;
        errs[c] = std::abs(r.l2 - r.l1);
        populated[c] = true;
    }
    int canonical = -1;
    for (int c = 0; c < fit.m; ++c)
        if (populated[c]) { canonical = c; break; }
    if (canonical < 0) throw NonConvergence("all residue classes empty");
    fit.residue_class = canonical;
    const Complex lim = fit.class_limits[canonical];
    fit.omega = std::abs(lim);
    fit.tau = std::arg(lim);
    fit.omega_err = errs[canonical];
    if (fit.omega_err > 0.05 * fit.omega)
        throw NonConvergence("omega_cc extrapolation spread " + std::to_string(fit.omega_err));
    for (int c = 0; c < fit.m; ++c) {
        if (!populated[c] || c == canonical) continue;
        const double rel = std::fabs(std::abs(fit.class_limits[c]) - fit.omega) / fit.omega;
        if (rel > 0.02)
            throw BranchMismatch("|H_inf| differs across residue classes by " +
                                 std::to_string(rel));
    }
    return fit;
}

void write_sequence_csv(const CoeffSeq& seq, const std::vector<Complex>& h, std::ostream& os) {
    CsvWriter csv(os, {"n", "re_A", "im_A", "abs_H", "arg_H"});
    for (int n = 0; n < seq.size(); ++n) {
        const Complex a = seq.value(n);
        const Complex hn = n < static_cast<int>(h.size()) ? h[n] : Complex(0, 0);
        csv.row({static_cast<double>(n), a.real(), a.imag(), std::abs(hn), std::arg(hn)});
    }
}

} // namespace lowfroude
