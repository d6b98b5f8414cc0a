#include "lowfroude/forcing.hpp"

#include <cmath>

#include "lowfroude/special_functions.hpp"

namespace lowfroude {
namespace {

void check_sigma_range(Rational s, const char* name) {
    if (!(s.value() > 0.0 && s.value() < 1.0))
        throw DomainError(std::string(name) + " must lie in (0, 1), got " + s.str());
}

void check_not_singular(Complex w, const std::vector<double>& sings) {
    for (double s : sings) {
        if (std::abs(w - Complex(-s, 0.0)) < kSingularityExclusionRadius)
            throw SingularityHit("w within exclusion radius of w = " + std::to_string(-s));
    }
}

// principal-branch power of each factor
Complex cpow(Complex base, double expo) { return std::pow(base, expo); }

struct Factors {
    double sigma_top;            // power of w in the numerator
    std::vector<std::pair<double, double>> poles; // (a_k, sigma_k)
};

Factors factors_of(const ForcingSpec& spec, double epsilon) {
    return std::visit(
        [&](const auto& s) -> Factors {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, SingleForcing>) {
                return {s.sigma.value(), {{s.a, s.sigma.value()}}};
            } else if constexpr (std::is_same_v<T, SeparatedForcing>) {
                return {s.sigma1.value() + s.sigma2.value(),
                        {{s.a1, s.sigma1.value()}, {s.a2, s.sigma2.value()}}};
            } else {
                static_assert(std::is_same_v<T, CoalescingForcing>);
                if (epsilon <= 0.0)
                    throw DomainError("coalescing forcing requires epsilon > 0");
                const double d = s.singularity_offset(epsilon);
                return {s.sigma().value(),
                        {{s.a + d, s.sigma1.value()}, {s.a - d, s.sigma2.value()}}};
            }
        },
        spec);
}

} // namespace

SingleForcing::SingleForcing(double a_, Rational sigma_) : a(a_), sigma(sigma_) {
    if (a <= 0.0) throw DomainError("single forcing needs a > 0");
    check_sigma_range(sigma, "sigma");
}

SeparatedForcing::SeparatedForcing(double a1_, double a2_, Rational s1, Rational s2)
    : a1(a1_), a2(a2_), sigma1(s1), sigma2(s2) {
    if (!(0.0 < a2 && a2 < a1))
        throw DomainError("separated forcing needs 0 < a2 < a1");
    check_sigma_range(sigma1, "sigma1");
    check_sigma_range(sigma2, "sigma2");
}

CoalescingForcing::CoalescingForcing(double a_, double beta_, Rational s1, Rational s2)
    : a(a_), beta(beta_), sigma1(s1), sigma2(s2) {
    if (a <= 0.0) throw DomainError("coalescing forcing needs a > 0");
    if (beta < 0.0) throw DomainError("coalescing forcing needs beta >= 0");
    check_sigma_range(sigma1, "sigma1");
    check_sigma_range(sigma2, "sigma2");
    // ell/m = 1/(1+3 sigma) reduced exactly
    const Rational s = sigma();
    const Rational inv{s.den, s.den + 3 * s.num};
    ell = inv.num;
    m = inv.den;
}

double CoalescingForcing::singularity_offset(double epsilon) const {
    return std::pow(epsilon, static_cast<double>(ell) / static_cast<double>(m)) * beta;
}

Complex CoalescingForcing::inner_scale_x() const {
    const double s = sigma().value();
    const Complex c = cpow(Complex(-a, 0.0), s);
    return Complex(0, 1) / (c * c * c * (1.0 + 3.0 * s));
}

std::vector<double> singularity_positions(const ForcingSpec& spec, double epsilon) {
    const Factors f = factors_of(spec, epsilon);
    std::vector<double> out;
    out.reserve(f.poles.size());
    for (const auto& [a, sig] : f.poles) out.push_back(a);
    return out;
}

Complex eval_qs(const ForcingSpec& spec, Complex w, double epsilon) {
    const Factors f = factors_of(spec, epsilon);
    std::vector<double> sings;
    for (const auto& [a, sig] : f.poles) sings.push_back(a);
    check_not_singular(w, sings);
    Complex q = cpow(w, f.sigma_top);
    for (const auto& [a, sig] : f.poles) q /= cpow(w + a, sig);
    return q;
}

Complex qs_derivative(const ForcingSpec& spec, Complex w, double epsilon) {
    const Factors f = factors_of(spec, epsilon);
    const Complex q = eval_qs(spec, w, epsilon);
    Complex logd = f.sigma_top / w;
    for (const auto& [a, sig] : f.poles) logd -= sig / (w + a);
    return q * logd;
}

Complex qs_second_derivative(const ForcingSpec& spec, Complex w, double epsilon) {
    const Factors f = factors_of(spec, epsilon);
    const Complex q = eval_qs(spec, w, epsilon);
    Complex logd = f.sigma_top / w;
    Complex logd2 = -f.sigma_top / (w * w);
    for (const auto& [a, sig] : f.poles) {
        logd -= sig / (w + a);
        logd2 += sig / ((w + a) * (w + a));
    }
    return q * (logd * logd + logd2);
}

double series_f(int n, Rational sigma1, Rational sigma2) {
    if (n < 0) throw DomainError("series_f needs n >= 0");
    // reflection symmetry f_n(s1,s2) = (-1)^n f_n(s2,s1): odd terms of the
    // symmetric case vanish identically, and must do so exactly so that the
    // recurrences see true zero residue classes
    if (sigma1 == sigma2 && n % 2 == 1) return 0.0;
    const double s1 = sigma1.value(), s2 = sigma2.value();
    double total = 0.0;
    const double base = std::lgamma(s1) + std::lgamma(s2);
    for (int j = 0; j <= n; ++j) {
        const double t = std::exp(std::lgamma(s1 + j) + std::lgamma(s2 + n - j) -
                                  std::lgamma(j + 1.0) - std::lgamma(n - j + 1.0) - base);
        total += (j % 2 == 0) ? t : -t;
    }
    return total;
}

Complex eval_e(int n, Complex w, const CoalescingForcing& spec) {
    if (n < 0) throw DomainError("eval_e needs n >= 0");
    if (std::abs(w + Complex(spec.a, 0.0)) < kSingularityExclusionRadius)
        throw SingularityHit("eval_e at w = -a");
    return std::pow(spec.beta / (w + spec.a), static_cast<double>(n)) *
           series_f(n, spec.sigma1, spec.sigma2);
}

ScaledComplex eval_ehat_scaled(int n, const CoalescingForcing& spec) {
    if (n < 0) throw DomainError("eval_ehat needs n >= 0");
    if (n == 0) return ScaledComplex(1.0);
    if (n % spec.ell != 0) return {};
    if (spec.beta == 0.0) return {};
    const double fn = series_f(static_cast<int>(n / spec.ell), spec.sigma1, spec.sigma2);
    if (fn == 0.0) return {};
    const Complex log_x = std::log(spec.inner_scale_x());
    const Complex lv = (static_cast<double>(n) / spec.ell) * std::log(spec.beta) +
                       (static_cast<double>(n) / spec.m) * log_x + std::log(Complex(fn, 0.0));
    return ScaledComplex::from_log(lv);
}

Complex eval_ehat(int n, const CoalescingForcing& spec) {
    return eval_ehat_scaled(n, spec).value();
}

LocalSingularity local_expansion(const ForcingSpec& spec, int k, double epsilon) {
    const Factors f = factors_of(spec, epsilon);
    if (k < 0 || k >= static_cast<int>(f.poles.size()))
        throw DomainError("singularity index out of range");
    const auto [ak, sk] = f.poles[k];
    // c_k = lim (w+a_k)^{sigma_k} q_s(w) = (-a_k)^{sigma} / prod_{j!=k} (a_j - a_k)^{sigma_j}
    Complex c = cpow(Complex(-ak, 0.0), f.sigma_top);
    for (std::size_t j = 0; j < f.poles.size(); ++j) {
        if (static_cast<int>(j) == k) continue;
        c /= cpow(Complex(f.poles[j].first - ak, 0.0), f.poles[j].second);
    }
    Rational sig_k = std::visit(
        [&](const auto& s) -> Rational {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, SingleForcing>) return s.sigma;
            else if constexpr (std::is_same_v<T, SeparatedForcing>) return k == 0 ? s.sigma1 : s.sigma2;
            else return k == 0 ? s.sigma1 : s.sigma2;
        },
        spec);
    const Complex x = Complex(0, 1) / (c * c * c * (1.0 + 3.0 * sk));
    return {ak, sig_k, c, x};
}

Rational Rational::parse(const std::string& text) {
    const auto slash = text.find('/');
    if (slash == std::string::npos) return {std::stoll(text), 1};
    return {std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1))};
}

} // namespace lowfroude
