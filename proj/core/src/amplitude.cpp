#include "lowfroude/amplitude.hpp"

#include <cmath>

#include "lowfroude/singulant.hpp"

namespace lowfroude {
namespace {

double f1_of(Rational s1, Rational s2) { return s2.value() - s1.value(); }
double f2_of(Rational s1, Rational s2) {
    const double d = s1.value() - s2.value();
    return 0.5 * (d * d + s1.value() + s2.value());
}

void require_third_regime(Rational s1, Rational s2, const char* who) {
    if (!(s1 + s2 == Rational{1, 3}))
        throw WrongRegime(std::string(who) + " needs sigma1 + sigma2 = 1/3, got " +
                          (s1 + s2).str());
}

} // namespace

double gamma_k(Rational sigma) {
    const double s = sigma.value();
    if (!(s > 0.0 && s < 1.0)) throw DomainError("gamma_k needs 0 < sigma < 1");
    return 6.0 * s / (1.0 + 3.0 * s);
}

AmplitudePrediction amp_single(double a, Rational sigma, double epsilon, double omega) {
    const double s = sigma.value();
    const double g = gamma_k(sigma);
    double re_chi;
    if (sigma == Rational{1, 3}) {
        re_chi = a * kPi;
    } else {
        const ForcingSpec spec = SingleForcing(a, sigma);
        re_chi = chi_to(spec, 0, Complex(a + 1.0, 0.0)).real();
    }
    AmplitudePrediction p;
    p.regime = Regime::Single;
    p.prefactor = 2.0 * kPi * omega / std::pow(epsilon, g) * std::pow(a, s * (6.0 - 3.0 * g)) /
                  std::pow(1.0 + 3.0 * s, g);
    p.exponent_rate = re_chi;
    p.amplitude = p.prefactor * std::exp(-re_chi / epsilon);
    p.phase = (6.0 - 3.0 * g) * (kPi * s) + 0.5 * kPi * g;
    p.epsilon = epsilon;
    p.a_k = a;
    p.sigma_k = sigma;
    p.omega_used = omega;
    return p;
}

std::vector<AmplitudePrediction> amp_separated(const SeparatedForcing& spec, double epsilon,
                                               const std::map<Rational, double>& omega_table,
                                               bool check_stokes) {
    const ForcingSpec fs = spec;
    const double w_eval = spec.a1 + 1.0;
    std::vector<AmplitudePrediction> out;
    for (int k = 0; k < 2; ++k) {
        const LocalSingularity loc = local_expansion(fs, k);
        const auto it = omega_table.find(loc.sigma_k);
        if (it == omega_table.end())
            throw DomainError("omega_table missing Omega(" + loc.sigma_k.str() + ")");
        const double omega = it->second;
        const double s = loc.sigma_k.value();
        const double g = gamma_k(loc.sigma_k);

        AmplitudePrediction p;
        p.regime = Regime::Separated;
        p.epsilon = epsilon;
        p.a_k = loc.a_k;
        p.sigma_k = loc.sigma_k;
        p.omega_used = omega;

        if (check_stokes) {
            const double step = std::min(1e-3, 5e-3 * loc.a_k);
            const StokesPath line = trace_stokes_line(fs, k, step, 8.0);
            p.stokes_crossing =
                line.terminated_by == StokesPath::Termination::CrossedRealAxis &&
                line.crossing() > 0.0;
        }
        if (!p.stokes_crossing) {
            out.push_back(p);
            continue;
        }

        const double re_chi = chi_to(fs, k, Complex(w_eval, 0.0)).real();
        // phase reference integral from -a_k to -a_1 (zero for k = 0)
        Complex ref_integral = 0.0;
        if (k == 1) ref_integral = chi_between_singularities(fs, 1, 0);
        p.prefactor = 2.0 * kPi * omega / std::pow(epsilon, g) *
                      std::pow(std::abs(loc.c_k), 6.0 - 3.0 * g) / std::pow(1.0 + 3.0 * s, g);
        p.exponent_rate = re_chi;
        p.amplitude = p.prefactor * std::exp(-re_chi / epsilon);
        p.phase = -ref_integral.imag() / epsilon + (6.0 - 3.0 * g) * std::arg(loc.c_k) +
                  0.5 * kPi * g;
        out.push_back(p);
    }
    return out;
}

double combined_amplitude(const std::vector<AmplitudePrediction>& parts) {
    Complex total = 0.0;
    for (const auto& p : parts)
        if (p.stokes_crossing) total += p.amplitude * std::exp(Complex(0, p.phase));
    return std::abs(total);
}

double amp_separated_sixth_wrapper(double a, double beta, double epsilon, double omega_sixth) {
    if (beta <= 0.0) throw DomainError("wrapper needs beta > 0");
    return 2.0 * std::pow(a, 4.0 / 3.0) * std::exp(kPi * beta * beta / (2.0 * a)) /
           std::pow(3.0 * beta, 2.0 / 3.0) * omega_sixth * (kPi / epsilon) *
           std::exp(-kPi * a / epsilon);
}

AmplitudePrediction amp_coalescing(double a, double beta, Rational sigma1, Rational sigma2,
                                   double epsilon, double omega_cc, double w) {
    require_third_regime(sigma1, sigma2, "amp_coalescing");
    const double f1 = f1_of(sigma1, sigma2);
    const double f2 = f2_of(sigma1, sigma2);
    double q0_4 = 1.0;
    if (!std::isinf(w)) {
        if (w <= 0.0) throw DomainError("amp_coalescing needs w > 0");
        q0_4 = std::pow(w / (w + a), 4.0 / 3.0);
    }
    AmplitudePrediction p;
    p.regime = Regime::Coalescing;
    p.epsilon = epsilon;
    p.a_k = a;
    p.sigma_k = sigma1 + sigma2;
    p.omega_used = omega_cc;
    p.prefactor = kPi * a * omega_cc / (epsilon * q0_4) *
                  std::exp(-(9.0 * kPi * beta * beta / (4.0 * a)) * (2.0 * f1 * f1 - f2));
    p.exponent_rate = a * kPi;
    p.secondary_rate = 3.0 * kPi * beta * std::fabs(f1);
    p.amplitude = p.prefactor *
                  std::exp(-p.exponent_rate / epsilon - p.secondary_rate / std::sqrt(epsilon));
    return p;
}

double amp_coalescing_sixth_wrapper(double a, double beta, double epsilon, double omega_cc) {
    return a * std::exp(3.0 * kPi * beta * beta / (8.0 * a)) * omega_cc * (kPi / epsilon) *
           std::exp(-kPi * a / epsilon);
}

// r_1 carries the log/sqrt branch ambiguity the late-term analysis leaves
// open: principal branches everywhere give the inner limit
// r_1(-a) = 3 sqrt(2X) beta f_1 (the inner constant of the dominant ansatz,
// approached through the upper half-plane), while the switched-on remainder
// selects the decaying square-root branch of the pair, whose closed form on
// w > 0 is written directly into f1_exponent below.
Complex r1_eval(Complex w, double a, double beta, Rational sigma1, Rational sigma2) {
    require_third_regime(sigma1, sigma2, "r1_eval");
    const double f1 = f1_of(sigma1, sigma2);
    if (f1 == 0.0) return {0.0, 0.0};
    const Complex chi = chi_merged(w, a);  // BranchCutHit on (-inf, 0]
    const Complex log_branch = std::log(-w / a);
    return 3.0 * Complex(0, 1) * beta * f1 * log_branch / std::sqrt(2.0 * chi);
}

Complex f1_exponent(Complex w, double a, double beta, Rational sigma1, Rational sigma2) {
    require_third_regime(sigma1, sigma2, "f1_exponent");
    if (w.imag() == 0.0 && w.real() <= 0.0)
        throw BranchCutHit("f1_exponent on the cut (-inf, 0]");
    const double f1 = f1_of(sigma1, sigma2);
    return -3.0 * kPi * beta * std::fabs(f1) +
           3.0 * Complex(0, 1) * beta * f1 * std::log(w / a);
}

Complex p_eval(Complex w, double a, double beta, Rational sigma1, Rational sigma2,
               double omega_cc, double tau) {
    require_third_regime(sigma1, sigma2, "p_eval");
    const double f1 = f1_of(sigma1, sigma2);
    const double f2 = f2_of(sigma1, sigma2);
    const Complex x(0.0, -1.0 / (2.0 * a));  // X = -i/2a in this regime
    const Complex gamma = 1.0 - 3.0 * beta * beta * x * (2.0 * f1 * f1 - f2);
    const Complex mu1 = 3.0 * std::sqrt(2.0 * x) * beta * f1;  // signed inner limit of r_1
    // (c^6 X)^gamma with |c^6 X| = a/2 and Arg fixed to 3 pi/2
    const Complex c6x_pow = std::exp(gamma * Complex(std::log(a / 2.0), 1.5 * kPi));
    const Complex q0 = std::pow(w / (w + a), 1.0 / 3.0);
    const Complex q0_pow = std::exp(2.0 * (1.0 - 3.0 * gamma) * std::log(q0));
    const Complex r1 = r1_eval(w, a, beta, sigma1, sigma2);
    return c6x_pow * omega_cc * std::exp(Complex(0, tau)) * q0_pow *
           std::exp(0.25 * (r1 * r1 - mu1 * mu1));
}

} // namespace lowfroude
