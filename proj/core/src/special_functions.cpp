#include "lowfroude/special_functions.hpp"

#include <cmath>

namespace lowfroude {
namespace {

// Lanczos coefficients, g = 7, n = 9 (classic double-precision set).
constexpr int kG = 7;
constexpr double kLanczos[kG + 2] = {
    0.99999999999980993,  676.5203681218851,    -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,  12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

const double kLogSqrt2Pi = 0.5 * std::log(2.0 * kPi);

Complex log_gamma_core(Complex z) {
    // requires Re(z) >= 1/2
    z -= 1.0;
    Complex x = kLanczos[0];
    for (int i = 1; i < kG + 2; ++i) x += kLanczos[i] / (z + static_cast<double>(i));
    const Complex t = z + (kG + 0.5);
    return kLogSqrt2Pi + (z + 0.5) * std::log(t) - t + std::log(x);
}

} // namespace

Complex log_gamma(Complex z) {
    if (z.real() >= 0.5) return log_gamma_core(z);
    // reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z); use log1p-style care
    // for the sine's branch by computing log(sin(pi z)) through the scaled
    // exponential form to avoid overflow for large |Im z|.
    const Complex lg1mz = log_gamma_core(1.0 - z);
    Complex log_sin;
    const double y = z.imag();
    if (std::fabs(y) < 20.0) {
        log_sin = std::log(std::sin(kPi * z));
    } else {
        // sin(pi z) = (e^{i pi z} - e^{-i pi z}) / 2i; keep the dominant term
        const Complex ipz = Complex(0, 1) * kPi * z;
        if (y > 0) log_sin = -ipz - std::log(Complex(0, 2)) + std::log(1.0 - std::exp(2.0 * ipz));
        else       log_sin =  ipz - std::log(Complex(0, 2)) + std::log(std::exp(-2.0 * ipz) - 1.0) + std::log(Complex(-1, 0));
    }
    return std::log(Complex(kPi, 0)) - log_sin - lg1mz;
}

Complex digamma(Complex z) {
    if (z.real() < 0.5) {
        // reflection: psi(1 - z) - psi(z) = pi cot(pi z)
        return digamma(1.0 - z) - kPi / std::tan(kPi * z);
    }
    // recurrence up to large modulus, then asymptotic series
    Complex acc = 0.0;
    while (std::abs(z) < 16.0) {
        acc -= 1.0 / z;
        z += 1.0;
    }
    const Complex inv = 1.0 / z;
    const Complex inv2 = inv * inv;
    // psi(z) ~ ln z - 1/(2z) - 1/(12 z^2) + 1/(120 z^4) - 1/(252 z^6) + ...
    Complex s = std::log(z) - 0.5 * inv;
    s -= inv2 * (1.0 / 12.0 - inv2 * (1.0 / 120.0 - inv2 * (1.0 / 252.0 - inv2 / 240.0)));
    return acc + s;
}

} // namespace lowfroude
