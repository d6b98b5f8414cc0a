#pragma once

#include <cmath>
#include <cstdint>
#include <optional>

#include "lowfroude/types.hpp"

namespace lowfroude {

/// Complex number stored as mantissa * 2^exponent.
///
/// Recurrence coefficients grow like Gamma(n/m) and overflow double well
/// before the tail window we need (n ~ 2000), so all sequences are
/// propagated in this form. Rescaling by powers of two is exact in binary
/// floating point, which keeps the scaled arithmetic bit-compatible with a
/// plain-double evaluation wherever the latter is representable.
class ScaledComplex {
public:
    ScaledComplex() = default;
    ScaledComplex(Complex mantissa, std::int64_t exponent) : m_(mantissa), e_(exponent) { normalize(); }
    explicit ScaledComplex(Complex value) : ScaledComplex(value, 0) {}
    explicit ScaledComplex(double value) : ScaledComplex(Complex(value, 0.0), 0) {}

    [[nodiscard]] bool is_zero() const { return m_ == Complex(0.0, 0.0); }
    [[nodiscard]] Complex mantissa() const { return m_; }
    [[nodiscard]] std::int64_t exponent() const { return e_; }

    /// Value as a plain complex double; +/-inf components once the exponent
    /// exceeds the double range.
    [[nodiscard]] Complex value() const {
        if (is_zero()) return {0.0, 0.0};
        if (e_ > 2000) {
            const double s = std::numeric_limits<double>::infinity();
            return {m_.real() == 0 ? 0.0 : s * (m_.real() > 0 ? 1 : -1),
                    m_.imag() == 0 ? 0.0 : s * (m_.imag() > 0 ? 1 : -1)};
        }
        if (e_ < -2000) return {0.0, 0.0};
        const double s = std::ldexp(1.0, static_cast<int>(e_));
        return m_ * s;
    }

    /// Complex logarithm, or nullopt for zero.
    [[nodiscard]] std::optional<Complex> log() const {
        if (is_zero()) return std::nullopt;
        static const double kLog2 = std::log(2.0);
        return std::log(m_) + Complex(static_cast<double>(e_) * kLog2, 0.0);
    }

    [[nodiscard]] double log_abs() const {
        static const double kLog2 = std::log(2.0);
        return std::log(std::abs(m_)) + static_cast<double>(e_) * kLog2;
    }

    [[nodiscard]] double arg() const { return std::arg(m_); }

    static ScaledComplex from_log(Complex log_value) {
        static const double kLog2 = std::log(2.0);
        const auto e = static_cast<std::int64_t>(std::floor(log_value.real() / kLog2));
        const Complex m = std::exp(log_value - Complex(static_cast<double>(e) * kLog2, 0.0));
        return {m, e};
    }

    friend ScaledComplex operator*(const ScaledComplex& a, const ScaledComplex& b) {
        if (a.is_zero() || b.is_zero()) return {};
        return {a.m_ * b.m_, a.e_ + b.e_};
    }
    friend ScaledComplex operator*(const ScaledComplex& a, double s) {
        return {a.m_ * s, a.e_};
    }
    friend ScaledComplex operator*(const ScaledComplex& a, Complex s) {
        return {a.m_ * s, a.e_};
    }
    friend ScaledComplex operator+(const ScaledComplex& a, const ScaledComplex& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        if (a.e_ >= b.e_) {
            const std::int64_t d = b.e_ - a.e_;
            if (d < -1070) return a;
            return {a.m_ + b.m_ * std::ldexp(1.0, static_cast<int>(d)), a.e_};
        }
        return b + a;
    }
    ScaledComplex& operator+=(const ScaledComplex& b) { *this = *this + b; return *this; }

private:
    void normalize() {
        if (m_ == Complex(0.0, 0.0)) { e_ = 0; return; }
        const double mag = std::max(std::fabs(m_.real()), std::fabs(m_.imag()));
        int ex = 0;
        std::frexp(mag, &ex);
        // keep the mantissa within 2^-60 .. 2^60 so sums never overflow
        if (ex > 60 || ex < -60) {
            m_ *= std::ldexp(1.0, -ex);
            e_ += ex;
        }
    }

    Complex m_{0.0, 0.0};
    std::int64_t e_ = 0;
};

} // namespace lowfroude
