#pragma once

#include <complex>
#include <numeric>
#include <stdexcept>
#include <string>

namespace lowfroude {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;

// Distance below which a point counts as sitting on a forcing singularity.
inline constexpr double kSingularityExclusionRadius = 1e-12;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define LOWFROUDE_DEFINE_ERROR(name)                       \
    struct name : Error {                                  \
        explicit name(const std::string& msg) : Error(#name ": " + msg) {} \
    }

LOWFROUDE_DEFINE_ERROR(SingularityHit);
LOWFROUDE_DEFINE_ERROR(StepFailure);
LOWFROUDE_DEFINE_ERROR(DivisionNearZero);
LOWFROUDE_DEFINE_ERROR(WindowTooShort);
LOWFROUDE_DEFINE_ERROR(NoWaveDetected);
LOWFROUDE_DEFINE_ERROR(PathTooClose);
LOWFROUDE_DEFINE_ERROR(QuadratureFailure);
LOWFROUDE_DEFINE_ERROR(BranchCutHit);
LOWFROUDE_DEFINE_ERROR(DomainError);
LOWFROUDE_DEFINE_ERROR(SeedFailure);
LOWFROUDE_DEFINE_ERROR(CorrectorDivergence);
LOWFROUDE_DEFINE_ERROR(Overflow);
LOWFROUDE_DEFINE_ERROR(NonConvergence);
LOWFROUDE_DEFINE_ERROR(BranchMismatch);
LOWFROUDE_DEFINE_ERROR(WrongRegime);
LOWFROUDE_DEFINE_ERROR(IllConditioned);

#undef LOWFROUDE_DEFINE_ERROR

/// Exact rational, used for the singularity powers sigma so that the
/// coalescence exponent l/m can be reduced without rounding.
struct Rational {
    long long num = 0;
    long long den = 1;

    constexpr Rational() = default;
    Rational(long long n, long long d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw DomainError("rational with zero denominator");
        if (den < 0) { num = -num; den = -den; }
        const long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    [[nodiscard]] double value() const { return static_cast<double>(num) / static_cast<double>(den); }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        // no overflow risk at the magnitudes used here (small p/q)
        return a.num * b.den < b.num * a.den;
    }
    friend Rational operator+(const Rational& a, const Rational& b) {
        return {a.num * b.den + b.num * a.den, a.den * b.den};
    }

    [[nodiscard]] std::string str() const {
        return std::to_string(num) + "/" + std::to_string(den);
    }

    /// Parses "p/q" or a bare integer "p".
    static Rational parse(const std::string& text);
};

inline bool is_finite(Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

} // namespace lowfroude
