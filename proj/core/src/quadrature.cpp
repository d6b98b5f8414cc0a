#include "lowfroude/quadrature.hpp"

#include <cmath>

namespace lowfroude {
namespace {

// Gauss 7 / Kronrod 15 nodes and weights on [-1, 1].
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct PanelResult {
    Complex integral;
    double error;
};

PanelResult gk15(const std::function<Complex(Complex)>& f, Complex a, Complex b) {
    const Complex center = 0.5 * (a + b);
    const Complex half = 0.5 * (b - a);
    Complex resg = 0.0, resk = 0.0;
    for (int j = 0; j < 7; ++j) {
        const Complex fp = f(center + half * kXgk[j]);
        const Complex fm = f(center - half * kXgk[j]);
        resk += kWgk[j] * (fp + fm);
        if (j % 2 == 1) resg += kWg[j / 2] * (fp + fm);
    }
    const Complex fc = f(center);
    resk += kWgk[7] * fc;
    resg += kWg[3] * fc;
    const Complex ig = resg * half;
    const Complex ik = resk * half;
    return {ik, std::abs(ik - ig)};
}

Complex adapt(const std::function<Complex(Complex)>& f, Complex a, Complex b, double tol,
              int depth, int max_depth) {
    const PanelResult r = gk15(f, a, b);
    if (r.error <= tol || r.error <= 1e-16 * std::abs(r.integral)) return r.integral;
    if (depth >= max_depth)
        throw QuadratureFailure("segment did not converge (error " + std::to_string(r.error) + ")");
    const Complex mid = 0.5 * (a + b);
    return adapt(f, a, mid, 0.5 * tol, depth + 1, max_depth) +
           adapt(f, mid, b, 0.5 * tol, depth + 1, max_depth);
}

} // namespace

Complex integrate_segment(const std::function<Complex(Complex)>& f, Complex z0, Complex z1,
                          double abs_tol, int max_depth) {
    if (z0 == z1) return {0.0, 0.0};
    return adapt(f, z0, z1, abs_tol, 0, max_depth);
}

Complex integrate_segment_singular(const std::function<Complex(Complex)>& f, Complex z0,
                                   Complex z1, double kappa_left, double kappa_right,
                                   double abs_tol) {
    if (z0 == z1) return {0.0, 0.0};
    const bool left = kappa_left > 1.0, right = kappa_right > 1.0;
    if (left && right) {
        const Complex mid = 0.5 * (z0 + z1);
        return integrate_segment_singular(f, z0, mid, kappa_left, 1.0, 0.5 * abs_tol) +
               integrate_segment_singular(f, mid, z1, 1.0, kappa_right, 0.5 * abs_tol);
    }
    if (!left && right)
        return -integrate_segment_singular(f, z1, z0, kappa_right, 1.0, abs_tol);
    if (!left) return integrate_segment(f, z0, z1, abs_tol);
    // left endpoint: z(t) = z0 + (z1 - z0) t^kappa on t in [0, 1]
    const Complex dz = z1 - z0;
    const double kappa = kappa_left;
    const auto g = [&](Complex t) {
        const double tr = t.real();
        return f(z0 + dz * std::pow(tr, kappa)) * dz * (kappa * std::pow(tr, kappa - 1.0));
    };
    return integrate_segment(g, {0.0, 0.0}, {1.0, 0.0}, abs_tol);
}

} // namespace lowfroude
