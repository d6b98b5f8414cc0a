#include "lowfroude/ode.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "lowfroude/csv.hpp"

namespace lowfroude {
namespace {

// Dormand-Prince 5(4) tableau
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
// embedded 4th-order weights
constexpr double e1 = 5179.0 / 57600, e3 = 7571.0 / 16695, e4 = 393.0 / 640,
                 e5 = -92097.0 / 339200, e6 = 187.0 / 2100, e7 = 1.0 / 40;

} // namespace

Trajectory integrate_phi(const ForcingSpec& spec, double epsilon, double w0, double w_end,
                         double tol) {
    if (!(w0 > 0.0) || !(w_end > w0)) throw DomainError("need 0 < w0 < w_end");
    if (!(tol >= 1e-13 && tol <= 1e-6)) throw DomainError("tol must lie in [1e-13, 1e-6]");
    if (epsilon <= 0.0) throw DomainError("epsilon must be positive");

    const auto rhs = [&](double w, Complex phi) -> Complex {
        const Complex q = eval_qs(spec, Complex(w, 0.0), epsilon);
        if (std::abs(q) < 1e-14 || std::abs(phi) < 1e-14)
            throw DivisionNearZero("|q_s| or |phi| below 1e-14 at w = " + std::to_string(w));
        return (phi - q * q) / (Complex(0, 1) * epsilon * q * phi);
    };

    Trajectory traj;
    traj.epsilon = epsilon;
    traj.spec = spec;
    traj.w0 = w0;
    traj.w_end = w_end;

    const Complex q0 = eval_qs(spec, Complex(w0, 0.0), epsilon);
    const Complex qp0 = qs_derivative(spec, Complex(w0, 0.0), epsilon);
    Complex phi = q0 * q0 + Complex(0, 2.0) * epsilon * q0 * q0 * q0 * q0 * qp0;

    double w = w0;
    const double h_max = epsilon / 6.0;
    const double h_min = 1e-14 * (w_end - w0);
    double h = std::min(h_max, 1e-3 * w0);

    traj.w.push_back(w);
    traj.phi.push_back(phi);

    Complex k1 = rhs(w, phi);
    while (w < w_end) {
        h = std::min(h, w_end - w);
        const Complex k2 = rhs(w + c2 * h, phi + h * (a21 * k1));
        const Complex k3 = rhs(w + c3 * h, phi + h * (a31 * k1 + a32 * k2));
        const Complex k4 = rhs(w + c4 * h, phi + h * (a41 * k1 + a42 * k2 + a43 * k3));
        const Complex k5 = rhs(w + c5 * h, phi + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        const Complex k6 =
            rhs(w + h, phi + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
        const Complex y5 = phi + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        const Complex k7 = rhs(w + h, y5);
        const Complex y4 = phi + h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

        const double sc = tol * std::max(1.0, std::max(std::abs(phi), std::abs(y5)));
        const double err = std::abs(y5 - y4) / sc;

        if (err <= 1.0) {
            w += h;
            phi = y5;
            k1 = k7;  // FSAL
            traj.w.push_back(w);
            traj.phi.push_back(phi);
            if (!is_finite(phi)) throw StepFailure("non-finite state at w = " + std::to_string(w));
        }
        const double fac = 0.9 * std::pow(err > 0.0 ? err : 1e-10, -0.2);
        h *= std::clamp(fac, 0.2, 5.0);
        h = std::min(h, h_max);
        if (h < h_min)
            throw StepFailure("step size underflow at w = " + std::to_string(w));
    }
    return traj;
}

double wave_background(const ForcingSpec& spec, double w, double epsilon) {
    const Complex wq(w, 0.0);
    const Complex q = eval_qs(spec, wq, epsilon);
    const Complex qp = qs_derivative(spec, wq, epsilon);
    const Complex qpp = qs_second_derivative(spec, wq, epsilon);
    const Complex phi1 = Complex(0, 2.0) * q * q * q * q * qp;
    const double q2 = (q * q).real();
    const double q6 = std::pow(q.real(), 6);
    const double phi2 = -12.0 * q6 * qp.real() * qp.real() - 2.0 * q6 * q.real() * qpp.real();
    return q2 + epsilon * phi1.real() + epsilon * epsilon * phi2;
}

WaveMeasurement measure_wave(const Trajectory& traj, std::pair<double, double> window,
                             double tol_used) {
    if (window.first < traj.w0 || window.second > traj.w_end || window.first >= window.second)
        throw DomainError("window must lie inside [w0, w_end]");

    std::vector<double> w, r;
    for (std::size_t i = 0; i < traj.w.size(); ++i) {
        if (traj.w[i] < window.first || traj.w[i] > window.second) continue;
        w.push_back(traj.w[i]);
        r.push_back(traj.phi[i].real() - wave_background(traj.spec, traj.w[i], traj.epsilon));
    }
    if (w.size() < 8) throw WindowTooShort("fewer than 8 samples in window");

    double max_abs = 0.0;
    for (double v : r) max_abs = std::max(max_abs, std::fabs(v));
    if (max_abs < 100.0 * tol_used)
        throw NoWaveDetected("residual " + std::to_string(max_abs) + " below 100x tolerance");

    // extrema by slope sign change, parabolic refinement on the triple
    std::vector<double> ex_w, ex_v;
    std::vector<int> ex_kind;
    for (std::size_t i = 1; i + 1 < w.size(); ++i) {
        const double dl = r[i] - r[i - 1];
        const double dr = r[i + 1] - r[i];
        if ((dl > 0.0 && dr <= 0.0) || (dl < 0.0 && dr >= 0.0)) {
            const double denom = r[i - 1] - 2.0 * r[i] + r[i + 1];
            double xv = w[i], yv = r[i];
            if (denom != 0.0) {
                // symmetric 3-point parabola; grid is near-uniform (capped step)
                const double dx = 0.5 * (r[i - 1] - r[i + 1]) / denom;
                xv = w[i] + dx * 0.5 * (w[i + 1] - w[i - 1]);
                yv = r[i] - 0.125 * (r[i - 1] - r[i + 1]) * (r[i - 1] - r[i + 1]) / denom;
            }
            ex_w.push_back(xv);
            ex_v.push_back(yv);
            ex_kind.push_back(dl > 0.0 ? +1 : -1);
        }
    }
    if (ex_w.size() < 3) throw WindowTooShort("fewer than 3 extrema in window");

    double amp_sum = 0.0;
    for (std::size_t i = 0; i + 1 < ex_v.size(); ++i)
        amp_sum += 0.5 * std::fabs(ex_v[i] - ex_v[i + 1]);
    const double amplitude = amp_sum / static_cast<double>(ex_v.size() - 1);

    // wavelength from mean peak (maximum-to-maximum) spacing
    std::vector<double> peaks;
    for (std::size_t i = 0; i < ex_w.size(); ++i)
        if (ex_kind[i] > 0) peaks.push_back(ex_w[i]);
    double wavelength;
    if (peaks.size() >= 2) {
        wavelength = (peaks.back() - peaks.front()) / static_cast<double>(peaks.size() - 1);
    } else {
        // fall back to twice the mean alternating-extremum spacing
        wavelength = 2.0 * (ex_w.back() - ex_w.front()) / static_cast<double>(ex_w.size() - 1);
    }

    WaveMeasurement m;
    m.amplitude = amplitude;
    m.wavelength = wavelength;
    m.window = window;
    m.extrema_count = static_cast<int>(ex_w.size());
    return m;
}

void write_trajectory_csv(const Trajectory& traj, std::ostream& os) {
    CsvWriter csv(os, {"w", "re_phi", "im_phi"});
    for (std::size_t i = 0; i < traj.w.size(); ++i)
        csv.row({traj.w[i], traj.phi[i].real(), traj.phi[i].imag()});
}

} // namespace lowfroude
