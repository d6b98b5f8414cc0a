#include "lowfroude/singulant.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <ostream>

#include "lowfroude/csv.hpp"
#include "lowfroude/quadrature.hpp"

namespace lowfroude {
namespace {

double dist_point_segment(Complex p, Complex a, Complex b) {
    const Complex ab = b - a;
    const double len2 = std::norm(ab);
    if (len2 == 0.0) return std::abs(p - a);
    double t = ((p.real() - a.real()) * ab.real() + (p.imag() - a.imag()) * ab.imag()) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(p - (a + t * ab));
}

Complex integrand(const ForcingSpec& spec, double epsilon, Complex z) {
    const Complex q = eval_qs(spec, z, epsilon);
    return Complex(0, 1) / (q * q * q);
}

// i/q_s^3 with the local power model (i/c_k^3)(z + a_k)^{3 sigma_k}
// substituted inside a small ball around each singularity, so endpoint
// quadrature never evaluates q_s inside its exclusion radius
std::function<Complex(Complex)> guarded_integrand(const ForcingSpec& spec, double epsilon) {
    struct Ball {
        Complex center;
        Complex scale;  // i/c_k^3
        double power;   // 3 sigma_k
    };
    auto balls = std::make_shared<std::vector<Ball>>();
    const auto sings = singularity_positions(spec, epsilon);
    for (int k = 0; k < static_cast<int>(sings.size()); ++k) {
        const LocalSingularity loc = local_expansion(spec, k, epsilon);
        balls->push_back({Complex(-loc.a_k, 0.0),
                          Complex(0, 1) / (loc.c_k * loc.c_k * loc.c_k),
                          3.0 * loc.sigma_k.value()});
    }
    return [spec, epsilon, balls](Complex z) {
        for (const Ball& b : *balls) {
            if (std::abs(z - b.center) < 1e-9)
                return b.scale * std::pow(z - b.center, b.power);
        }
        return integrand(spec, epsilon, z);
    };
}

// reduced denominator of 3 sigma: the t^kappa endpoint map with this kappa
// makes (z - z0)^{3 sigma} analytic in t
double endpoint_kappa(Rational sigma) {
    const Rational three_sigma{3 * sigma.num, sigma.den};
    return static_cast<double>(three_sigma.den);
}

} // namespace

Complex chi_numeric(const ForcingSpec& spec, int k, Complex w,
                    const std::vector<Complex>& waypoints, double epsilon, double abs_tol,
                    double clearance) {
    const auto sings = singularity_positions(spec, epsilon);
    if (k < 0 || k >= static_cast<int>(sings.size()))
        throw DomainError("singularity index out of range");
    const Complex origin(-sings[k], 0.0);
    std::vector<Complex> path;
    path.push_back(origin);
    path.insert(path.end(), waypoints.begin(), waypoints.end());
    path.push_back(w);

    double total_len = 0.0;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) total_len += std::abs(path[i + 1] - path[i]);
    if (total_len < kSingularityExclusionRadius) return {0.0, 0.0};  // chi_k(-a_k) = 0

    std::vector<Complex> obstacles;
    for (double a : sings) obstacles.push_back(Complex(-a, 0.0));
    obstacles.push_back(Complex(0.0, 0.0));

    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        if (path[i] == path[i + 1]) continue;
        for (const Complex& obs : obstacles) {
            const double d = dist_point_segment(obs, path[i], path[i + 1]);
            if (d >= clearance) continue;
            // the origin singularity may touch its own starting endpoint
            if (i == 0 && obs == origin && std::abs(obs - path[1]) >= clearance) continue;
            throw PathTooClose("path segment " + std::to_string(i) +
                               " within clearance of a singularity");
        }
    }

    const auto f = guarded_integrand(spec, epsilon);
    const double kappa = endpoint_kappa(local_expansion(spec, k, epsilon).sigma_k);
    Complex total = 0.0;
    const double seg_tol = abs_tol / static_cast<double>(path.size() - 1);
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        if (path[i] == path[i + 1]) continue;
        // the first leg leaves the branch point, where the integrand has an
        // integrable algebraic zero with fractional-power derivatives
        total += integrate_segment_singular(f, path[i], path[i + 1], i == 0 ? kappa : 1.0, 1.0,
                                            seg_tol);
    }
    return total;
}

Complex chi_between_singularities(const ForcingSpec& spec, int k_from, int k_to, double epsilon,
                                  double abs_tol) {
    const auto sings = singularity_positions(spec, epsilon);
    if (k_from < 0 || k_from >= static_cast<int>(sings.size()) || k_to < 0 ||
        k_to >= static_cast<int>(sings.size()))
        throw DomainError("singularity index out of range");
    if (k_from == k_to) return {0.0, 0.0};
    const auto f = guarded_integrand(spec, epsilon);
    const double kl = endpoint_kappa(local_expansion(spec, k_from, epsilon).sigma_k);
    const double kr = endpoint_kappa(local_expansion(spec, k_to, epsilon).sigma_k);
    return integrate_segment_singular(f, Complex(-sings[k_from], 0.0),
                                      Complex(-sings[k_to], 0.0), kl, kr, abs_tol);
}

std::vector<Complex> default_chi_waypoints(const ForcingSpec& spec, int k, Complex w,
                                           double epsilon, double h) {
    const auto sings = singularity_positions(spec, epsilon);
    if (h <= 0.0) {
        double scale = std::abs(w);
        for (double a : sings) scale = std::max(scale, a);
        h = 0.5 * std::max(1.0, scale);
    }
    return {Complex(-sings.at(k), h), Complex(w.real(), h)};
}

Complex chi_to(const ForcingSpec& spec, int k, Complex w, double epsilon, double abs_tol) {
    return chi_numeric(spec, k, w, default_chi_waypoints(spec, k, w, epsilon), epsilon, abs_tol);
}

Complex chi_merged(Complex w, double a) {
    if (a <= 0.0) throw DomainError("chi_merged needs a > 0");
    if (w.imag() == 0.0 && w.real() <= 0.0)
        throw BranchCutHit("chi_merged on the cut (-inf, 0]");
    return a * kPi + Complex(0, 1) * ((w + a) + a * std::log(w / a));
}

double re_chi2_separated(double a, double beta, double epsilon) {
    if (a <= 0.0) throw DomainError("re_chi2_separated needs a > 0");
    const double t = epsilon * (beta / a) * (beta / a);
    if (t >= 1.0) throw DomainError("re_chi2_separated needs eps (beta/a)^2 < 1");
    return kPi * a * std::sqrt(1.0 - t);
}

double StokesPath::crossing() const {
    if (points.size() < 2) return std::numeric_limits<double>::quiet_NaN();
    const Complex& p = points[points.size() - 2];
    const Complex& q = points.back();
    const double dy = q.imag() - p.imag();
    if (dy == 0.0) return q.real();
    const double t = -p.imag() / dy;
    return p.real() + t * (q.real() - p.real());
}

std::vector<StokesPath> trace_stokes_seeds(const ForcingSpec& spec, int k, double step,
                                           double max_arc, double epsilon, double bbox) {
    const auto sings = singularity_positions(spec, epsilon);
    const LocalSingularity loc = local_expansion(spec, k, epsilon);
    const double p = 1.0 + 3.0 * loc.sigma_k.value();
    const double arg_x = std::arg(loc.x_k);
    const Complex origin(-loc.a_k, 0.0);

    if (step <= 0.0 || step > 1e-2 * loc.a_k)
        throw DomainError("step must satisfy 0 < step <= a_k/100");

    // seed angles with Im chi = 0, Re chi > 0 in the local model
    std::vector<double> seeds;
    for (int j = -4; j <= 4; ++j) {
        const double th = (2.0 * kPi * j - arg_x) / p;
        if (th > -kPi && th < kPi) seeds.push_back(th);
    }
    if (seeds.empty()) throw SeedFailure("no admissible seed directions");

    const auto chi_prime = [&](Complex z) { return integrand(spec, epsilon, z); };

    std::vector<StokesPath> out;
    for (double th : seeds) {
        StokesPath path;
        path.origin = origin;
        path.seed_angle = th;
        const double rho0 = 2.0 * step;
        Complex w = origin + rho0 * std::exp(Complex(0, th));
        Complex chi = loc.x_k * std::pow(rho0, p) * std::exp(Complex(0, p * th));
        path.points.push_back(w);
        path.chi.push_back(chi);
        Complex prev_dir = std::exp(Complex(0, th));
        double arc = 0.0;
        path.terminated_by = StokesPath::Termination::MaxLength;
        while (arc < max_arc) {
            // stall guard: a line running into another singularity (the
            // flattened equal-power configuration) terminates there; its
            // continuation lives beyond the first sheet
            bool stalled = false;
            for (double s : sings) {
                if (std::abs(w - Complex(-s, 0.0)) < 2.0 * step && Complex(-s, 0.0) != origin) {
                    path.terminated_by = StokesPath::Termination::LeftDomain;
                    stalled = true;
                    break;
                }
            }
            if (stalled) break;
            Complex g;
            try {
                g = chi_prime(w);
            } catch (const SingularityHit&) {
                path.terminated_by = StokesPath::Termination::LeftDomain;
                break;
            }
            if (g == Complex(0.0, 0.0) || !is_finite(g)) {
                path.terminated_by = StokesPath::Termination::LeftDomain;
                break;
            }
            // tangent of the Im chi level curve; orient along the march
            Complex t = std::conj(g) / std::abs(g);
            if (t.real() * prev_dir.real() + t.imag() * prev_dir.imag() < 0.0) t = -t;
            Complex wn, chin;
            bool corrected = false;
            try {
                wn = w + step * t;
                chin = chi + 0.5 * (g + chi_prime(wn)) * (step * t);
                // corrector: Newton on Im chi transverse to the path
                for (int it = 0; it < 8; ++it) {
                    const Complex gn = chi_prime(wn);
                    const Complex nvec = Complex(0, 1) * t;
                    const double d_im = (gn * nvec).imag();
                    if (d_im == 0.0) break;
                    double s = -chin.imag() / d_im;
                    s = std::clamp(s, -step, step);
                    const Complex wc = wn + s * nvec;
                    chin += 0.5 * (gn + chi_prime(wc)) * (s * nvec);
                    wn = wc;
                    if (std::abs(chin.imag()) < 1e-12 * std::max(1.0, std::abs(chin.real()))) {
                        corrected = true;
                        break;
                    }
                }
            } catch (const SingularityHit&) {
                path.terminated_by = StokesPath::Termination::LeftDomain;
                break;
            }
            if (!corrected && std::abs(chin.imag()) > 1e-6)
                throw CorrectorDivergence("Im chi correction stalled at w = " +
                                          std::to_string(wn.real()) + "+" +
                                          std::to_string(wn.imag()) + "i");
            prev_dir = (wn - w) / std::abs(wn - w);
            arc += std::abs(wn - w);
            const double prev_im = w.imag();
            w = wn;
            chi = chin;
            path.points.push_back(w);
            path.chi.push_back(chi);
            // noise floor keeps a line hugging the axis (flattened case) from
            // registering spurious crossings
            if (std::fabs(prev_im) > 1e-9 && w.imag() * prev_im < 0.0) {
                if (w.real() > 0.0) {
                    path.terminated_by = StokesPath::Termination::CrossedRealAxis;
                } else {
                    // fell through a branch cut on the negative real axis
                    path.terminated_by = StokesPath::Termination::LeftDomain;
                }
                break;
            }
            if (std::abs(w.real()) > bbox || std::abs(w.imag()) > bbox) {
                path.terminated_by = StokesPath::Termination::LeftDomain;
                break;
            }
        }
        out.push_back(std::move(path));
    }
    return out;
}

StokesPath trace_stokes_line(const ForcingSpec& spec, int k, double step, double max_arc,
                             double epsilon, double bbox) {
    auto all = trace_stokes_seeds(spec, k, step, max_arc, epsilon, bbox);
    // prefer a line that reaches the positive real axis, upper-half seeds first
    std::stable_sort(all.begin(), all.end(), [](const StokesPath& a, const StokesPath& b) {
        const bool ca = a.terminated_by == StokesPath::Termination::CrossedRealAxis;
        const bool cb = b.terminated_by == StokesPath::Termination::CrossedRealAxis;
        if (ca != cb) return ca;
        return a.seed_angle > b.seed_angle;
    });
    return all.front();
}

void write_stokes_csv(const StokesPath& path, std::ostream& os) {
    CsvWriter csv(os, {"re_w", "im_w", "re_chi", "im_chi"});
    for (std::size_t i = 0; i < path.points.size(); ++i)
        csv.row({path.points[i].real(), path.points[i].imag(), path.chi[i].real(),
                 path.chi[i].imag()});
}

} // namespace lowfroude
