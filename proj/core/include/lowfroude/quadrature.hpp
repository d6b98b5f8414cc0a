#pragma once

#include <functional>

#include "lowfroude/types.hpp"

namespace lowfroude {

/// Adaptive Gauss-Kronrod (G7, K15) quadrature of a complex-valued function
/// along the straight segment z0 -> z1. Error estimate |K15 - G7| per
/// subinterval, bisected until the summed estimate meets abs_tol.
/// QuadratureFailure when the subdivision budget is exhausted.
Complex integrate_segment(const std::function<Complex(Complex)>& f, Complex z0, Complex z1,
                          double abs_tol = 1e-12, int max_depth = 48);

/// Same, but with an integrable algebraic endpoint behaviour (z - z_end)^p
/// regularized by the substitution t -> t^kappa at that end. Choosing kappa
/// as the reduced denominator of p makes the mapped integrand analytic at
/// the endpoint, so the adaptive refinement stays shallow there.
/// kappa <= 1 marks a regular endpoint.
Complex integrate_segment_singular(const std::function<Complex(Complex)>& f, Complex z0,
                                   Complex z1, double kappa_left, double kappa_right,
                                   double abs_tol = 1e-12);

} // namespace lowfroude
