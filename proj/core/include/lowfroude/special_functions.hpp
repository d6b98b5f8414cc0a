#pragma once

#include "lowfroude/types.hpp"

namespace lowfroude {

/// log Gamma(z) for complex z via the Lanczos approximation (g = 7),
/// with the reflection formula for Re(z) < 1/2. The imaginary part is the
/// analytic continuation along the recurrence, not reduced mod 2pi.
Complex log_gamma(Complex z);

/// digamma(z) = d/dz log Gamma(z) for complex z.
Complex digamma(Complex z);

} // namespace lowfroude
