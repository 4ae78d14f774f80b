#pragma once

// Even entire helpers. Functions of sqrt(u) that only depend on u, so no
// branch of the square root is ever selected.

#include "cdscale/mat2.hpp"

namespace cdscale::entire {

/// cosh(sqrt(u)).
cplx cosh_sqrt(cplx u);

/// sinh(sqrt(u)) / sqrt(u), equal to 1 at u = 0.
cplx sinhc_sqrt(cplx u);

/// d/du [sinh(sqrt(u)) / sqrt(u)], equal to 1/6 at u = 0.
cplx sinhc_sqrt_derivative(cplx u);

}  // namespace cdscale::entire
