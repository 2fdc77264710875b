#pragma once

#include "dgswp/types.hpp"

namespace dgswp {

// Poincare-ball primitives (curvature -1). Inputs are expected to lie in the
// open unit ball; callers clamp with clamp_to_ball where boundary contact is
// possible.

/// Mobius addition u (+) w.
Vec mobius_add(VecCRef u, VecCRef w);

/// Conformal factor lambda_x = 2 / (1 - |x|^2).
Scalar poincare_conformal_factor(VecCRef x);

/// Exponential map at x applied to tangent vector v (exp_x(0) = x).
Vec poincare_exp_map(VecCRef x, VecCRef v);

/// Geodesic distance d(u, v) = arccosh(1 + 2|u-v|^2 / ((1-|u|^2)(1-|v|^2))).
Scalar poincare_distance(VecCRef u, VecCRef v);

/// Euclidean gradient of d(u, v)^p with respect to u (p > 1).
Vec poincare_distance_pow_grad(VecCRef u, VecCRef v, Scalar p);

}  // namespace dgswp
