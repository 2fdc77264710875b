#pragma once

#include "dgswp/measures.hpp"
#include "dgswp/types.hpp"

namespace dgswp {

/// Ground cost c(u, v) between support points: sum_k |u_k - v_k|^p for
/// Euclidean geometry, geodesic distance^p on the Poincare ball.
Scalar ground_cost(VecCRef u, VecCRef v, Scalar p, Geometry geometry);

/// Dense cost matrix C with C(i, j) = c(x_i, y_j). Measures must share
/// dimension and geometry.
Mat cost_matrix(const DiscreteMeasure& mu, const DiscreteMeasure& nu, Scalar p);

}  // namespace dgswp
