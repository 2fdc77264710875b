#include "dgswp/cost.hpp"

#include <cmath>
#include <stdexcept>

#include "dgswp/poincare.hpp"

namespace dgswp {

Scalar ground_cost(VecCRef u, VecCRef v, Scalar p, Geometry geometry) {
  if (geometry == Geometry::poincare) {
    const Scalar d = poincare_distance(u, v);
    return p == 2.0 ? d * d : std::pow(d, p);
  }
  if (p == 2.0) return (u - v).squaredNorm();
  return (u - v).array().abs().pow(p).sum();
}

Mat cost_matrix(const DiscreteMeasure& mu, const DiscreteMeasure& nu, Scalar p) {
  if (mu.dim() != nu.dim())
    throw std::invalid_argument("cost_matrix: dimension mismatch");
  if (mu.geometry() != nu.geometry())
    throw std::invalid_argument("cost_matrix: geometry mismatch");
  Mat c(mu.size(), nu.size());
  for (Index i = 0; i < mu.size(); ++i)
    for (Index j = 0; j < nu.size(); ++j)
      c(i, j) = ground_cost(mu.points().row(i), nu.points().row(j), p, mu.geometry());
  return c;
}

}  // namespace dgswp
