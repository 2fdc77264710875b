#include "dgswp/poincare.hpp"

#include <cmath>

namespace dgswp {

Vec mobius_add(VecCRef u, VecCRef w) {
  const Scalar uw = u.dot(w);
  const Scalar u2 = u.squaredNorm();
  const Scalar w2 = w.squaredNorm();
  const Scalar denom = 1.0 + 2.0 * uw + u2 * w2;
  return ((1.0 + 2.0 * uw + w2) * u + (1.0 - u2) * w) / denom;
}

Scalar poincare_conformal_factor(VecCRef x) {
  return 2.0 / (1.0 - x.squaredNorm());
}

Vec poincare_exp_map(VecCRef x, VecCRef v) {
  const Scalar vn = v.norm();
  if (vn == 0.0) return x;
  const Scalar lam = poincare_conformal_factor(x);
  const Vec dir = std::tanh(lam * vn / 2.0) * (v / vn);
  return mobius_add(x, dir);
}

Scalar poincare_distance(VecCRef u, VecCRef v) {
  const Scalar num = (u - v).squaredNorm();
  const Scalar den = (1.0 - u.squaredNorm()) * (1.0 - v.squaredNorm());
  return std::acosh(1.0 + 2.0 * num / den);
}

Vec poincare_distance_pow_grad(VecCRef u, VecCRef v, Scalar p) {
  const Vec diff = u - v;
  const Scalar num = diff.squaredNorm();
  const Scalar du = 1.0 - u.squaredNorm();
  const Scalar dv = 1.0 - v.squaredNorm();
  const Scalar den = du * dv;
  const Scalar arg = 1.0 + 2.0 * num / den;  // arccosh argument
  // grad arg = 2 * grad(num/den); quotient rule in u.
  const Vec grad_arg = (4.0 * diff * den + 4.0 * num * dv * u) / (den * den);
  const Scalar dist = std::acosh(arg);
  // dist / sqrt(arg^2 - 1) -> 1 as arg -> 1; switch to the limit near
  // coincident points to avoid 0/0.
  const Scalar gap = arg - 1.0;
  const Scalar ratio = gap > 1e-12 ? dist / std::sqrt(arg * arg - 1.0) : 1.0;
  if (p == 2.0) return 2.0 * ratio * grad_arg;
  return p * std::pow(dist, p - 2.0) * ratio * grad_arg;
}

}  // namespace dgswp
