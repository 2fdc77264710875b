#pragma once

#include <iosfwd>
#include <string>

#include "dgswp/rng.hpp"
#include "dgswp/types.hpp"

namespace dgswp {

enum class Geometry { euclidean, poincare };

std::string geometry_name(Geometry g);
Geometry geometry_from_name(const std::string& name);

// Points inside the Poincare ball are kept strictly away from the boundary
// so that horosphere projections and conformal factors stay finite.
inline constexpr Scalar kBallBoundaryMargin = 1e-12;

/// Weighted point cloud. Immutable after construction; the constructor
/// enforces the measure invariants (weights >= 0 summing to 1, and for ball
/// geometry every point strictly inside the unit ball).
class DiscreteMeasure {
 public:
  DiscreteMeasure(Mat points, Vec weights, Geometry geometry = Geometry::euclidean);

  Index size() const { return points_.rows(); }
  Index dim() const { return points_.cols(); }
  const Mat& points() const { return points_; }
  const Vec& weights() const { return weights_; }
  Geometry geometry() const { return geometry_; }
  bool uniform_weights(Scalar tol = 1e-12) const;

  DiscreteMeasure with_points(Mat points) const;

 private:
  Mat points_;
  Vec weights_;
  Geometry geometry_;
};

/// Uniform measure on the given support (weights 1/n, Euclidean geometry).
DiscreteMeasure make_uniform(Mat points, Geometry geometry = Geometry::euclidean);

/// Weight vector of length n with entries 1/n; the last entry is corrected
/// so the floating-point sum is exactly 1.
Vec uniform_weights(Index n);

/// Radially clamp a ball point to norm <= 1 - kBallBoundaryMargin.
Vec clamp_to_ball(Vec x);

// Dataset generators. Parametrizations are fixed conventions; the scales
// are chosen so the toy experiments live on O(1) coordinates.

/// Balanced mixture of 8 isotropic Gaussians with means equally spaced on a
/// circle. Modes are assigned round-robin so every mode receives within one
/// sample of n/8 points.
DiscreteMeasure gen_eight_gaussians(Index n, RngStream& rng, Scalar radius = 2.0,
                                    Scalar component_std = 0.2);

/// Two interleaved half-circle arcs of unit radius; the lower arc is offset
/// by (0.5, 0.5). Gaussian noise of the given std is added per coordinate.
DiscreteMeasure gen_two_moons(Index n, Scalar noise, RngStream& rng);

/// Spiral r = t / (4*pi), t in [pi, 4*pi], embedded in dimension d by
/// zero-padding and a seeded random rotation (d = 2 leaves points in place).
DiscreteMeasure gen_swiss_roll(Index n, Index d, Scalar noise, RngStream& rng);

/// Uniform samples in [0, 1]^d.
DiscreteMeasure gen_hypercube_uniform(Index n, Index d, RngStream& rng);

/// Wrapped normal on the Poincare ball: Gaussian in the tangent space at
/// `mean`, pushed through the exponential map.
DiscreteMeasure gen_wrapped_normal_poincare(Index n, VecCRef mean, Scalar scale,
                                            RngStream& rng);

// CSV layout: one point per row, coordinates then the weight in the last
// column. JSON layout: {"points": [[..]], "weights": [..], "geometry": ".."}.
void save_measure_csv(const DiscreteMeasure& mu, const std::string& path);
DiscreteMeasure load_measure_csv(const std::string& path,
                                 Geometry geometry = Geometry::euclidean);
std::string measure_to_json(const DiscreteMeasure& mu);
DiscreteMeasure measure_from_json(const std::string& text);

}  // namespace dgswp
