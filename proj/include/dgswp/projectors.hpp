#pragma once

#include <string>
#include <vector>

#include "dgswp/rng.hpp"
#include "dgswp/types.hpp"

namespace dgswp {

enum class ProjectorKind { linear, mlp, horospherical };
enum class Activation { relu, selu, identity };

std::string projector_kind_name(ProjectorKind k);
ProjectorKind projector_kind_from_name(const std::string& name);
std::string activation_name(Activation a);
Activation activation_from_name(const std::string& name);

/// Parametrized scalar field phi(x, theta). The flat parameter vector is the
/// canonical representation: all perturbation and optimization machinery
/// reads and writes theta as a whole, structured views (MLP layers) are
/// derived on the fly.
///
/// Projectors are immutable values; with_theta returns a modified copy.
class Projector {
 public:
  static Projector linear(Vec theta);
  /// Boundary ideal point; the argument is normalized onto the unit sphere.
  static Projector horospherical(Vec theta);
  /// He-initialized feed-forward network; layer_sizes runs from the input
  /// dimension to 1. Weights are drawn N(0, 2/fan_in), biases start at 0,
  /// flattened layer by layer (weights row-major, then biases).
  static Projector mlp_init_he(const std::vector<Index>& layer_sizes, RngStream& rng,
                               Activation act = Activation::relu);
  static Projector mlp_from_theta(const std::vector<Index>& layer_sizes, Vec theta,
                                  Activation act = Activation::relu);

  ProjectorKind kind() const { return kind_; }
  Activation activation() const { return act_; }
  const std::vector<Index>& layer_sizes() const { return layer_sizes_; }
  Index input_dim() const { return layer_sizes_.front(); }
  Index param_count() const { return theta_.size(); }
  /// True when theta -> phi(x, theta) is 1-homogeneous for every x.
  bool homogeneous() const { return kind_ == ProjectorKind::linear; }
  /// True when theta is constrained to the unit sphere.
  bool on_sphere() const { return kind_ == ProjectorKind::horospherical; }

  const Vec& theta() const { return theta_; }
  /// Replaces the parameter vector (length must match). The horospherical
  /// setter retracts onto the unit sphere by normalization.
  Projector with_theta(Vec theta) const;

  /// One scalar per point (points are rows).
  Vec project(MatCRef points) const;
  Scalar project_one(VecCRef x) const;

  /// Expected flat-parameter count for an MLP with these layer sizes.
  static Index mlp_param_count(const std::vector<Index>& layer_sizes);

 private:
  Projector(ProjectorKind kind, Vec theta, std::vector<Index> layer_sizes, Activation act);

  ProjectorKind kind_;
  Vec theta_;
  std::vector<Index> layer_sizes_;
  Activation act_;
};

std::string projector_to_json(const Projector& proj);
Projector projector_from_json(const std::string& text);

}  // namespace dgswp
