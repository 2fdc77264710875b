#pragma once

#include <functional>
#include <string>

#include "dgswp/gswp.hpp"

namespace dgswp {

enum class Perturbation { gaussian, vmf };

/// Configuration for Gaussian-smoothed objectives. `kappa` applies to the
/// von Mises-Fisher scheme only; a non-positive value selects the default
/// concentration 1/epsilon^2.
struct SteinConfig {
  Scalar epsilon = 0.05;
  Index n_samples = 20;
  RngStream rng;
  bool variance_reduction = true;
  Perturbation perturbation = Perturbation::gaussian;
  Scalar kappa = 0.0;
  int threads = 1;

  void validate() const;
  Scalar effective_kappa() const { return kappa > 0.0 ? kappa : 1.0 / (epsilon * epsilon); }
};

struct GradEstimate {
  Vec gradient;
  Scalar h_at_theta = 0.0;
  Vec h_perturbed;  // h(theta + eps z_k), k = 1..N
  Index samples_used = 0;
};

using Objective = std::function<Scalar(const Vec&)>;

/// Core estimator on an arbitrary scalar objective (the test hook).
/// All N perturbations are drawn up front from the config's stream and the
/// reduction runs in ascending sample order, so the result is identical for
/// any thread count. When `on_sphere` is set, perturbed parameters are
/// retracted onto the unit sphere before evaluation (Gaussian scheme), or
/// drawn from a von Mises-Fisher around theta (vmf scheme).
GradEstimate estimate_gradient_hook(const Objective& objective, const Vec& theta,
                                    SteinConfig& cfg, bool on_sphere = false);

/// Same estimator with the noise matrix supplied by the caller (one column
/// per sample); used by tests that need controlled draws.
GradEstimate estimate_gradient_given(const Objective& objective, const Vec& theta,
                                     const Mat& noise, const SteinConfig& cfg,
                                     bool on_sphere = false);

/// Gradient estimate of the ambient transport cost at the projector's
/// current parameters.
GradEstimate estimate_gradient(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                               const Projector& proj, Scalar p, SteinConfig& cfg);

struct SmoothedValue {
  Scalar value = 0.0;          // Monte-Carlo mean of h over the perturbations
  Scalar averaged_plan_cost = 0.0;  // <C, mean of lifted plans>
  Coupling averaged_plan;
};

/// Monte-Carlo estimate of the smoothed objective. Computes both the mean
/// of h and the cost of the averaged plan and checks they agree to 1e-9
/// (they are the same number up to floating-point accumulation order).
SmoothedValue h_eps_detail(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                           const Projector& proj, Scalar p, SteinConfig& cfg);

Scalar h_eps_estimate(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                      const Projector& proj, Scalar p, SteinConfig& cfg);

/// One draw from the von Mises-Fisher distribution on the unit sphere
/// (Wood's rejection scheme).
Vec sample_vmf(VecCRef mean_direction, Scalar kappa, RngStream& rng);

std::string perturbation_name(Perturbation p);
Perturbation perturbation_from_name(const std::string& name);

}  // namespace dgswp
