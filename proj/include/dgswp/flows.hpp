#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dgswp/exact_oracle.hpp"
#include "dgswp/optimize.hpp"
#include "dgswp/poincare.hpp"

namespace dgswp {

enum class FlowMethod {
  dgswp,         // inner optimization of the projector each outer step
  swd,           // averaged sliced gradient over fresh random directions
  swgg_random,   // best-of-L random slices each outer step
  fixed_random,  // one random direction drawn once and kept
};

enum class ParticleUpdate { euclidean_gd, poincare_rgd };

struct FlowConfig {
  Index outer_steps = 2000;
  Index inner_theta_steps = 20;
  Scalar outer_step_size = 0.01;
  ParticleUpdate particle_update = ParticleUpdate::euclidean_gd;
  Index probe_every = 50;
  FlowMethod method = FlowMethod::dgswp;
  Index baseline_directions = 20;  // L for swd / swgg_random
  Index oracle_limit = kHungarianLimit;
  Scalar time_budget_seconds = 0.0;    // > 0 stops the flow once work time is spent
  Scalar probe_interval_seconds = 0.0; // > 0 also probes every so much work time

  void validate() const;
};

struct FlowProbe {
  Index t = 0;
  Scalar w2 = 0.0;        // exact W_2 to the target (NaN when above oracle limit)
  Scalar objective = 0.0; // ambient cost of the current plan (or SWD estimate)
  Scalar work_seconds = 0.0;  // cumulative flow time, oracle probes excluded
};

struct FlowTrace {
  std::vector<FlowProbe> probes;
  Mat final_points;
  Index clamp_events = 0;  // ball-boundary clamps during poincare updates
  Index outer_steps_run = 0;
};

/// Gradient of F(X) = <C, plan> with respect to the source points, plan
/// held fixed. Euclidean geometry: the elementwise derivative of
/// sum_k |x_k - y_k|^p summed over plan segments (2*pi_ij*(x_i - y_j) for
/// p = 2). Ball geometry: the Euclidean gradient of geodesic^p.
Mat particle_cost_gradient(const DiscreteMeasure& source, const DiscreteMeasure& target,
                           const Coupling& plan, Scalar p, Geometry geometry);

/// Riemannian rescaling for ball particles: Euclidean gradient times the
/// inverse conformal factor squared ((1-|x|^2)/2)^2 per row.
Mat riemannian_rescale(const Mat& points, const Mat& euclidean_grad);

/// Runs the particle flow: each outer step refreshes the transport plan
/// (per the configured method), then moves particles one step along the
/// negative plan-cost gradient, normalized by particle mass. Probes the
/// exact W_2 (oracle) every probe_every steps; probes are excluded from any
/// timing the caller performs via the on_probe callback.
FlowTrace run_flow(const DiscreteMeasure& source_init, const DiscreteMeasure& target,
                   const Projector& proj_init, Scalar p, const FlowConfig& flow_cfg,
                   OptimizerConfig opt_cfg,
                   const std::function<void(const FlowProbe&)>& on_probe = nullptr);

void save_flow_trace_csv(const FlowTrace& trace, const std::string& path);

std::string flow_method_name(FlowMethod m);
FlowMethod flow_method_from_name(const std::string& name);

}  // namespace dgswp
