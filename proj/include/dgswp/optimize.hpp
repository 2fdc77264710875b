#pragma once

#include <string>
#include <vector>

#include "dgswp/stein.hpp"

namespace dgswp {

enum class StepPolicy { constant, cosine, exponential };
enum class UpdateMethod { sgd, momentum, adaptive };

struct StepSizeSchedule {
  StepPolicy policy = StepPolicy::constant;
  Scalar eta0 = 0.2;
  Scalar decay = 1.0;  // exponential only
  Index horizon = 1;   // cosine only (the total step count T)
};

/// Step size at step t: constant eta0; cosine eta0*(1+cos(pi t/T))/2;
/// exponential eta0*decay^t.
Scalar step_size(const StepSizeSchedule& schedule, Index t);

struct OptimizerConfig {
  Index steps = 100;
  StepSizeSchedule step;
  UpdateMethod method = UpdateMethod::sgd;
  Scalar momentum_beta = 0.9;
  Scalar beta1 = 0.9;   // adaptive first moment
  Scalar beta2 = 0.999; // adaptive second moment
  Scalar delta = 1e-8;  // adaptive denominator offset
  SteinConfig stein;
  bool renormalize_each_step = false;  // linear projector only

  void validate() const;
};

struct TraceRecord {
  Index t = 0;
  Scalar h = 0.0;
  Scalar theta_norm = 0.0;
  Scalar wall_ms = 0.0;
  Scalar step_scale = 1.0;  // divergence-guard multiplier in effect at t
};

struct OptTrace {
  std::vector<TraceRecord> records;  // length steps + 1 (includes t = 0 and t = T)
  Index best_step = 0;
  Scalar best_h = 0.0;
  Index halvings = 0;  // divergence-guard activations
};

/// Thrown when the objective turns non-finite; carries the trace collected
/// so far for diagnosis.
struct NonFiniteObjective : std::runtime_error {
  explicit NonFiniteObjective(OptTrace trace)
      : std::runtime_error("optimize: objective became non-finite"), trace(std::move(trace)) {}
  OptTrace trace;
};

/// Monte-Carlo gradient descent on the smoothed ambient cost. Returns the
/// projector achieving the lowest recorded h over the trajectory together
/// with the full trace. Sphere-constrained parameters are retracted after
/// every update.
std::pair<Projector, OptTrace> minimize_gswp(const DiscreteMeasure& mu,
                                             const DiscreteMeasure& nu,
                                             const Projector& proj_init, Scalar p,
                                             OptimizerConfig cfg);

/// Trace rows as CSV: t,h,norm_theta,ms.
void save_trace_csv(const OptTrace& trace, const std::string& path);

std::string step_policy_name(StepPolicy p);
StepPolicy step_policy_from_name(const std::string& name);
std::string update_method_name(UpdateMethod m);
UpdateMethod update_method_from_name(const std::string& name);

}  // namespace dgswp
