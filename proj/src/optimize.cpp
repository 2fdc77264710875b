#include "dgswp/optimize.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>

namespace dgswp {

Scalar step_size(const StepSizeSchedule& schedule, Index t) {
  if (t < 0) throw std::invalid_argument("step_size: t must be >= 0");
  switch (schedule.policy) {
    case StepPolicy::constant:
      return schedule.eta0;
    case StepPolicy::cosine: {
      const Scalar frac = static_cast<Scalar>(t) / static_cast<Scalar>(schedule.horizon);
      return schedule.eta0 * (1.0 + std::cos(std::numbers::pi_v<Scalar> * frac)) / 2.0;
    }
    case StepPolicy::exponential:
      return schedule.eta0 * std::pow(schedule.decay, static_cast<Scalar>(t));
  }
  return schedule.eta0;
}

void OptimizerConfig::validate() const {
  if (steps < 1) throw std::invalid_argument("optimize: steps must be >= 1");
  if (!(step.eta0 > 0.0)) throw std::invalid_argument("optimize: step size must be positive");
  if (step.policy == StepPolicy::exponential && !(step.decay > 0.0))
    throw std::invalid_argument("optimize: decay must be positive");
  stein.validate();
}

std::pair<Projector, OptTrace> minimize_gswp(const DiscreteMeasure& mu,
                                             const DiscreteMeasure& nu,
                                             const Projector& proj_init, Scalar p,
                                             OptimizerConfig cfg) {
  cfg.validate();
  if (cfg.step.policy == StepPolicy::cosine && cfg.step.horizon < 1)
    cfg.step.horizon = cfg.steps;

  const auto start = std::chrono::steady_clock::now();
  auto elapsed_ms = [&] {
    return std::chrono::duration<Scalar, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
  };

  Projector proj = proj_init;
  const Index q = proj.param_count();
  Vec velocity = Vec::Zero(q);   // momentum state
  Vec m1 = Vec::Zero(q);         // adaptive first moment
  Vec m2 = Vec::Zero(q);         // adaptive second moment

  OptTrace trace;
  trace.records.reserve(static_cast<std::size_t>(cfg.steps) + 1);
  Scalar guard_scale = 1.0;
  Scalar h0 = 0.0;
  Projector best = proj;

  for (Index t = 0; t < cfg.steps; ++t) {
    GradEstimate est;
    try {
      est = estimate_gradient(mu, nu, proj, p, cfg.stein);
    } catch (const std::runtime_error&) {
      throw NonFiniteObjective(std::move(trace));
    }
    const Scalar h = est.h_at_theta;
    if (!std::isfinite(h)) throw NonFiniteObjective(std::move(trace));
    if (t == 0) {
      h0 = h;
      trace.best_h = h;
      trace.best_step = 0;
    } else if (h < trace.best_h) {
      trace.best_h = h;
      trace.best_step = t;
      best = proj;
    }
    // Divergence guard: once the objective blows past 10x its initial
    // value the step size is durably halved.
    if (t > 0 && h > 10.0 * h0) {
      guard_scale *= 0.5;
      ++trace.halvings;
    }
    trace.records.push_back({t, h, proj.theta().norm(), elapsed_ms(), guard_scale});

    const Scalar eta = step_size(cfg.step, t) * guard_scale;
    Vec update;
    switch (cfg.method) {
      case UpdateMethod::sgd:
        update = eta * est.gradient;
        break;
      case UpdateMethod::momentum:
        velocity = cfg.momentum_beta * velocity + est.gradient;
        update = eta * velocity;
        break;
      case UpdateMethod::adaptive: {
        m1 = cfg.beta1 * m1 + (1.0 - cfg.beta1) * est.gradient;
        m2 = cfg.beta2 * m2 + (1.0 - cfg.beta2) * est.gradient.cwiseProduct(est.gradient);
        const Scalar c1 = 1.0 - std::pow(cfg.beta1, static_cast<Scalar>(t) + 1.0);
        const Scalar c2 = 1.0 - std::pow(cfg.beta2, static_cast<Scalar>(t) + 1.0);
        const Vec denom = ((m2 / c2).cwiseSqrt().array() + cfg.delta).matrix();
        update = eta * (m1 / c1).cwiseQuotient(denom);
        break;
      }
    }
    Vec theta = proj.theta() - update;
    if (proj.kind() == ProjectorKind::linear && cfg.renormalize_each_step) {
      const Scalar n = theta.norm();
      if (n > 0.0) theta /= n;
    }
    proj = proj.with_theta(std::move(theta));  // retracts sphere parameters
  }

  // Final objective so the trace covers t = 0..T.
  const Scalar h_final = gswp_ambient_cost(mu, nu, proj, p);
  if (!std::isfinite(h_final)) throw NonFiniteObjective(std::move(trace));
  if (h_final < trace.best_h) {
    trace.best_h = h_final;
    trace.best_step = cfg.steps;
    best = proj;
  }
  trace.records.push_back({cfg.steps, h_final, proj.theta().norm(), elapsed_ms(), guard_scale});

  return {std::move(best), std::move(trace)};
}

void save_trace_csv(const OptTrace& trace, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for write: " + path);
  out << "t,h,norm_theta,ms\n";
  char buf[128];
  for (const auto& r : trace.records) {
    std::snprintf(buf, sizeof(buf), "%lld,%.17g,%.17g,%.17g\n",
                  static_cast<long long>(r.t), r.h, r.theta_norm, r.wall_ms);
    out << buf;
  }
}

std::string step_policy_name(StepPolicy p) {
  switch (p) {
    case StepPolicy::constant: return "constant";
    case StepPolicy::cosine: return "cosine";
    case StepPolicy::exponential: return "exponential";
  }
  return "constant";
}

StepPolicy step_policy_from_name(const std::string& name) {
  if (name == "constant") return StepPolicy::constant;
  if (name == "cosine") return StepPolicy::cosine;
  if (name == "exponential") return StepPolicy::exponential;
  throw std::invalid_argument("unknown step policy: " + name);
}

std::string update_method_name(UpdateMethod m) {
  switch (m) {
    case UpdateMethod::sgd: return "sgd";
    case UpdateMethod::momentum: return "momentum";
    case UpdateMethod::adaptive: return "adaptive";
  }
  return "sgd";
}

UpdateMethod update_method_from_name(const std::string& name) {
  if (name == "sgd") return UpdateMethod::sgd;
  if (name == "momentum") return UpdateMethod::momentum;
  if (name == "adaptive") return UpdateMethod::adaptive;
  throw std::invalid_argument("unknown update method: " + name);
}

}  // namespace dgswp
