#include "dgswp/flows.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace dgswp {

void FlowConfig::validate() const {
  if (outer_steps < 0) throw std::invalid_argument("flow: outer_steps must be >= 0");
  if (inner_theta_steps < 1) throw std::invalid_argument("flow: inner_theta_steps must be >= 1");
  if (!(outer_step_size > 0.0)) throw std::invalid_argument("flow: step size must be positive");
  if (probe_every < 1) throw std::invalid_argument("flow: probe_every must be >= 1");
  if (baseline_directions < 1) throw std::invalid_argument("flow: need >= 1 direction");
}

Mat particle_cost_gradient(const DiscreteMeasure& source, const DiscreteMeasure& target,
                           const Coupling& plan, Scalar p, Geometry geometry) {
  if (plan.rows() != source.size() || plan.cols() != target.size())
    throw std::invalid_argument("particle_cost_gradient: plan/measure mismatch");
  const Mat& x = source.points();
  const Mat& y = target.points();
  const Index d = x.cols();
  Mat grad = Mat::Zero(x.rows(), d);

  if (geometry == Geometry::euclidean) {
    for (const auto& s : plan.segments()) {
      if (p == 2.0) {
        grad.row(s.i) += s.mass * 2.0 * (x.row(s.i) - y.row(s.j));
      } else {
        for (Index k = 0; k < d; ++k) {
          const Scalar diff = x(s.i, k) - y(s.j, k);
          if (diff != 0.0)
            grad(s.i, k) += s.mass * p * std::pow(std::abs(diff), p - 1.0) *
                            (diff > 0.0 ? 1.0 : -1.0);
        }
      }
    }
    return grad;
  }

  Vec u(d), v(d);
  for (const auto& s : plan.segments()) {
    u = x.row(s.i).transpose();
    v = y.row(s.j).transpose();
    grad.row(s.i) += s.mass * poincare_distance_pow_grad(u, v, p).transpose();
  }
  return grad;
}

Mat riemannian_rescale(const Mat& points, const Mat& euclidean_grad) {
  Mat out = euclidean_grad;
  for (Index i = 0; i < points.rows(); ++i) {
    const Scalar f = (1.0 - points.row(i).squaredNorm()) / 2.0;
    out.row(i) *= f * f;
  }
  return out;
}

namespace {

/// Mass-normalized sliced gradient: mean over L fresh directions of the
/// derivative of the projected 1D cost with respect to each source point.
Mat swd_particle_gradient(const DiscreteMeasure& source, const DiscreteMeasure& target,
                          Index L, Scalar p, RngStream& rng, Scalar* objective_out) {
  const Index n = source.size();
  const Index d = source.dim();
  Mat grad = Mat::Zero(n, d);
  Scalar objective = 0.0;
  for (Index l = 0; l < L; ++l) {
    const Vec theta = rng.unit_vector(d);
    const Projector proj = Projector::linear(theta);
    GswpResult r = gswp_eval(source, target, proj, p);
    objective += r.theta_cost;
    const Vec px = proj.project(source.points());
    const Vec py = proj.project(target.points());
    for (const auto& s : r.plan.segments()) {
      const Scalar diff = px[s.i] - py[s.j];
      if (diff == 0.0) continue;
      const Scalar mag = p == 2.0 ? 2.0 * diff
                                  : p * std::pow(std::abs(diff), p - 1.0) *
                                        (diff > 0.0 ? 1.0 : -1.0);
      grad.row(s.i) += s.mass * mag * theta.transpose();
    }
  }
  grad /= static_cast<Scalar>(L);
  if (objective_out) *objective_out = objective / static_cast<Scalar>(L);
  return grad;
}

Scalar probe_w2(const DiscreteMeasure& source, const DiscreteMeasure& target, Scalar p,
                Index oracle_limit) {
  if (source.size() != target.size() || source.size() > oracle_limit ||
      !source.uniform_weights() || !target.uniform_weights())
    return std::numeric_limits<Scalar>::quiet_NaN();
  const Scalar cost = wasserstein_exact(source, target, p).first;
  return std::pow(cost, 1.0 / p);
}

}  // namespace

FlowTrace run_flow(const DiscreteMeasure& source_init, const DiscreteMeasure& target,
                   const Projector& proj_init, Scalar p, const FlowConfig& flow_cfg,
                   OptimizerConfig opt_cfg,
                   const std::function<void(const FlowProbe&)>& on_probe) {
  flow_cfg.validate();
  if (flow_cfg.particle_update == ParticleUpdate::poincare_rgd &&
      source_init.geometry() != Geometry::poincare)
    throw std::invalid_argument("run_flow: poincare update needs ball measures");

  DiscreteMeasure source = source_init;
  Projector proj = proj_init;  // warm-started across outer steps
  opt_cfg.steps = flow_cfg.inner_theta_steps;

  // One stream drives the whole flow; inner optimizations get fresh seeds
  // drawn from it so their noise advances across outer steps.
  RngStream flow_rng = opt_cfg.stein.rng;
  std::optional<Projector> fixed_dir;
  if (flow_cfg.method == FlowMethod::fixed_random)
    fixed_dir = Projector::linear(flow_rng.unit_vector(source.dim()));

  FlowTrace trace;
  trace.clamp_events = 0;

  // Oracle probes are bookkeeping, not flow work; they are excluded from
  // the work clock (and hence from any time budget).
  Scalar work_seconds = 0.0;
  Scalar last_probe_work = 0.0;
  auto record_probe = [&](Index t, Scalar objective) {
    FlowProbe probe{t, probe_w2(source, target, p, flow_cfg.oracle_limit), objective,
                    work_seconds};
    trace.probes.push_back(probe);
    last_probe_work = work_seconds;
    if (on_probe) on_probe(probe);
  };

  Scalar last_objective = gswp_ambient_cost(source, target,
                                            fixed_dir ? *fixed_dir : proj, p);
  record_probe(0, last_objective);

  for (Index t = 1; t <= flow_cfg.outer_steps; ++t) {
    const auto step_start = std::chrono::steady_clock::now();
    // (a) refresh the plan
    std::optional<Coupling> plan;
    Mat grad;
    switch (flow_cfg.method) {
      case FlowMethod::dgswp: {
        opt_cfg.stein.rng = RngStream(flow_rng.next_u64());
        proj = minimize_gswp(source, target, proj, p, opt_cfg).first;
        GswpResult r = gswp_eval(source, target, proj, p);
        last_objective = r.ambient_cost;
        plan = std::move(r.plan);
        break;
      }
      case FlowMethod::swgg_random: {
        auto [r, theta] = min_swgg_random_search(source, target,
                                                 flow_cfg.baseline_directions, p, flow_rng);
        last_objective = r.ambient_cost;
        plan = std::move(r.plan);
        break;
      }
      case FlowMethod::fixed_random: {
        GswpResult r = gswp_eval(source, target, *fixed_dir, p);
        last_objective = r.ambient_cost;
        plan = std::move(r.plan);
        break;
      }
      case FlowMethod::swd: {
        grad = swd_particle_gradient(source, target, flow_cfg.baseline_directions, p,
                                     flow_rng, &last_objective);
        break;
      }
    }
    if (plan)
      grad = particle_cost_gradient(source, target, *plan, p, source.geometry());

    // (b) move the particles along the mass-normalized negative gradient
    Mat pts = source.points();
    const Vec& w = source.weights();
    if (flow_cfg.particle_update == ParticleUpdate::euclidean_gd) {
      for (Index i = 0; i < pts.rows(); ++i)
        pts.row(i) -= flow_cfg.outer_step_size / w[i] * grad.row(i);
    } else {
      const Mat rgrad = riemannian_rescale(pts, grad);
      for (Index i = 0; i < pts.rows(); ++i) {
        const Vec step = -(flow_cfg.outer_step_size / w[i]) * rgrad.row(i).transpose();
        Vec moved = poincare_exp_map(pts.row(i).transpose(), step);
        if (moved.norm() >= 1.0 - kBallBoundaryMargin) {
          moved = clamp_to_ball(std::move(moved));
          ++trace.clamp_events;
        }
        pts.row(i) = moved.transpose();
      }
    }
    source = source.with_points(std::move(pts));
    trace.outer_steps_run = t;
    work_seconds +=
        std::chrono::duration<Scalar>(std::chrono::steady_clock::now() - step_start).count();

    const bool budget_hit = flow_cfg.time_budget_seconds > 0.0 &&
                            work_seconds >= flow_cfg.time_budget_seconds;
    const bool interval_hit =
        flow_cfg.probe_interval_seconds > 0.0 &&
        work_seconds - last_probe_work >= flow_cfg.probe_interval_seconds;
    if (t % flow_cfg.probe_every == 0 || t == flow_cfg.outer_steps || budget_hit ||
        interval_hit)
      record_probe(t, last_objective);
    if (budget_hit) break;
  }

  trace.final_points = source.points();
  return trace;
}

void save_flow_trace_csv(const FlowTrace& trace, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for write: " + path);
  out << "step,log10_w2,objective\n";
  char buf[128];
  for (const auto& pr : trace.probes) {
    std::snprintf(buf, sizeof(buf), "%lld,%.17g,%.17g\n", static_cast<long long>(pr.t),
                  std::log10(pr.w2), pr.objective);
    out << buf;
  }
}

std::string flow_method_name(FlowMethod m) {
  switch (m) {
    case FlowMethod::dgswp: return "dgswp";
    case FlowMethod::swd: return "swd";
    case FlowMethod::swgg_random: return "swgg_random";
    case FlowMethod::fixed_random: return "fixed_random";
  }
  return "dgswp";
}

FlowMethod flow_method_from_name(const std::string& name) {
  if (name == "dgswp") return FlowMethod::dgswp;
  if (name == "swd") return FlowMethod::swd;
  if (name == "swgg_random") return FlowMethod::swgg_random;
  if (name == "fixed_random") return FlowMethod::fixed_random;
  throw std::invalid_argument("unknown flow method: " + name);
}

}  // namespace dgswp
