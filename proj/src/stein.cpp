#include "dgswp/stein.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

#include "dgswp/cost.hpp"

namespace dgswp {

void SteinConfig::validate() const {
  if (!(epsilon > 0.0)) throw std::invalid_argument("stein: epsilon must be positive");
  if (n_samples < 1) throw std::invalid_argument("stein: n_samples must be >= 1");
  if (perturbation == Perturbation::vmf && !(effective_kappa() > 0.0))
    throw std::invalid_argument("stein: kappa must be positive");
}

std::string perturbation_name(Perturbation p) {
  return p == Perturbation::gaussian ? "gaussian" : "vmf";
}

Perturbation perturbation_from_name(const std::string& name) {
  if (name == "gaussian") return Perturbation::gaussian;
  if (name == "vmf") return Perturbation::vmf;
  throw std::invalid_argument("unknown perturbation: " + name);
}

namespace {

/// Evaluate f(k) for k in [0, n) with results stored by index. Order of
/// execution is irrelevant to the caller; the reduction downstream is by
/// ascending k.
void indexed_for(Index n, int threads, const std::function<void(Index)>& f) {
  if (threads <= 1 || n <= 1) {
    for (Index k = 0; k < n; ++k) f(k);
    return;
  }
  std::atomic<Index> next{0};
  auto worker = [&]() {
    for (;;) {
      const Index k = next.fetch_add(1);
      if (k >= n) return;
      f(k);
    }
  };
  std::vector<std::thread> pool;
  const int count = std::min<int>(threads, static_cast<int>(n));
  pool.reserve(static_cast<std::size_t>(count));
  for (int t = 0; t < count; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
}

}  // namespace

Vec sample_vmf(VecCRef mean_direction, Scalar kappa, RngStream& rng) {
  const Index d = mean_direction.size();
  if (std::abs(mean_direction.norm() - 1.0) > 1e-9)
    throw std::invalid_argument("sample_vmf: mean direction must be unit");
  if (!(kappa > 0.0)) throw std::invalid_argument("sample_vmf: kappa must be positive");
  if (d < 2) throw std::invalid_argument("sample_vmf: need dimension >= 2");

  // Wood (1994): sample the cosine w of the angle to the mean, then a
  // uniform tangent direction.
  const Scalar dm1 = static_cast<Scalar>(d - 1);
  const Scalar b = (-2.0 * kappa + std::sqrt(4.0 * kappa * kappa + dm1 * dm1)) / dm1;
  const Scalar x0 = (1.0 - b) / (1.0 + b);
  const Scalar c = kappa * x0 + dm1 * std::log(1.0 - x0 * x0);
  Scalar w;
  for (;;) {
    const Scalar z = rng.beta(dm1 / 2.0, dm1 / 2.0);
    w = (1.0 - (1.0 + b) * z) / (1.0 - (1.0 - b) * z);
    const Scalar u = rng.uniform_pos();
    if (kappa * w + dm1 * std::log(1.0 - x0 * w) - c >= std::log(u)) break;
  }

  // Uniform direction orthogonal to the pole e_d.
  Vec v = Vec::Zero(d);
  if (d == 2) {
    v[0] = rng.uniform() < 0.5 ? -1.0 : 1.0;
  } else {
    Vec t = rng.unit_vector(d - 1);
    v.head(d - 1) = t;
  }
  Vec sample = std::sqrt(std::max(0.0, 1.0 - w * w)) * v;
  sample[d - 1] += w;

  // Householder reflection mapping e_d onto the mean direction.
  Vec axis = mean_direction;
  axis[d - 1] -= 1.0;
  const Scalar an = axis.norm();
  if (an > 1e-14) {
    axis /= an;
    sample -= 2.0 * axis.dot(sample) * axis;
  }
  return sample / sample.norm();
}

GradEstimate estimate_gradient_given(const Objective& objective, const Vec& theta,
                                     const Mat& noise, const SteinConfig& cfg,
                                     bool on_sphere) {
  cfg.validate();
  const Index q = theta.size();
  const Index n = noise.cols();
  if (noise.rows() != q) throw std::invalid_argument("stein: noise shape mismatch");
  const Scalar eps = cfg.epsilon;

  Mat perturbed(q, n);
  for (Index k = 0; k < n; ++k) {
    Vec t = theta + eps * noise.col(k);
    if (on_sphere) t /= t.norm();
    perturbed.col(k) = t;
  }

  Vec h_perturbed(n);
  Scalar h0 = 0.0;
  indexed_for(n + 1, cfg.threads, [&](Index k) {
    if (k == 0)
      h0 = objective(theta);
    else
      h_perturbed[k - 1] = objective(perturbed.col(k - 1));
  });

  Vec grad = Vec::Zero(q);
  const Scalar baseline = cfg.variance_reduction ? h0 : 0.0;
  for (Index k = 0; k < n; ++k) grad += (h_perturbed[k] - baseline) * noise.col(k);
  grad /= eps * static_cast<Scalar>(n);

  if (!grad.allFinite())
    throw std::runtime_error("stein: non-finite gradient estimate");
  return {std::move(grad), h0, std::move(h_perturbed), n};
}

GradEstimate estimate_gradient_hook(const Objective& objective, const Vec& theta,
                                    SteinConfig& cfg, bool on_sphere) {
  cfg.validate();
  const Index q = theta.size();
  const Index n = cfg.n_samples;
  const Scalar eps = cfg.epsilon;

  // Pre-draw every perturbation so evaluation order cannot change the draw
  // sequence; estimate_gradient_given reduces in ascending sample order.
  Mat z(q, n);
  if (cfg.perturbation == Perturbation::vmf) {
    if (!on_sphere)
      throw std::invalid_argument("stein: vmf perturbation requires sphere parameters");
    const Scalar kappa = cfg.effective_kappa();
    for (Index k = 0; k < n; ++k)
      z.col(k) = (sample_vmf(theta, kappa, cfg.rng) - theta) / eps;
    // vmf samples are already on the sphere; theta + eps*z reproduces them
    // exactly, so skip the retraction.
    return estimate_gradient_given(objective, theta, z, cfg, false);
  }
  for (Index k = 0; k < n; ++k) z.col(k) = cfg.rng.normal_vector(q);
  return estimate_gradient_given(objective, theta, z, cfg, on_sphere);
}

GradEstimate estimate_gradient(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                               const Projector& proj, Scalar p, SteinConfig& cfg) {
  const Objective h = [&](const Vec& t) {
    return gswp_ambient_cost(mu, nu, proj.with_theta(t), p);
  };
  return estimate_gradient_hook(h, proj.theta(), cfg, proj.on_sphere());
}

SmoothedValue h_eps_detail(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                           const Projector& proj, Scalar p, SteinConfig& cfg) {
  cfg.validate();
  const Index q = proj.param_count();
  const Index n = cfg.n_samples;
  const Scalar eps = cfg.epsilon;
  const bool sphere = proj.on_sphere();

  Mat perturbed(q, n);
  for (Index k = 0; k < n; ++k) {
    if (cfg.perturbation == Perturbation::vmf) {
      perturbed.col(k) = sample_vmf(proj.theta(), cfg.effective_kappa(), cfg.rng);
    } else {
      Vec t = proj.theta() + eps * cfg.rng.normal_vector(q);
      if (sphere) t /= t.norm();
      perturbed.col(k) = t;
    }
  }

  std::vector<GswpResult> results;
  results.reserve(static_cast<std::size_t>(n));
  Scalar mean_h = 0.0;
  for (Index k = 0; k < n; ++k) {
    results.push_back(gswp_eval(mu, nu, proj.with_theta(perturbed.col(k)), p));
    mean_h += results.back().ambient_cost;
  }
  mean_h /= static_cast<Scalar>(n);

  // Average the lifted plans (a convex combination, so still admissible).
  std::vector<PlanSegment> merged;
  const Scalar w = 1.0 / static_cast<Scalar>(n);
  for (const auto& r : results)
    for (const auto& s : r.plan.segments()) merged.push_back({s.i, s.j, s.mass * w});
  Coupling averaged(mu.size(), nu.size(), std::move(merged), mu.weights(), nu.weights());

  Scalar avg_cost = 0.0;
  {
    Vec u(mu.dim()), v(nu.dim());
    for (const auto& s : averaged.segments()) {
      u = mu.points().row(s.i).transpose();
      v = nu.points().row(s.j).transpose();
      avg_cost += s.mass * ground_cost(u, v, p, mu.geometry());
    }
  }

  const Scalar tol = 1e-9 * std::max(1.0, std::abs(mean_h));
  if (std::abs(mean_h - avg_cost) > tol)
    throw std::logic_error("h_eps: mean of costs and cost of averaged plan disagree");
  return {mean_h, avg_cost, std::move(averaged)};
}

Scalar h_eps_estimate(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                      const Projector& proj, Scalar p, SteinConfig& cfg) {
  return h_eps_detail(mu, nu, proj, p, cfg).value;
}

}  // namespace dgswp
