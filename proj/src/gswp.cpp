#include "dgswp/gswp.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "dgswp/cost.hpp"

namespace dgswp {

namespace {

void check_compatible(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                      const Projector& proj) {
  if (mu.dim() != nu.dim()) throw std::invalid_argument("gswp: dimension mismatch");
  if (mu.geometry() != nu.geometry()) throw std::invalid_argument("gswp: geometry mismatch");
  if (proj.input_dim() != mu.dim())
    throw std::invalid_argument("gswp: projector dimension mismatch");
}

Scalar segment_ambient_cost(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                            const std::vector<PlanSegment>& segments, Scalar p) {
  const Mat& x = mu.points();
  const Mat& y = nu.points();
  const Index d = x.cols();
  Scalar total = 0.0;
  if (mu.geometry() == Geometry::euclidean) {
    for (const auto& s : segments) {
      Scalar c = 0.0;
      for (Index k = 0; k < d; ++k) c += pow_abs(x(s.i, k) - y(s.j, k), p);
      total += s.mass * c;
    }
    return total;
  }
  Vec u(d), v(d);
  for (const auto& s : segments) {
    u = x.row(s.i).transpose();
    v = y.row(s.j).transpose();
    total += s.mass * ground_cost(u, v, p, Geometry::poincare);
  }
  return total;
}

/// Solve the projected 1D problem; shared by the full and cost-only paths.
std::pair<Scalar, std::vector<PlanSegment>> projected_plan(const DiscreteMeasure& mu,
                                                           const DiscreteMeasure& nu,
                                                           const Projector& proj, Scalar p) {
  const Vec px = proj.project(mu.points());
  const Vec py = proj.project(nu.points());
  if (mu.size() == nu.size() && mu.uniform_weights() && nu.uniform_weights()) {
    auto [cost, plan] = solve_1d_uniform(px, py, p);
    return {cost, std::move(plan.segments)};
  }
  auto [cost, coupling] = solve_1d_general(px, mu.weights(), py, nu.weights(), p);
  return {cost, coupling.segments()};
}

}  // namespace

GswpResult gswp_eval(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                     const Projector& proj, Scalar p) {
  check_compatible(mu, nu, proj);
  auto [theta_cost, segments] = projected_plan(mu, nu, proj, p);
  const Scalar ambient = segment_ambient_cost(mu, nu, segments, p);
  return {theta_cost, ambient,
          Coupling(mu.size(), nu.size(), std::move(segments), mu.weights(), nu.weights())};
}

Scalar gswp_ambient_cost(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                         const Projector& proj, Scalar p) {
  check_compatible(mu, nu, proj);
  auto [theta_cost, segments] = projected_plan(mu, nu, proj, p);
  (void)theta_cost;
  return segment_ambient_cost(mu, nu, segments, p);
}

Scalar gswp_distance(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                     const Projector& proj, Scalar p) {
  check_compatible(mu, nu, proj);
  return std::pow(projected_plan(mu, nu, proj, p).first, 1.0 / p);
}

std::pair<GswpResult, Vec> min_swgg_random_search(const DiscreteMeasure& mu,
                                                  const DiscreteMeasure& nu, Index L,
                                                  Scalar p, RngStream& rng) {
  if (L < 1) throw std::invalid_argument("min_swgg_random_search: L must be >= 1");
  Scalar best_cost = std::numeric_limits<Scalar>::infinity();
  GswpResult best{0.0, 0.0, Coupling(mu.size(), nu.size(), {}, mu.weights(), nu.weights())};
  Vec best_theta;
  for (Index l = 0; l < L; ++l) {
    const Vec theta = rng.unit_vector(mu.dim());
    GswpResult r = gswp_eval(mu, nu, Projector::linear(theta), p);
    if (r.ambient_cost < best_cost) {
      best_cost = r.ambient_cost;
      best = std::move(r);
      best_theta = theta;
    }
  }
  return {std::move(best), std::move(best_theta)};
}

Scalar swd_monte_carlo(const DiscreteMeasure& mu, const DiscreteMeasure& nu, Index L,
                       Scalar p, RngStream& rng) {
  if (L < 1) throw std::invalid_argument("swd_monte_carlo: L must be >= 1");
  Scalar total = 0.0;
  for (Index l = 0; l < L; ++l) {
    const Projector proj = Projector::linear(rng.unit_vector(mu.dim()));
    total += projected_plan(mu, nu, proj, p).first;
  }
  return total / static_cast<Scalar>(L);
}

std::string gswp_result_to_json(const GswpResult& result) {
  nlohmann::json j;
  j["theta_cost"] = result.theta_cost;
  j["ambient_cost"] = result.ambient_cost;
  auto plan = nlohmann::json::array();
  for (const auto& s : result.plan.segments())
    plan.push_back({s.i, s.j, s.mass});
  j["plan"] = std::move(plan);
  return j.dump();
}

}  // namespace dgswp
