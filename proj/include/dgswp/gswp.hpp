#pragma once

#include <utility>

#include "dgswp/measures.hpp"
#include "dgswp/ot1d.hpp"
#include "dgswp/projectors.hpp"
#include "dgswp/rng.hpp"

namespace dgswp {

/// Result of evaluating one slice: the projected 1D cost (the objective of
/// the inner problem), the ambient transport cost of the lifted plan, and
/// the plan itself.
struct GswpResult {
  Scalar theta_cost = 0.0;    // 1D W_p^p of the projected measures
  Scalar ambient_cost = 0.0;  // <C, plan> against the ambient ground cost
  Coupling plan;
};

/// Projects both supports through the scalar field, solves the 1D problem,
/// and lifts the monotone plan back to the original indices. The ambient
/// cost uses the ground cost of the measures' geometry (geodesic on the
/// ball) and is accumulated over plan segments; the full cost matrix is
/// never materialized.
GswpResult gswp_eval(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                     const Projector& proj, Scalar p);

/// Ambient transport cost only (the value h(theta)); cheaper than
/// gswp_eval when the plan itself is not needed.
Scalar gswp_ambient_cost(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                         const Projector& proj, Scalar p);

/// Slice distance d_theta = (projected 1D cost)^(1/p).
Scalar gswp_distance(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                     const Projector& proj, Scalar p);

/// Random-search baseline: draws L directions uniformly on the sphere,
/// evaluates the linear slice for each, returns the result and direction
/// with the lowest ambient cost.
std::pair<GswpResult, Vec> min_swgg_random_search(const DiscreteMeasure& mu,
                                                  const DiscreteMeasure& nu, Index L,
                                                  Scalar p, RngStream& rng);

/// Monte-Carlo sliced distance: mean of the projected 1D W_p^p over L
/// uniform directions.
Scalar swd_monte_carlo(const DiscreteMeasure& mu, const DiscreteMeasure& nu, Index L,
                       Scalar p, RngStream& rng);

std::string gswp_result_to_json(const GswpResult& result);

}  // namespace dgswp
