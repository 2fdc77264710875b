#pragma once

#include <utility>
#include <vector>

#include "dgswp/cost.hpp"
#include "dgswp/measures.hpp"
#include "dgswp/ot1d.hpp"

namespace dgswp {

// Exact small-instance solvers used for validation and as reference columns
// in benchmark tables. Not intended for experiment-scale inputs.

inline constexpr Index kHungarianLimit = 512;
inline constexpr Index kBruteForceCellLimit = 64;   // n*m for the general path
inline constexpr Index kPermutationLimit = 8;       // n! search

/// Exact minimum over all n! assignments (n <= 8). Returns the cost and the
/// lexicographically smallest optimal permutation (row i -> column perm[i]).
std::pair<Scalar, std::vector<Index>> brute_force_assignment(const Mat& cost);

/// Jonker-Volgenant style shortest augmenting path assignment, O(n^3).
/// Returns the cost and an optimal permutation.
std::pair<Scalar, std::vector<Index>> hungarian_assignment(const Mat& cost);

/// Exact transportation cost for arbitrary marginals by enumerating the
/// vertices of U(a, b): the north-west-corner rule over all row/column
/// permutation pairs reaches every extreme point. Cost is the full
/// n! * m! sweep, so keep instances tiny.
std::pair<Scalar, Coupling> brute_force_transport(const Mat& cost, VecCRef a, VecCRef b);

/// Globally optimal transport between two measures. Uniform weights with
/// n = m <= 512 go through the Hungarian path (plan is a permutation matrix
/// scaled by 1/n); arbitrary weights with n*m <= 64 through vertex brute
/// force. Anything else throws.
std::pair<Scalar, Coupling> wasserstein_exact(const DiscreteMeasure& mu,
                                              const DiscreteMeasure& nu, Scalar p);

/// Transport cost of a plan against the ambient ground cost, accumulated
/// over plan segments.
Scalar plan_cost(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                 const Coupling& plan, Scalar p);

}  // namespace dgswp
