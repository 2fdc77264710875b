#pragma once

#include <vector>

#include "dgswp/types.hpp"

namespace dgswp {

struct PlanSegment {
  Index i = 0;
  Index j = 0;
  Scalar mass = 0.0;
};

/// Transport plan between an n-point and an m-point measure, stored as a
/// coordinate list (1D plans have at most n + m - 1 nonzeros). Prescribed
/// marginals are kept alongside so admissibility can always be checked.
class Coupling {
 public:
  Coupling(Index rows, Index cols, std::vector<PlanSegment> segments,
           Vec row_marginal, Vec col_marginal);

  Index rows() const { return rows_; }
  Index cols() const { return cols_; }
  const std::vector<PlanSegment>& segments() const { return segments_; }
  const Vec& row_marginal() const { return row_marginal_; }
  const Vec& col_marginal() const { return col_marginal_; }

  Vec computed_row_sums() const;
  Vec computed_col_sums() const;
  Scalar total_mass() const;
  Mat to_dense() const;

  /// True when row/column sums match the prescribed marginals within tol
  /// and all masses are non-negative.
  bool admissible(Scalar tol = 1e-9) const;

  /// True when the plan is a bijection with equal masses (n = m, each index
  /// used exactly once).
  bool is_permutation(Scalar tol = 1e-12) const;

 private:
  Index rows_, cols_;
  std::vector<PlanSegment> segments_;
  Vec row_marginal_, col_marginal_;
};

/// Monotone 1D plan in sorted coordinates: source_order/target_order are the
/// sorting permutations, segments pair original indices in sorted order.
struct SortedPlan {
  std::vector<Index> source_order;
  std::vector<Index> target_order;
  std::vector<PlanSegment> segments;

  Coupling lift(const Vec& row_marginal, const Vec& col_marginal) const;
};

/// Stable sorting permutation: order[k] is the original index of the k-th
/// smallest value, ties broken by original index.
std::vector<Index> sorted_order(VecCRef values);

/// |x - y|^p (fast path for p = 2).
Scalar pow_abs(Scalar diff, Scalar p);

/// Closed-form 1D OT for uniform weights and equal sizes:
/// cost = (1/n) sum |x_(i) - y_(i)|^p over order statistics.
std::pair<Scalar, SortedPlan> solve_1d_uniform(VecCRef xs, VecCRef ys, Scalar p);

/// North-west-corner quantile coupling on sorted supports for arbitrary
/// marginals a, b (each summing to 1). Returns the optimal cost and plan.
std::pair<Scalar, Coupling> solve_1d_general(VecCRef xs, VecCRef a, VecCRef ys,
                                             VecCRef b, Scalar p);

}  // namespace dgswp
