#include "dgswp/ot1d.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace dgswp {

Coupling::Coupling(Index rows, Index cols, std::vector<PlanSegment> segments,
                   Vec row_marginal, Vec col_marginal)
    : rows_(rows),
      cols_(cols),
      segments_(std::move(segments)),
      row_marginal_(std::move(row_marginal)),
      col_marginal_(std::move(col_marginal)) {
  if (row_marginal_.size() != rows_ || col_marginal_.size() != cols_)
    throw std::invalid_argument("coupling: marginal size mismatch");
  for (const auto& s : segments_) {
    if (s.i < 0 || s.i >= rows_ || s.j < 0 || s.j >= cols_)
      throw std::invalid_argument("coupling: segment index out of range");
  }
}

Vec Coupling::computed_row_sums() const {
  Vec r = Vec::Zero(rows_);
  for (const auto& s : segments_) r[s.i] += s.mass;
  return r;
}

Vec Coupling::computed_col_sums() const {
  Vec c = Vec::Zero(cols_);
  for (const auto& s : segments_) c[s.j] += s.mass;
  return c;
}

Scalar Coupling::total_mass() const {
  Scalar m = 0.0;
  for (const auto& s : segments_) m += s.mass;
  return m;
}

Mat Coupling::to_dense() const {
  Mat d = Mat::Zero(rows_, cols_);
  for (const auto& s : segments_) d(s.i, s.j) += s.mass;
  return d;
}

bool Coupling::admissible(Scalar tol) const {
  for (const auto& s : segments_)
    if (s.mass < -tol) return false;
  return ((computed_row_sums() - row_marginal_).array().abs() <= tol).all() &&
         ((computed_col_sums() - col_marginal_).array().abs() <= tol).all();
}

bool Coupling::is_permutation(Scalar tol) const {
  if (rows_ != cols_) return false;
  std::vector<int> row_hits(static_cast<std::size_t>(rows_), 0);
  std::vector<int> col_hits(static_cast<std::size_t>(cols_), 0);
  const Scalar unit = 1.0 / static_cast<Scalar>(rows_);
  for (const auto& s : segments_) {
    if (std::abs(s.mass) <= tol) continue;
    if (std::abs(s.mass - unit) > tol) return false;
    ++row_hits[static_cast<std::size_t>(s.i)];
    ++col_hits[static_cast<std::size_t>(s.j)];
  }
  for (Index i = 0; i < rows_; ++i)
    if (row_hits[static_cast<std::size_t>(i)] != 1 || col_hits[static_cast<std::size_t>(i)] != 1)
      return false;
  return true;
}

Coupling SortedPlan::lift(const Vec& row_marginal, const Vec& col_marginal) const {
  return Coupling(row_marginal.size(), col_marginal.size(), segments, row_marginal,
                  col_marginal);
}

std::vector<Index> sorted_order(VecCRef values) {
  std::vector<Index> order(static_cast<std::size_t>(values.size()));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Index a, Index b) { return values[a] < values[b]; });
  return order;
}

Scalar pow_abs(Scalar diff, Scalar p) {
  if (p == 2.0) return diff * diff;
  return std::pow(std::abs(diff), p);
}

std::pair<Scalar, SortedPlan> solve_1d_uniform(VecCRef xs, VecCRef ys, Scalar p) {
  if (xs.size() != ys.size())
    throw std::invalid_argument("solve_1d_uniform: length mismatch");
  if (!(p > 1.0)) throw std::invalid_argument("solve_1d_uniform: requires p > 1");
  const Index n = xs.size();
  SortedPlan plan;
  plan.source_order = sorted_order(xs);
  plan.target_order = sorted_order(ys);
  plan.segments.reserve(static_cast<std::size_t>(n));
  const Scalar w = 1.0 / static_cast<Scalar>(n);
  Scalar cost = 0.0;
  for (Index k = 0; k < n; ++k) {
    const Index i = plan.source_order[static_cast<std::size_t>(k)];
    const Index j = plan.target_order[static_cast<std::size_t>(k)];
    cost += pow_abs(xs[i] - ys[j], p);
    plan.segments.push_back({i, j, w});
  }
  return {cost * w, std::move(plan)};
}

std::pair<Scalar, Coupling> solve_1d_general(VecCRef xs, VecCRef a, VecCRef ys,
                                             VecCRef b, Scalar p) {
  if (xs.size() != a.size() || ys.size() != b.size())
    throw std::invalid_argument("solve_1d_general: support/weight size mismatch");
  if (!(p > 1.0)) throw std::invalid_argument("solve_1d_general: requires p > 1");
  if (std::abs(a.sum() - b.sum()) > 1e-8)
    throw std::invalid_argument("solve_1d_general: marginal sums differ");

  const auto sx = sorted_order(xs);
  const auto sy = sorted_order(ys);
  const Index n = xs.size();
  const Index m = ys.size();

  std::vector<PlanSegment> segments;
  segments.reserve(static_cast<std::size_t>(n + m - 1));
  Scalar cost = 0.0;
  Index u = 0, v = 0;
  Scalar ra = a[sx[0]];
  Scalar rb = b[sy[0]];
  while (u < n && v < m) {
    const Index i = sx[static_cast<std::size_t>(u)];
    const Index j = sy[static_cast<std::size_t>(v)];
    const Scalar mass = std::min(ra, rb);
    if (mass > 0.0) {
      segments.push_back({i, j, mass});
      cost += mass * pow_abs(xs[i] - ys[j], p);
    }
    ra -= mass;
    rb -= mass;
    // Advance the exhausted side; on an exact tie advance both.
    if (ra <= 0.0 && ++u < n) ra = a[sx[static_cast<std::size_t>(u)]];
    if (rb <= 0.0 && ++v < m) rb = b[sy[static_cast<std::size_t>(v)]];
  }
  return {cost, Coupling(n, m, std::move(segments), a, b)};
}

}  // namespace dgswp
