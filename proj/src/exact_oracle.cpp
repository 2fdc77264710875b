#include "dgswp/exact_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace dgswp {

namespace {

constexpr Scalar kInf = std::numeric_limits<Scalar>::infinity();

}  // namespace

std::pair<Scalar, std::vector<Index>> brute_force_assignment(const Mat& cost) {
  const Index n = cost.rows();
  if (n != cost.cols()) throw std::invalid_argument("brute_force_assignment: not square");
  if (n > kPermutationLimit)
    throw std::invalid_argument("brute_force_assignment: n exceeds limit");
  std::vector<Index> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), Index{0});
  std::vector<Index> best = perm;
  Scalar best_cost = kInf;
  do {
    Scalar c = 0.0;
    for (Index i = 0; i < n; ++i) c += cost(i, perm[static_cast<std::size_t>(i)]);
    // Strict improvement keeps the lexicographically smallest optimum,
    // since std::next_permutation enumerates in lexicographic order.
    if (c < best_cost) {
      best_cost = c;
      best = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return {best_cost, std::move(best)};
}

std::pair<Scalar, std::vector<Index>> hungarian_assignment(const Mat& cost) {
  const Index n = cost.rows();
  if (n != cost.cols()) throw std::invalid_argument("hungarian_assignment: not square");
  if (n == 0) throw std::invalid_argument("hungarian_assignment: empty");

  // Shortest augmenting path with dual potentials, 1-indexed scratch arrays.
  std::vector<Scalar> u(static_cast<std::size_t>(n) + 1, 0.0);
  std::vector<Scalar> v(static_cast<std::size_t>(n) + 1, 0.0);
  std::vector<Index> match(static_cast<std::size_t>(n) + 1, 0);  // col -> row
  std::vector<Index> way(static_cast<std::size_t>(n) + 1, 0);

  for (Index i = 1; i <= n; ++i) {
    match[0] = i;
    Index j0 = 0;
    std::vector<Scalar> minv(static_cast<std::size_t>(n) + 1, kInf);
    std::vector<char> used(static_cast<std::size_t>(n) + 1, 0);
    do {
      used[static_cast<std::size_t>(j0)] = 1;
      const Index i0 = match[static_cast<std::size_t>(j0)];
      Scalar delta = kInf;
      Index j1 = 0;
      for (Index j = 1; j <= n; ++j) {
        if (used[static_cast<std::size_t>(j)]) continue;
        const Scalar cur = cost(i0 - 1, j - 1) - u[static_cast<std::size_t>(i0)] -
                           v[static_cast<std::size_t>(j)];
        if (cur < minv[static_cast<std::size_t>(j)]) {
          minv[static_cast<std::size_t>(j)] = cur;
          way[static_cast<std::size_t>(j)] = j0;
        }
        if (minv[static_cast<std::size_t>(j)] < delta) {
          delta = minv[static_cast<std::size_t>(j)];
          j1 = j;
        }
      }
      for (Index j = 0; j <= n; ++j) {
        if (used[static_cast<std::size_t>(j)]) {
          u[static_cast<std::size_t>(match[static_cast<std::size_t>(j)])] += delta;
          v[static_cast<std::size_t>(j)] -= delta;
        } else {
          minv[static_cast<std::size_t>(j)] -= delta;
        }
      }
      j0 = j1;
    } while (match[static_cast<std::size_t>(j0)] != 0);
    do {
      const Index j1 = way[static_cast<std::size_t>(j0)];
      match[static_cast<std::size_t>(j0)] = match[static_cast<std::size_t>(j1)];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<Index> perm(static_cast<std::size_t>(n), 0);
  Scalar total = 0.0;
  for (Index j = 1; j <= n; ++j) {
    const Index i = match[static_cast<std::size_t>(j)];
    perm[static_cast<std::size_t>(i - 1)] = j - 1;
    total += cost(i - 1, j - 1);
  }
  return {total, std::move(perm)};
}

std::pair<Scalar, Coupling> brute_force_transport(const Mat& cost, VecCRef a, VecCRef b) {
  const Index n = a.size();
  const Index m = b.size();
  if (cost.rows() != n || cost.cols() != m)
    throw std::invalid_argument("brute_force_transport: shape mismatch");
  if (n * m > kBruteForceCellLimit)
    throw std::invalid_argument("brute_force_transport: instance too large");
  if (std::abs(a.sum() - b.sum()) > 1e-8)
    throw std::invalid_argument("brute_force_transport: marginal sums differ");

  std::vector<Index> sigma(static_cast<std::size_t>(n));
  std::iota(sigma.begin(), sigma.end(), Index{0});
  std::vector<Index> tau_init(static_cast<std::size_t>(m));
  std::iota(tau_init.begin(), tau_init.end(), Index{0});

  Scalar best_cost = kInf;
  std::vector<PlanSegment> best_segments;
  std::vector<PlanSegment> segments;
  std::vector<Scalar> ra(static_cast<std::size_t>(n));
  std::vector<Scalar> rb(static_cast<std::size_t>(m));

  do {
    std::vector<Index> tau = tau_init;
    do {
      for (Index i = 0; i < n; ++i) ra[static_cast<std::size_t>(i)] = a[i];
      for (Index j = 0; j < m; ++j) rb[static_cast<std::size_t>(j)] = b[j];
      segments.clear();
      Scalar c = 0.0;
      Index u = 0, w = 0;
      while (u < n && w < m) {
        const Index i = sigma[static_cast<std::size_t>(u)];
        const Index j = tau[static_cast<std::size_t>(w)];
        const Scalar mass = std::min(ra[static_cast<std::size_t>(i)], rb[static_cast<std::size_t>(j)]);
        if (mass > 0.0) {
          c += mass * cost(i, j);
          segments.push_back({i, j, mass});
        }
        ra[static_cast<std::size_t>(i)] -= mass;
        rb[static_cast<std::size_t>(j)] -= mass;
        if (ra[static_cast<std::size_t>(i)] <= 0.0) ++u;
        if (rb[static_cast<std::size_t>(j)] <= 0.0) ++w;
      }
      if (c < best_cost) {
        best_cost = c;
        best_segments = segments;
      }
    } while (std::next_permutation(tau.begin(), tau.end()));
  } while (std::next_permutation(sigma.begin(), sigma.end()));

  return {best_cost, Coupling(n, m, std::move(best_segments), a, b)};
}

std::pair<Scalar, Coupling> wasserstein_exact(const DiscreteMeasure& mu,
                                              const DiscreteMeasure& nu, Scalar p) {
  const Index n = mu.size();
  const Index m = nu.size();
  const Mat c = cost_matrix(mu, nu, p);
  const bool uniform = n == m && mu.uniform_weights() && nu.uniform_weights();

  if (uniform && n <= kHungarianLimit) {
    auto [assign_cost, perm] = hungarian_assignment(c);
    const Scalar w = 1.0 / static_cast<Scalar>(n);
    std::vector<PlanSegment> segments;
    segments.reserve(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) segments.push_back({i, perm[static_cast<std::size_t>(i)], w});
    return {assign_cost * w,
            Coupling(n, m, std::move(segments), mu.weights(), nu.weights())};
  }
  if (n * m <= kBruteForceCellLimit)
    return brute_force_transport(c, mu.weights(), nu.weights());
  if (uniform)
    throw std::invalid_argument("wasserstein_exact: uniform instance larger than Hungarian limit");
  throw std::invalid_argument(
      "wasserstein_exact: non-uniform instance larger than brute-force limit");
}

Scalar plan_cost(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                 const Coupling& plan, Scalar p) {
  if (plan.rows() != mu.size() || plan.cols() != nu.size())
    throw std::invalid_argument("plan_cost: plan/measure shape mismatch");
  Scalar total = 0.0;
  Vec u(mu.dim()), v(nu.dim());
  for (const auto& s : plan.segments()) {
    u = mu.points().row(s.i).transpose();
    v = nu.points().row(s.j).transpose();
    total += s.mass * ground_cost(u, v, p, mu.geometry());
  }
  return total;
}

}  // namespace dgswp
