#include "dgswp/coupling_sampler.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "dgswp/cost.hpp"

namespace dgswp {

namespace {

Mat concat_batches(const std::vector<Mat>& batches) {
  if (batches.empty()) throw std::invalid_argument("sample_pairs: need at least one batch");
  const Index d = batches.front().cols();
  Index total = 0;
  for (const auto& b : batches) {
    if (b.cols() != d) throw std::invalid_argument("sample_pairs: batch dimension mismatch");
    total += b.rows();
  }
  Mat out(total, d);
  Index off = 0;
  for (const auto& b : batches) {
    out.middleRows(off, b.rows()) = b;
    off += b.rows();
  }
  return out;
}

}  // namespace

CouplingSampler::CouplingSampler(Projector proj, Scalar p, OptimizerConfig cfg)
    : proj_(std::move(proj)), p_(p), cfg_(std::move(cfg)) {}

PairBatch CouplingSampler::sample(const std::vector<Mat>& src_batches,
                                  const std::vector<Mat>& tgt_batches) {
  const DiscreteMeasure mu = make_uniform(concat_batches(src_batches));
  const DiscreteMeasure nu = make_uniform(concat_batches(tgt_batches));
  if (mu.size() != nu.size())
    throw std::invalid_argument("sample_pairs: aggregate sizes differ");

  // Successive calls must see fresh perturbations; chain a per-call stream
  // off the sampler's own.
  OptimizerConfig run_cfg = cfg_;
  run_cfg.stein.rng = RngStream(cfg_.stein.rng.next_u64());
  proj_ = minimize_gswp(mu, nu, proj_, p_, run_cfg).first;
  ++snapshot_;
  GswpResult result = gswp_eval(mu, nu, proj_, p_);

  PairBatch batch;
  batch.plan_cost = result.ambient_cost;
  batch.theta_snapshot = snapshot_;
  batch.segments = result.plan.segments();

  if (result.plan.is_permutation()) {
    for (const auto& s : batch.segments) batch.index_pairs.emplace_back(s.i, s.j);
  } else {
    // Draw aggregate-size pairs proportionally to plan mass.
    const Index count = mu.size();
    std::vector<Scalar> cumulative;
    cumulative.reserve(batch.segments.size());
    Scalar acc = 0.0;
    for (const auto& s : batch.segments) {
      acc += s.mass;
      cumulative.push_back(acc);
    }
    for (Index k = 0; k < count; ++k) {
      const Scalar u = cfg_.stein.rng.uniform() * acc;
      const auto it = std::lower_bound(cumulative.begin(), cumulative.end(), u);
      const auto idx = static_cast<std::size_t>(it - cumulative.begin());
      const auto& s = batch.segments[std::min(idx, batch.segments.size() - 1)];
      batch.index_pairs.emplace_back(s.i, s.j);
    }
  }

  const Index d = mu.dim();
  batch.x0.resize(static_cast<Index>(batch.index_pairs.size()), d);
  batch.x1.resize(static_cast<Index>(batch.index_pairs.size()), d);
  for (std::size_t r = 0; r < batch.index_pairs.size(); ++r) {
    batch.x0.row(static_cast<Index>(r)) = mu.points().row(batch.index_pairs[r].first);
    batch.x1.row(static_cast<Index>(r)) = nu.points().row(batch.index_pairs[r].second);
  }
  return batch;
}

PairBatch sample_pairs(const std::vector<Mat>& src_batches,
                       const std::vector<Mat>& tgt_batches, const Projector& proj,
                       Scalar p, const OptimizerConfig& cfg) {
  CouplingSampler sampler(proj, p, cfg);
  return sampler.sample(src_batches, tgt_batches);
}

void save_pairs_csv(const PairBatch& batch, Scalar p, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for write: " + path);
  const Index d = batch.x0.cols();
  for (Index k = 0; k < d; ++k) out << "x0_" << k << ',';
  for (Index k = 0; k < d; ++k) out << "x1_" << k << ',';
  out << "pair_cost\n";
  char buf[32];
  for (Index r = 0; r < batch.x0.rows(); ++r) {
    for (Index k = 0; k < d; ++k) {
      std::snprintf(buf, sizeof(buf), "%.17g,", batch.x0(r, k));
      out << buf;
    }
    for (Index k = 0; k < d; ++k) {
      std::snprintf(buf, sizeof(buf), "%.17g,", batch.x1(r, k));
      out << buf;
    }
    Scalar c = 0.0;
    for (Index k = 0; k < d; ++k) c += pow_abs(batch.x0(r, k) - batch.x1(r, k), p);
    std::snprintf(buf, sizeof(buf), "%.17g", c);
    out << buf << '\n';
  }
}

}  // namespace dgswp
