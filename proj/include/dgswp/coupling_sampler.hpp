#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "dgswp/optimize.hpp"

namespace dgswp {

/// Matched sample pairs drawn from a transport plan over an aggregate of
/// minibatches, plus provenance of the plan that produced them.
struct PairBatch {
  Mat x0;  // source points, one pair per row
  Mat x1;  // matched target points
  std::vector<std::pair<Index, Index>> index_pairs;
  std::vector<PlanSegment> segments;  // the full plan, for non-permutation consumers
  Scalar plan_cost = 0.0;             // ambient cost of the plan
  std::uint64_t theta_snapshot = 0;   // id of the projector state used
};

/// Aggregates k source and k target minibatches, optimizes the projector on
/// the aggregate (warm-started from the previous call), lifts the final
/// plan, and emits matched pairs. Uniform equal-size aggregates produce a
/// permutation pairing (every index exactly once); otherwise pairs are
/// drawn proportionally to plan mass.
///
/// A sampler instance owns its warm-started projector and is not safe for
/// concurrent calls; use one instance per stream.
class CouplingSampler {
 public:
  CouplingSampler(Projector proj, Scalar p, OptimizerConfig cfg);

  PairBatch sample(const std::vector<Mat>& src_batches,
                   const std::vector<Mat>& tgt_batches);

  const Projector& projector() const { return proj_; }
  std::uint64_t snapshots_taken() const { return snapshot_; }

 private:
  Projector proj_;
  Scalar p_;
  OptimizerConfig cfg_;
  std::uint64_t snapshot_ = 0;
};

/// One-shot convenience wrapper around a fresh sampler.
PairBatch sample_pairs(const std::vector<Mat>& src_batches,
                       const std::vector<Mat>& tgt_batches, const Projector& proj,
                       Scalar p, const OptimizerConfig& cfg);

void save_pairs_csv(const PairBatch& batch, Scalar p, const std::string& path);

}  // namespace dgswp
