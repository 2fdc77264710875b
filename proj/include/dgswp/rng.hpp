#pragma once

#include <cstdint>
#include <random>

#include "dgswp/types.hpp"

namespace dgswp {

/// Seeded random stream with a stream id, so that independent consumers can
/// be handed non-overlapping generators derived from one experiment seed.
///
/// All distributions are implemented on top of the raw mt19937_64 output
/// (whose sequence is mandated by the standard) instead of the std
/// distribution classes, which are implementation-defined. The same
/// (seed, stream) therefore produces the same draw sequence on any platform.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed = 0, std::uint64_t stream = 0);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  /// New independent stream derived from the same seed.
  RngStream substream(std::uint64_t stream) const { return RngStream(seed_, stream); }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  Scalar uniform();

  /// Uniform on (0, 1] (safe as a log argument).
  Scalar uniform_pos();

  /// Uniform integer in [0, n).
  std::uint64_t uniform_index(std::uint64_t n);

  /// Standard normal via Box-Muller (second value cached).
  Scalar normal();

  Vec normal_vector(Index n);

  /// Gamma(shape, 1), Marsaglia-Tsang. Valid for any shape > 0.
  Scalar gamma(Scalar shape);

  Scalar beta(Scalar a, Scalar b);

  /// Uniform direction on the unit sphere in R^d.
  Vec unit_vector(Index d);

  /// Fisher-Yates shuffle of [0, n).
  std::vector<Index> permutation(Index n);

 private:
  std::uint64_t seed_ = 0;
  std::uint64_t stream_ = 0;
  std::mt19937_64 engine_;
  bool has_cached_normal_ = false;
  Scalar cached_normal_ = 0.0;
};

}  // namespace dgswp
