#pragma once

#include <cstdint>

namespace gasr {

/// Deterministic random stream (PCG64 XSL-RR). A (seed, stream) pair fully
/// determines the draw sequence; distinct stream ids select disjoint
/// increments of the generator, giving statistically independent
/// sub-streams of one master seed.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next_u64();

  /// Uniform on the open interval (0, 1).
  double uniform01();
  double uniform(double lo, double hi);

  /// Standard normal (Marsaglia polar, one value cached).
  double normal();

  /// Exponential with the given rate.
  double exponential(double rate);

  /// Uniform integer in [0, bound) without modulo bias.
  std::uint64_t next_below(std::uint64_t bound);

 private:
  unsigned __int128 state_;
  unsigned __int128 inc_;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

}  // namespace gasr
