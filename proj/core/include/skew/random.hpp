#pragma once

#include <cstdint>
#include <limits>

#include "skew/hermitian.hpp"

namespace skew {

/// Counter-based random stream keyed by (seed, trial).
///
/// Draw k of the stream is a pure function of (seed, trial, k): the SplitMix64
/// finalizer applied to key + (k + 1) * golden-ratio increment. Streams of different
/// trials never share state, so results do not depend on which worker runs a trial.
class KeyedStream {
 public:
  using result_type = std::uint64_t;

  KeyedStream(std::uint64_t seed, std::uint64_t trial);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  /// Uniform on the open interval (0, 1), 53 bits.
  double uniform();
  /// Standard normal by Box-Muller (two draws per sample, cosine branch).
  double normal();

  std::uint64_t key() const noexcept { return key_; }
  std::uint64_t draws() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t z) noexcept;

/// (1 - delta) G G^dagger / Tr[G G^dagger] + delta I / n with complex Ginibre G.
/// Smallest eigenvalue is at least delta / n. Requires n >= 2 and delta in (0, 1).
DensityMatrix sample_density(KeyedStream& stream, std::size_t n, double mix_floor);

/// scale * (M + M^dagger) / 2 with complex Gaussian M. Requires n >= 2 and scale > 0.
Observable sample_observable(KeyedStream& stream, std::size_t n, double scale = 1.0);

}  // namespace skew
