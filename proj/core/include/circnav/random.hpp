#pragma once

#include <array>
#include <cstdint>

namespace circnav {

/// Counter-based random numbers: Philox4x32-10 (Salmon et al., "Parallel
/// random numbers: as easy as 1, 2, 3", SC'11). Every draw is a pure function
/// of (seed, stream, index), so any sample path can be replayed exactly on any
/// platform and draws can be generated out of order.
///
/// Layout: key = {seed lo, seed hi}; counter = {index lo, index hi, stream lo,
/// stream hi}.
class CounterRng {
 public:
  using Block = std::array<std::uint32_t, 4>;

  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t seed() const { return seed_; }

  /// Raw Philox4x32-10 block.
  static Block philox(const Block& counter, std::array<std::uint32_t, 2> key);

  /// 64 random bits (first two words of the block).
  std::uint64_t bits(std::uint64_t stream, std::uint64_t index) const;

  /// Uniform double in (0, 1) with 53 random bits.
  double uniform(std::uint64_t stream, std::uint64_t index) const;

  /// Standard normal via Box-Muller (cosine branch) on the two 64-bit halves
  /// of one block.
  double normal(std::uint64_t stream, std::uint64_t index) const;

 private:
  std::uint64_t seed_;
};

/// Named draw streams.
namespace streams {
inline constexpr std::uint64_t kMeasurement = 0;  ///< one draw per control interval
inline constexpr std::uint64_t kDiffusion = 1;    ///< one draw per integration substep
inline constexpr std::uint64_t kSeedDerivation = 0x5EED0000ULL;
}  // namespace streams

/// Seed of one cell of a Monte Carlo experiment, derived from
/// (base seed, cell index, run index).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t cell, std::uint64_t run);

}  // namespace circnav
