#include "circnav/random.hpp"

#include <cmath>

#include "circnav/geometry.hpp"

namespace circnav {
namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t prod = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(prod >> 32);
  lo = static_cast<std::uint32_t>(prod);
}

double to_open_unit(std::uint64_t v) {
  return (static_cast<double>(v >> 11) + 0.5) * 0x1.0p-53;
}

CounterRng::Block block_for(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  const CounterRng::Block ctr{static_cast<std::uint32_t>(index),
                              static_cast<std::uint32_t>(index >> 32),
                              static_cast<std::uint32_t>(stream),
                              static_cast<std::uint32_t>(stream >> 32)};
  return CounterRng::philox(ctr, {static_cast<std::uint32_t>(seed),
                                  static_cast<std::uint32_t>(seed >> 32)});
}

}  // namespace

CounterRng::Block CounterRng::philox(const Block& counter, std::array<std::uint32_t, 2> key) {
  Block c = counter;
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, c[0], hi0, lo0);
    mulhilo(kMul1, c[2], hi1, lo1);
    c = {hi1 ^ c[1] ^ key[0], lo1, hi0 ^ c[3] ^ key[1], lo0};
    key[0] += kWeyl0;
    key[1] += kWeyl1;
  }
  return c;
}

std::uint64_t CounterRng::bits(std::uint64_t stream, std::uint64_t index) const {
  const Block b = block_for(seed_, stream, index);
  return (static_cast<std::uint64_t>(b[1]) << 32) | b[0];
}

double CounterRng::uniform(std::uint64_t stream, std::uint64_t index) const {
  return to_open_unit(bits(stream, index));
}

double CounterRng::normal(std::uint64_t stream, std::uint64_t index) const {
  const Block b = block_for(seed_, stream, index);
  const double u1 = to_open_unit((static_cast<std::uint64_t>(b[1]) << 32) | b[0]);
  const double u2 = to_open_unit((static_cast<std::uint64_t>(b[3]) << 32) | b[2]);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t cell, std::uint64_t run) {
  return CounterRng(base).bits(streams::kSeedDerivation + cell, run);
}

}  // namespace circnav
