#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>

namespace pbitsa {

/// Philox4x32-10 counter-based generator (Salmon et al., Random123).
/// Stateless: every (key, counter) pair maps to one 128-bit block.
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;
  using Block = std::array<std::uint32_t, 4>;

  static constexpr Block generate(Counter ctr, Key key) noexcept {
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        key[0] += kWeyl0;
        key[1] += kWeyl1;
      }
      const std::uint64_t p0 = std::uint64_t{kMul0} * ctr[0];
      const std::uint64_t p1 = std::uint64_t{kMul1} * ctr[2];
      const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
      const auto lo0 = static_cast<std::uint32_t>(p0);
      const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
      const auto lo1 = static_cast<std::uint32_t>(p1);
      ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
  }

 private:
  static constexpr std::uint32_t kMul0 = 0xD2511F53u;
  static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
};

/// Disjoint sub-stream tags. The third counter word carries the tag so the
/// same (node, step) pair never reuses a block across purposes.
enum class StreamPurpose : std::uint32_t {
  kSpinInit = 1,
  kUpdate = 2,
  kVariabilityLambdaDelta = 3,
  kVariabilityTiming = 4,
  kTest = 0xFFFFu,
};

/// A keyed family of independent random blocks addressed by
/// (node, step, purpose). Results never depend on the order in which blocks
/// are requested, which is what makes parallel updates reproducible.
class RandomStream {
 public:
  explicit constexpr RandomStream(std::uint64_t seed) noexcept
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)} {}

  [[nodiscard]] constexpr Philox4x32::Block block(std::uint32_t node, std::uint32_t step,
                                                  StreamPurpose purpose,
                                                  std::uint32_t extra = 0) const noexcept {
    return Philox4x32::generate({node, step, static_cast<std::uint32_t>(purpose), extra}, key_);
  }

  [[nodiscard]] constexpr std::uint64_t seed() const noexcept {
    return std::uint64_t{key_[0]} | (std::uint64_t{key_[1]} << 32);
  }

 private:
  Philox4x32::Key key_;
};

/// Uniform double in [0, 1) with 53 random bits.
constexpr double to_unit(std::uint32_t hi, std::uint32_t lo) noexcept {
  const std::uint64_t bits = ((std::uint64_t{hi} << 32) | lo) >> 11;
  return static_cast<double>(bits) * 0x1.0p-53;
}

/// Uniform double in [-1, 1).
constexpr double to_signed_unit(std::uint32_t hi, std::uint32_t lo) noexcept {
  return 2.0 * to_unit(hi, lo) - 1.0;
}

/// Two independent standard normals from one block (Box-Muller).
inline std::pair<double, double> to_normal_pair(const Philox4x32::Block& b) noexcept {
  // Shift into (0, 1] so the logarithm stays finite.
  const double u1 = to_unit(b[0], b[1]) + 0x1.0p-53;
  const double u2 = to_unit(b[2], b[3]);
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  return {radius * std::cos(angle), radius * std::sin(angle)};
}

/// SplitMix64 finalizer; used to derive per-trial seeds from a base seed.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_trial_seed(std::uint64_t base_seed, std::uint64_t trial) noexcept {
  return mix64(mix64(base_seed) ^ mix64(trial + 0x632BE59BD9B4E019ull));
}

}  // namespace pbitsa
