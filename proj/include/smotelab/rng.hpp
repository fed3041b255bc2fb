#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>

namespace smotelab {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11). The output
/// block is a pure function of (key, counter), so any stream position can be
/// reached without generating the prefix.
struct Philox4x32 {
  using Block = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Block generate(Block counter, Key key) noexcept;
};

/// SplitMix64 finalizer; used to hash seeds and tags into stream keys.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Derives an independent 64-bit key from a root seed and a tag path, e.g.
/// derive_key(seed, {tag, n, trial}). Order of tags matters.
std::uint64_t derive_key(std::uint64_t seed, std::initializer_list<std::uint64_t> tags) noexcept;

/// A sequential view over one Philox stream. The 128-bit counter is split into
/// a 64-bit stream id (fixed) and a 64-bit block index (advancing), so streams
/// with different ids never overlap.
class RngStream {
 public:
  explicit RngStream(std::uint64_t key, std::uint64_t stream_id = 0) noexcept;

  std::uint64_t next_u64() noexcept;

  /// Uniform in [0, 1) with 53 random bits.
  double uniform01() noexcept;

  /// Uniform in the open interval (0, 1); safe to feed into a quantile.
  double open01() noexcept;

  /// Uniform integer in [0, bound) by 128-bit multiply-shift. bound > 0.
  std::uint64_t uniform_index(std::uint64_t bound) noexcept;

  /// Number of 64-bit draws consumed so far.
  std::uint64_t draws() const noexcept { return draws_; }

 private:
  void refill() noexcept;

  Philox4x32::Key key_;
  std::uint64_t stream_id_;
  std::uint64_t block_ = 0;
  Philox4x32::Block buffer_{};
  int buffered_ = 0;  // u64 words left in buffer_ (0, 1 or 2)
  std::uint64_t draws_ = 0;
};

}  // namespace smotelab
