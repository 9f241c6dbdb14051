#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>

namespace footrule {

/// Identifies one independent random stream: the base seed and a
/// substream number (the replication index in every study).
struct StreamKey {
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
};

/// Philox4x32-10 counter-based bijection (Salmon et al., SC'11).
/// Output depends only on (counter, key); there is no hidden state.
struct Philox4x32 {
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter block(Counter counter, Key key) noexcept;
};

/// Sequential view over a Philox stream. The seed is the key, the stream id
/// fills the upper counter words and the lower words count blocks, so any
/// substream is reachable without skipping.
class StreamRng {
 public:
  explicit StreamRng(StreamKey key) noexcept;

  std::uint64_t next_u64() noexcept;

  /// 53-bit uniform strictly inside (0, 1).
  double uniform_open() noexcept;

 private:
  void refill() noexcept;

  Philox4x32::Key key_{};
  std::uint64_t stream_id_ = 0;
  std::uint64_t block_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  unsigned used_ = 2;
};

/// SplitMix64 finaliser.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Deterministic child seed for a labelled sub-study.
std::uint64_t derive_seed(std::uint64_t base,
                          std::initializer_list<std::uint64_t> labels) noexcept;

}  // namespace footrule
