#pragma once

#include <cstdint>

namespace hitmix {

// SplitMix64 finalizer.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Counter-based stream: draw t of stream (seed, stream_id) is a pure function
// of (seed, stream_id, t), so parallel and serial consumers see identical
// sequences and disjoint streams never share state.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0)
      : base_(mix64(mix64(seed) ^ (kGamma * (stream_id + 1)))) {}

  std::uint64_t next_u64() { return mix64(base_ + kGamma * counter_++); }

  // Uniform in (0,1); offset by half an ulp so 0 is excluded.
  double next_double() { return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * next_double(); }

  std::uint64_t next_below(std::uint64_t n) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
  std::uint64_t base_;
  std::uint64_t counter_ = 0;
};

}  // namespace hitmix
