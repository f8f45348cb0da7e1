#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace seedsim {

using Rng = std::mt19937_64;

// splitmix64 finalizer; good avalanche, used for seed derivation.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Builds an rng seed from a master seed plus arbitrary key parts. Streams
// derived from distinct key sequences are independent for practical purposes,
// so work items can be executed in any order and still reproduce exactly.
class StreamKey {
 public:
  explicit StreamKey(std::uint64_t master) : state_(mix64(master ^ 0x5eed5eed5eed5eedULL)) {}

  StreamKey& add(std::uint64_t v) {
    state_ = mix64(state_ ^ v);
    return *this;
  }

  StreamKey& add(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
    for (unsigned char c : s) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    return add(h);
  }

  StreamKey& add(double v) {
    std::uint64_t bits;
    static_assert(sizeof(bits) == sizeof(v));
    __builtin_memcpy(&bits, &v, sizeof(bits));
    return add(bits);
  }

  std::uint64_t value() const { return state_; }
  Rng rng() const { return Rng(state_); }

 private:
  std::uint64_t state_;
};

// Uniform in [0, 1). Fixed bit construction so results do not depend on the
// standard library's distribution implementation.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Returns true with probability p. Exact at the endpoints: p = 0 never fires,
// p = 1 always does.
inline bool chance(Rng& rng, double p) {
  return uniform01(rng) < p;
}

// Unbiased integer in [0, n). Lemire's multiply-with-rejection.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
  unsigned __int128 m = static_cast<unsigned __int128>(rng()) * n;
  auto lo = static_cast<std::uint64_t>(m);
  if (lo < n) {
    const std::uint64_t threshold = -n % n;
    while (lo < threshold) {
      m = static_cast<unsigned __int128>(rng()) * n;
      lo = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

}  // namespace seedsim
