// Per-round pairwise-independent channel assignment for suffixes.
#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ldpbl/rng.hpp"

namespace ldpbl {

// h_t(s) = ((a_t * s + b_t) mod P) mod K with P = 2^31 - 1. The (a, b)
// pairs are drawn fresh per round and shared with clients in the clear;
// channels are labeled 1..K.
struct HashFamily {
  static constexpr uint64_t kPrime = (1ull << 31) - 1;

  struct Round {
    uint32_t a = 1;  // in [1, P)
    uint32_t b = 0;  // in [0, P)

    friend bool operator==(const Round&, const Round&) = default;
  };

  uint32_t channels = 1;  // K
  std::vector<Round> rounds;

  friend bool operator==(const HashFamily&, const HashFamily&) = default;

  static HashFamily sample(uint32_t t_rounds, uint32_t k_channels, Rng& rng) {
    if (t_rounds == 0 || k_channels == 0)
      throw std::invalid_argument("hash family needs T >= 1 and K >= 1");
    HashFamily f;
    f.channels = k_channels;
    f.rounds.reserve(t_rounds);
    for (uint32_t t = 0; t < t_rounds; ++t)
      f.rounds.push_back(Round{static_cast<uint32_t>(1 + rng.below(kPrime - 1)),
                               static_cast<uint32_t>(rng.below(kPrime))});
    return f;
  }

  // t is 1-based; returns a channel in [1, K].
  uint32_t channel_of(uint32_t suffix, uint32_t t) const {
    const Round& r = rounds.at(t - 1);
    const uint64_t h = (static_cast<uint64_t>(r.a) * suffix + r.b) % kPrime;
    return static_cast<uint32_t>(h % channels) + 1;
  }
};

// Default channel count: next power of two at or above sqrt(n) * T,
// clamped to [8, 1024].
inline uint32_t auto_channel_count(uint64_t bucket_clients, uint32_t t_rounds) {
  const double target = std::sqrt(static_cast<double>(bucket_clients)) * t_rounds;
  uint32_t k = 8;
  while (k < 1024 && static_cast<double>(k) < target) k <<= 1;
  return k;
}

}  // namespace ldpbl
