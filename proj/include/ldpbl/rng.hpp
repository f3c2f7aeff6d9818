// Deterministic randomness plumbing.
//
// Every random decision in the pipeline draws from an Rng seeded through
// derive_seed(master, id...), a splitmix64 fold over the component ids
// (run, day, user, purpose). Streams derived from distinct id chains are
// independent for practical purposes, and the whole pipeline is replayable
// from the single master seed regardless of thread scheduling.
#pragma once

#include <cstdint>
#include <initializer_list>

namespace ldpbl {

inline constexpr uint64_t kGolden64 = 0x9E3779B97F4A7C15ull;

constexpr uint64_t mix64(uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

constexpr uint64_t chain_seed(uint64_t key, uint64_t id) {
  return mix64(key + kGolden64 * (id + 1));
}

constexpr uint64_t derive_seed(uint64_t master, std::initializer_list<uint64_t> ids) {
  uint64_t k = master;
  for (uint64_t id : ids) k = chain_seed(k, id);
  return k;
}

// Purpose tags for derived streams.
enum Stream : uint64_t {
  kStreamSynth = 1,
  kStreamFamily = 2,
  kStreamAssign = 3,
  kStreamClient = 4,
  kStreamRun = 5,
  kStreamDay = 6,
};

// xoshiro256** with splitmix64 state expansion.
class Rng {
 public:
  explicit Rng(uint64_t seed) {
    uint64_t s = seed;
    for (auto& w : s_) {
      s += kGolden64;
      w = mix64(s);
    }
  }

  uint64_t next() {
    const uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform in [0, 1) with 53 random bits.
  double u01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return u01() < p; }

  // Unbiased uniform integer in [0, n). Lemire rejection.
  uint64_t below(uint64_t n) {
    __uint128_t m = static_cast<__uint128_t>(next()) * n;
    auto lo = static_cast<uint64_t>(m);
    if (lo < n) {
      const uint64_t t = (0 - n) % n;
      while (lo < t) {
        m = static_cast<__uint128_t>(next()) * n;
        lo = static_cast<uint64_t>(m);
      }
    }
    return static_cast<uint64_t>(m >> 64);
  }

  // Uniform in [lo, hi] inclusive.
  int64_t between(int64_t lo, int64_t hi) {
    return lo + static_cast<int64_t>(below(static_cast<uint64_t>(hi - lo + 1)));
  }

  template <typename T>
  void shuffle(T* data, size_t n) {
    for (size_t i = n; i > 1; --i) {
      size_t j = below(i);
      T tmp = data[i - 1];
      data[i - 1] = data[j];
      data[j] = tmp;
    }
  }

 private:
  static constexpr uint64_t rotl(uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  uint64_t s_[4];
};

}  // namespace ldpbl
