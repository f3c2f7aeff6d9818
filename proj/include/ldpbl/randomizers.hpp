// Local randomizers for the sparse channel reports and the frequency oracle.
//
// A client's channel input x is either the scaled codeword of its suffix or
// the zero vector. Both sparse randomizers pick one uniform coordinate r and
// release a single signed value whose magnitude is always c * sqrt(m), so a
// report travels as (r, sign) plus the randomizer tag; the receiver
// recomputes the magnitude from the shared budget.
//
//   basic, x != 0:  z_r = +c*m*x_r with prob e^eps/(e^eps+1), else -c*m*x_r,
//                   c = (e^eps+1)/(e^eps-1)
//   basic, x == 0:  z_r uniform on {+c*sqrt(m), -c*sqrt(m)}
//   extended, x != 0: +c*m*x_r w.p. p, -c*m*x_r w.p. q, 0 w.p. 1-p-q
//   extended, x == 0: +c*sqrt(m) w.p. theta, -c*sqrt(m) w.p. theta, else 0
// with p = e^eps/(e^eps+2), q = theta = 1/(e^eps+2), c = (e^eps+2)/(e^eps-1),
// which keeps c*(p - q) = 1 so reconstruction stays unbiased. Substituting
// c = (e^eps+1)/(e^eps-1), p = e^eps/(e^eps+1), q = 1/(e^eps+1), theta = 1/2
// recovers the basic randomizer exactly.
//
// The frequency oracle randomizer hashes the full ten-digit number into
// [0, g) with a per-report 64-bit seed and reports the true cell with
// probability e^eps/(e^eps+g-1), otherwise one of the g-1 others uniformly.
//
// All probabilities are computed in the e^(-eps) form so very large budgets
// stay finite (exp(-eps) underflows to 0 and the branch turns deterministic).
#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

#include "ldpbl/phone.hpp"
#include "ldpbl/reed_muller.hpp"
#include "ldpbl/rng.hpp"

namespace ldpbl {

inline constexpr double kMinEps = 1e-6;

struct DegenerateBudget : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

enum class RandomizerKind : uint8_t { kBasic = 0, kExtended = 1, kNoiseless = 2 };

inline const char* to_string(RandomizerKind k) {
  switch (k) {
    case RandomizerKind::kBasic: return "basic";
    case RandomizerKind::kExtended: return "extended";
    case RandomizerKind::kNoiseless: return "noiseless";
  }
  return "?";
}

struct ExtendedParams {
  double p = 0, q = 0, theta = 0, c = 0;
};

inline void check_budget(double eps) {
  if (!(eps >= kMinEps)) throw DegenerateBudget("privacy budget below 1e-6");
}

inline ExtendedParams ext_params(double eps) {
  check_budget(eps);
  const double em = std::exp(-eps);
  ExtendedParams ep;
  ep.p = 1.0 / (1.0 + 2.0 * em);
  ep.q = em / (1.0 + 2.0 * em);
  ep.theta = ep.q;
  ep.c = (1.0 + 2.0 * em) / (1.0 - em);
  return ep;
}

struct BasicParams {
  double keep = 0;  // probability of releasing the unflipped sign
  double c = 0;
};

inline BasicParams basic_params(double eps) {
  check_budget(eps);
  const double em = std::exp(-eps);
  return BasicParams{1.0 / (1.0 + em), (1.0 + em) / (1.0 - em)};
}

inline double randomizer_scale(RandomizerKind kind, double eps) {
  switch (kind) {
    case RandomizerKind::kBasic: return basic_params(eps).c;
    case RandomizerKind::kExtended: return ext_params(eps).c;
    case RandomizerKind::kNoiseless: return 1.0;
  }
  return 1.0;
}

// One sparse channel report. Indices are 1-based to match the wire form:
// t in [1, T], k in [1, K], r in [1, m]. The value on the real line is
// sign * c * sqrt(m).
struct SparseReport {
  uint16_t t = 0;
  uint16_t k = 0;
  uint16_t prefix = 0;
  uint8_t r = 0;
  int8_t sign = 0;
  RandomizerKind kind = RandomizerKind::kExtended;

  friend bool operator==(const SparseReport&, const SparseReport&) = default;
};

inline double report_value(const SparseReport& rep, double eps) {
  return rep.sign * randomizer_scale(rep.kind, eps) * std::sqrt(double(kCodeLen));
}

// Draws the (r, sign) pair for one channel. `word` holds the codeword bits
// of the client's suffix; `zero_input` marks the channels the suffix does
// not hash to. The precomputed-parameter overloads keep exp() out of the
// per-report path.
inline SparseReport draw_sparse(bool zero_input, uint32_t word, const BasicParams& bp,
                                Rng& rng) {
  SparseReport rep;
  rep.kind = RandomizerKind::kBasic;
  rep.r = static_cast<uint8_t>(rng.below(kCodeLen) + 1);
  const int8_t truth = ((word >> (rep.r - 1)) & 1u) ? int8_t{1} : int8_t{-1};
  if (zero_input) {
    rep.sign = rng.bernoulli(0.5) ? int8_t{1} : int8_t{-1};
  } else {
    rep.sign = rng.bernoulli(bp.keep) ? truth : static_cast<int8_t>(-truth);
  }
  return rep;
}

inline SparseReport draw_sparse(bool zero_input, uint32_t word, const ExtendedParams& ep,
                                Rng& rng) {
  SparseReport rep;
  rep.kind = RandomizerKind::kExtended;
  rep.r = static_cast<uint8_t>(rng.below(kCodeLen) + 1);
  const int8_t truth = ((word >> (rep.r - 1)) & 1u) ? int8_t{1} : int8_t{-1};
  const double u = rng.u01();
  if (zero_input) {
    rep.sign = u < ep.theta ? int8_t{1} : (u < 2 * ep.theta ? int8_t{-1} : int8_t{0});
  } else {
    rep.sign = u < ep.p ? truth : (u < ep.p + ep.q ? static_cast<int8_t>(-truth) : int8_t{0});
  }
  return rep;
}

inline SparseReport draw_sparse(RandomizerKind kind, bool zero_input, uint32_t word,
                                double eps, Rng& rng) {
  if (kind == RandomizerKind::kBasic)
    return draw_sparse(zero_input, word, basic_params(eps), rng);
  return draw_sparse(zero_input, word, ext_params(eps), rng);
}

// Exact per-coordinate output law, used by the privacy-ratio enumerations.
// `coord` is the sign of x_r for a nonzero input, or 0 for the zero vector.
struct SignDist {
  double plus = 0, zero = 0, minus = 0;
};

inline SignDist sign_dist(RandomizerKind kind, double eps, int coord) {
  if (kind == RandomizerKind::kBasic) {
    const BasicParams bp = basic_params(eps);
    if (coord > 0) return {bp.keep, 0.0, 1.0 - bp.keep};
    if (coord < 0) return {1.0 - bp.keep, 0.0, bp.keep};
    return {0.5, 0.0, 0.5};
  }
  const ExtendedParams ep = ext_params(eps);
  if (coord > 0) return {ep.p, 1.0 - ep.p - ep.q, ep.q};
  if (coord < 0) return {ep.q, 1.0 - ep.p - ep.q, ep.p};
  return {ep.theta, 1.0 - 2.0 * ep.theta, ep.theta};
}

// ---- frequency oracle ----

struct OlhReport {
  uint16_t prefix = 0;
  uint64_t seed = 0;
  uint16_t g = 0;
  uint16_t w = 0;

  friend bool operator==(const OlhReport&, const OlhReport&) = default;
};

// 64-bit multiply-shift mixer keyed by the report seed, reduced mod g.
inline uint32_t olh_hash(uint64_t seed, uint64_t value, uint32_t g) {
  return static_cast<uint32_t>(mix64(seed ^ (value * kGolden64)) % g);
}

inline double olh_keep_prob(double eps, uint32_t g) {
  // e^eps / (e^eps + g - 1), computed as 1 / (1 + (g-1) e^-eps).
  return 1.0 / (1.0 + (g - 1) * std::exp(-eps));
}

// Default hash range: round(e^eps) + 1.
inline uint16_t olh_default_g(double eps) {
  return static_cast<uint16_t>(std::llround(std::exp(eps)) + 1);
}

inline OlhReport olh_randomize(PhoneNumber v, uint16_t g, double eps, uint64_t seed,
                               Rng& rng) {
  if (g < 2) throw std::invalid_argument("olh range g must be >= 2");
  if (!std::isinf(eps)) check_budget(eps);
  OlhReport rep;
  rep.prefix = v.prefix();
  rep.seed = seed;
  rep.g = g;
  const uint16_t x = static_cast<uint16_t>(olh_hash(seed, v.value, g));
  if (rng.bernoulli(olh_keep_prob(eps, g))) {
    rep.w = x;
  } else {
    const uint16_t y = static_cast<uint16_t>(rng.below(g - 1));
    rep.w = y >= x ? static_cast<uint16_t>(y + 1) : y;
  }
  return rep;
}

// ---- estimator variances ----
//
// Variance of the frequency estimate over n one-hot reports when a fraction
// f of clients encode the target codeword and the rest encode zero.

inline double variance_basic(double eps, double f, double n) {
  const double c = basic_params(eps).c;
  return (c * c - f) / n;
}

inline double variance_extended(double eps, double f, double n) {
  const ExtendedParams ep = ext_params(eps);
  const double hold = ep.c * ep.c * (ep.p + ep.q) - 1.0;
  const double idle = 2.0 * ep.c * ep.c * ep.theta;
  return (f * hold + (1.0 - f) * idle) / n;
}

// Budget at which the extended randomizer's variance drops below the basic
// one, at target frequency a in [0, 1). Root of the quadratic
// (a-1) t^2 + a t + (3-2a) <= 0 in t = e^eps:
inline double variance_crossover_eps(double a) {
  if (!(a >= 0.0 && a < 1.0)) throw std::invalid_argument("frequency must be in [0, 1)");
  const double disc = 9.0 * a * a - 20.0 * a + 12.0;
  return std::log((a + std::sqrt(disc)) / (2.0 * (1.0 - a)));
}

}  // namespace ldpbl
