// Length-32 binary Reed-Muller code of order 3 and its majority-logic decoder.
//
// Codewords evaluate degree-<=3 polynomials in 5 boolean variables on all 32
// points, giving a [32, 26, 4] code that corrects one flipped coordinate.
// Message bits are indexed by the monomials in a fixed order: degree
// ascending, lexicographic by variable subset within a degree. Bit 0 is the
// constant monomial, bits 1..5 the single variables, then the 10 pairs and
// 10 triples. A 7-digit suffix occupies message bits 0..23 (values < 10^7
// fit in 24 bits); bits 24 and 25 stay zero and double as an integrity check
// on decode.
//
// On the real-valued side a codeword is carried as a point on the scaled
// hypercube: bit b at coordinate i maps to (2b - 1) / sqrt(32).
#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>

#include "ldpbl/phone.hpp"

namespace ldpbl {

inline constexpr uint32_t kCodeLen = 32;   // 2^5 evaluation points
inline constexpr uint32_t kCodeVars = 5;
inline constexpr uint32_t kMsgBits = 26;   // 1 + 5 + 10 + 10 monomials
inline constexpr uint32_t kPayloadBits = 24;
inline constexpr double kCoordinate = 0.17677669529663689;  // 1/sqrt(32)

using Codeword = std::array<double, kCodeLen>;

namespace rm_detail {

struct Tables {
  // One evaluation mask per monomial: bit `col` is set when the monomial is 1
  // at the point whose coordinates are the bits of `col`.
  std::array<uint32_t, kMsgBits> row{};
  // Variable set of each monomial, as a 5-bit mask.
  std::array<uint8_t, kMsgBits> vars{};
  // Rows are grouped by degree: [offset[d], offset[d+1]) holds degree d.
  std::array<uint8_t, 5> offset{};
};

constexpr Tables build_tables() {
  Tables t{};
  // Indicator mask of each variable over the 32 columns.
  uint32_t var_mask[kCodeVars] = {};
  for (uint32_t col = 0; col < kCodeLen; ++col)
    for (uint32_t v = 0; v < kCodeVars; ++v)
      if ((col >> v) & 1u) var_mask[v] |= (1u << col);

  uint32_t idx = 0;
  t.offset[0] = 0;
  for (uint32_t deg = 0; deg <= 3; ++deg) {
    for (uint32_t vs = 0; vs < (1u << kCodeVars); ++vs) {
      if (static_cast<uint32_t>(std::popcount(vs)) != deg) continue;
      uint32_t mask = 0xFFFFFFFFu;
      for (uint32_t v = 0; v < kCodeVars; ++v)
        if ((vs >> v) & 1u) mask &= var_mask[v];
      t.row[idx] = mask;
      t.vars[idx] = static_cast<uint8_t>(vs);
      ++idx;
    }
    t.offset[deg + 1] = static_cast<uint8_t>(idx);
  }
  return t;
}

inline constexpr Tables kTables = build_tables();

constexpr int parity(uint32_t w) { return std::popcount(w) & 1; }

}  // namespace rm_detail

inline uint32_t rm_generator_row(uint32_t msg_bit) {
  return rm_detail::kTables.row[msg_bit];
}

// message (26 bits) -> codeword bits, as a 32-bit evaluation word.
constexpr uint32_t rm_encode_bits(uint32_t message) {
  uint32_t word = 0;
  for (uint32_t j = 0; j < kMsgBits; ++j)
    if ((message >> j) & 1u) word ^= rm_detail::kTables.row[j];
  return word;
}

inline Codeword codeword_from_bits(uint32_t word) {
  Codeword y{};
  for (uint32_t i = 0; i < kCodeLen; ++i)
    y[i] = ((word >> i) & 1u) ? kCoordinate : -kCoordinate;
  return y;
}

inline uint32_t bits_from_codeword(const Codeword& y) {
  uint32_t word = 0;
  for (uint32_t i = 0; i < kCodeLen; ++i)
    if (y[i] > 0.0) word |= (1u << i);
  return word;
}

inline Codeword encode_suffix(uint32_t suffix) {
  if (suffix >= kSuffixSpace) throw std::out_of_range("suffix outside [0, 10^7)");
  return codeword_from_bits(rm_encode_bits(suffix));
}

// Reed majority-logic decoding, top degree first. Every coefficient of
// degree d is voted on by 2^(5-d) disjoint parity checks; one flipped
// coordinate corrupts exactly one vote per coefficient, so a strict
// majority always survives a single error. A tied vote, or a residual of
// weight > 1 after peeling all layers, means the word is not within
// distance 1 of any codeword.
inline std::optional<uint32_t> rm_decode_bits(uint32_t word) {
  using rm_detail::kTables;
  using rm_detail::parity;

  uint32_t residual = word;
  uint32_t message = 0;

  for (int deg = 3; deg >= 1; --deg) {
    uint32_t layer = 0;
    for (uint32_t j = kTables.offset[deg]; j < kTables.offset[deg + 1]; ++j) {
      const uint32_t vs = kTables.vars[j];
      const uint32_t complement = ~vs & 0x1Fu;
      int ones = 0, votes = 0;
      // One coset of the monomial's variable subspace per assignment of the
      // complementary variables.
      for (uint32_t b = 0; b <= complement; ++b) {
        if ((b & vs) != 0) continue;
        if ((b & ~complement) != 0) continue;
        uint32_t coset = 0;
        for (uint32_t col = 0; col < kCodeLen; ++col)
          if ((col & complement) == b) coset |= (1u << col);
        ones += parity(residual & coset);
        ++votes;
      }
      if (2 * ones == votes) return std::nullopt;  // tie: >= 2 errors
      if (2 * ones > votes) {
        message |= (1u << j);
        layer ^= kTables.row[j];
      }
    }
    residual ^= layer;
  }

  const int ones = std::popcount(residual);
  if (2 * ones == static_cast<int>(kCodeLen)) return std::nullopt;
  if (2 * ones > static_cast<int>(kCodeLen)) {
    message |= 1u;
    residual = ~residual;
  }
  if (std::popcount(residual) > 1) return std::nullopt;  // uncorrectable
  return message;
}

// Rounded word -> suffix. Fails when the word is not within distance 1 of a
// codeword, when the zero padding bits come back nonzero, or when the
// payload is not a valid suffix.
inline std::optional<uint32_t> decode_codeword(const Codeword& y) {
  auto message = rm_decode_bits(bits_from_codeword(y));
  if (!message) return std::nullopt;
  if (*message >> kPayloadBits) return std::nullopt;
  if (*message >= kSuffixSpace) return std::nullopt;
  return *message;
}

}  // namespace ldpbl
