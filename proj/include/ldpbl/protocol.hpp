// Shared per-day protocol parameters.
#pragma once

#include <bitset>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ldpbl/phone.hpp"
#include "ldpbl/randomizers.hpp"
#include "ldpbl/reed_muller.hpp"

namespace ldpbl {

struct ProtocolParams {
  double eps_hh = 8.8;    // budget for all sparse channel reports of a day
  double eps_olh = 3.0;   // budget for the one frequency-oracle report
  uint32_t rounds = 2;    // T
  uint32_t channels = 64; // K
  uint32_t m = kCodeLen;  // codeword length, fixed by the codec
  double domain = 1e7;    // per-bucket suffix space d
  double beta = 0.751;    // confidence parameter of the eta threshold
  double tau = 143;       // report-count threshold
  uint16_t g = 21;        // frequency-oracle hash range
  RandomizerKind kind = RandomizerKind::kExtended;

  // A held value influences at most 2T of the T*K cells, so every sparse
  // report runs at eps_hh / (2T).
  double per_report_eps() const { return eps_hh / (2.0 * rounds); }
  double total_eps() const { return eps_hh + eps_olh; }

  void validate() const {
    if (kind != RandomizerKind::kNoiseless) {
      if (!(eps_hh >= kMinEps)) throw DegenerateBudget("eps_hh below 1e-6");
      if (!(eps_olh >= kMinEps)) throw DegenerateBudget("eps_olh below 1e-6");
    }
    if (rounds == 0 || rounds > 16) throw std::invalid_argument("rounds must be in [1, 16]");
    if (channels == 0 || channels > 4096)
      throw std::invalid_argument("channels must be in [1, 4096]");
    if (m != kCodeLen) throw std::invalid_argument("codeword length is fixed at 32");
    if (!(tau >= 0)) throw std::invalid_argument("tau must be nonnegative");
    if (!(beta > 0 && beta < 1)) throw std::invalid_argument("beta must be in (0, 1)");
    if (g < 2) throw std::invalid_argument("g must be >= 2");
  }
};

// Set of admitted area-code prefixes, broadcast by the server each day.
class GoList {
 public:
  void add(uint32_t prefix) { admitted_.set(check(prefix)); }
  bool contains(uint32_t prefix) const { return prefix < kPrefixSpace && admitted_.test(prefix); }
  size_t count() const { return admitted_.count(); }

  std::vector<uint32_t> prefixes() const {
    std::vector<uint32_t> out;
    out.reserve(admitted_.count());
    for (uint32_t p = 0; p < kPrefixSpace; ++p)
      if (admitted_.test(p)) out.push_back(p);
    return out;
  }

  static GoList from_prefixes(const std::vector<uint32_t>& prefixes) {
    GoList g;
    for (uint32_t p : prefixes) g.add(p);
    return g;
  }

  bool operator==(const GoList&) const = default;

 private:
  static uint32_t check(uint32_t prefix) {
    if (prefix >= kPrefixSpace) throw std::out_of_range("prefix out of range");
    return prefix;
  }

  std::bitset<kPrefixSpace> admitted_;
};

}  // namespace ldpbl
