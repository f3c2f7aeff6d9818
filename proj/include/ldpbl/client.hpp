// Client side of the daily protocol.
#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "ldpbl/channels.hpp"
#include "ldpbl/date.hpp"
#include "ldpbl/phone.hpp"
#include "ldpbl/protocol.hpp"
#include "ldpbl/randomizers.hpp"
#include "ldpbl/reed_muller.hpp"
#include "ldpbl/rng.hpp"

namespace ldpbl {

struct EmptySet : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Caller IDs the client already reported recently; used to skip repeats
// when deduplication is enabled.
class ReportHistory {
 public:
  explicit ReportHistory(uint32_t window_days = 30) : window_(window_days) {
    if (window_days == 0) throw std::invalid_argument("history window must be >= 1");
  }

  bool blocked(uint64_t value) const { return seen_.count(value) != 0; }

  void remember(uint64_t value, Date day) {
    seen_[value] = day.serial;
    const int32_t cutoff = day.serial - static_cast<int32_t>(window_);
    std::erase_if(seen_, [cutoff](const auto& e) { return e.second <= cutoff; });
  }

  size_t size() const { return seen_.size(); }

 private:
  uint32_t window_;
  std::unordered_map<uint64_t, int32_t> seen_;
};

// Uniform choice over the distinct caller IDs of the day's unknown calls.
inline PhoneNumber sample_item(std::span<const PhoneNumber> unknown_calls, Rng& rng) {
  if (unknown_calls.empty()) throw EmptySet("no unknown calls to sample from");
  std::vector<uint64_t> distinct;
  distinct.reserve(unknown_calls.size());
  for (PhoneNumber v : unknown_calls) distinct.push_back(v.value);
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  return PhoneNumber{distinct[rng.below(distinct.size())]};
}

// Dedup-aware variant: IDs still inside the history window are excluded;
// returns nothing when every candidate is excluded.
inline std::optional<PhoneNumber> sample_item(std::span<const PhoneNumber> unknown_calls,
                                              const ReportHistory& history, Rng& rng) {
  if (unknown_calls.empty()) throw EmptySet("no unknown calls to sample from");
  std::vector<uint64_t> distinct;
  distinct.reserve(unknown_calls.size());
  for (PhoneNumber v : unknown_calls)
    if (!history.blocked(v.value)) distinct.push_back(v.value);
  if (distinct.empty()) return std::nullopt;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  return PhoneNumber{distinct[rng.below(distinct.size())]};
}

// Random valid-looking number: leading digit in [2, 9], so the prefix lands
// in one of the 800 usable area codes.
inline PhoneNumber dummy_number(Rng& rng) {
  const uint64_t lead = 2 + rng.below(8);
  return PhoneNumber{lead * 1'000'000'000ull + rng.below(1'000'000'000ull)};
}

struct ClientOutput {
  std::vector<SparseReport> sparse;
  std::optional<OlhReport> olh;
  double spent_eps = 0.0;  // composed budget for the day
};

// Runs one client's day for a held caller ID v. When v's prefix is not on
// the go list the client stays silent and spends nothing. Otherwise it
// emits T*K sparse reports in (t, k) order plus one frequency-oracle report
// of the full number.
//
// The noiseless kind is the testing mode: channels the suffix hashes to
// emit the exact sign of every coordinate (m reports per round), other
// channels emit nothing, and the oracle report is truthful.
inline ClientOutput run_client_day(PhoneNumber v, const ProtocolParams& params,
                                   const HashFamily& family, const GoList& go_list,
                                   Rng& rng) {
  ClientOutput out;
  const uint16_t rho = static_cast<uint16_t>(v.prefix());
  if (!go_list.contains(rho)) return out;

  const uint32_t sigma = v.suffix();
  const uint32_t word = rm_encode_bits(sigma);

  if (params.kind == RandomizerKind::kNoiseless) {
    out.sparse.reserve(size_t{params.rounds} * kCodeLen);
    for (uint32_t t = 1; t <= params.rounds; ++t) {
      const uint32_t k = family.channel_of(sigma, t);
      for (uint32_t r = 1; r <= kCodeLen; ++r) {
        SparseReport rep;
        rep.t = static_cast<uint16_t>(t);
        rep.k = static_cast<uint16_t>(k);
        rep.prefix = rho;
        rep.r = static_cast<uint8_t>(r);
        rep.sign = ((word >> (r - 1)) & 1u) ? int8_t{1} : int8_t{-1};
        rep.kind = RandomizerKind::kNoiseless;
        out.sparse.push_back(rep);
      }
    }
    const uint64_t seed = rng.next();
    out.olh = olh_randomize(v, params.g, std::numeric_limits<double>::infinity(), seed, rng);
    return out;
  }

  const double eps_report = params.per_report_eps();
  const BasicParams bp =
      params.kind == RandomizerKind::kBasic ? basic_params(eps_report) : BasicParams{};
  const ExtendedParams ep =
      params.kind == RandomizerKind::kExtended ? ext_params(eps_report) : ExtendedParams{};
  out.sparse.reserve(size_t{params.rounds} * params.channels);
  for (uint32_t t = 1; t <= params.rounds; ++t) {
    const uint32_t k_true = family.channel_of(sigma, t);
    for (uint32_t k = 1; k <= params.channels; ++k) {
      SparseReport rep = params.kind == RandomizerKind::kBasic
                             ? draw_sparse(k != k_true, word, bp, rng)
                             : draw_sparse(k != k_true, word, ep, rng);
      rep.t = static_cast<uint16_t>(t);
      rep.k = static_cast<uint16_t>(k);
      rep.prefix = rho;
      out.sparse.push_back(rep);
    }
  }
  const uint64_t seed = rng.next();
  out.olh = olh_randomize(v, params.g, params.eps_olh, seed, rng);
  out.spent_eps = params.eps_hh + params.eps_olh;
  return out;
}

}  // namespace ldpbl
