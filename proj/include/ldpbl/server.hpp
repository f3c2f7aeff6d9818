// Server side: aggregation, decoding, frequency filtering, publication.
//
// A day runs in four stages. Clients first announce their bucket prefix in
// the clear; the server admits prefixes with at least tau announcements and
// broadcasts the go list together with the round hash family. Admitted
// clients then send their randomized reports. At close of day the server
// sign-rounds every (t, k, prefix) cell, decodes it into a candidate
// suffix, estimates each candidate's report count through the frequency
// oracle, and publishes the candidates whose estimate clears tau.
//
// Cells accumulate integer sign counts. The mean report vector is the sign
// count times c*sqrt(m)/n, a positive multiple, so integer sums round to
// exactly the same codeword and make aggregation order-independent bit for
// bit rather than within a float tolerance.
#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include "ldpbl/channels.hpp"
#include "ldpbl/phone.hpp"
#include "ldpbl/protocol.hpp"
#include "ldpbl/randomizers.hpp"
#include "ldpbl/reed_muller.hpp"
#include "ldpbl/rng.hpp"

namespace ldpbl {

struct Cell {
  std::array<int64_t, kCodeLen> signsum{};
  uint64_t count = 0;

  void add(uint8_t r, int8_t sign) {
    signsum[r - 1] += sign;
    ++count;
  }
};

// Mean report vector of a cell under the shared scale; kept for diagnostics
// and tests, the decoding path works from the integer sums directly.
inline Codeword cell_mean(const Cell& cell, uint64_t n, double scale) {
  if (n == 0) throw std::invalid_argument("cell mean needs n >= 1");
  Codeword z;
  const double unit = scale * std::sqrt(double(kCodeLen)) / static_cast<double>(n);
  for (size_t i = 0; i < kCodeLen; ++i)
    z[i] = static_cast<double>(cell.signsum[i]) * unit;
  return z;
}

// Sign rounding with the >= 0 goes positive convention.
inline Codeword aggregate_and_round(const Cell& cell, uint64_t n) {
  if (n == 0) throw std::invalid_argument("rounding needs n >= 1");
  Codeword y;
  for (size_t i = 0; i < kCodeLen; ++i)
    y[i] = cell.signsum[i] >= 0 ? kCoordinate : -kCoordinate;
  return y;
}

inline double eta_threshold(uint32_t t_rounds, double eps, double d, double beta,
                            double n) {
  if (t_rounds == 0) throw std::invalid_argument("eta needs T >= 1");
  if (!(eps > 0)) throw std::invalid_argument("eta needs eps > 0");
  if (!(d > 1)) throw std::invalid_argument("eta needs d > 1");
  if (!(beta > 0 && beta < 1)) throw std::invalid_argument("beta must be in (0, 1)");
  if (!(n > 0)) throw std::invalid_argument("eta needs n > 0");
  return (2.0 * t_rounds + 1.0) / eps * std::sqrt(std::log(d) * std::log(1.0 / beta) / n);
}

inline GoList admit_buckets(const std::map<uint16_t, uint64_t>& prefix_counts,
                            double tau) {
  GoList go;
  for (const auto& [prefix, count] : prefix_counts)
    if (static_cast<double>(count) >= tau) go.add(prefix);
  return go;
}

// Debiased support-count estimate for one candidate over a bucket's oracle
// reports: C counts the reports whose perturbed cell matches the
// candidate's hash, and the estimate inverts the keep probability
//   count = (C - n/g) / (p* - 1/g),  p* = e^eps / (e^eps + g - 1).
inline double estimate_frequency(PhoneNumber candidate, std::span<const OlhReport> store,
                                 const ProtocolParams& params) {
  if (store.empty()) throw std::invalid_argument("no oracle reports for bucket");
  uint64_t support = 0;
  for (const OlhReport& rep : store)
    if (olh_hash(rep.seed, candidate.value, rep.g) == rep.w) ++support;
  const double n = static_cast<double>(store.size());
  const double g = params.g;
  const double p = params.kind == RandomizerKind::kNoiseless
                       ? 1.0
                       : olh_keep_prob(params.eps_olh, params.g);
  return (static_cast<double>(support) - n / g) / (p - 1.0 / g);
}

struct ServerDayResult {
  // Published heavy hitters and the full candidate pool, both keyed by the
  // ten-digit value with the oracle's count estimate.
  std::map<uint64_t, double> heavy_hitters;
  std::map<uint64_t, double> candidates;
  uint64_t decode_failures = 0;
  uint64_t dropped_reports = 0;
  std::map<uint16_t, uint64_t> bucket_sizes;
};

class Server {
 public:
  Server(const ProtocolParams& params, uint64_t family_seed)
      : params_(params), family_seed_(family_seed) {
    params_.validate();
    announce_counts_.fill(0);
  }

  const ProtocolParams& params() const { return params_; }

  void announce_prefix(uint16_t prefix) {
    if (admitted_) throw std::logic_error("announcement after admission closed");
    if (prefix >= kPrefixSpace) throw std::out_of_range("prefix out of range");
    ++announce_counts_[prefix];
  }

  // Closes the announcement stage: admits busy prefixes and samples the
  // day's hash family for broadcast.
  const GoList& finalize_admissions() {
    if (!admitted_) {
      std::map<uint16_t, uint64_t> counts;
      for (uint32_t p = 0; p < kPrefixSpace; ++p)
        if (announce_counts_[p] > 0) counts[static_cast<uint16_t>(p)] = announce_counts_[p];
      go_list_ = admit_buckets(counts, params_.tau);
      Rng rng(derive_seed(family_seed_, {kStreamFamily}));
      family_ = HashFamily::sample(params_.rounds, params_.channels, rng);
      admitted_ = true;
    }
    return go_list_;
  }

  const HashFamily& family() const {
    if (!admitted_) throw std::logic_error("family sampled at admission time");
    return family_;
  }

  void ingest(const SparseReport& rep) {
    require_admitted();
    if (!go_list_.contains(rep.prefix) || rep.t == 0 || rep.t > params_.rounds ||
        rep.k == 0 || rep.k > params_.channels || rep.r == 0 || rep.r > kCodeLen ||
        rep.sign < -1 || rep.sign > 1) {
      ++dropped_;
      return;
    }
    bucket(rep.prefix).cells[cell_index(rep.t, rep.k)].add(rep.r, rep.sign);
  }

  void ingest(const OlhReport& rep) {
    require_admitted();
    if (!go_list_.contains(rep.prefix) || rep.g != params_.g || rep.w >= rep.g) {
      ++dropped_;
      return;
    }
    bucket(rep.prefix).olh.push_back(rep);
  }

  ServerDayResult finish() const {
    require_admitted();
    ServerDayResult result;
    result.dropped_reports = dropped_;
    for (const auto& [prefix, bucket] : buckets_) {
      if (bucket.olh.empty()) continue;
      result.bucket_sizes[prefix] = bucket.olh.size();
      for (uint32_t t = 1; t <= params_.rounds; ++t) {
        for (uint32_t k = 1; k <= params_.channels; ++k) {
          const Cell& cell = bucket.cells[cell_index(t, k)];
          if (cell.count == 0) continue;
          const auto suffix = rm_decode_bits(round_bits(cell));
          if (!suffix || *suffix >= kSuffixSpace) {
            ++result.decode_failures;
            continue;
          }
          const PhoneNumber v = make_number(prefix, *suffix);
          if (!result.candidates.count(v.value))
            result.candidates[v.value] = estimate_frequency(v, bucket.olh, params_);
        }
      }
    }
    for (const auto& [value, estimate] : result.candidates)
      if (estimate > params_.tau) result.heavy_hitters.emplace(value, estimate);
    return result;
  }

  // Test access to the raw accumulator of one cell.
  const Cell& cell(uint16_t prefix, uint32_t t, uint32_t k) const {
    return buckets_.at(prefix).cells.at(cell_index(t, k));
  }

 private:
  struct Bucket {
    std::vector<Cell> cells;
    std::vector<OlhReport> olh;
  };

  size_t cell_index(uint32_t t, uint32_t k) const {
    return size_t{t - 1} * params_.channels + (k - 1);
  }

  Bucket& bucket(uint16_t prefix) {
    auto it = buckets_.find(prefix);
    if (it == buckets_.end()) {
      it = buckets_.emplace(prefix, Bucket{}).first;
      it->second.cells.resize(size_t{params_.rounds} * params_.channels);
    }
    return it->second;
  }

  static uint32_t round_bits(const Cell& cell) {
    uint32_t word = 0;
    for (uint32_t i = 0; i < kCodeLen; ++i)
      if (cell.signsum[i] >= 0) word |= 1u << i;
    return word;
  }

  void require_admitted() const {
    if (!admitted_) throw std::logic_error("admission stage not finalized");
  }

  ProtocolParams params_;
  uint64_t family_seed_ = 0;
  std::array<uint64_t, kPrefixSpace> announce_counts_{};
  std::map<uint16_t, Bucket> buckets_;
  GoList go_list_;
  HashFamily family_;
  bool admitted_ = false;
  uint64_t dropped_ = 0;
};

}  // namespace ldpbl
