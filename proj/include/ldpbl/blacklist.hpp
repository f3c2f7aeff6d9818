// Sliding-window blacklist and the day-level detection metrics.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "ldpbl/date.hpp"

namespace ldpbl {

struct NonMonotonicDate : std::logic_error {
  using std::logic_error::logic_error;
};

// Union of the daily heavy-hitter sets over the last `window` update days.
// An entry last refreshed on day u survives updates through day u+window-1.
class Blacklist {
 public:
  explicit Blacklist(uint32_t window_days = 7) : window_(window_days) {
    if (window_days == 0) throw std::invalid_argument("window must be >= 1");
  }

  void update(std::span<const uint64_t> daily_hh, Date day) {
    if (last_update_ && day < *last_update_)
      throw NonMonotonicDate("blacklist updated with an earlier date");
    last_update_ = day;
    for (uint64_t v : daily_hh) last_seen_[v] = day.serial;
    const int32_t cutoff = day.serial - static_cast<int32_t>(window_);
    std::erase_if(last_seen_, [cutoff](const auto& e) { return e.second <= cutoff; });
  }

  bool contains(uint64_t caller) const { return last_seen_.count(caller) != 0; }
  size_t size() const { return last_seen_.size(); }
  uint32_t window() const { return window_; }

  std::vector<uint64_t> entries_sorted() const {
    std::vector<uint64_t> out;
    out.reserve(last_seen_.size());
    for (const auto& [v, _] : last_seen_) out.push_back(v);
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  uint32_t window_;
  std::unordered_map<uint64_t, int32_t> last_seen_;
  std::optional<Date> last_update_;
};

struct Tally {
  uint64_t thh = 0;  // published and truly above tau
  uint64_t fhh = 0;  // published but at or below tau
  uint64_t uhh = 0;  // above tau but missed

  Tally& operator+=(const Tally& o) {
    thh += o.thh;
    fhh += o.fhh;
    uhh += o.uhh;
    return *this;
  }
};

// `published` is the filtered heavy-hitter list (estimates already above
// tau); `true_counts` the per-caller report counts of the day.
inline Tally classify(const std::map<uint64_t, uint32_t>& true_counts,
                      std::span<const uint64_t> published, double tau) {
  Tally t;
  std::unordered_map<uint64_t, bool> hit;
  hit.reserve(published.size());
  for (uint64_t v : published) hit.emplace(v, false);
  for (const auto& [v, c] : true_counts) {
    if (c > tau) {
      auto it = hit.find(v);
      if (it != hit.end()) {
        ++t.thh;
        it->second = true;
      } else {
        ++t.uhh;
      }
    }
  }
  for (const auto& [v, matched] : hit)
    if (!matched) ++t.fhh;
  return t;
}

struct Scores {
  double precision = 0, recall = 0, f1 = 0;
};

inline Scores f1_scores(const Tally& t) {
  Scores s;
  const double tp = static_cast<double>(t.thh);
  s.precision = (t.thh + t.fhh) ? tp / (t.thh + t.fhh) : 0.0;
  s.recall = (t.thh + t.uhh) ? tp / (t.thh + t.uhh) : 0.0;
  s.f1 = (s.precision + s.recall > 0)
             ? 2.0 * s.precision * s.recall / (s.precision + s.recall)
             : 0.0;
  return s;
}

// Fraction of the day's calls whose caller is on the (already deployed)
// blacklist. `day_calls` is a multiset: one entry per call.
inline double cbr(const Blacklist& bl, std::span<const uint64_t> day_calls) {
  if (day_calls.empty()) return 0.0;
  uint64_t blocked = 0;
  for (uint64_t v : day_calls)
    if (bl.contains(v)) ++blocked;
  return static_cast<double>(blocked) / static_cast<double>(day_calls.size());
}

inline double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace ldpbl
