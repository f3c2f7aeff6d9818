// Dataset ingestion, synthetic complaint generation, and the month runner
// that drives the full protocol day by day.
#pragma once

#include <algorithm>
#include <atomic>
#include <cinttypes>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "ldpbl/blacklist.hpp"
#include "ldpbl/client.hpp"
#include "ldpbl/date.hpp"
#include "ldpbl/phone.hpp"
#include "ldpbl/protocol.hpp"
#include "ldpbl/rng.hpp"
#include "ldpbl/server.hpp"

namespace ldpbl {

struct FileError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct HeaderMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ComplaintRecord {
  Date date{};
  PhoneNumber caller{};
  std::optional<uint16_t> victim_prefix;
  std::string label;

  friend bool operator==(const ComplaintRecord&, const ComplaintRecord&) = default;
};

struct IngestResult {
  std::vector<ComplaintRecord> records;
  uint64_t dropped = 0;
};

namespace sim_detail {

inline std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  size_t start = 0;
  for (;;) {
    const size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

}  // namespace sim_detail

// Reads complaint CSVs shaped date,caller_id[,victim_prefix][,label].
// Rows whose date or caller ID fail to parse are dropped and counted.
inline IngestResult ingest_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FileError("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw HeaderMismatch("empty file: " + path);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = sim_detail::split_csv(line);
  const std::vector<std::string> want{"date", "caller_id", "victim_prefix", "label"};
  if (header.size() < 2 || header.size() > 4)
    throw HeaderMismatch("unexpected column count in " + path);
  for (size_t i = 0; i < header.size(); ++i)
    if (header[i] != want[i]) throw HeaderMismatch("unexpected header column " + header[i]);

  IngestResult result;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = sim_detail::split_csv(line);
    if (fields.size() != header.size()) {
      ++result.dropped;
      continue;
    }
    const auto date = parse_date(fields[0]);
    const auto caller = parse_caller_id(fields[1]);
    if (!date || !caller) {
      ++result.dropped;
      continue;
    }
    ComplaintRecord rec;
    rec.date = *date;
    rec.caller = *caller;
    if (header.size() > 2 && !fields[2].empty()) {
      uint32_t p = 0;
      bool ok = fields[2].size() == 3;
      for (char ch : fields[2]) {
        if (ch < '0' || ch > '9') ok = false;
        p = p * 10 + static_cast<uint32_t>(ch - '0');
      }
      if (!ok || p >= kPrefixSpace) {
        ++result.dropped;
        continue;
      }
      rec.victim_prefix = static_cast<uint16_t>(p);
    }
    if (header.size() > 3) rec.label = fields[3];
    result.records.push_back(std::move(rec));
  }
  return result;
}

inline void export_csv(const std::string& path, std::span<const ComplaintRecord> records) {
  std::ofstream out(path);
  if (!out) throw FileError("cannot write " + path);
  out << "date,caller_id,victim_prefix,label\n";
  for (const ComplaintRecord& rec : records) {
    out << to_string(rec.date) << ',' << rec.caller.str() << ',';
    if (rec.victim_prefix) {
      char buf[8];
      std::snprintf(buf, sizeof buf, "%03u", unsigned(*rec.victim_prefix % 1000));
      out << buf;
    }
    out << ',' << rec.label << '\n';
  }
  if (!out) throw FileError("write failed for " + path);
}

// ---- synthetic generator ----

struct PlantedCampaign {
  uint16_t prefix = 202;
  uint32_t count = 500;    // complaints per day
  uint32_t duration = 5;   // consecutive days
  uint32_t day_offset = 0; // first active day, relative to spec start
};

// The synthetic month mixes a long-tail background with three planted
// layers that exercise the pipeline from different sides:
//   burners   one-day campaigns well above tau, fresh caller ID daily
//   rotators  multi-day campaigns that keep a caller ID for rotation_days
//             before switching, hosted in the busiest prefixes
//   grazers   near-threshold callers whose true count stays just under tau
// Background complaint counts per caller follow a truncated power law, and
// a fixed share of the background concentrates on a few hot prefixes so
// those buckets clear admission on their own.
struct SynthSpec {
  Date start = make_date(2026, 2, 1);
  uint32_t days = 29;

  uint32_t weekday_volume = 5200;  // background complaints per weekday
  double weekend_factor = 0.6;
  double tail_exponent = 3.0;
  uint32_t tail_cap = 120;
  double hot_prefix_share = 0.32;
  uint32_t hot_prefix_count = 8;

  uint32_t burners_per_day = 12;
  uint32_t burner_min = 320, burner_max = 480;

  uint32_t rotator_slots = 4;
  uint32_t rotator_min = 150, rotator_max = 215;
  uint32_t rotation_days = 3;

  uint32_t grazers_per_day = 3;
  uint32_t grazer_min = 120, grazer_max = 142;

  std::vector<PlantedCampaign> campaigns;

  void validate() const {
    if (days == 0) throw std::invalid_argument("synthetic spec needs days >= 1");
    if (!(tail_exponent > 1.0)) throw std::invalid_argument("tail exponent must be > 1");
    if (tail_cap == 0) throw std::invalid_argument("tail cap must be >= 1");
    if (!(hot_prefix_share >= 0.0 && hot_prefix_share <= 1.0))
      throw std::invalid_argument("hot prefix share must be in [0, 1]");
    if (hot_prefix_count == 0 || hot_prefix_count > 100)
      throw std::invalid_argument("hot prefix count must be in [1, 100]");
    if (!(weekend_factor > 0.0 && weekend_factor <= 1.0))
      throw std::invalid_argument("weekend factor must be in (0, 1]");
    if (burner_min > burner_max || rotator_min > rotator_max || grazer_min > grazer_max)
      throw std::invalid_argument("planted count ranges must be ordered");
    if (rotation_days == 0) throw std::invalid_argument("rotation needs >= 1 day");
    for (const PlantedCampaign& c : campaigns) {
      if (c.prefix >= kPrefixSpace) throw std::invalid_argument("campaign prefix out of range");
      if (c.count == 0 || c.duration == 0)
        throw std::invalid_argument("campaign needs count and duration >= 1");
    }
  }
};

namespace sim_detail {

// Inverse-CDF sampler for P(X = k) proportional to k^-alpha on [1, cap].
class TailSampler {
 public:
  TailSampler(double alpha, uint32_t cap) : cdf_(cap) {
    double total = 0;
    for (uint32_t k = 1; k <= cap; ++k) {
      total += std::pow(static_cast<double>(k), -alpha);
      cdf_[k - 1] = total;
    }
    for (double& c : cdf_) c /= total;
  }

  uint32_t draw(Rng& rng) const {
    const double u = rng.u01();
    const auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u);
    return static_cast<uint32_t>(it - cdf_.begin()) + 1;
  }

  double p_one() const { return cdf_[0]; }

 private:
  std::vector<double> cdf_;
};

inline PhoneNumber random_number_in_prefix(uint32_t prefix, Rng& rng) {
  return make_number(prefix, static_cast<uint32_t>(rng.below(kSuffixSpace)));
}

inline uint16_t random_victim_prefix(Rng& rng) {
  return static_cast<uint16_t>(200 + rng.below(800));
}

}  // namespace sim_detail

inline std::vector<ComplaintRecord> generate_synthetic(const SynthSpec& spec,
                                                       uint64_t master_seed) {
  spec.validate();
  std::vector<ComplaintRecord> out;

  Rng setup(derive_seed(master_seed, {kStreamSynth, 0}));
  std::vector<uint32_t> hot;
  hot.reserve(spec.hot_prefix_count);
  while (hot.size() < spec.hot_prefix_count) {
    const uint32_t p = 200 + static_cast<uint32_t>(setup.below(800));
    if (std::find(hot.begin(), hot.end(), p) == hot.end()) hot.push_back(p);
  }
  const sim_detail::TailSampler tail(spec.tail_exponent, spec.tail_cap);

  auto emit = [&out](Date d, PhoneNumber v, uint16_t victim, const char* label,
                     uint32_t copies) {
    ComplaintRecord rec;
    rec.date = d;
    rec.caller = v;
    rec.victim_prefix = victim;
    rec.label = label;
    for (uint32_t i = 0; i < copies; ++i) out.push_back(rec);
  };

  for (uint32_t day = 0; day < spec.days; ++day) {
    const Date date = spec.start + static_cast<int32_t>(day);
    Rng rng(derive_seed(master_seed, {kStreamSynth, 1, day}));

    for (const PlantedCampaign& c : spec.campaigns) {
      if (day < c.day_offset || day >= c.day_offset + c.duration) continue;
      Rng campaign_rng(derive_seed(master_seed, {kStreamSynth, 2, c.prefix, c.day_offset}));
      const PhoneNumber v = sim_detail::random_number_in_prefix(c.prefix, campaign_rng);
      emit(date, v, sim_detail::random_victim_prefix(rng), "campaign", c.count);
    }

    for (uint32_t b = 0; b < spec.burners_per_day; ++b) {
      uint32_t prefix;
      do {
        prefix = 200 + static_cast<uint32_t>(rng.below(800));
      } while (std::find(hot.begin(), hot.end(), prefix) != hot.end());
      const PhoneNumber v = sim_detail::random_number_in_prefix(prefix, rng);
      const uint32_t count =
          static_cast<uint32_t>(rng.between(spec.burner_min, spec.burner_max));
      emit(date, v, sim_detail::random_victim_prefix(rng), "burner", count);
    }

    for (uint32_t slot = 0; slot < spec.rotator_slots; ++slot) {
      // Slot phases are staggered so rotations do not all reset on the
      // same day; the caller ID is a pure function of the rotation epoch.
      const uint32_t epoch = (day + slot) / spec.rotation_days;
      Rng id_rng(derive_seed(master_seed, {kStreamSynth, 3, slot, epoch}));
      const uint32_t prefix = hot[slot % hot.size()];
      const PhoneNumber v = sim_detail::random_number_in_prefix(prefix, id_rng);
      const uint32_t count =
          static_cast<uint32_t>(rng.between(spec.rotator_min, spec.rotator_max));
      emit(date, v, sim_detail::random_victim_prefix(rng), "rotator", count);
    }

    for (uint32_t gz = 0; gz < spec.grazers_per_day; ++gz) {
      const uint32_t prefix = hot[rng.below(hot.size())];
      const PhoneNumber v = sim_detail::random_number_in_prefix(prefix, rng);
      const uint32_t count =
          static_cast<uint32_t>(rng.between(spec.grazer_min, spec.grazer_max));
      emit(date, v, sim_detail::random_victim_prefix(rng), "grazer", count);
    }

    const double volume = static_cast<double>(spec.weekday_volume) *
                          (date.is_weekend() ? spec.weekend_factor : 1.0);
    uint64_t emitted = 0;
    while (emitted < static_cast<uint64_t>(volume)) {
      const bool in_hot = rng.bernoulli(spec.hot_prefix_share);
      const uint32_t prefix = in_hot ? hot[rng.below(hot.size())]
                                     : 200 + static_cast<uint32_t>(rng.below(800));
      const PhoneNumber v = sim_detail::random_number_in_prefix(prefix, rng);
      const uint32_t count = tail.draw(rng);
      emit(date, v, sim_detail::random_victim_prefix(rng), "background", count);
      emitted += count;
    }
  }
  return out;
}

// ---- month runner ----

enum class DummyPolicy : uint8_t { kSendDummy = 0, kAbstain = 1 };

struct RunConfig {
  ProtocolParams params;
  uint64_t n_users = 23188;
  DummyPolicy dummy_policy = DummyPolicy::kSendDummy;
  bool dedup = false;
  uint32_t dedup_window = 30;
  uint32_t blacklist_window = 7;
  uint64_t seed = 1;
  uint32_t threads = 0;  // 0 means hardware concurrency

  void validate() const {
    params.validate();
    if (n_users == 0) throw std::invalid_argument("population must be >= 1");
    if (blacklist_window == 0) throw std::invalid_argument("blacklist window must be >= 1");
    if (dedup && dedup_window == 0) throw std::invalid_argument("dedup window must be >= 1");
  }
};

struct DayOutcome {
  Date date{};
  Tally tally;
  Scores scores;
  double cbr = 0;
  uint64_t published = 0;
  uint64_t candidates = 0;
  uint64_t decode_failures = 0;
  uint64_t admitted_buckets = 0;
  uint64_t participants = 0;
};

using DayMap = std::map<int32_t, std::vector<PhoneNumber>>;

inline DayMap group_by_day(std::span<const ComplaintRecord> records) {
  DayMap days;
  for (const ComplaintRecord& rec : records) days[rec.date.serial].push_back(rec.caller);
  return days;
}

inline std::map<uint64_t, uint32_t> count_callers(std::span<const PhoneNumber> calls) {
  std::map<uint64_t, uint32_t> counts;
  for (PhoneNumber v : calls) ++counts[v.value];
  return counts;
}

inline uint64_t true_hh_count(const std::map<uint64_t, uint32_t>& counts, double tau) {
  uint64_t n = 0;
  for (const auto& [_, c] : counts)
    if (static_cast<double>(c) > tau) ++n;
  return n;
}

// One protocol day against a deployed blacklist. The blacklist is consulted
// before the day's heavy hitters are folded in, so the CBR measures
// yesterday's knowledge on today's calls.
inline DayOutcome run_day(Date date, std::span<const PhoneNumber> calls,
                          const RunConfig& cfg, uint64_t run_idx, uint64_t day_idx,
                          Blacklist& blacklist,
                          std::vector<ReportHistory>* histories) {
  DayOutcome outcome;
  outcome.date = date;

  std::vector<uint64_t> call_values;
  call_values.reserve(calls.size());
  for (PhoneNumber v : calls) call_values.push_back(v.value);
  outcome.cbr = cbr(blacklist, call_values);

  const auto truth = count_callers(calls);

  // Stage 1: decide what every user holds, announce prefixes in the clear.
  Server server(cfg.params, derive_seed(cfg.seed, {kStreamRun, run_idx, kStreamDay, day_idx}));
  std::vector<PhoneNumber> held(cfg.n_users, PhoneNumber{0});
  std::vector<bool> holds(cfg.n_users, false);
  const size_t assigned = std::min<size_t>(calls.size(), cfg.n_users);
  for (uint64_t u = 0; u < cfg.n_users; ++u) {
    std::optional<PhoneNumber> item;
    if (u < assigned) {
      item = calls[u];
      if (cfg.dedup && histories) {
        auto& history = (*histories)[u];
        if (history.blocked(item->value)) item.reset();
        else history.remember(item->value, date);
      }
    }
    if (!item && cfg.dummy_policy == DummyPolicy::kSendDummy) {
      Rng rng(derive_seed(cfg.seed, {kStreamRun, run_idx, kStreamDay, day_idx,
                                     kStreamAssign, u}));
      item = dummy_number(rng);
    }
    if (item) {
      held[u] = *item;
      holds[u] = true;
      server.announce_prefix(static_cast<uint16_t>(item->prefix()));
    }
  }

  // Stage 2: admitted clients report, the server ingests directly.
  const GoList& go = server.finalize_admissions();
  outcome.admitted_buckets = go.count();
  const HashFamily& family = server.family();
  for (uint64_t u = 0; u < cfg.n_users; ++u) {
    if (!holds[u] || !go.contains(held[u].prefix())) continue;
    Rng rng(derive_seed(cfg.seed, {kStreamRun, run_idx, kStreamDay, day_idx,
                                   kStreamClient, u}));
    ClientOutput reports = run_client_day(held[u], cfg.params, family, go, rng);
    for (const SparseReport& rep : reports.sparse) server.ingest(rep);
    if (reports.olh) server.ingest(*reports.olh);
    ++outcome.participants;
  }

  // Stage 3: reconstruct, filter, classify, deploy.
  const ServerDayResult result = server.finish();
  outcome.candidates = result.candidates.size();
  outcome.decode_failures = result.decode_failures;
  std::vector<uint64_t> published;
  published.reserve(result.heavy_hitters.size());
  for (const auto& [value, _] : result.heavy_hitters) published.push_back(value);
  outcome.published = published.size();
  outcome.tally = classify(truth, published, cfg.params.tau);
  outcome.scores = f1_scores(outcome.tally);
  blacklist.update(published, date);
  return outcome;
}

inline std::vector<DayOutcome> run_month(const DayMap& days, const RunConfig& cfg,
                                         uint64_t run_idx,
                                         Blacklist* final_blacklist = nullptr) {
  cfg.validate();
  Blacklist blacklist(cfg.blacklist_window);
  std::vector<ReportHistory> histories;
  if (cfg.dedup)
    histories.assign(cfg.n_users, ReportHistory(cfg.dedup_window));
  std::vector<DayOutcome> outcomes;
  outcomes.reserve(days.size());
  uint64_t day_idx = 0;
  for (const auto& [serial, calls] : days) {
    outcomes.push_back(run_day(Date{serial}, calls, cfg, run_idx, day_idx, blacklist,
                               cfg.dedup ? &histories : nullptr));
    ++day_idx;
  }
  if (final_blacklist) *final_blacklist = blacklist;
  return outcomes;
}

// No-privacy reference: the blacklist is built each day from the true
// counts above theta, and the CBR is measured the same deployed-yesterday
// way as the private pipeline.
inline std::vector<double> baseline_cbr(const DayMap& days, double theta,
                                        uint32_t window) {
  Blacklist blacklist(window);
  std::vector<double> out;
  out.reserve(days.size());
  for (const auto& [serial, calls] : days) {
    std::vector<uint64_t> call_values;
    call_values.reserve(calls.size());
    for (PhoneNumber v : calls) call_values.push_back(v.value);
    out.push_back(cbr(blacklist, call_values));
    std::vector<uint64_t> hh;
    for (const auto& [value, count] : count_callers(calls))
      if (static_cast<double>(count) > theta) hh.push_back(value);
    blacklist.update(hh, Date{serial});
  }
  return out;
}

// ---- experiment driver ----

struct ExperimentResult {
  // One entry per repeat, each a full month of outcomes.
  std::vector<std::vector<DayOutcome>> runs;
  std::vector<double> baseline;  // per-day CBR*, shared by all repeats

  double mean_f1() const {
    double sum = 0;
    uint64_t n = 0;
    for (const auto& run : runs)
      for (const DayOutcome& day : run) {
        sum += day.scores.f1;
        ++n;
      }
    return n ? sum / static_cast<double>(n) : 0.0;
  }

  double mean_fhh_per_day() const {
    double sum = 0;
    uint64_t n = 0;
    for (const auto& run : runs)
      for (const DayOutcome& day : run) {
        sum += static_cast<double>(day.tally.fhh);
        ++n;
      }
    return n ? sum / static_cast<double>(n) : 0.0;
  }

  // Ratio of median daily CBR to median daily baseline CBR.
  double cbr_ratio() const {
    std::vector<double> daily;
    for (const auto& run : runs)
      for (const DayOutcome& day : run) daily.push_back(day.cbr);
    const double base = median(baseline);
    if (base <= 0.0) return 0.0;
    return median(std::move(daily)) / base;
  }
};

inline ExperimentResult run_experiment(const DayMap& days, const RunConfig& cfg,
                                       uint32_t repeats) {
  cfg.validate();
  if (repeats == 0) throw std::invalid_argument("repeats must be >= 1");
  ExperimentResult result;
  result.runs.resize(repeats);
  result.baseline = baseline_cbr(days, cfg.params.tau, cfg.blacklist_window);

  uint32_t workers = cfg.threads ? cfg.threads : std::thread::hardware_concurrency();
  if (workers == 0) workers = 1;
  workers = std::min(workers, repeats);

  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::atomic<uint32_t> next{0};
  for (uint32_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const uint32_t r = next.fetch_add(1);
        if (r >= repeats) return;
        result.runs[r] = run_month(days, cfg, r);
      }
    });
  }
  for (std::thread& t : pool) t.join();
  return result;
}

// ---- metrics CSV ----

inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

// Fixed column order; summary rows carry date="summary" and run one of
// mean/std/median computed over all per-day rows.
inline void write_metrics_csv(std::ostream& out, const RunConfig& cfg,
                              const ExperimentResult& result) {
  out << "# ldpbl metrics v1 seed=" << cfg.seed << " n_users=" << cfg.n_users
      << " channels=" << cfg.params.channels << " window=" << cfg.blacklist_window
      << " dummy=" << (cfg.dummy_policy == DummyPolicy::kSendDummy ? "send" : "abstain")
      << " dedup=" << (cfg.dedup ? 1 : 0) << "\n";
  out << "date,run,eps_hh,eps_olh,T,tau,randomizer,thh,fhh,uhh,precision,recall,"
         "f1,cbr,cbr_ratio\n";

  const double base_median = median(result.baseline);
  std::vector<double> f1s, cbrs, ratios;
  auto config_cols = [&](std::ostream& os) {
    os << format_double(cfg.params.eps_hh) << ',' << format_double(cfg.params.eps_olh)
       << ',' << cfg.params.rounds << ',' << format_double(cfg.params.tau) << ','
       << to_string(cfg.params.kind) << ',';
  };

  for (size_t r = 0; r < result.runs.size(); ++r) {
    for (size_t d = 0; d < result.runs[r].size(); ++d) {
      const DayOutcome& day = result.runs[r][d];
      const double base = d < result.baseline.size() ? result.baseline[d] : 0.0;
      const double ratio = base > 0 ? day.cbr / base : 0.0;
      out << to_string(day.date) << ',' << r << ',';
      config_cols(out);
      out << day.tally.thh << ',' << day.tally.fhh << ',' << day.tally.uhh << ','
          << format_double(day.scores.precision) << ','
          << format_double(day.scores.recall) << ',' << format_double(day.scores.f1)
          << ',' << format_double(day.cbr) << ',' << format_double(ratio) << "\n";
      f1s.push_back(day.scores.f1);
      cbrs.push_back(day.cbr);
      ratios.push_back(ratio);
    }
  }

  auto mean_of = [](const std::vector<double>& v) {
    if (v.empty()) return 0.0;
    double s = 0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
  };
  auto std_of = [&](const std::vector<double>& v) {
    if (v.size() < 2) return 0.0;
    const double m = mean_of(v);
    double s = 0;
    for (double x : v) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(v.size() - 1));
  };

  auto summary_row = [&](const char* tag, double f1, double cbr_v, double ratio) {
    out << "summary," << tag << ',';
    config_cols(out);
    out << ",,,,," << format_double(f1) << ',' << format_double(cbr_v) << ','
        << format_double(ratio) << "\n";
  };
  summary_row("mean", mean_of(f1s), mean_of(cbrs), mean_of(ratios));
  summary_row("std", std_of(f1s), std_of(cbrs), std_of(ratios));
  const double ratio_of_medians = base_median > 0 ? median(cbrs) / base_median : 0.0;
  summary_row("median", median(f1s), median(cbrs), ratio_of_medians);
}

// ---- blacklist file format ----

inline void export_blacklist(const std::string& path, const Blacklist& bl, Date day,
                             const RunConfig& cfg) {
  std::ofstream out(path);
  if (!out) throw FileError("cannot write " + path);
  out << "{\"date\":\"" << to_string(day) << "\",\"eps_hh\":" << format_double(cfg.params.eps_hh)
      << ",\"eps_olh\":" << format_double(cfg.params.eps_olh)
      << ",\"tau\":" << format_double(cfg.params.tau) << ",\"window\":" << bl.window()
      << "}\n";
  for (uint64_t v : bl.entries_sorted()) out << PhoneNumber{v}.str() << "\n";
  if (!out) throw FileError("write failed for " + path);
}

}  // namespace ldpbl
