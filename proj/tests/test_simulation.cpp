#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "ldpbl/simulation.hpp"

using namespace ldpbl;

namespace {

std::string data_path(const char* name) {
  return std::string(LDPBL_TEST_DATA_DIR) + "/" + name;
}

// Temp files live in the test working directory and are cleaned up by name.
struct TempFile {
  std::string path;
  explicit TempFile(const char* name) : path(name) {}
  ~TempFile() { std::remove(path.c_str()); }
};

SynthSpec quiet_spec() {
  SynthSpec spec;
  spec.weekday_volume = 0;
  spec.burners_per_day = 0;
  spec.rotator_slots = 0;
  spec.grazers_per_day = 0;
  return spec;
}

// Two steady heavy callers in separate buckets plus fresh one-call light
// callers each day; every published set is exactly the two heavies.
DayMap two_heavy_map(uint32_t days_n) {
  const PhoneNumber h1 = make_number(250, 5550001);
  const PhoneNumber h2 = make_number(300, 5550002);
  DayMap days;
  Rng rng(4242);
  const Date start = make_date(2026, 2, 1);
  for (uint32_t d = 0; d < days_n; ++d) {
    std::vector<PhoneNumber>& calls = days[(start + static_cast<int32_t>(d)).serial];
    for (int i = 0; i < 200; ++i) calls.push_back(h1);
    for (int i = 0; i < 200; ++i) calls.push_back(h2);
    for (int i = 0; i < 50; ++i)
      calls.push_back(make_number(250, static_cast<uint32_t>(rng.below(5000000))));
    for (int i = 0; i < 50; ++i)
      calls.push_back(make_number(300, static_cast<uint32_t>(rng.below(5000000))));
  }
  return days;
}

RunConfig noiseless_config(uint64_t n_users) {
  RunConfig cfg;
  cfg.params.kind = RandomizerKind::kNoiseless;
  cfg.params.eps_hh = 0.0;
  cfg.params.eps_olh = 0.0;
  cfg.params.channels = 8;
  cfg.n_users = n_users;
  cfg.threads = 1;
  return cfg;
}

}  // namespace

TEST_CASE("ingest drops malformed rows and keeps the rest") {
  const IngestResult got = ingest_csv(data_path("complaints_small.csv"));
  CHECK(got.dropped == 1);  // eight-digit caller id
  REQUIRE(got.records.size() == 2);
  CHECK(got.records[0].date == make_date(2026, 2, 1));
  CHECK(got.records[0].caller.value == 2025550123ull);
  CHECK(got.records[0].victim_prefix == uint16_t{415});
  CHECK(got.records[0].label == "robocall");
  CHECK(got.records[1].caller.value == 8885551234ull);
  CHECK(got.records[1].label == "warranty scam");
}

TEST_CASE("ingest rejects missing files and foreign headers") {
  CHECK_THROWS_AS(ingest_csv("/nonexistent/complaints.csv"), FileError);

  TempFile tmp("test_tmp_bad_header.csv");
  {
    std::ofstream out(tmp.path);
    out << "timestamp,number\n2026-02-01,2025550123\n";
  }
  CHECK_THROWS_AS(ingest_csv(tmp.path), HeaderMismatch);

  TempFile empty("test_tmp_empty.csv");
  { std::ofstream out(empty.path); }
  CHECK_THROWS_AS(ingest_csv(empty.path), HeaderMismatch);

  TempFile wide("test_tmp_wide.csv");
  {
    std::ofstream out(wide.path);
    out << "date,caller_id,victim_prefix,label,extra\n";
  }
  CHECK_THROWS_AS(ingest_csv(wide.path), HeaderMismatch);
}

TEST_CASE("export then ingest reproduces the records") {
  std::vector<ComplaintRecord> records;
  ComplaintRecord a;
  a.date = make_date(2026, 2, 3);
  a.caller = PhoneNumber{2025550123ull};
  a.victim_prefix = 7;  // exercises zero padding
  a.label = "campaign";
  records.push_back(a);
  ComplaintRecord b;
  b.date = make_date(2026, 2, 4);
  b.caller = PhoneNumber{41};  // leading zeros in the caller id
  b.label = "";
  records.push_back(b);

  TempFile tmp("test_tmp_roundtrip.csv");
  export_csv(tmp.path, records);
  const IngestResult got = ingest_csv(tmp.path);
  CHECK(got.dropped == 0);
  REQUIRE(got.records.size() == 2);
  CHECK(got.records[0] == a);
  CHECK(got.records[1] == b);
  CHECK_FALSE(got.records[1].victim_prefix.has_value());
  CHECK_THROWS_AS(export_csv("/nonexistent/dir/out.csv", records), FileError);
}

TEST_CASE("planted campaigns run their exact schedule") {
  SynthSpec spec = quiet_spec();
  spec.days = 6;
  spec.campaigns.push_back(PlantedCampaign{202, 500, 5, 0});
  const auto records = generate_synthetic(spec, 7);

  std::map<int32_t, std::vector<const ComplaintRecord*>> by_day;
  for (const auto& rec : records) by_day[rec.date.serial].push_back(&rec);

  const Date start = spec.start;
  REQUIRE(by_day.size() == 5);  // day 5 is past the campaign
  CHECK(by_day.count((start + 5).serial) == 0);
  const uint64_t caller = by_day[start.serial][0]->caller.value;
  CHECK(PhoneNumber{caller}.prefix() == 202);
  for (int d = 0; d < 5; ++d) {
    const auto& day = by_day[(start + d).serial];
    CHECK(day.size() == 500);
    for (const ComplaintRecord* rec : day) {
      CHECK(rec->caller.value == caller);  // one id for the whole campaign
      CHECK(rec->label == "campaign");
    }
  }
}

TEST_CASE("background complaints follow a heavy one-off tail") {
  SynthSpec spec = quiet_spec();
  spec.days = 1;
  spec.weekday_volume = 5200;
  // Feb 2 is a Monday, so the full weekday volume applies.
  spec.start = make_date(2026, 2, 2);
  const auto records = generate_synthetic(spec, 7);

  std::map<uint64_t, uint32_t> per_caller;
  for (const auto& rec : records) {
    CHECK(rec.label == "background");
    ++per_caller[rec.caller.value];
  }
  REQUIRE(records.size() >= 5200);

  uint64_t ones = 0;
  for (const auto& [_, count] : per_caller)
    if (count == 1) ++ones;
  CHECK(double(ones) / double(per_caller.size()) > 0.8);
}

TEST_CASE("weekends are quieter than weekdays") {
  SynthSpec spec = quiet_spec();
  spec.days = 2;
  spec.start = make_date(2026, 2, 1);  // Sunday, then Monday
  spec.weekday_volume = 5200;
  const auto records = generate_synthetic(spec, 7);

  uint64_t sunday = 0, monday = 0;
  for (const auto& rec : records) {
    if (rec.date == spec.start) ++sunday;
    else ++monday;
  }
  CHECK(sunday >= uint64_t(5200 * 0.6));
  CHECK(sunday < monday);
  CHECK(monday >= 5200);
}

TEST_CASE("the generator is a pure function of spec and seed") {
  SynthSpec spec;
  spec.days = 3;
  spec.weekday_volume = 800;
  const auto a = generate_synthetic(spec, 7);
  const auto b = generate_synthetic(spec, 7);
  const auto c = generate_synthetic(spec, 8);
  CHECK(a == b);
  CHECK(a != c);

  // Every planted layer present and labeled.
  std::map<std::string, uint64_t> labels;
  for (const auto& rec : a) ++labels[rec.label];
  CHECK(labels.count("background") == 1);
  CHECK(labels.count("burner") == 1);
  CHECK(labels.count("rotator") == 1);
  CHECK(labels.count("grazer") == 1);
}

TEST_CASE("synthetic spec validation") {
  SynthSpec spec;
  CHECK_NOTHROW(spec.validate());
  spec.days = 0;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec = SynthSpec{};
  spec.tail_exponent = 1.0;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec = SynthSpec{};
  spec.hot_prefix_share = 1.5;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec = SynthSpec{};
  spec.burner_min = 10;
  spec.burner_max = 5;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec = SynthSpec{};
  spec.campaigns.push_back(PlantedCampaign{1000, 10, 1, 0});
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
}

TEST_CASE("grouping and counting helpers") {
  std::vector<ComplaintRecord> records;
  for (int i = 0; i < 3; ++i) {
    ComplaintRecord rec;
    rec.date = make_date(2026, 2, 1 + unsigned(i % 2));
    rec.caller = PhoneNumber{100ull + uint64_t(i % 2)};
    records.push_back(rec);
  }
  const DayMap days = group_by_day(records);
  REQUIRE(days.size() == 2);
  CHECK(days.at(make_date(2026, 2, 1).serial).size() == 2);
  CHECK(days.at(make_date(2026, 2, 2).serial).size() == 1);

  const auto counts = count_callers(days.at(make_date(2026, 2, 1).serial));
  CHECK(counts.at(100) == 2);
  CHECK(true_hh_count(counts, 1.0) == 1);
  CHECK(true_hh_count(counts, 2.0) == 0);
}

TEST_CASE("true heavy-hitter count is nonincreasing in tau") {
  SynthSpec spec;
  spec.days = 1;
  const auto records = generate_synthetic(spec, 7);
  const DayMap days = group_by_day(records);
  const auto counts = count_callers(days.begin()->second);

  uint64_t prev = UINT64_MAX;
  for (double tau : {50.0, 100.0, 120.0, 143.0, 160.0, 195.0, 300.0}) {
    const uint64_t n = true_hh_count(counts, tau);
    CHECK(n <= prev);
    prev = n;
  }
}

TEST_CASE("a noiseless day recovers exactly the planted heavy hitter") {
  std::vector<PhoneNumber> calls;
  const PhoneNumber target = make_number(202, 5550123);
  for (int i = 0; i < 200; ++i) calls.push_back(target);
  for (int i = 0; i < 800; ++i)
    calls.push_back(make_number(300 + (i % 500), 1000000u + unsigned(i)));

  const RunConfig cfg = noiseless_config(1000);
  Blacklist blacklist(cfg.blacklist_window);
  const DayOutcome outcome =
      run_day(make_date(2026, 2, 1), calls, cfg, 0, 0, blacklist, nullptr);

  CHECK(outcome.tally.thh == 1);
  CHECK(outcome.tally.fhh == 0);
  CHECK(outcome.tally.uhh == 0);
  CHECK(outcome.scores.f1 == 1.0);
  CHECK(outcome.cbr == 0.0);  // nothing deployed yet
  CHECK(outcome.admitted_buckets == 1);
  CHECK(outcome.published == 1);
  CHECK(blacklist.contains(target.value));
}

TEST_CASE("noiseless month matches the no-privacy baseline exactly") {
  const DayMap days = two_heavy_map(4);
  const RunConfig cfg = noiseless_config(500);

  const auto outcomes = run_month(days, cfg, 0);
  const auto base = baseline_cbr(days, cfg.params.tau, cfg.blacklist_window);
  REQUIRE(outcomes.size() == 4);
  REQUIRE(base.size() == 4);
  for (size_t d = 0; d < 4; ++d) {
    CHECK(outcomes[d].tally.thh == 2);
    CHECK(outcomes[d].tally.fhh == 0);
    CHECK(outcomes[d].tally.uhh == 0);
    CHECK(outcomes[d].cbr == base[d]);  // exact equality, day by day
  }
  CHECK(base[0] == 0.0);
  CHECK(base[1] == Catch::Approx(0.8));  // 400 of 500 calls blocked
}

TEST_CASE("dedup suppresses repeat reports from the same user") {
  const DayMap days = two_heavy_map(2);
  RunConfig cfg = noiseless_config(500);
  cfg.dedup = true;
  cfg.dummy_policy = DummyPolicy::kAbstain;

  const auto outcomes = run_month(days, cfg, 0);
  REQUIRE(outcomes.size() == 2);
  // Day one: everything fresh, both heavies land.
  CHECK(outcomes[0].tally.thh == 2);
  // Day two: every holder of a heavy id reported it yesterday, so the
  // buckets never reach tau and both heavies are missed.
  CHECK(outcomes[1].tally.thh == 0);
  CHECK(outcomes[1].tally.uhh == 2);
  CHECK(outcomes[1].participants < outcomes[0].participants);
}

TEST_CASE("experiment runs are reproducible across thread counts") {
  const DayMap days = two_heavy_map(3);
  RunConfig cfg = noiseless_config(500);

  cfg.threads = 1;
  const ExperimentResult serial = run_experiment(days, cfg, 2);
  cfg.threads = 4;
  const ExperimentResult threaded = run_experiment(days, cfg, 2);

  std::ostringstream a, b;
  write_metrics_csv(a, cfg, serial);
  write_metrics_csv(b, cfg, threaded);
  CHECK(a.str() == b.str());  // byte identical

  CHECK_THROWS_AS(run_experiment(days, cfg, 0), std::invalid_argument);
}

TEST_CASE("metrics csv shape") {
  const DayMap days = two_heavy_map(3);
  RunConfig cfg = noiseless_config(500);
  const ExperimentResult result = run_experiment(days, cfg, 2);

  std::ostringstream out;
  write_metrics_csv(out, cfg, result);
  std::istringstream in(out.str());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);

  // Comment, header, days x repeats data rows, three summary rows.
  REQUIRE(lines.size() == 2 + 3 * 2 + 3);
  CHECK(lines[0].rfind("# ldpbl metrics v1 seed=", 0) == 0);
  CHECK(lines[1] ==
        "date,run,eps_hh,eps_olh,T,tau,randomizer,thh,fhh,uhh,precision,recall,f1,"
        "cbr,cbr_ratio");
  CHECK(lines[2].rfind("2026-02-01,0,", 0) == 0);
  CHECK(lines[lines.size() - 3].rfind("summary,mean,", 0) == 0);
  CHECK(lines[lines.size() - 2].rfind("summary,std,", 0) == 0);
  CHECK(lines[lines.size() - 1].rfind("summary,median,", 0) == 0);

  // Every data row has the full column count.
  for (size_t i = 2; i < lines.size(); ++i)
    CHECK(sim_detail::split_csv(lines[i]).size() == 15);
}

TEST_CASE("experiment summary helpers") {
  ExperimentResult r;
  r.runs.resize(2);
  DayOutcome d1;
  d1.scores.f1 = 1.0;
  d1.cbr = 0.4;
  d1.tally.fhh = 2;
  DayOutcome d2;
  d2.scores.f1 = 0.5;
  d2.cbr = 0.2;
  d2.tally.fhh = 0;
  r.runs[0] = {d1, d2};
  r.runs[1] = {d2, d2};
  r.baseline = {0.4, 0.4};

  CHECK(r.mean_f1() == Catch::Approx((1.0 + 0.5 + 0.5 + 0.5) / 4.0));
  CHECK(r.mean_fhh_per_day() == Catch::Approx(0.5));
  // Median daily cbr = 0.2, median baseline = 0.4.
  CHECK(r.cbr_ratio() == Catch::Approx(0.5));

  const ExperimentResult empty;
  CHECK(empty.mean_f1() == 0.0);
  CHECK(empty.cbr_ratio() == 0.0);
}

TEST_CASE("run config validation") {
  RunConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.n_users = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = RunConfig{};
  cfg.blacklist_window = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = RunConfig{};
  cfg.params.eps_hh = 0.0;
  CHECK_THROWS_AS(cfg.validate(), DegenerateBudget);
}

TEST_CASE("exported blacklists carry metadata and sorted ids") {
  Blacklist bl(7);
  const std::vector<uint64_t> hh = {9995550000ull, 15ull, 2025550123ull};
  bl.update(hh, make_date(2026, 2, 10));

  RunConfig cfg;
  TempFile tmp("test_tmp_blacklist.txt");
  export_blacklist(tmp.path, bl, make_date(2026, 2, 10), cfg);

  std::ifstream in(tmp.path);
  REQUIRE(in.good());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  REQUIRE(lines.size() == 4);
  CHECK(lines[0].rfind("{\"date\":\"2026-02-10\",", 0) == 0);
  CHECK(lines[0].find("\"window\":7") != std::string::npos);
  CHECK(lines[1] == "0000000015");
  CHECK(lines[2] == "2025550123");
  CHECK(lines[3] == "9995550000");
}
