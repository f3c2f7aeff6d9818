// Command-line front end: simulate, gen-data, tables, blacklist-eval.
#include <cstdio>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include <CLI11.hpp>

#include "ldpbl/ldpbl.hpp"

namespace {

using namespace ldpbl;

struct CliError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

PlantedCampaign parse_plant(const std::string& text) {
  PlantedCampaign c;
  unsigned prefix = 0, count = 0, duration = 0, offset = 0;
  const int got = std::sscanf(text.c_str(), "%u:%u:%u:%u", &prefix, &count, &duration, &offset);
  if (got < 3) throw CliError("--plant expects prefix:count:duration[:offset]");
  if (prefix >= kPrefixSpace) throw CliError("plant prefix must be 000..999");
  c.prefix = static_cast<uint16_t>(prefix);
  c.count = count;
  c.duration = duration;
  c.day_offset = got >= 4 ? offset : 0;
  return c;
}

Date parse_date_or_throw(const std::string& text) {
  const auto d = parse_date(text);
  if (!d) throw CliError("bad date: " + text + " (expected YYYY-MM-DD)");
  return *d;
}

RandomizerKind parse_randomizer(const std::string& name) {
  if (name == "basic") return RandomizerKind::kBasic;
  if (name == "extended") return RandomizerKind::kExtended;
  if (name == "noiseless") return RandomizerKind::kNoiseless;
  throw CliError("randomizer must be basic, extended, or noiseless");
}

struct SynthFlags {
  uint32_t days = 29;
  std::string start = "2026-02-01";
  uint32_t weekday_volume = 5200;
  double weekend_factor = 0.6;
  double tail_exponent = 3.0;
  std::vector<std::string> plants;

  SynthSpec build() const {
    SynthSpec spec;
    spec.days = days;
    spec.start = parse_date_or_throw(start);
    spec.weekday_volume = weekday_volume;
    spec.weekend_factor = weekend_factor;
    spec.tail_exponent = tail_exponent;
    for (const std::string& p : plants) spec.campaigns.push_back(parse_plant(p));
    spec.validate();
    return spec;
  }
};

void add_synth_flags(CLI::App* cmd, SynthFlags& s) {
  cmd->add_option("--days", s.days, "Number of simulated days");
  cmd->add_option("--start", s.start, "First simulated date (YYYY-MM-DD)");
  cmd->add_option("--weekday-volume", s.weekday_volume, "Background complaints per weekday");
  cmd->add_option("--weekend-factor", s.weekend_factor, "Weekend background multiplier");
  cmd->add_option("--tail-exponent", s.tail_exponent, "Power-law exponent of per-caller counts");
  cmd->add_option("--plant", s.plants,
                  "Planted campaign prefix:count:duration[:offset]; repeatable");
}

int cmd_tables() {
  std::printf("eta threshold (T=2, eps=15, d=1e7, beta=0.751, n=1000)\n");
  const double eta = eta_threshold(2, 15.0, 1e7, 0.751, 1000.0);
  std::printf("  eta = %.6f   eta*n = %.2f\n\n", eta, eta * 1000.0);

  std::printf("per-report budget at T=2 (eps' = eps_hh/4, keep = e^eps'/(e^eps'+1))\n");
  for (double eps_hh : {12.0, 8.8, 7.0, 5.6, 4.4}) {
    const double eps_r = eps_hh / 4.0;
    std::printf("  eps_hh = %4.1f   eps' = %5.2f   keep = %.4f\n", eps_hh, eps_r,
                basic_params(eps_r).keep);
  }
  std::printf("\n");

  std::printf("balls-in-bins reconstruction thresholds\n");
  std::printf("  min_reports(l=24, p=0.80) = %u   fill(24, 84) = %.4f\n",
              min_reports_for(24, 0.80), fill_probability(24, 84));
  std::printf("  min_reports(l=34, p=0.80) = %u\n", min_reports_for(34, 0.80));
  std::printf("  reports needed per fill target, by bin model:\n");
  std::printf("  %-8s", "target");
  for (uint32_t l : {24u, 31u, 32u}) std::printf("  l=%-4u", l);
  std::printf("\n");
  for (double p : {0.75, 0.80, 0.85, 0.90, 0.95}) {
    std::printf("  %-8.2f", p);
    for (uint32_t l : {24u, 31u, 32u}) std::printf("  %-6u", min_reports_for(l, p));
    std::printf("\n");
  }
  std::printf("  the l=31 column matches the report thresholds used by the\n");
  std::printf("  pipeline (tau grid 143..195): 32 codeword coordinates minus\n");
  std::printf("  the one the single-error decoder recovers.\n");
  return 0;
}

int cmd_gen_data(const SynthFlags& flags, const std::string& out, uint64_t seed) {
  const SynthSpec spec = flags.build();
  const auto records = generate_synthetic(spec, seed);
  export_csv(out, records);
  std::fprintf(stderr, "wrote %zu complaints over %u days to %s\n", records.size(),
               spec.days, out.c_str());
  return 0;
}

struct SimulateFlags {
  std::string input;
  std::string out = "metrics.csv";
  std::string blacklist_out;
  double eps_hh = 8.8, eps_olh = 3.0, tau = 143.0, beta = 0.751;
  uint32_t rounds = 2, channels = 64, g = 21;
  std::string randomizer = "extended";
  uint64_t users = 23188, seed = 1;
  uint32_t repeats = 10, threads = 0, window = 7;
  std::string dummy = "send";
  bool dedup = false;
  SynthFlags synth;
};

int cmd_simulate(const SimulateFlags& f) {
  RunConfig cfg;
  cfg.params.eps_hh = f.eps_hh;
  cfg.params.eps_olh = f.eps_olh;
  cfg.params.rounds = f.rounds;
  cfg.params.channels = f.channels;
  cfg.params.tau = f.tau;
  cfg.params.beta = f.beta;
  cfg.params.g = static_cast<uint16_t>(f.g);
  cfg.params.kind = parse_randomizer(f.randomizer);
  cfg.n_users = f.users;
  cfg.seed = f.seed;
  cfg.threads = f.threads;
  cfg.blacklist_window = f.window;
  cfg.dedup = f.dedup;
  if (f.dummy == "send") cfg.dummy_policy = DummyPolicy::kSendDummy;
  else if (f.dummy == "abstain") cfg.dummy_policy = DummyPolicy::kAbstain;
  else throw CliError("--dummy must be send or abstain");
  cfg.validate();

  std::vector<ComplaintRecord> records;
  if (f.input.empty()) {
    records = generate_synthetic(f.synth.build(), f.seed);
  } else {
    IngestResult ingest = ingest_csv(f.input);
    std::fprintf(stderr, "ingested %zu records, dropped %" PRIu64 "\n",
                 ingest.records.size(), ingest.dropped);
    records = std::move(ingest.records);
  }
  if (records.empty()) throw CliError("no complaint records to simulate");

  const DayMap days = group_by_day(records);
  const ExperimentResult result = run_experiment(days, cfg, f.repeats);

  if (f.out == "-") {
    write_metrics_csv(std::cout, cfg, result);
  } else {
    std::ofstream out(f.out);
    if (!out) throw FileError("cannot write " + f.out);
    write_metrics_csv(out, cfg, result);
    if (!out) throw FileError("write failed for " + f.out);
  }

  if (!f.blacklist_out.empty()) {
    Blacklist final_bl(cfg.blacklist_window);
    run_month(days, cfg, 0, &final_bl);
    export_blacklist(f.blacklist_out, final_bl, Date{days.rbegin()->first}, cfg);
  }

  std::fprintf(stderr,
               "days=%zu repeats=%u mean_f1=%.4f mean_fhh=%.3f cbr_ratio=%.4f\n",
               days.size(), f.repeats, result.mean_f1(), result.mean_fhh_per_day(),
               result.cbr_ratio());
  return 0;
}

int cmd_blacklist_eval(const std::string& blacklist_path, const std::string& input,
                       const std::string& date_text) {
  const Date day = parse_date_or_throw(date_text);
  std::ifstream in(blacklist_path);
  if (!in) throw FileError("cannot open " + blacklist_path);
  std::string line;
  if (!std::getline(in, line)) throw FileError("empty blacklist file");
  std::unordered_set<uint64_t> entries;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto v = parse_caller_id(line);
    if (!v) throw CliError("bad blacklist entry: " + line);
    entries.insert(v->value);
  }

  const IngestResult ingest = ingest_csv(input);
  uint64_t total = 0, blocked = 0;
  for (const ComplaintRecord& rec : ingest.records) {
    if (rec.date != day) continue;
    ++total;
    if (entries.count(rec.caller.value)) ++blocked;
  }
  const double rate = total ? static_cast<double>(blocked) / total : 0.0;
  std::printf("date=%s calls=%" PRIu64 " blocked=%" PRIu64 " cbr=%.6f\n",
              to_string(day).c_str(), total, blocked, rate);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Locally private collaborative phone blacklisting toolkit"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from a key=value file (section per subcommand)");

  int rc = 0;

  CLI::App* tables = app.add_subcommand("tables", "Print the analytic parameter tables");
  tables->callback([&] { rc = cmd_tables(); });

  SynthFlags gen_flags;
  std::string gen_out;
  uint64_t gen_seed = 1;
  CLI::App* gen = app.add_subcommand("gen-data", "Write a synthetic complaint CSV");
  add_synth_flags(gen, gen_flags);
  gen->add_option("--out", gen_out, "Output CSV path")->required();
  gen->add_option("--seed", gen_seed, "Generator seed");
  gen->callback([&] { rc = cmd_gen_data(gen_flags, gen_out, gen_seed); });

  SimulateFlags sim;
  CLI::App* simulate = app.add_subcommand("simulate", "Run the month-long LDP pipeline");
  simulate->add_option("--input", sim.input, "Complaint CSV (omit to use the synthetic month)");
  simulate->add_option("--out", sim.out, "Metrics CSV path, or - for stdout");
  simulate->add_option("--export-blacklist", sim.blacklist_out,
                       "Also write the final-day blacklist of run 0");
  simulate->add_option("--eps-hh", sim.eps_hh, "Heavy-hitter budget");
  simulate->add_option("--eps-olh", sim.eps_olh, "Frequency-oracle budget");
  simulate->add_option("--T,--rounds", sim.rounds, "Hash rounds");
  simulate->add_option("--K,--channels", sim.channels, "Channels per round");
  simulate->add_option("--tau", sim.tau, "Report-count threshold");
  simulate->add_option("--beta", sim.beta, "Eta confidence parameter");
  simulate->add_option("--g", sim.g, "Frequency-oracle hash range");
  simulate->add_option("--randomizer", sim.randomizer, "basic | extended | noiseless");
  simulate->add_option("--users", sim.users, "Daily population size");
  simulate->add_option("--repeats", sim.repeats, "Independent repetitions");
  simulate->add_option("--seed", sim.seed, "Master seed");
  simulate->add_option("--threads", sim.threads, "Worker cap (0 = hardware)");
  simulate->add_option("--window", sim.window, "Blacklist window in days");
  simulate->add_option("--dummy", sim.dummy, "Users holding nothing: send | abstain");
  simulate->add_flag("--dedup", sim.dedup, "Skip callers reported within 30 days");
  add_synth_flags(simulate, sim.synth);
  simulate->callback([&] { rc = cmd_simulate(sim); });

  std::string bl_path, bl_input, bl_date;
  CLI::App* bl_eval = app.add_subcommand("blacklist-eval",
                                         "Score an exported blacklist against one day");
  bl_eval->add_option("--blacklist", bl_path, "Exported blacklist file")->required();
  bl_eval->add_option("--input", bl_input, "Complaint CSV")->required();
  bl_eval->add_option("--date", bl_date, "Evaluation date (YYYY-MM-DD)")->required();
  bl_eval->callback([&] { rc = cmd_blacklist_eval(bl_path, bl_input, bl_date); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const CliError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const DegenerateBudget& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const FileError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const HeaderMismatch& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const std::ios_base::failure& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return rc;
}
