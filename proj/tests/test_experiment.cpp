#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "morsegraph/exhaustive.hpp"
#include "morsegraph/experiment.hpp"
#include "morsegraph/stats.hpp"
#include "morsegraph/validation.hpp"

namespace morsegraph {
namespace {

namespace fs = std::filesystem;

std::string without_elapsed(const std::string& line) { return line.substr(0, line.find(",\"elapsed_ms\":")); }

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string strip_elapsed_lines(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::string out;
  while (std::getline(in, line)) out += without_elapsed(line) + '\n';
  return out;
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

TEST(Wilson, Examples) {
  const auto a = wilson_interval(0, 100, 1.96);
  EXPECT_EQ(a.lo, 0.0);
  EXPECT_NEAR(a.hi, 0.0370, 5e-5);
  const auto b = wilson_interval(50, 100, 1.96);
  EXPECT_NEAR(b.lo, 0.4038, 5e-5);
  EXPECT_NEAR(b.hi, 0.5962, 5e-5);
  const auto c = wilson_interval(100, 100, 1.96);
  EXPECT_NEAR(c.lo, 0.9630, 5e-5);
  EXPECT_EQ(c.hi, 1.0);
  try {
    wilson_interval(0, 0, 1.96);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidParameter);
  }
  EXPECT_THROW(wilson_interval(5, 4, 1.96), Error);
  EXPECT_THROW(wilson_interval(1, 4, 0.0), Error);
}

TEST(Wilson, ContainsEstimate) {
  for (std::uint64_t trials : {1ULL, 2ULL, 7ULL, 100ULL, 1000ULL}) {
    for (std::uint64_t s = 0; s <= trials; s += 1 + trials / 50) {
      for (double z : {0.5, 1.96, 3.0}) {
        const auto w = wilson_interval(s, trials, z);
        const double phat = static_cast<double>(s) / static_cast<double>(trials);
        EXPECT_LE(w.lo, phat);
        EXPECT_GE(w.hi, phat);
        EXPECT_GE(w.lo, 0.0);
        EXPECT_LE(w.hi, 1.0);
      }
    }
  }
}

TEST(RunTrial, Examples) {
  const auto k5 = run_trial(5, 1.0, PropertyKind::morse_pentagon_exists(), Seed{3}, 0);
  ASSERT_TRUE(k5.outcome.has_value());
  EXPECT_EQ(std::get<bool>(*k5.outcome), false);
  const auto empty = run_trial(5, 0.0, PropertyKind::cfs(), Seed{3}, 0);
  EXPECT_EQ(std::get<bool>(*empty.outcome), false);
  const auto c5 = run_trial(5, 0.0, PropertyKind::morse_cycle_count(5), Seed{3}, 0);
  EXPECT_EQ(std::get<std::uint64_t>(*c5.outcome), 0u);
}

TEST(RunTrial, DeterministicRecords) {
  for (const auto& prop : {PropertyKind::morse_pentagon_exists(), PropertyKind::morse_cycle_count(5),
                           PropertyKind::square_graph_connected(), PropertyKind::induced_cycle_count(4)}) {
    const auto a = run_trial(40, 0.2, prop, Seed{99}, 17, 0.5);
    const auto b = run_trial(40, 0.2, prop, Seed{99}, 17, 0.5);
    EXPECT_EQ(without_elapsed(to_jsonl(a)), without_elapsed(to_jsonl(b)));
  }
}

TEST(RunTrial, JsonlKeyOrder) {
  const auto r = run_trial(6, 0.5, PropertyKind::morse_cycle_exists(5, 8), Seed{1}, 2);
  const auto line = to_jsonl(r);
  const auto doc = nlohmann::ordered_json::parse(line);
  std::vector<std::string> keys;
  for (const auto& item : doc.items()) keys.push_back(item.key());
  EXPECT_EQ(keys, (std::vector<std::string>{"n", "c", "p", "property", "seed", "trial", "outcome", "error", "elapsed_ms"}));
  EXPECT_EQ(doc["property"], "morse-cycle-exists:5:8");
  EXPECT_TRUE(doc["c"].is_null());
  EXPECT_TRUE(doc["error"].is_null());
}

TEST(RunTrial, LimitsBecomeErrorTags) {
  EvaluationLimits tight;
  tight.search_budget = 1;
  const auto r = run_trial(40, 0.3, PropertyKind::morse_cycle_exists(5, 8), Seed{5}, 0, std::nullopt, tight);
  EXPECT_FALSE(r.outcome.has_value());
  ASSERT_TRUE(r.error.has_value());
  EXPECT_EQ(*r.error, "BudgetExceeded");
  EXPECT_TRUE(nlohmann::json::parse(to_jsonl(r))["outcome"].is_null());

  EvaluationLimits no_squares;
  no_squares.square_cap = 0;
  const auto s = run_trial(30, 0.3, PropertyKind::cfs(), Seed{5}, 0, std::nullopt, no_squares);
  ASSERT_TRUE(s.error.has_value());
  EXPECT_EQ(*s.error, "CapacityExceeded");
}

TEST(SummarizeCell, ErrorsExcludedAndCounted) {
  std::vector<TrialRecord> records;
  for (std::uint64_t t = 0; t < 200; ++t) {
    TrialRecord r;
    r.n = 10;
    r.p = 0.5;
    r.property = PropertyKind::cfs();
    r.trial = t;
    if (t < 3) {
      r.error = "BudgetExceeded";
    } else {
      r.outcome = t % 2 == 0;
    }
    records.push_back(r);
  }
  const auto s = summarize_cell(records, 1.96);
  EXPECT_EQ(s.errors, 3u);
  EXPECT_EQ(s.trials, 197u);
  EXPECT_EQ(s.successes, 98u);
  EXPECT_TRUE(s.failed());
  ASSERT_TRUE(s.wilson.has_value());
  EXPECT_LE(s.wilson->lo, *s.estimate);
  EXPECT_GE(s.wilson->hi, *s.estimate);

  records.erase(records.begin(), records.begin() + 1);
  EXPECT_TRUE(summarize_cell(records, 1.96).failed());  // 2 of 199
  records.erase(records.begin(), records.begin() + 1);
  EXPECT_FALSE(summarize_cell(records, 1.96).failed());  // 1 of 198
}

TEST(SummarizeCell, CountsReportMeanAndVariance) {
  std::vector<TrialRecord> records;
  for (std::uint64_t v : {1ULL, 2ULL, 3ULL, 6ULL}) {
    TrialRecord r;
    r.n = 10;
    r.p = 0.3;
    r.property = PropertyKind::morse_cycle_count(5);
    r.outcome = v;
    records.push_back(r);
  }
  const auto s = summarize_cell(records, 1.96);
  EXPECT_DOUBLE_EQ(s.mean, 3.0);
  EXPECT_DOUBLE_EQ(s.variance, 14.0 / 3.0);
  EXPECT_FALSE(s.wilson.has_value());
  ASSERT_TRUE(s.analytic_ref.has_value());
  EXPECT_DOUBLE_EQ(*s.analytic_ref, analytic::expected_morse_pentagons(10, 0.3));
}

nlohmann::json base_config(const std::string& out) {
  return {{"ns", {20, 40}},
          {"coefficients", {0.5, 1.0}},
          {"properties", {"morse-pentagon-exists", "morse-cycle-count:5", "cfs", "square-isolated-exists",
                          "morse-cycle-exists:5:8"}},
          {"trials", 12},
          {"seed", 4242},
          {"out", out}};
}

TEST(SweepConfig, ParsesAndRejects) {
  const auto cfg = parse_sweep_config(base_config("x.jsonl"));
  EXPECT_EQ(cfg.ns, (std::vector<std::size_t>{20, 40}));
  EXPECT_EQ(cfg.properties.size(), 5u);
  EXPECT_EQ(cfg.properties[4].kmax, 8u);
  EXPECT_DOUBLE_EQ(cfg.z, 1.96);

  const auto expect_config_error = [](nlohmann::json doc, const std::string& field) {
    try {
      parse_sweep_config(doc);
      ADD_FAILURE() << "accepted config missing " << field;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::ConfigError);
      EXPECT_NE(std::string(e.what()).find(field), std::string::npos) << e.what();
    }
  };
  auto doc = base_config("x.jsonl");
  doc["trials"] = 0;
  expect_config_error(doc, "trials");
  doc = base_config("x.jsonl");
  doc.erase("ns");
  expect_config_error(doc, "ns");
  doc = base_config("x.jsonl");
  doc["ps"] = {0.1};
  expect_config_error(doc, "coefficients");
  doc = base_config("x.jsonl");
  doc["properties"] = {"morse-cycle-exists:3:8"};
  expect_config_error(doc, "properties");
  doc = base_config("x.jsonl");
  doc["bogus"] = 1;
  expect_config_error(doc, "bogus");
  doc = base_config("x.jsonl");
  doc["seed"] = "seven";
  expect_config_error(doc, "seed");
}

TEST(SweepConfig, CsvPath) {
  EXPECT_EQ(summary_csv_path("runs/a.jsonl"), "runs/a.summary.csv");
  EXPECT_EQ(summary_csv_path("runs/a.out"), "runs/a.out.summary.csv");
}

TEST(Sweep, DeterministicAcrossWorkerCounts) {
  TempDir dir("morsegraph_sweep_det");
  auto cfg = parse_sweep_config(base_config((dir.path / "one.jsonl").string()));
  const auto s1 = run_sweep(cfg, 1);
  cfg.out = (dir.path / "eight.jsonl").string();
  const auto s8 = run_sweep(cfg, 8);
  const auto a = read_file(dir.path / "one.jsonl");
  const auto b = read_file(dir.path / "eight.jsonl");
  EXPECT_EQ(std::count(a.begin(), a.end(), '\n'), 2 * 2 * 5 * 12);
  EXPECT_EQ(strip_elapsed_lines(a), strip_elapsed_lines(b));
  EXPECT_EQ(read_file(s1.csv_path), read_file(s8.csv_path));
  EXPECT_TRUE(s1.ok());
}

TEST(Sweep, SummaryCsvLayout) {
  TempDir dir("morsegraph_sweep_csv");
  auto doc = base_config((dir.path / "run.jsonl").string());
  doc["ns"] = {12};
  doc.erase("coefficients");
  doc["ps"] = {0.3};
  doc["properties"] = {"cfs", "induced-cycle-count:5"};
  doc["trials"] = 5;
  const auto summary = run_sweep(parse_sweep_config(doc), 2);
  std::istringstream csv(read_file(summary.csv_path));
  std::string header;
  std::string first;
  std::string second;
  std::getline(csv, header);
  std::getline(csv, first);
  std::getline(csv, second);
  EXPECT_EQ(header, "n,c,p,property,trials,successes_or_mean,estimate,wilson_lo,wilson_hi,analytic_ref");
  EXPECT_EQ(first.rfind("12,,0.3,cfs,5,", 0), 0u) << first;
  EXPECT_EQ(second.rfind("12,,0.3,induced-cycle-count:5,5,", 0), 0u) << second;
  // Count cells carry no Wilson interval.
  EXPECT_NE(second.find(",,,"), std::string::npos) << second;
}

TEST(Sweep, UnwritableOutput) {
  TempDir dir("morsegraph_sweep_unwritable");
  std::ofstream(dir.path / "plain-file") << "x";
  auto cfg = parse_sweep_config(base_config((dir.path / "plain-file" / "y.jsonl").string()));
  try {
    run_sweep(cfg, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::IoError);
  }
}

TEST(Exhaustive, Examples) {
  EXPECT_EQ(exhaustive_small_n_expectation(5, 0.5, PropertyKind::morse_cycle_count(5)), 12.0 / 1024.0);
  for (const auto& prop : {PropertyKind::morse_pentagon_exists(), PropertyKind::morse_cycle_count(5),
                           PropertyKind::morse_square_exists(), PropertyKind::cfs(),
                           PropertyKind::square_isolated_exists(), PropertyKind::induced_cycle_count(4)}) {
    EXPECT_EQ(exhaustive_small_n_expectation(5, 0.0, prop), 0.0) << prop.to_string();
  }
  EXPECT_EQ(exhaustive_small_n_expectation(4, 1.0, PropertyKind::morse_square_exists()), 0.0);
  try {
    exhaustive_small_n_expectation(8, 0.5, PropertyKind::cfs());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::TooLarge);
  }
}

TEST(Exhaustive, ClosedFormsOnTinyGraphs) {
  for (double p : {0.1, 0.3, 0.77}) {
    // Three labelled 4-cycles on 4 vertices; twelve labelled 5-cycles on 5.
    EXPECT_NEAR(exhaustive_small_n_expectation(4, p, PropertyKind::induced_cycle_count(4)),
                3 * std::pow(p, 4) * std::pow(1 - p, 2), 1e-15);
    EXPECT_NEAR(exhaustive_small_n_expectation(5, p, PropertyKind::morse_cycle_count(5)),
                12 * std::pow(p, 5) * std::pow(1 - p, 5), 1e-15);
    // Six vertices: 6!/(2*5) = 72 pentagon placements on 5-sets, times 6 choices of the 5-set.
    EXPECT_NEAR(exhaustive_small_n_expectation(6, p, PropertyKind::induced_cycle_count(5)),
                72 * std::pow(p, 5) * std::pow(1 - p, 5), 1e-14);
  }
}

TEST(Exhaustive, WorkerIndependent) {
  const auto prop = PropertyKind::morse_cycle_count(5);
  EXPECT_EQ(exhaustive_small_n_expectation(6, 0.3, prop, 1), exhaustive_small_n_expectation(6, 0.3, prop, 4));
}

TEST(Exhaustive, MonteCarloAtSix) {
  const auto prop = PropertyKind::morse_cycle_count(5);
  const double exact = exhaustive_small_n_expectation(6, 0.4, prop);
  RunningMoments m;
  for (std::uint64_t t = 0; t < 20000; ++t) {
    m.add(outcome_as_number(evaluate_property(sample_gnp(6, 0.4, Seed{66}, t), prop).value));
  }
  EXPECT_LT(std::abs(m.mean() - exact), 4.0 * m.standard_error());
}

TEST(Validation, SmallCorporaAgree) {
  CorpusConfig cfg;
  cfg.graphs = 60;
  cfg.random_subsets = 20;
  const auto morse = run_morse_oracle_corpus(cfg);
  EXPECT_TRUE(morse.ok()) << morse.first_failure.value_or("");
  EXPECT_EQ(morse.graphs, 60u);
  EXPECT_GT(morse.checks, 60u * 20u);
  cfg.max_n = 30;
  const auto squares = run_square_identity_corpus(cfg);
  EXPECT_TRUE(squares.ok()) << squares.first_failure.value_or("");
  EXPECT_EQ(squares.checks, 120u);
}

TEST(Validation, ConditionalEstimatesNearClosedForms) {
  for (int which = 1; which <= 3; ++which) {
    const auto e = estimate_conditional_link(0.3, which, 50000, Seed{8});
    EXPECT_EQ(e.accepted, 50000u);
    EXPECT_GE(e.drawn, e.accepted);
    EXPECT_LT(std::abs(e.estimate - analytic::conditional_link_probability(0.3, which)), 4.0 * e.standard_error);
  }
}

}  // namespace
}  // namespace morsegraph
