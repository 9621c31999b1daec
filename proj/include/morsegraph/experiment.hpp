#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "morsegraph/analytic.hpp"
#include "morsegraph/error.hpp"
#include "morsegraph/gnp.hpp"
#include "morsegraph/parallel.hpp"
#include "morsegraph/property.hpp"
#include "morsegraph/stats.hpp"

namespace morsegraph {

/// One Monte Carlo trial. A trial is replayable from (n, p, seed, trial):
/// the graph is sample_gnp(n, p, Seed{seed}, trial).
struct TrialRecord {
  std::size_t n = 0;
  std::optional<double> c;
  double p = 0.0;
  PropertyKind property;
  std::uint64_t seed = 0;
  std::uint64_t trial = 0;
  std::optional<OutcomeValue> outcome;
  std::optional<std::string> error;
  double elapsed_ms = 0.0;
};

/// Fixed key order; elapsed_ms is always last so that records can be
/// compared byte-wise up to that key.
inline std::string to_jsonl(const TrialRecord& r) {
  nlohmann::ordered_json j;
  j["n"] = r.n;
  j["c"] = r.c ? nlohmann::ordered_json(*r.c) : nlohmann::ordered_json(nullptr);
  j["p"] = r.p;
  j["property"] = r.property.to_string();
  j["seed"] = r.seed;
  j["trial"] = r.trial;
  if (r.outcome) {
    std::visit([&](auto v) { j["outcome"] = v; }, *r.outcome);
  } else {
    j["outcome"] = nullptr;
  }
  j["error"] = r.error ? nlohmann::ordered_json(*r.error) : nlohmann::ordered_json(nullptr);
  j["elapsed_ms"] = r.elapsed_ms;
  return j.dump();
}

inline TrialRecord run_trial(std::size_t n, double p, const PropertyKind& property, Seed seed,
                             std::uint64_t trial_index, std::optional<double> c = std::nullopt,
                             EvaluationLimits limits = {}) {
  TrialRecord r;
  r.n = n;
  r.c = c;
  r.p = p;
  r.property = property;
  r.seed = seed.master;
  r.trial = trial_index;
  const auto start = std::chrono::steady_clock::now();
  const Graph g = sample_gnp(n, p, seed, trial_index);
  try {
    r.outcome = evaluate_property(g, property, limits).value;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::CapacityExceeded && e.kind() != ErrorKind::BudgetExceeded) throw;
    r.error = std::string(to_string(e.kind()));
  }
  r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

/// First-moment reference attached to a cell, where one is defined:
/// mu5 for pentagon events and 5-cycle counts, mu4 for square events, the
/// expected induced k-cycle count, and the square / CFS density thresholds.
inline std::optional<double> analytic_reference(std::size_t n, double p, const PropertyKind& property) {
  try {
    switch (property.tag) {
      case PropertyTag::MorsePentagonExists: return analytic::expected_morse_pentagons(n, p);
      case PropertyTag::MorseCycleExists:
        if (property.kmin == 5) return analytic::expected_morse_pentagons(n, p);
        if (property.kmin == 4 && property.kmax == 4) return analytic::expected_morse_squares(n, p);
        return std::nullopt;
      case PropertyTag::MorseCycleCount:
        if (property.kmin == 5) return analytic::expected_morse_pentagons(n, p);
        if (property.kmin == 4) return analytic::expected_morse_squares(n, p);
        return std::nullopt;
      case PropertyTag::MorseSquareExists:
      case PropertyTag::SquareIsolatedExists: return analytic::expected_morse_squares(n, p);
      case PropertyTag::InducedCycleCount:
        if (property.kmin > n) return 0.0;
        return analytic::long_cycle_bound(n, p, property.kmin);
      case PropertyTag::SquareGraphConnected: return analytic::thresholds(n).square;
      case PropertyTag::Cfs: return analytic::thresholds(n).cfs;
    }
  } catch (const Error&) {
    // Outside the formula's domain (small n, or 5p^2 >= 1).
  }
  return std::nullopt;
}

struct CellSummary {
  std::size_t n = 0;
  std::optional<double> c;
  double p = 0.0;
  PropertyKind property;
  std::uint64_t trials = 0;  // trials that produced an outcome
  std::uint64_t errors = 0;
  std::uint64_t successes = 0;  // existence properties
  double mean = 0.0;            // count properties: sample mean; otherwise = estimate
  double variance = 0.0;        // count properties only
  std::optional<double> estimate;
  std::optional<Interval> wilson;
  std::optional<double> analytic_ref;

  /// More than 1% of the cell's trials errored.
  bool failed() const noexcept { return errors * 100 > (trials + errors); }
};

struct SweepSummary {
  std::vector<CellSummary> cells;
  std::string jsonl_path;
  std::string csv_path;

  bool ok() const {
    return std::none_of(cells.begin(), cells.end(), [](const CellSummary& c) { return c.failed(); });
  }
};

/// Folds trial records (in trial order) into a cell summary.
inline CellSummary summarize_cell(std::span<const TrialRecord> records, double z) {
  CellSummary s;
  if (records.empty()) return s;
  const auto& first = records.front();
  s.n = first.n;
  s.c = first.c;
  s.p = first.p;
  s.property = first.property;
  RunningMoments moments;
  for (const auto& r : records) {
    if (!r.outcome) {
      ++s.errors;
      continue;
    }
    ++s.trials;
    const double x = outcome_as_number(*r.outcome);
    if (!s.property.is_count() && x != 0.0) ++s.successes;
    moments.add(x);
  }
  if (s.trials > 0) {
    s.mean = moments.mean();
    s.estimate = moments.mean();
    if (s.property.is_count()) {
      s.variance = moments.variance();
    } else {
      s.estimate = static_cast<double>(s.successes) / static_cast<double>(s.trials);
      s.mean = *s.estimate;
      s.wilson = wilson_interval(s.successes, s.trials, z);
    }
  }
  s.analytic_ref = analytic_reference(s.n, s.p, s.property);
  return s;
}

struct SweepConfig {
  std::vector<std::size_t> ns;
  std::vector<double> coefficients;  // exactly one of coefficients / ps is non-empty
  std::vector<double> ps;
  std::vector<PropertyKind> properties;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  double z = 1.96;
  std::string out;
  EvaluationLimits limits;
};

namespace detail {

[[noreturn]] inline void config_error(const std::string& field, const std::string& why) {
  throw Error(ErrorKind::ConfigError, "field '" + field + "': " + why);
}

template <typename T>
T config_field(const nlohmann::json& doc, const std::string& field) {
  if (!doc.contains(field)) config_error(field, "missing");
  try {
    return doc.at(field).get<T>();
  } catch (const nlohmann::json::exception& e) {
    config_error(field, e.what());
  }
}

}  // namespace detail

inline SweepConfig parse_sweep_config(const nlohmann::json& doc) {
  if (!doc.is_object()) detail::config_error("<root>", "config must be a JSON object");
  SweepConfig cfg;
  static const std::vector<std::string> known = {"ns",    "coefficients", "ps",  "properties",    "trials",
                                                 "seed",  "z",            "out", "search_budget", "square_cap"};
  for (const auto& item : doc.items()) {
    if (std::find(known.begin(), known.end(), item.key()) == known.end()) {
      detail::config_error(item.key(), "unknown field");
    }
  }
  const auto ns = detail::config_field<std::vector<std::int64_t>>(doc, "ns");
  if (ns.empty()) detail::config_error("ns", "must list at least one n");
  for (auto n : ns) {
    if (n < 2) detail::config_error("ns", "every n must be >= 2");
    cfg.ns.push_back(static_cast<std::size_t>(n));
  }
  const bool has_c = doc.contains("coefficients");
  const bool has_p = doc.contains("ps");
  if (has_c == has_p) detail::config_error("coefficients", "give exactly one of 'coefficients' or 'ps'");
  if (has_c) {
    cfg.coefficients = detail::config_field<std::vector<double>>(doc, "coefficients");
    if (cfg.coefficients.empty()) detail::config_error("coefficients", "must not be empty");
    for (double c : cfg.coefficients) {
      if (!(c >= 0.0) || !std::isfinite(c)) detail::config_error("coefficients", "must be finite and >= 0");
    }
  } else {
    cfg.ps = detail::config_field<std::vector<double>>(doc, "ps");
    if (cfg.ps.empty()) detail::config_error("ps", "must not be empty");
    for (double p : cfg.ps) {
      if (!(p >= 0.0 && p <= 1.0)) detail::config_error("ps", "must lie in [0,1]");
    }
  }
  const auto props = detail::config_field<std::vector<std::string>>(doc, "properties");
  if (props.empty()) detail::config_error("properties", "must not be empty");
  for (const auto& tag : props) {
    try {
      cfg.properties.push_back(PropertyKind::parse(tag));
    } catch (const Error& e) {
      detail::config_error("properties", e.what());
    }
  }
  const auto trials = detail::config_field<std::int64_t>(doc, "trials");
  if (trials < 1) detail::config_error("trials", "must be >= 1");
  cfg.trials = static_cast<std::uint64_t>(trials);
  cfg.seed = detail::config_field<std::uint64_t>(doc, "seed");
  if (doc.contains("z")) {
    cfg.z = detail::config_field<double>(doc, "z");
    if (!(cfg.z > 0.0)) detail::config_error("z", "must be positive");
  }
  cfg.out = detail::config_field<std::string>(doc, "out");
  if (cfg.out.empty()) detail::config_error("out", "must be a path");
  if (doc.contains("search_budget")) cfg.limits.search_budget = detail::config_field<std::uint64_t>(doc, "search_budget");
  if (doc.contains("square_cap")) cfg.limits.square_cap = detail::config_field<std::size_t>(doc, "square_cap");
  return cfg;
}

inline SweepConfig load_sweep_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot open config '" + path + "'");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::ConfigError, std::string("config is not valid JSON: ") + e.what());
  }
  return parse_sweep_config(doc);
}

/// "runs/x.jsonl" -> "runs/x.summary.csv"; other names get the suffix appended.
inline std::string summary_csv_path(const std::string& jsonl_path) {
  const std::string ext = ".jsonl";
  if (jsonl_path.size() > ext.size() && jsonl_path.compare(jsonl_path.size() - ext.size(), ext.size(), ext) == 0) {
    return jsonl_path.substr(0, jsonl_path.size() - ext.size()) + ".summary.csv";
  }
  return jsonl_path + ".summary.csv";
}

namespace detail {

inline std::string csv_number(std::optional<double> x) { return x ? nlohmann::json(*x).dump() : std::string(); }

}  // namespace detail

inline void write_summary_csv(std::ostream& out, const SweepSummary& summary) {
  out << "n,c,p,property,trials,successes_or_mean,estimate,wilson_lo,wilson_hi,analytic_ref\n";
  for (const auto& s : summary.cells) {
    out << s.n << ',' << detail::csv_number(s.c) << ',' << detail::csv_number(s.p) << ',' << s.property.to_string()
        << ',' << s.trials << ',';
    if (s.property.is_count()) {
      out << detail::csv_number(s.trials > 0 ? std::optional(s.mean) : std::nullopt);
    } else {
      out << s.successes;
    }
    out << ',' << detail::csv_number(s.estimate) << ','
        << detail::csv_number(s.wilson ? std::optional(s.wilson->lo) : std::nullopt) << ','
        << detail::csv_number(s.wilson ? std::optional(s.wilson->hi) : std::nullopt) << ','
        << detail::csv_number(s.analytic_ref) << '\n';
  }
}

struct SweepCell {
  std::size_t n;
  std::optional<double> c;
  double p;
  PropertyKind property;
};

inline std::vector<SweepCell> expand_cells(const SweepConfig& cfg) {
  std::vector<SweepCell> cells;
  for (std::size_t n : cfg.ns) {
    const std::size_t densities = cfg.coefficients.empty() ? cfg.ps.size() : cfg.coefficients.size();
    for (std::size_t d = 0; d < densities; ++d) {
      std::optional<double> c;
      double p = 0.0;
      if (cfg.coefficients.empty()) {
        p = cfg.ps[d];
      } else {
        c = cfg.coefficients[d];
        p = density_from_coefficient(*c, n).p;
      }
      for (const auto& prop : cfg.properties) cells.push_back({n, c, p, prop});
    }
  }
  return cells;
}

/// Runs every (cell, trial) pair on `workers` threads and returns the
/// records in (cell, trial) order. The result does not depend on `workers`.
inline std::vector<TrialRecord> run_cells(std::span<const SweepCell> cells, std::uint64_t trials, Seed seed,
                                          std::size_t workers, EvaluationLimits limits = {}) {
  std::vector<TrialRecord> records(cells.size() * trials);
  parallel_for(records.size(), workers, [&](std::size_t job) {
    const auto& cell = cells[job / trials];
    records[job] = run_trial(cell.n, cell.p, cell.property, seed, job % trials, cell.c, limits);
  });
  return records;
}

/// Evaluates the whole grid, writes one JSONL record per trial to cfg.out
/// (creating its directory) and the per-cell summary CSV next to it. Check SweepSummary::ok() for cells
/// whose error rate exceeded 1%.
inline SweepSummary run_sweep(const SweepConfig& cfg, std::size_t workers = default_workers()) {
  if (cfg.trials == 0) detail::config_error("trials", "must be >= 1");
  SweepSummary summary;
  summary.jsonl_path = cfg.out;
  summary.csv_path = summary_csv_path(cfg.out);

  const auto parent = std::filesystem::path(summary.jsonl_path).parent_path();
  if (!parent.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(parent, ec);
    if (ec) throw Error(ErrorKind::IoError, "cannot create '" + parent.string() + "': " + ec.message());
  }
  std::ofstream jsonl(summary.jsonl_path, std::ios::binary);
  if (!jsonl) throw Error(ErrorKind::IoError, "cannot open '" + summary.jsonl_path + "' for writing");
  std::ofstream csv(summary.csv_path, std::ios::binary);
  if (!csv) throw Error(ErrorKind::IoError, "cannot open '" + summary.csv_path + "' for writing");

  const auto cells = expand_cells(cfg);
  const auto records = run_cells(cells, cfg.trials, Seed{cfg.seed}, workers, cfg.limits);
  for (const auto& r : records) jsonl << to_jsonl(r) << '\n';
  for (std::size_t i = 0; i < cells.size(); ++i) {
    summary.cells.push_back(
        summarize_cell(std::span<const TrialRecord>(records).subspan(i * cfg.trials, cfg.trials), cfg.z));
  }
  write_summary_csv(csv, summary);
  if (!jsonl || !csv) throw Error(ErrorKind::IoError, "writing sweep output failed");
  return summary;
}

}  // namespace morsegraph
