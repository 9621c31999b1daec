#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "morsegraph/analytic.hpp"
#include "morsegraph/edge_list.hpp"
#include "morsegraph/error.hpp"
#include "morsegraph/exhaustive.hpp"
#include "morsegraph/experiment.hpp"
#include "morsegraph/gnp.hpp"
#include "morsegraph/parallel.hpp"
#include "morsegraph/property.hpp"
#include "morsegraph/square_graph.hpp"
#include "morsegraph/validation.hpp"

// Command-line front end. Results go to `out` as one JSON object; all
// diagnostics go to `err`. Exit status: 0 success, 1 domain error, 2 usage.

namespace morsegraph::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

namespace detail {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline nlohmann::ordered_json witness_json(const std::optional<CycleWitness>& w) {
  if (!w) return nullptr;
  return nlohmann::ordered_json(w->vertices);
}

inline nlohmann::ordered_json outcome_json(const OutcomeValue& v) {
  return std::visit([](auto x) { return nlohmann::ordered_json(x); }, v);
}

}  // namespace detail

inline int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Morse subgraphs, square graphs and density thresholds in G(n,p)", "morsegraph"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "sample one G(n,p) graph and write it as an edge list");
  std::size_t gen_n = 0;
  std::optional<double> gen_p;
  std::optional<double> gen_c;
  std::uint64_t gen_seed = 0;
  std::uint64_t gen_trial = 0;
  std::string gen_out;
  gen->add_option("--n", gen_n, "vertex count")->required();
  auto* p_opt = gen->add_option("--p", gen_p, "edge probability");
  auto* c_opt = gen->add_option("--c", gen_c, "coefficient c in p = c*sqrt(ln n / n)");
  p_opt->excludes(c_opt);
  gen->add_option("--seed", gen_seed, "master seed")->required();
  gen->add_option("--trial", gen_trial, "trial index (replays sweep trial records)");
  gen->add_option("--out", gen_out, "output edge-list path")->required();

  // check
  auto* check = app.add_subcommand("check", "evaluate a property on an edge-list graph");
  std::string check_in;
  std::string check_property;
  std::uint64_t check_budget = kDefaultSearchBudget;
  check->add_option("--in", check_in, "input edge-list path")->required();
  check->add_option("--property", check_property, "property tag, e.g. morse-cycle-exists:5:8")->required();
  check->add_option("--budget", check_budget, "node-expansion budget for the pruned search");

  // squaregraph
  auto* squares = app.add_subcommand("squaregraph", "analyse the square graph of an edge-list graph");
  std::string sq_in;
  std::string sq_dump;
  squares->add_option("--in", sq_in, "input edge-list path")->required();
  squares->add_option("--dump", sq_dump, "write the square graph edge list here (+ .json square index)");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "run a Monte Carlo sweep from a JSON config");
  std::string sweep_config;
  std::size_t workers = default_workers();
  sweep->add_option("--config", sweep_config, "sweep config path")->required();
  sweep->add_option("--workers", workers, "worker threads")->check(CLI::PositiveNumber);

  // analytic
  auto* an = app.add_subcommand("analytic", "evaluate closed-form expectations and thresholds");
  std::size_t an_n = 0;
  std::optional<double> an_p;
  std::optional<std::size_t> an_k;
  std::string which;
  an->add_option("--n", an_n, "vertex count")->required();
  an->add_option("--p", an_p, "edge probability");
  an->add_option("--k", an_k, "cycle length");
  an->add_option("--which", which, "quantity")
      ->required()
      ->check(CLI::IsMember({"mu5", "mu4", "lemma31", "thresholds", "clique-link", "long-cycle-bound"}));

  // oracle
  auto* oracle = app.add_subcommand("oracle", "run the cross-validation corpus");
  std::size_t oracle_max_n = 12;
  std::size_t oracle_trials = 500;
  std::uint64_t oracle_seed = CorpusConfig{}.seed.master;
  oracle->add_option("--max-n", oracle_max_n, "largest n in the Morse oracle corpus")->check(CLI::Range(5, 20));
  oracle->add_option("--trials", oracle_trials, "graphs per corpus")->check(CLI::PositiveNumber);
  oracle->add_option("--seed", oracle_seed, "corpus seed");

  std::vector<const char*> argv;
  argv.push_back("morsegraph");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    nlohmann::ordered_json result;
    int status = kExitOk;

    if (*gen) {
      if (!gen_p && !gen_c) throw detail::UsageError("gen needs one of --p or --c");
      DensityPoint point{gen_n, 0.0, 0.0};
      if (gen_c) {
        point = density_from_coefficient(*gen_c, gen_n);
      } else {
        point.p = *gen_p;
      }
      const Graph g = sample_gnp(gen_n, point.p, Seed{gen_seed}, gen_trial);
      save_edge_list(gen_out, g);
      result["n"] = gen_n;
      result["c"] = gen_c ? nlohmann::ordered_json(*gen_c) : nlohmann::ordered_json(nullptr);
      result["p"] = point.p;
      result["seed"] = gen_seed;
      result["trial"] = gen_trial;
      result["m"] = g.edge_count();
      result["out"] = gen_out;
    } else if (*check) {
      const auto property = PropertyKind::parse(check_property);
      const Graph g = load_edge_list(check_in);
      EvaluationLimits limits;
      limits.search_budget = check_budget;
      const auto outcome = evaluate_property(g, property, limits);
      result["outcome"] = detail::outcome_json(outcome.value);
      result["witness"] = detail::witness_json(outcome.witness);
    } else if (*squares) {
      const Graph g = load_edge_list(sq_in);
      const auto sq = build_square_graph(g);
      if (!sq_dump.empty()) dump_square_graph(sq, sq_dump);
      result["squares"] = sq.size();
      result["isolated"] = sq.isolated_count();
      result["components"] = sq.components().size();
      result["cfs"] = is_cfs(g, sq);
      result["connected"] = is_square_graph_connected(sq);
      result["empty"] = sq.empty();
    } else if (*sweep) {
      const auto cfg = load_sweep_config(sweep_config);
      const auto summary = run_sweep(cfg, workers);
      result["jsonl"] = summary.jsonl_path;
      result["csv"] = summary.csv_path;
      result["cells"] = summary.cells.size();
      result["ok"] = summary.ok();
      if (!summary.ok()) {
        err << "sweep: at least one cell had more than 1% errored trials\n";
        status = kExitDomain;
      }
    } else if (*an) {
      const auto need_p = [&] {
        if (!an_p) throw detail::UsageError("--which " + which + " needs --p");
        return *an_p;
      };
      const auto need_k = [&] {
        if (!an_k) throw detail::UsageError("--which " + which + " needs --k");
        return *an_k;
      };
      result["n"] = an_n;
      if (which == "thresholds") {
        const auto t = analytic::thresholds(an_n);
        result["pentagon"] = t.pentagon;
        result["square"] = t.square;
        result["cfs"] = t.cfs;
      } else if (which == "mu5") {
        result["p"] = need_p();
        result["mu5"] = analytic::expected_morse_pentagons(an_n, *an_p);
      } else if (which == "mu4") {
        result["p"] = need_p();
        result["mu4"] = analytic::expected_morse_squares(an_n, *an_p);
      } else if (which == "lemma31") {
        const double p = need_p();
        result["p"] = p;
        result["lemma31"] = {analytic::conditional_link_probability(p, 1),
                             analytic::conditional_link_probability(p, 2),
                             analytic::conditional_link_probability(p, 3)};
      } else if (which == "clique-link") {
        result["p"] = need_p();
        result["k"] = need_k();
        result["clique_link"] = analytic::clique_link_probability(an_n, *an_k, *an_p);
      } else {
        result["p"] = need_p();
        result["k"] = need_k();
        result["long_cycle_bound"] = analytic::long_cycle_bound(an_n, *an_p, *an_k);
      }
    } else if (*oracle) {
      CorpusConfig morse_cfg;
      morse_cfg.max_n = oracle_max_n;
      morse_cfg.graphs = oracle_trials;
      morse_cfg.seed = Seed{oracle_seed};
      CorpusConfig square_cfg = morse_cfg;
      square_cfg.max_n = 40;
      const auto morse_report = run_morse_oracle_corpus(morse_cfg);
      const auto square_report = run_square_identity_corpus(square_cfg);
      const double exact = exhaustive_small_n_expectation(5, 0.5, PropertyKind::morse_cycle_count(5));
      const auto section = [](const CorpusReport& r) {
        nlohmann::ordered_json j;
        j["graphs"] = r.graphs;
        j["checks"] = r.checks;
        j["disagreements"] = r.disagreements;
        j["first_failure"] = r.first_failure ? nlohmann::ordered_json(*r.first_failure) : nlohmann::ordered_json(nullptr);
        return j;
      };
      result["morse_oracle"] = section(morse_report);
      result["square_identity"] = section(square_report);
      result["exhaustive_n5_morse_pentagons"] = exact;
      result["exhaustive_expected"] = 12.0 / 1024.0;
      const bool ok = morse_report.ok() && square_report.ok() && exact == 12.0 / 1024.0;
      result["ok"] = ok;
      if (!ok) status = kExitDomain;
    }

    out << result.dump() << '\n';
    return status;
  } catch (const detail::UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }
}

}  // namespace morsegraph::cli
