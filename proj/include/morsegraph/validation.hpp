#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "morsegraph/cycles.hpp"
#include "morsegraph/gnp.hpp"
#include "morsegraph/morse.hpp"
#include "morsegraph/property.hpp"
#include "morsegraph/square_graph.hpp"

// Cross-validation corpora and sampling checks: the production Morse
// predicate against the definition-level oracle, square-graph identities,
// and Monte Carlo estimates of the conditional link probabilities.

namespace morsegraph {

struct CorpusConfig {
  std::size_t graphs = 500;
  std::size_t min_n = 5;
  std::size_t max_n = 12;
  std::vector<double> ps{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  std::size_t random_subsets = 100;
  Seed seed{20240601};
};

struct CorpusReport {
  std::size_t graphs = 0;
  std::uint64_t checks = 0;
  std::uint64_t disagreements = 0;
  std::optional<std::string> first_failure;

  bool ok() const noexcept { return disagreements == 0; }

  void record(bool agree, const std::string& context) {
    ++checks;
    if (agree) return;
    ++disagreements;
    if (!first_failure) first_failure = context;
  }
};

/// Graph i of a corpus: n cycles through [min_n, max_n], p through ps.
inline Graph corpus_graph(const CorpusConfig& cfg, std::size_t i, std::size_t* n_out = nullptr, double* p_out = nullptr) {
  const std::size_t span = cfg.max_n - cfg.min_n + 1;
  const std::size_t n = cfg.min_n + i % span;
  const double p = cfg.ps[(i / span) % cfg.ps.size()];
  if (n_out) *n_out = n;
  if (p_out) *p_out = p;
  return sample_gnp(n, p, cfg.seed, i);
}

namespace detail {

inline constexpr std::uint64_t kSubsetStreamSalt = 0xD1B54A32D192ED03ULL;

inline std::string describe(std::size_t i, std::size_t n, double p, const std::string& what) {
  std::ostringstream s;
  s << "graph " << i << " (n=" << n << ", p=" << p << "): " << what;
  return s.str();
}

inline std::string describe_set(const VertexSet& s) {
  std::ostringstream out;
  out << '{';
  bool first = true;
  s.for_each([&](Vertex v) {
    out << (first ? "" : ",") << v;
    first = false;
  });
  out << '}';
  return out.str();
}

}  // namespace detail

/// is_morse_subgraph vs morse_oracle on every induced cycle and on
/// `random_subsets` uniformly random vertex subsets of every corpus graph.
/// Also checks that is_morse_cycle agrees with both on every cycle.
inline CorpusReport run_morse_oracle_corpus(const CorpusConfig& cfg) {
  CorpusReport report;
  for (std::size_t i = 0; i < cfg.graphs; ++i) {
    std::size_t n = 0;
    double p = 0.0;
    const Graph g = corpus_graph(cfg, i, &n, &p);
    ++report.graphs;
    for (std::size_t k = 3; k <= n; ++k) {
      for_each_induced_cycle(g, k, [&](std::span<const Vertex> c) {
        const VertexSet s(n, c);
        const bool fast = is_morse_subgraph(g, s);
        const bool oracle = morse_oracle(g, s);
        report.record(fast == oracle, detail::describe(i, n, p, "cycle " + detail::describe_set(s)));
        report.record(is_morse_cycle(g, c) == oracle,
                      detail::describe(i, n, p, "is_morse_cycle on " + detail::describe_set(s)));
      });
    }
    auto rng = trial_generator(Seed{cfg.seed.master ^ detail::kSubsetStreamSalt}, i);
    for (std::size_t t = 0; t < cfg.random_subsets; ++t) {
      const std::uint64_t bits = rng();
      VertexSet s(n);
      for (Vertex v = 0; v < n; ++v) {
        if ((bits >> v) & 1U) s.insert(v);
      }
      report.record(is_morse_subgraph(g, s) == morse_oracle(g, s),
                    detail::describe(i, n, p, "subset " + detail::describe_set(s)));
    }
  }
  return report;
}

/// Per corpus graph: MorseSquareExists <=> SquareIsolatedExists, and the
/// isolated-vertex count of the square graph equals the Morse 4-cycle count.
inline CorpusReport run_square_identity_corpus(const CorpusConfig& cfg) {
  CorpusReport report;
  for (std::size_t i = 0; i < cfg.graphs; ++i) {
    std::size_t n = 0;
    double p = 0.0;
    const Graph g = corpus_graph(cfg, i, &n, &p);
    ++report.graphs;
    const bool morse_square = std::get<bool>(evaluate_property(g, PropertyKind::morse_square_exists()).value);
    const bool isolated = std::get<bool>(evaluate_property(g, PropertyKind::square_isolated_exists()).value);
    report.record(morse_square == isolated, detail::describe(i, n, p, "morse-square-exists vs square-isolated-exists"));
    const auto sq = build_square_graph(g);
    report.record(sq.isolated_count() == count_morse_cycles(g, 4),
                  detail::describe(i, n, p, "isolated_count vs Morse 4-cycle count"));
  }
  return report;
}

struct ConditionalEstimate {
  double estimate = 0.0;
  double standard_error = 0.0;
  std::uint64_t accepted = 0;
  std::uint64_t drawn = 0;
};

/// Monte Carlo estimate of a conditional link probability. Each draw is a
/// G(5,p) graph with v = 0 and w1..w4 = 1..4; draws failing the conditioning
/// event are rejected until `accepted` draws satisfy it.
inline ConditionalEstimate estimate_conditional_link(double p, int which, std::uint64_t accepted, Seed seed) {
  if (which < 1 || which > 3) throw Error(ErrorKind::InvalidParameter, "conditional link selector must be 1, 2 or 3");
  ConditionalEstimate out;
  std::uint64_t hits = 0;
  while (out.accepted < accepted) {
    const Graph g = sample_gnp(5, p, seed, out.drawn++);
    const bool a1 = g.adjacent(0, 1);
    const bool a2 = g.adjacent(0, 2);
    const bool a3 = g.adjacent(0, 3);
    const bool a4 = g.adjacent(0, 4);
    bool given = false;
    bool event = false;
    switch (which) {
      case 1:
        given = !(a1 && a2) && !(a1 && a3);
        event = a1;
        break;
      case 2:
        given = !(a2 && a3);
        event = a1 && a2;
        break;
      default:
        given = !(a1 && a3) && !(a2 && a4);
        event = a1 && a2;
        break;
    }
    if (!given) continue;
    ++out.accepted;
    hits += event ? 1 : 0;
  }
  if (out.accepted > 0) {
    const double q = static_cast<double>(hits) / static_cast<double>(out.accepted);
    out.estimate = q;
    out.standard_error = std::sqrt(q * (1.0 - q) / static_cast<double>(out.accepted));
  }
  return out;
}

}  // namespace morsegraph
