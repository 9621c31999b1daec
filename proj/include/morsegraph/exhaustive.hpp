#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "morsegraph/error.hpp"
#include "morsegraph/graph.hpp"
#include "morsegraph/parallel.hpp"
#include "morsegraph/property.hpp"

namespace morsegraph {

inline constexpr std::size_t kMaxExhaustiveN = 7;

/// Exact E[property] over G(n,p) by visiting all 2^C(n,2) labelled graphs.
/// Booleans count as 0/1, so existence properties yield probabilities.
///
/// Outcomes are summed as integers per edge count, and only then weighted
/// by p^e (1-p)^(C(n,2)-e); the result is independent of `workers`.
inline double exhaustive_small_n_expectation(std::size_t n, double p, const PropertyKind& property,
                                             std::size_t workers = 1) {
  if (n > kMaxExhaustiveN) throw Error(ErrorKind::TooLarge, "exhaustive enumeration supports n <= 7");
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorKind::InvalidParameter, "p must lie in [0,1]");
  std::vector<Edge> pairs;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) pairs.push_back({u, v});
  }
  const std::size_t slots = pairs.size();
  const std::uint64_t graphs = std::uint64_t{1} << slots;

  // Chunks of graphs; each chunk keeps its own integer totals by edge count.
  const std::size_t chunk_bits = slots > 12 ? slots - 8 : slots;
  const std::uint64_t chunk_size = std::uint64_t{1} << chunk_bits;
  const std::size_t chunks = static_cast<std::size_t>(graphs / chunk_size);
  std::vector<std::vector<std::uint64_t>> partial(chunks, std::vector<std::uint64_t>(slots + 1, 0));

  parallel_for(chunks, workers, [&](std::size_t chunk) {
    auto& totals = partial[chunk];
    const std::uint64_t begin = chunk * chunk_size;
    for (std::uint64_t mask = begin; mask < begin + chunk_size; ++mask) {
      GraphBuilder builder(n);
      for (std::size_t i = 0; i < slots; ++i) {
        if ((mask >> i) & 1U) builder.add_edge_unchecked(pairs[i].u, pairs[i].v);
      }
      const Graph g = std::move(builder).finish();
      const auto value = evaluate_property(g, property).value;
      totals[g.edge_count()] += std::visit([](auto x) { return static_cast<std::uint64_t>(x); }, value);
    }
  });

  double expectation = 0.0;
  for (std::size_t e = 0; e <= slots; ++e) {
    std::uint64_t total = 0;
    for (const auto& t : partial) total += t[e];
    if (total == 0) continue;
    const double weight = std::pow(p, static_cast<double>(e)) * std::pow(1.0 - p, static_cast<double>(slots - e));
    expectation += static_cast<double>(total) * weight;
  }
  return expectation;
}

}  // namespace morsegraph
