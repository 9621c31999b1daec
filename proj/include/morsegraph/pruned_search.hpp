#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "morsegraph/cycles.hpp"
#include "morsegraph/error.hpp"
#include "morsegraph/graph.hpp"
#include "morsegraph/morse.hpp"

namespace morsegraph {

inline constexpr std::uint64_t kDefaultSearchBudget = 100'000'000;

struct PrunedSearchOptions {
  std::uint64_t budget = kDefaultSearchBudget;
};

namespace detail {

struct CliquePrune {
  static constexpr bool kActive = true;
  CommonCliqueCache& cache;
  bool operator()(Vertex u, Vertex w) { return cache(u, w); }
};

}  // namespace detail

/// Finds some Morse k-cycle with kmin <= k <= kmax, or nothing.
///
/// Length-4 candidates come from the square enumerator and are tested with
/// the 4-cycle criterion. Longer cycles come from the induced-path DFS,
/// which drops a branch as soon as one of its non-adjacent pairs has a
/// common neighbourhood that is not a clique: such a pair stays non-adjacent
/// in every completion, so no Morse k-cycle (k >= 5) can contain it. Any
/// cycle that survives is therefore Morse.
///
/// Throws BudgetExceeded rather than answering "absent" when the node
/// expansion budget runs out.
inline std::optional<CycleWitness> morse_pruned_cycle_search(const Graph& g, std::size_t kmin, std::size_t kmax,
                                                             PrunedSearchOptions options = {}) {
  if (kmin < 4 || kmin > kmax) {
    throw Error(ErrorKind::InvalidParameter, "pruned search needs 4 <= kmin <= kmax");
  }
  std::optional<CycleWitness> found;
  if (kmin == 4) {
    for_each_induced_square(g, [&](const Square& sq) {
      if (is_morse_cycle(g, sq.v)) {
        found = sq.witness();
        return false;
      }
      return true;
    });
    if (found) return found;
    kmin = 5;
    if (kmax < 5) return std::nullopt;
  }
  CommonCliqueCache cache(g);
  detail::CliquePrune prune{cache};
  auto visit = [&](std::span<const Vertex> c) {
    found = CycleWitness{{c.begin(), c.end()}};
    return false;
  };
  detail::InducedCycleDfs dfs(g, kmin, kmax, prune, visit, options.budget);
  dfs.run();
  return found;
}

}  // namespace morsegraph
