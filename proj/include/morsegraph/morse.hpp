#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "morsegraph/cycles.hpp"
#include "morsegraph/error.hpp"
#include "morsegraph/graph.hpp"

// A vertex set S is Morse when every induced square meeting S in a
// non-adjacent pair lies inside S. Any non-adjacent pair of an induced square
// is one of its diagonals, and for non-adjacent u,w every non-adjacent pair
// x,y of common neighbours spans the induced square u-x-w-y. So S is Morse iff
// for every non-adjacent u,w in S, every non-adjacent pair inside
// common_neighbors(u,w) lies in S. For a square-free S (an induced k-cycle
// with k >= 5) that reduces to: common_neighbors(u,w) is a clique.

namespace morsegraph {

namespace detail {

inline VertexSet over_graph(const Graph& g, const VertexSet& s) {
  if (s.universe() == g.vertex_count()) return s;
  VertexSet out(g.vertex_count());
  s.for_each([&](Vertex v) {
    if (v >= g.vertex_count()) {
      throw Error(ErrorKind::VertexOutOfRange, "subset member " + std::to_string(v) + " >= n");
    }
    out.insert(v);
  });
  return out;
}

inline void common_members(const Graph& g, Vertex u, Vertex w, std::vector<Vertex>& out) {
  out.clear();
  const auto a = g.row(u);
  const auto b = g.row(w);
  for (std::size_t i = 0; i < a.size(); ++i) {
    Word x = a[i] & b[i];
    while (x != 0) {
      out.push_back(static_cast<Vertex>(i * bits::kWordBits + static_cast<std::size_t>(std::countr_zero(x))));
      x &= x - 1;
    }
  }
}

inline bool members_form_clique(const Graph& g, std::span<const Vertex> members) {
  for (std::size_t a = 0; a < members.size(); ++a) {
    for (std::size_t b = a + 1; b < members.size(); ++b) {
      if (!g.adjacent(members[a], members[b])) return false;
    }
  }
  return true;
}

}  // namespace detail

/// Memoizes "common_neighbors(u,w) is a clique" for one graph. Not thread-safe;
/// give each worker its own cache.
class CommonCliqueCache {
 public:
  explicit CommonCliqueCache(const Graph& g) : g_(g), n_(g.vertex_count()), state_(n_ * n_, kUnknown) {}

  bool operator()(Vertex u, Vertex w) {
    std::int8_t& slot = state_[u < w ? u * n_ + w : w * n_ + u];
    if (slot == kUnknown) {
      detail::common_members(g_, u, w, scratch_);
      slot = detail::members_form_clique(g_, scratch_) ? 1 : 0;
    }
    return slot == 1;
  }

 private:
  static constexpr std::int8_t kUnknown = -1;
  const Graph& g_;
  std::size_t n_;
  std::vector<std::int8_t> state_;
  std::vector<Vertex> scratch_;
};

/// Production Morse check. Scans non-adjacent pairs of s lexicographically and
/// stops at the first violation.
inline bool is_morse_subgraph(const Graph& g, const VertexSet& subset) {
  const VertexSet s = detail::over_graph(g, subset);
  const auto sw = s.words();
  const std::size_t stride = g.words_per_row();
  std::vector<Word> common(stride);
  return s.for_each([&](Vertex u) {
    const auto ru = g.row(u);
    return s.for_each([&](Vertex w) {
      if (w <= u || g.adjacent(u, w)) return true;
      const auto rw = g.row(w);
      for (std::size_t i = 0; i < stride; ++i) common[i] = ru[i] & rw[i];
      // A common neighbour outside s with a non-neighbour inside the common
      // set witnesses a square that leaves s.
      for (std::size_t i = 0; i < stride; ++i) {
        Word outside = common[i] & ~sw[i];
        while (outside != 0) {
          const auto x =
              static_cast<Vertex>(i * bits::kWordBits + static_cast<std::size_t>(std::countr_zero(outside)));
          outside &= outside - 1;
          const auto rx = g.row(x);
          for (std::size_t t = 0; t < stride; ++t) {
            Word stranger = common[t] & ~rx[t];
            if (t == bits::word_of(x)) stranger &= ~bits::mask(x);
            if (stranger != 0) return false;
          }
        }
      }
      return true;
    });
  });
}

/// Verbatim check of the definition over the full list of induced squares.
/// Shares nothing with is_morse_subgraph beyond Graph adjacency queries.
inline bool morse_oracle(const Graph& g, const VertexSet& subset) {
  const VertexSet s = detail::over_graph(g, subset);
  return for_each_induced_square(g, [&](const Square& sq) {
    std::vector<Vertex> inside;
    for (Vertex v : sq.v) {
      if (s.contains(v)) inside.push_back(v);
    }
    bool meets_in_non_adjacent_pair = false;
    for (std::size_t a = 0; a < inside.size(); ++a) {
      for (std::size_t b = a + 1; b < inside.size(); ++b) {
        if (!g.adjacent(inside[a], inside[b])) meets_in_non_adjacent_pair = true;
      }
    }
    return !meets_in_non_adjacent_pair || inside.size() == 4;
  });
}

namespace detail {

// Morse test for an already verified induced cycle. Callers supply the
// clique predicate so that hot loops can memoize it.
template <typename CliqueTest>
bool verified_cycle_is_morse(const Graph& g, std::span<const Vertex> c, CliqueTest&& common_is_clique) {
  const std::size_t k = c.size();
  if (k == 4) {
    std::vector<Vertex> members;
    for (int d = 0; d < 2; ++d) {
      const Vertex u = c[static_cast<std::size_t>(d)];
      const Vertex w = c[static_cast<std::size_t>(d) + 2];
      const Vertex x = c[static_cast<std::size_t>(1 - d)];
      const Vertex y = c[static_cast<std::size_t>(3 - d)];
      common_members(g, u, w, members);
      for (std::size_t a = 0; a < members.size(); ++a) {
        for (std::size_t b = a + 1; b < members.size(); ++b) {
          if (g.adjacent(members[a], members[b])) continue;
          const bool is_other_diagonal =
              (members[a] == x && members[b] == y) || (members[a] == y && members[b] == x);
          if (!is_other_diagonal) return false;
        }
      }
    }
    return true;
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 2; j < k; ++j) {
      if (i == 0 && j == k - 1) continue;
      if (!common_is_clique(c[i], c[j])) return false;
    }
  }
  return true;
}

}  // namespace detail

inline bool is_morse_cycle(const Graph& g, std::span<const Vertex> cycle) {
  if (!is_induced_cycle(g, cycle)) throw Error(ErrorKind::InvalidWitness, "not an induced cycle of the graph");
  std::vector<Vertex> scratch;
  return detail::verified_cycle_is_morse(g, cycle, [&](Vertex u, Vertex w) {
    detail::common_members(g, u, w, scratch);
    return detail::members_form_clique(g, scratch);
  });
}

inline bool is_morse_cycle(const Graph& g, const CycleWitness& c) { return is_morse_cycle(g, c.vertices); }

/// Number of induced k-cycles that are Morse (k >= 4).
inline std::uint64_t count_morse_cycles(const Graph& g, std::size_t k) {
  if (k < 4) throw Error(ErrorKind::InvalidParameter, "Morse cycle counts need k >= 4");
  std::uint64_t count = 0;
  if (k == 4) {
    for_each_induced_square(g, [&](const Square& sq) {
      if (detail::verified_cycle_is_morse(g, sq.v, [](Vertex, Vertex) { return true; })) ++count;
    });
    return count;
  }
  CommonCliqueCache cache(g);
  for_each_induced_cycle(g, k, [&](std::span<const Vertex> c) {
    if (detail::verified_cycle_is_morse(g, c, cache)) ++count;
  });
  return count;
}

}  // namespace morsegraph
