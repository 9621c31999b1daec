#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <span>
#include <type_traits>
#include <vector>

#include "morsegraph/error.hpp"
#include "morsegraph/graph.hpp"

namespace morsegraph {

/// Ordered vertex list of an induced cycle. Canonical form puts the minimum
/// vertex first and orients the cycle so the second vertex is smaller than the last.
struct CycleWitness {
  std::vector<Vertex> vertices;

  std::size_t length() const noexcept { return vertices.size(); }

  friend bool operator==(const CycleWitness&, const CycleWitness&) = default;
  friend auto operator<=>(const CycleWitness&, const CycleWitness&) = default;
};

inline bool is_canonical(std::span<const Vertex> cycle) {
  if (cycle.size() < 3) return false;
  const auto first = cycle.front();
  if (std::any_of(cycle.begin() + 1, cycle.end(), [&](Vertex v) { return v <= first; })) return false;
  return cycle[1] < cycle.back();
}

inline CycleWitness canonical_cycle(std::span<const Vertex> cycle) {
  const std::size_t k = cycle.size();
  if (k == 0) return {};
  const auto min_it = std::min_element(cycle.begin(), cycle.end());
  const auto start = static_cast<std::size_t>(min_it - cycle.begin());
  std::vector<Vertex> out(k);
  const bool forward = cycle[(start + 1) % k] < cycle[(start + k - 1) % k];
  for (std::size_t i = 0; i < k; ++i) {
    out[i] = forward ? cycle[(start + i) % k] : cycle[(start + k - i) % k];
  }
  return {std::move(out)};
}

/// True iff `cycle` lists k >= 3 distinct in-range vertices that are
/// cyclically adjacent with no chords.
inline bool is_induced_cycle(const Graph& g, std::span<const Vertex> cycle) {
  const std::size_t k = cycle.size();
  if (k < 3) return false;
  for (Vertex v : cycle) {
    if (v >= g.vertex_count()) return false;
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      if (cycle[i] == cycle[j]) return false;
      const bool consecutive = (j == i + 1) || (i == 0 && j == k - 1);
      if (g.adjacent(cycle[i], cycle[j]) != consecutive) return false;
    }
  }
  return true;
}

/// An induced 4-cycle v[0]-v[1]-v[2]-v[3] in canonical order. Its diagonals
/// are {v[0],v[2]} and {v[1],v[3]}, each stored with the smaller vertex first.
struct Square {
  std::array<Vertex, 4> v{};

  Edge diagonal(int i) const noexcept {
    const Vertex a = v[static_cast<std::size_t>(i)];
    const Vertex b = v[static_cast<std::size_t>(i) + 2];
    return a < b ? Edge{a, b} : Edge{b, a};
  }

  CycleWitness witness() const { return {{v.begin(), v.end()}}; }

  friend bool operator==(const Square&, const Square&) = default;
  friend auto operator<=>(const Square&, const Square&) = default;
};

namespace detail {

template <typename F, typename... Args>
bool keep_going(F& f, Args&&... args) {
  if constexpr (std::is_same_v<std::invoke_result_t<F&, Args...>, bool>) {
    return f(std::forward<Args>(args)...);
  } else {
    f(std::forward<Args>(args)...);
    return true;
  }
}

struct AllowAllPairs {
  static constexpr bool kActive = false;
  bool operator()(Vertex, Vertex) const noexcept { return true; }
};

inline constexpr std::uint64_t kUnlimitedBudget = ~std::uint64_t{0};

/// Depth-first search over induced paths anchored at their minimum vertex.
/// A path v1..vj may be extended by x > v1 that is adjacent to vj and
/// non-adjacent to v1..v(j-1); it closes into a cycle when x is also adjacent
/// to v1. Closing requires x > v2, so every induced cycle is produced once,
/// in canonical form and in lexicographic order.
///
/// `Prune` is consulted for every new non-adjacent pair (path vertex, x);
/// returning false discards the branch.
template <typename Prune, typename Visit>
class InducedCycleDfs {
 public:
  InducedCycleDfs(const Graph& g, std::size_t kmin, std::size_t kmax, Prune& prune, Visit& visit,
                  std::uint64_t budget)
      : g_(g), kmin_(kmin), kmax_(kmax), prune_(prune), visit_(visit), budget_(budget),
        stride_(g.words_per_row()) {}

  /// Returns false if the visitor stopped the search early.
  bool run() {
    const std::size_t n = g_.vertex_count();
    if (kmax_ < 3 || kmin_ > kmax_ || n < kmin_) return true;
    blocked_.assign((kmax_ + 1) * stride_, 0);
    candidates_.assign((kmax_ + 1) * stride_, 0);
    path_.clear();
    path_.reserve(kmax_);
    for (Vertex anchor = 0; anchor < n; ++anchor) {
      path_.assign(1, anchor);
      if (!extend()) return false;
    }
    return true;
  }

  std::uint64_t expansions() const noexcept { return expansions_; }

 private:
  std::span<Word> level(std::vector<Word>& buf, std::size_t depth) {
    return {buf.data() + depth * stride_, stride_};
  }

  void count_expansion() {
    if (++expansions_ > budget_) {
      throw Error(ErrorKind::BudgetExceeded,
                  "cycle search exceeded " + std::to_string(budget_) + " node expansions");
    }
  }

  bool pair_ok(Vertex x, std::size_t first, std::size_t last) {
    if constexpr (Prune::kActive) {
      for (std::size_t i = first; i < last; ++i) {
        if (!prune_(path_[i], x)) return false;
      }
    }
    return true;
  }

  bool extend() {
    const std::size_t j = path_.size();
    const Vertex anchor = path_.front();
    const Vertex last = path_.back();
    const auto anchor_row = g_.row(anchor);
    const auto last_row = g_.row(last);
    auto blocked = level(blocked_, j);
    auto cand = level(candidates_, j);

    const bool can_close = j >= 2 && j + 1 >= kmin_ && j + 1 <= kmax_;
    const bool can_extend = j + 1 < kmax_;
    if (!can_close && !can_extend) return true;

    // Candidates are strictly greater than the anchor.
    const std::size_t anchor_word = bits::word_of(anchor);
    for (std::size_t i = 0; i < stride_; ++i) {
      Word w = last_row[i] & ~blocked[i];
      if (i < anchor_word) {
        w = 0;
      } else if (i == anchor_word) {
        w &= ~((bits::mask(anchor) << 1) - 1);
      }
      if (j >= 2) {
        if (!can_close) w &= ~anchor_row[i];
        if (!can_extend) w &= anchor_row[i];
      }
      cand[i] = w;
    }

    return bits::for_each(std::span<const Word>(cand), [&](Vertex x) {
      const bool closes = j >= 2 && g_.adjacent(anchor, x);
      if (closes) {
        if (x < path_[1]) return true;
        if (!pair_ok(x, 1, j - 1)) return true;
        count_expansion();
        path_.push_back(x);
        const bool more = keep_going(visit_, std::span<const Vertex>(path_));
        path_.pop_back();
        return more;
      }
      if (!pair_ok(x, 0, j - 1)) return true;
      count_expansion();
      // Next level blocks the closed neighbourhoods of v2..vj.
      auto next = level(blocked_, j + 1);
      if (j >= 2) {
        for (std::size_t i = 0; i < stride_; ++i) next[i] = blocked[i] | last_row[i];
        next[bits::word_of(last)] |= bits::mask(last);
      } else {
        std::fill(next.begin(), next.end(), Word{0});
      }
      path_.push_back(x);
      const bool more = extend();
      path_.pop_back();
      return more;
    });
  }

  const Graph& g_;
  std::size_t kmin_;
  std::size_t kmax_;
  Prune& prune_;
  Visit& visit_;
  std::uint64_t budget_;
  std::size_t stride_;
  std::uint64_t expansions_ = 0;
  std::vector<Vertex> path_;
  std::vector<Word> blocked_;
  std::vector<Word> candidates_;
};

}  // namespace detail

/// Streams every induced k-cycle of g in canonical form, lexicographically.
/// The visitor receives a span valid only for the duration of the call and
/// may return false to stop. Returns false iff stopped early.
template <typename Visit>
bool for_each_induced_cycle(const Graph& g, std::size_t k, Visit&& visit) {
  if (k < 3) throw Error(ErrorKind::InvalidParameter, "induced cycles need k >= 3");
  detail::AllowAllPairs allow;
  detail::InducedCycleDfs dfs(g, k, k, allow, visit, detail::kUnlimitedBudget);
  return dfs.run();
}

inline std::vector<CycleWitness> enumerate_induced_cycles(const Graph& g, std::size_t k) {
  std::vector<CycleWitness> out;
  for_each_induced_cycle(g, k, [&](std::span<const Vertex> c) {
    out.push_back({{c.begin(), c.end()}});
  });
  return out;
}

inline std::uint64_t count_induced_cycles(const Graph& g, std::size_t k) {
  std::uint64_t count = 0;
  for_each_induced_cycle(g, k, [&](std::span<const Vertex>) { ++count; });
  return count;
}

/// Streams every induced 4-cycle once. Each non-adjacent pair (u,w) with u
/// the square's minimum vertex contributes one square per non-adjacent pair
/// {x,y} of common neighbours above u; emission order is (u, w, x, y).
template <typename Visit>
bool for_each_induced_square(const Graph& g, Visit&& visit) {
  const std::size_t n = g.vertex_count();
  const std::size_t stride = g.words_per_row();
  std::vector<Word> common(stride);
  std::vector<Vertex> members;
  for (Vertex u = 0; u < n; ++u) {
    const auto ru = g.row(u);
    for (Vertex w = u + 1; w < n; ++w) {
      if (g.adjacent(u, w)) continue;
      const auto rw = g.row(w);
      bool any = false;
      for (std::size_t i = 0; i < stride; ++i) {
        common[i] = ru[i] & rw[i];
        any |= common[i] != 0;
      }
      if (!any) continue;
      // Only common neighbours above u, so that u is the square's minimum.
      const std::size_t uw = bits::word_of(u);
      for (std::size_t i = 0; i < uw; ++i) common[i] = 0;
      common[uw] &= ~((bits::mask(u) << 1) - 1);
      members.clear();
      bits::for_each(std::span<const Word>(common), [&](Vertex x) { members.push_back(x); });
      for (std::size_t a = 0; a < members.size(); ++a) {
        for (std::size_t b = a + 1; b < members.size(); ++b) {
          if (g.adjacent(members[a], members[b])) continue;
          const Square sq{{u, members[a], w, members[b]}};
          if (!detail::keep_going(visit, sq)) return false;
        }
      }
    }
  }
  return true;
}

inline std::vector<Square> enumerate_induced_squares(const Graph& g) {
  std::vector<Square> out;
  for_each_induced_square(g, [&](const Square& s) { out.push_back(s); });
  return out;
}

}  // namespace morsegraph
