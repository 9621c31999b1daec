#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "morsegraph/error.hpp"

namespace morsegraph {

using Vertex = std::uint32_t;
using Word = std::uint64_t;

struct Edge {
  Vertex u;
  Vertex v;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

namespace bits {

inline constexpr std::size_t kWordBits = 64;

constexpr std::size_t words_for(std::size_t n) { return (n + kWordBits - 1) / kWordBits; }

constexpr Word mask(Vertex v) { return Word{1} << (v % kWordBits); }

constexpr std::size_t word_of(Vertex v) { return v / kWordBits; }

inline bool test(std::span<const Word> row, Vertex v) {
  return (row[word_of(v)] & mask(v)) != 0;
}

inline std::size_t count(std::span<const Word> row) {
  std::size_t total = 0;
  for (Word w : row) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

inline bool none(std::span<const Word> row) {
  return std::all_of(row.begin(), row.end(), [](Word w) { return w == 0; });
}

// Calls f(v) for every set bit in ascending order; f may return false to stop.
template <typename F>
bool for_each(std::span<const Word> row, F&& f) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    Word w = row[i];
    while (w != 0) {
      const auto bit = static_cast<std::size_t>(std::countr_zero(w));
      w &= w - 1;
      const auto v = static_cast<Vertex>(i * kWordBits + bit);
      if constexpr (std::is_same_v<decltype(f(v)), bool>) {
        if (!f(v)) return false;
      } else {
        f(v);
      }
    }
  }
  return true;
}

}  // namespace bits

/// A subset of {0..universe-1} stored as a bitset.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::size_t universe) : universe_(universe), words_(bits::words_for(universe), 0) {}

  VertexSet(std::size_t universe, std::initializer_list<Vertex> members) : VertexSet(universe) {
    for (Vertex v : members) insert(v);
  }

  VertexSet(std::size_t universe, std::span<const Vertex> members) : VertexSet(universe) {
    for (Vertex v : members) insert(v);
  }

  static VertexSet from_words(std::size_t universe, std::span<const Word> words) {
    VertexSet s(universe);
    std::copy(words.begin(), words.end(), s.words_.begin());
    return s;
  }

  static VertexSet full(std::size_t universe) {
    VertexSet s(universe);
    for (Vertex v = 0; v < universe; ++v) s.insert(v);
    return s;
  }

  std::size_t universe() const noexcept { return universe_; }

  bool contains(Vertex v) const noexcept { return v < universe_ && bits::test(words_, v); }

  void insert(Vertex v) {
    if (v >= universe_) {
      throw Error(ErrorKind::VertexOutOfRange,
                  "vertex " + std::to_string(v) + " outside universe of size " + std::to_string(universe_));
    }
    words_[bits::word_of(v)] |= bits::mask(v);
  }

  void erase(Vertex v) noexcept {
    if (v < universe_) words_[bits::word_of(v)] &= ~bits::mask(v);
  }

  std::size_t size() const noexcept { return bits::count(words_); }
  bool empty() const noexcept { return bits::none(words_); }

  std::vector<Vertex> members() const {
    std::vector<Vertex> out;
    out.reserve(size());
    bits::for_each(words_, [&](Vertex v) { out.push_back(v); });
    return out;
  }

  template <typename F>
  bool for_each(F&& f) const {
    return bits::for_each(words_, std::forward<F>(f));
  }

  std::span<const Word> words() const noexcept { return words_; }
  std::span<Word> words() noexcept { return words_; }

  VertexSet& operator&=(const VertexSet& other) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
    return *this;
  }
  VertexSet& operator|=(const VertexSet& other) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
    return *this;
  }
  VertexSet& operator-=(const VertexSet& other) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~other.words_[i];
    return *this;
  }

  friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
  friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
  friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }
  friend bool operator==(const VertexSet&, const VertexSet&) = default;

 private:
  std::size_t universe_ = 0;
  std::vector<Word> words_;
};

/// Immutable simplicial graph on vertices 0..n-1. Each vertex owns one
/// fixed-width row of adjacency bits; rows are symmetric and carry no loops.
class Graph {
 public:
  Graph() = default;

  std::size_t vertex_count() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return m_; }
  std::size_t words_per_row() const noexcept { return stride_; }

  std::span<const Word> row(Vertex v) const noexcept { return {rows_.data() + v * stride_, stride_}; }

  bool adjacent(Vertex u, Vertex v) const noexcept { return bits::test(row(u), v); }

  VertexSet link(Vertex v) const {
    check_vertex(v);
    return VertexSet::from_words(n_, row(v));
  }

  VertexSet common_neighbors(Vertex u, Vertex w) const {
    check_vertex(u);
    check_vertex(w);
    if (u == w) throw Error(ErrorKind::InvalidPair, "common_neighbors needs two distinct vertices");
    VertexSet out(n_);
    auto dst = out.words();
    const auto a = row(u);
    const auto b = row(w);
    for (std::size_t i = 0; i < stride_; ++i) dst[i] = a[i] & b[i];
    return out;
  }

  /// True iff every pair in s is adjacent; vacuous for |s| <= 1.
  bool is_clique(const VertexSet& s) const { return is_clique(s.words()); }

  bool is_clique(std::span<const Word> s) const {
    return bits::for_each(s, [&](Vertex v) {
      const auto r = row(v);
      for (std::size_t i = 0; i < stride_; ++i) {
        Word missing = s[i] & ~r[i];
        if (i == bits::word_of(v)) missing &= ~bits::mask(v);
        if (missing != 0) return false;
      }
      return true;
    });
  }

  bool is_induced_square(Vertex a, Vertex b, Vertex c, Vertex d) const {
    for (Vertex v : {a, b, c, d}) check_vertex(v);
    if (a == b || a == c || a == d || b == c || b == d || c == d) {
      throw Error(ErrorKind::InvalidQuad, "square corners must be four distinct vertices");
    }
    return adjacent(a, b) && adjacent(b, c) && adjacent(c, d) && adjacent(d, a) && !adjacent(a, c) &&
           !adjacent(b, d);
  }

  /// Edges with u < v in lexicographic order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(m_);
    for (Vertex u = 0; u < n_; ++u) {
      bits::for_each(row(u), [&](Vertex v) {
        if (u < v) out.push_back({u, v});
      });
    }
    return out;
  }

  void check_vertex(Vertex v) const {
    if (v >= n_) {
      throw Error(ErrorKind::VertexOutOfRange,
                  "vertex " + std::to_string(v) + " >= n=" + std::to_string(n_));
    }
  }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  friend class GraphBuilder;

  std::size_t n_ = 0;
  std::size_t m_ = 0;
  std::size_t stride_ = 0;
  std::vector<Word> rows_;
};

/// Accumulates edges and freezes them into a Graph. Duplicate edges collapse.
class GraphBuilder {
 public:
  explicit GraphBuilder(std::size_t n) {
    g_.n_ = n;
    g_.stride_ = bits::words_for(n);
    g_.rows_.assign(n * g_.stride_, 0);
  }

  GraphBuilder& add_edge(Vertex u, Vertex v) {
    if (u >= g_.n_ || v >= g_.n_) {
      throw Error(ErrorKind::VertexOutOfRange, "edge (" + std::to_string(u) + "," + std::to_string(v) +
                                                   ") has an endpoint >= n=" + std::to_string(g_.n_));
    }
    if (u == v) throw Error(ErrorKind::InvalidEdge, "self-loop at vertex " + std::to_string(u));
    add_edge_unchecked(u, v);
    return *this;
  }

  // Caller guarantees u != v and both < n.
  void add_edge_unchecked(Vertex u, Vertex v) noexcept {
    Word& cell = g_.rows_[u * g_.stride_ + bits::word_of(v)];
    if ((cell & bits::mask(v)) != 0) return;
    cell |= bits::mask(v);
    g_.rows_[v * g_.stride_ + bits::word_of(u)] |= bits::mask(u);
    ++g_.m_;
  }

  Graph finish() && { return std::move(g_); }

 private:
  Graph g_;
};

inline Graph build_graph(std::size_t n, std::span<const Edge> edges) {
  GraphBuilder builder(n);
  for (const Edge& e : edges) builder.add_edge(e.u, e.v);
  return std::move(builder).finish();
}

inline Graph build_graph(std::size_t n, std::initializer_list<Edge> edges) {
  return build_graph(n, std::span<const Edge>(edges.begin(), edges.size()));
}

/// Induced subgraph edge count on s; used by clique sanity checks.
inline std::size_t induced_edge_count(const Graph& g, const VertexSet& s) {
  std::size_t twice = 0;
  s.for_each([&](Vertex v) {
    const auto r = g.row(v);
    const auto w = s.words();
    for (std::size_t i = 0; i < r.size(); ++i) twice += static_cast<std::size_t>(std::popcount(r[i] & w[i]));
  });
  return twice / 2;
}

}  // namespace morsegraph
