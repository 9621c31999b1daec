#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <fstream>
#include <memory>
#include <mutex>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "morsegraph/cycles.hpp"
#include "morsegraph/error.hpp"
#include "morsegraph/graph.hpp"

// Two induced squares are adjacent in the square graph iff their
// intersection contains a non-adjacent pair of the host. A non-adjacent pair
// inside an induced square is necessarily one of its diagonals, so this is
// the same as sharing a diagonal. The square graph is therefore stored as a
// bucket per diagonal; adjacency inside a bucket is complete.

namespace morsegraph {

inline constexpr std::size_t kDefaultSquareCap = 10'000'000;

struct SquareComponent {
  std::vector<std::uint32_t> squares;
  VertexSet support;
};

class SquareGraph {
 public:
  SquareGraph() : memo_(std::make_unique<Memo>()) {}

  std::size_t host_vertex_count() const noexcept { return host_n_; }
  std::size_t size() const noexcept { return squares_.size(); }
  bool empty() const noexcept { return squares_.empty(); }
  std::span<const Square> squares() const noexcept { return squares_; }
  const Square& square(std::size_t i) const { return squares_.at(i); }

  std::size_t diagonal_count() const noexcept { return diagonals_.size(); }
  std::span<const Edge> diagonals() const noexcept { return diagonals_; }

  /// Square indices having `diagonal` (u < v) as a diagonal; empty if none.
  std::span<const std::uint32_t> bucket(Edge diagonal) const {
    const auto it = std::lower_bound(diagonals_.begin(), diagonals_.end(), diagonal);
    if (it == diagonals_.end() || *it != diagonal) return {};
    return bucket_at(static_cast<std::size_t>(it - diagonals_.begin()));
  }

  std::span<const std::uint32_t> bucket_at(std::size_t id) const {
    return {members_.data() + offsets_[id], offsets_[id + 1] - offsets_[id]};
  }

  /// The two bucket ids of square i, matching Square::diagonal(0) and (1).
  const std::array<std::uint32_t, 2>& buckets_of(std::size_t i) const { return square_buckets_.at(i); }

  bool adjacent(std::size_t i, std::size_t j) const {
    if (i == j) return false;
    const auto& a = square_buckets_.at(i);
    const auto& b = square_buckets_.at(j);
    return a[0] == b[0] || a[0] == b[1] || a[1] == b[0] || a[1] == b[1];
  }

  std::size_t degree(std::size_t i) const {
    const auto& b = square_buckets_.at(i);
    return bucket_at(b[0]).size() + bucket_at(b[1]).size() - 2;
  }

  /// Squares both of whose diagonal buckets hold only themselves.
  std::size_t isolated_count() const {
    std::size_t count = 0;
    for (std::size_t i = 0; i < squares_.size(); ++i) count += degree(i) == 0 ? 1 : 0;
    return count;
  }

  /// Connected components ordered by their smallest square index. Computed
  /// once, on first use, by uniting each diagonal bucket through union-find.
  const std::vector<SquareComponent>& components() const {
    std::call_once(memo_->once, [this] { memo_->components = compute_components(); });
    return memo_->components;
  }

 private:
  friend SquareGraph build_square_graph(const Graph& g, std::size_t cap);

  struct Memo {
    std::once_flag once;
    std::vector<SquareComponent> components;
  };

  std::vector<SquareComponent> compute_components() const {
    std::vector<std::uint32_t> parent(squares_.size());
    std::iota(parent.begin(), parent.end(), 0U);
    auto find = [&](std::uint32_t x) {
      while (parent[x] != x) {
        parent[x] = parent[parent[x]];
        x = parent[x];
      }
      return x;
    };
    for (std::size_t id = 0; id < diagonals_.size(); ++id) {
      const auto members = bucket_at(id);
      for (std::size_t t = 1; t < members.size(); ++t) {
        const auto a = find(members[0]);
        const auto b = find(members[t]);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
    std::vector<SquareComponent> out;
    std::vector<std::uint32_t> slot(squares_.size(), ~0U);
    for (std::uint32_t i = 0; i < squares_.size(); ++i) {
      const auto root = find(i);
      if (slot[root] == ~0U) {
        slot[root] = static_cast<std::uint32_t>(out.size());
        out.push_back({{}, VertexSet(host_n_)});
      }
      auto& comp = out[slot[root]];
      comp.squares.push_back(i);
      for (Vertex v : squares_[i].v) comp.support.insert(v);
    }
    return out;
  }

  std::size_t host_n_ = 0;
  std::vector<Square> squares_;
  std::vector<Edge> diagonals_;
  std::vector<std::size_t> offsets_;
  std::vector<std::uint32_t> members_;
  std::vector<std::array<std::uint32_t, 2>> square_buckets_;
  std::unique_ptr<Memo> memo_;
};

/// Builds the square graph: all induced squares in lexicographic order plus
/// the diagonal index. Throws CapacityExceeded past `cap` squares.
inline SquareGraph build_square_graph(const Graph& g, std::size_t cap = kDefaultSquareCap) {
  SquareGraph sq;
  sq.host_n_ = g.vertex_count();
  for_each_induced_square(g, [&](const Square& s) {
    if (sq.squares_.size() >= cap) {
      throw Error(ErrorKind::CapacityExceeded, "more than " + std::to_string(cap) + " induced squares");
    }
    sq.squares_.push_back(s);
  });
  std::sort(sq.squares_.begin(), sq.squares_.end());

  struct Entry {
    Edge diagonal;
    std::uint32_t square;
    int which;
  };
  std::vector<Entry> entries;
  entries.reserve(sq.squares_.size() * 2);
  for (std::uint32_t i = 0; i < sq.squares_.size(); ++i) {
    entries.push_back({sq.squares_[i].diagonal(0), i, 0});
    entries.push_back({sq.squares_[i].diagonal(1), i, 1});
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return a.diagonal != b.diagonal ? a.diagonal < b.diagonal : a.square < b.square;
  });
  sq.square_buckets_.resize(sq.squares_.size());
  sq.members_.reserve(entries.size());
  for (const Entry& e : entries) {
    if (sq.diagonals_.empty() || sq.diagonals_.back() != e.diagonal) {
      sq.diagonals_.push_back(e.diagonal);
      sq.offsets_.push_back(sq.members_.size());
    }
    sq.square_buckets_[e.square][static_cast<std::size_t>(e.which)] =
        static_cast<std::uint32_t>(sq.diagonals_.size() - 1);
    sq.members_.push_back(e.square);
  }
  sq.offsets_.push_back(sq.members_.size());
  return sq;
}

inline std::size_t isolated_count(const SquareGraph& sq) { return sq.isolated_count(); }

inline const std::vector<SquareComponent>& components(const SquareGraph& sq) { return sq.components(); }

/// Some component's squares cover every vertex of g. An empty host or an
/// empty square graph is never CFS.
inline bool is_cfs(const Graph& g, const SquareGraph& sq) {
  if (g.vertex_count() == 0) return false;
  const std::size_t n = g.vertex_count();
  const auto& comps = sq.components();
  return std::any_of(comps.begin(), comps.end(), [&](const SquareComponent& c) { return c.support.size() == n; });
}

/// Exactly one component. The empty square graph counts as not connected;
/// check SquareGraph::empty() to tell the two apart.
inline bool is_square_graph_connected(const SquareGraph& sq) { return sq.components().size() == 1; }

/// Square-graph edges (i < j) in lexicographic order.
inline std::vector<Edge> square_graph_edges(const SquareGraph& sq) {
  std::vector<Edge> out;
  for (std::size_t id = 0; id < sq.diagonal_count(); ++id) {
    const auto members = sq.bucket_at(id);
    for (std::size_t a = 0; a < members.size(); ++a) {
      for (std::size_t b = a + 1; b < members.size(); ++b) out.push_back({members[a], members[b]});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Writes the square graph as an edge list at `path` and the square index
/// (index -> four host vertices) as JSON at `path + ".json"`.
inline void dump_square_graph(const SquareGraph& sq, const std::string& path) {
  {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::IoError, "cannot open '" + path + "' for writing");
    const auto edges = square_graph_edges(sq);
    out << sq.size() << ' ' << edges.size() << '\n';
    for (const Edge& e : edges) out << e.u << ' ' << e.v << '\n';
    if (!out) throw Error(ErrorKind::IoError, "write to '" + path + "' failed");
  }
  nlohmann::ordered_json doc;
  doc["host_vertices"] = sq.host_vertex_count();
  auto& list = doc["squares"] = nlohmann::ordered_json::array();
  for (const Square& s : sq.squares()) list.push_back({s.v[0], s.v[1], s.v[2], s.v[3]});
  std::ofstream out(path + ".json", std::ios::binary);
  if (!out) throw Error(ErrorKind::IoError, "cannot open '" + path + ".json' for writing");
  out << doc.dump() << '\n';
}

}  // namespace morsegraph
