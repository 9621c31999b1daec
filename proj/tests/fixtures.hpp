#pragma once

#include <algorithm>
#include <numeric>
#include <set>
#include <vector>

#include "morsegraph/graph.hpp"

namespace morsegraph::testing {

inline Graph path_graph(std::size_t n) {
  GraphBuilder b(n);
  for (Vertex v = 0; v + 1 < n; ++v) b.add_edge(v, v + 1);
  return std::move(b).finish();
}

inline Graph cycle_graph(std::size_t n) {
  GraphBuilder b(n);
  for (Vertex v = 0; v < n; ++v) b.add_edge(v, static_cast<Vertex>((v + 1) % n));
  return std::move(b).finish();
}

inline Graph complete_graph(std::size_t n) {
  GraphBuilder b(n);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) b.add_edge(u, v);
  }
  return std::move(b).finish();
}

inline Graph edgeless_graph(std::size_t n) { return GraphBuilder(n).finish(); }

inline Graph petersen_graph() {
  GraphBuilder b(10);
  for (Vertex i = 0; i < 5; ++i) {
    b.add_edge(i, (i + 1) % 5);              // outer pentagon
    b.add_edge(i, i + 5);                    // spokes
    b.add_edge(i + 5, (i + 2) % 5 + 5);      // inner pentagram
  }
  return std::move(b).finish();
}

// Parts {0,1} and {2,3,4}.
inline Graph k23() {
  GraphBuilder b(5);
  for (Vertex a : {0U, 1U}) {
    for (Vertex x : {2U, 3U, 4U}) b.add_edge(a, x);
  }
  return std::move(b).finish();
}

// Pentagon 0..4 with an apex 5 joined to `a` and `b`.
inline Graph pentagon_with_apex(Vertex a, Vertex b) {
  GraphBuilder builder(6);
  for (Vertex v = 0; v < 5; ++v) builder.add_edge(v, (v + 1) % 5);
  builder.add_edge(5, a);
  builder.add_edge(5, b);
  return std::move(builder).finish();
}

// Apex on two vertices at distance two: the pentagon is not Morse.
inline Graph figure_non_morse() { return pentagon_with_apex(0, 2); }
// Apex on two adjacent vertices: the pentagon stays Morse.
inline Graph figure_morse() { return pentagon_with_apex(0, 1); }

inline Graph two_disjoint_squares() {
  GraphBuilder b(8);
  for (Vertex base : {0U, 4U}) {
    for (Vertex i = 0; i < 4; ++i) b.add_edge(base + i, base + (i + 1) % 4);
  }
  return std::move(b).finish();
}

}  // namespace morsegraph::testing
