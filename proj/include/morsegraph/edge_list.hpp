#pragma once

#include <cstdint>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include "morsegraph/error.hpp"
#include "morsegraph/graph.hpp"

// Edge-list text format: a header line "n m" followed by m lines "u v".
// Writers emit u < v in lexicographic order, LF-terminated. Readers accept
// any order and either orientation of each pair.

namespace morsegraph {

inline void write_edge_list(std::ostream& out, const Graph& g) {
  out << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

inline std::string to_edge_list(const Graph& g) {
  std::ostringstream out;
  write_edge_list(out, g);
  return out.str();
}

namespace detail {

inline bool next_line(std::istream& in, std::string& line, std::size_t& line_no) {
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") != std::string::npos) return true;
  }
  return false;
}

inline std::uint64_t parse_two(const std::string& line, std::size_t line_no, std::uint64_t& second) {
  std::istringstream fields(line);
  std::int64_t a = -1;
  std::int64_t b = -1;
  std::string extra;
  if (!(fields >> a >> b) || (fields >> extra) || a < 0 || b < 0) {
    throw Error(ErrorKind::ParseError,
                "line " + std::to_string(line_no) + ": expected two non-negative integers, got '" + line + "'");
  }
  second = static_cast<std::uint64_t>(b);
  return static_cast<std::uint64_t>(a);
}

}  // namespace detail

inline Graph read_edge_list(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!detail::next_line(in, line, line_no)) throw Error(ErrorKind::ParseError, "empty edge list");
  std::uint64_t m = 0;
  const std::uint64_t n = detail::parse_two(line, line_no, m);
  if (n > std::numeric_limits<Vertex>::max()) throw Error(ErrorKind::ParseError, "vertex count too large");

  GraphBuilder builder(static_cast<std::size_t>(n));
  for (std::uint64_t i = 0; i < m; ++i) {
    if (!detail::next_line(in, line, line_no)) {
      throw Error(ErrorKind::ParseError,
                  "expected " + std::to_string(m) + " edges, found " + std::to_string(i));
    }
    std::uint64_t v = 0;
    const std::uint64_t u = detail::parse_two(line, line_no, v);
    if (u >= n || v >= n) {
      throw Error(ErrorKind::VertexOutOfRange, "line " + std::to_string(line_no) + ": endpoint >= n");
    }
    builder.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  if (detail::next_line(in, line, line_no)) {
    throw Error(ErrorKind::ParseError, "trailing content after " + std::to_string(m) + " edges");
  }
  return std::move(builder).finish();
}

inline Graph parse_edge_list(const std::string& text) {
  std::istringstream in(text);
  return read_edge_list(in);
}

inline Graph load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot open '" + path + "' for reading");
  return read_edge_list(in);
}

inline void save_edge_list(const std::string& path, const Graph& g) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::IoError, "cannot open '" + path + "' for writing");
  write_edge_list(out, g);
  if (!out) throw Error(ErrorKind::IoError, "write to '" + path + "' failed");
}

}  // namespace morsegraph
