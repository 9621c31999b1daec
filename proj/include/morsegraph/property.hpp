#pragma once

#include <charconv>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "morsegraph/cycles.hpp"
#include "morsegraph/error.hpp"
#include "morsegraph/graph.hpp"
#include "morsegraph/morse.hpp"
#include "morsegraph/pruned_search.hpp"
#include "morsegraph/square_graph.hpp"

namespace morsegraph {

enum class PropertyTag {
  MorsePentagonExists,
  MorseCycleExists,
  MorseSquareExists,
  SquareIsolatedExists,
  SquareGraphConnected,
  Cfs,
  InducedCycleCount,
  MorseCycleCount,
};

/// A graph property evaluated per trial. Cycle-length parameters live in
/// kmin/kmax; count properties use kmin == kmax == k.
struct PropertyKind {
  PropertyTag tag = PropertyTag::MorsePentagonExists;
  std::size_t kmin = 0;
  std::size_t kmax = 0;

  static PropertyKind morse_pentagon_exists() { return {PropertyTag::MorsePentagonExists, 5, 5}; }
  static PropertyKind morse_cycle_exists(std::size_t kmin, std::size_t kmax) {
    return checked({PropertyTag::MorseCycleExists, kmin, kmax});
  }
  static PropertyKind morse_square_exists() { return {PropertyTag::MorseSquareExists, 4, 4}; }
  static PropertyKind square_isolated_exists() { return {PropertyTag::SquareIsolatedExists, 0, 0}; }
  static PropertyKind square_graph_connected() { return {PropertyTag::SquareGraphConnected, 0, 0}; }
  static PropertyKind cfs() { return {PropertyTag::Cfs, 0, 0}; }
  static PropertyKind induced_cycle_count(std::size_t k) { return checked({PropertyTag::InducedCycleCount, k, k}); }
  static PropertyKind morse_cycle_count(std::size_t k) { return checked({PropertyTag::MorseCycleCount, k, k}); }

  bool is_count() const noexcept {
    return tag == PropertyTag::InducedCycleCount || tag == PropertyTag::MorseCycleCount;
  }

  std::string to_string() const {
    switch (tag) {
      case PropertyTag::MorsePentagonExists: return "morse-pentagon-exists";
      case PropertyTag::MorseCycleExists:
        return "morse-cycle-exists:" + std::to_string(kmin) + ":" + std::to_string(kmax);
      case PropertyTag::MorseSquareExists: return "morse-square-exists";
      case PropertyTag::SquareIsolatedExists: return "square-isolated-exists";
      case PropertyTag::SquareGraphConnected: return "square-graph-connected";
      case PropertyTag::Cfs: return "cfs";
      case PropertyTag::InducedCycleCount: return "induced-cycle-count:" + std::to_string(kmin);
      case PropertyTag::MorseCycleCount: return "morse-cycle-count:" + std::to_string(kmin);
    }
    return "unknown";
  }

  static PropertyKind parse(std::string_view text) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
      const auto colon = text.find(':', start);
      parts.push_back(text.substr(start, colon == std::string_view::npos ? std::string_view::npos : colon - start));
      if (colon == std::string_view::npos) break;
      start = colon + 1;
    }
    const auto name = parts.front();
    const auto expect_args = [&](std::size_t count) {
      if (parts.size() != count + 1) {
        throw Error(ErrorKind::ParseError, "property '" + std::string(text) + "' expects " +
                                               std::to_string(count) + " integer parameter(s)");
      }
    };
    const auto arg = [&](std::size_t i) {
      std::size_t value = 0;
      const auto s = parts[i];
      const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
      if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
        throw Error(ErrorKind::ParseError, "bad integer '" + std::string(s) + "' in property '" + std::string(text) + "'");
      }
      return value;
    };
    if (name == "morse-pentagon-exists") return expect_args(0), morse_pentagon_exists();
    if (name == "morse-cycle-exists") return expect_args(2), morse_cycle_exists(arg(1), arg(2));
    if (name == "morse-square-exists") return expect_args(0), morse_square_exists();
    if (name == "square-isolated-exists") return expect_args(0), square_isolated_exists();
    if (name == "square-graph-connected") return expect_args(0), square_graph_connected();
    if (name == "cfs") return expect_args(0), cfs();
    if (name == "induced-cycle-count") return expect_args(1), induced_cycle_count(arg(1));
    if (name == "morse-cycle-count") return expect_args(1), morse_cycle_count(arg(1));
    throw Error(ErrorKind::ParseError, "unknown property '" + std::string(text) + "'");
  }

  friend bool operator==(const PropertyKind&, const PropertyKind&) = default;

 private:
  static PropertyKind checked(PropertyKind p) {
    switch (p.tag) {
      case PropertyTag::MorseCycleExists:
        if (p.kmin < 4 || p.kmin > p.kmax) throw Error(ErrorKind::InvalidParameter, "need 4 <= kmin <= kmax");
        break;
      case PropertyTag::InducedCycleCount:
        if (p.kmin < 3) throw Error(ErrorKind::InvalidParameter, "induced cycle counts need k >= 3");
        break;
      case PropertyTag::MorseCycleCount:
        if (p.kmin < 4) throw Error(ErrorKind::InvalidParameter, "Morse cycle counts need k >= 4");
        break;
      default: break;
    }
    return p;
  }
};

using OutcomeValue = std::variant<bool, std::uint64_t>;

struct PropertyOutcome {
  OutcomeValue value = false;
  std::optional<CycleWitness> witness;
  // Set for square-graph properties when the host has no induced squares.
  bool empty_square_graph = false;
};

struct EvaluationLimits {
  std::uint64_t search_budget = kDefaultSearchBudget;
  std::size_t square_cap = kDefaultSquareCap;
};

inline double outcome_as_number(const OutcomeValue& v) {
  return std::visit([](auto x) { return static_cast<double>(x); }, v);
}

inline PropertyOutcome evaluate_property(const Graph& g, const PropertyKind& property, EvaluationLimits limits = {}) {
  PropertyOutcome out;
  const auto exists = [&](std::optional<CycleWitness> w) {
    out.value = w.has_value();
    out.witness = std::move(w);
  };
  switch (property.tag) {
    case PropertyTag::MorsePentagonExists:
      exists(morse_pruned_cycle_search(g, 5, 5, {limits.search_budget}));
      break;
    case PropertyTag::MorseCycleExists:
      exists(morse_pruned_cycle_search(g, property.kmin, property.kmax, {limits.search_budget}));
      break;
    case PropertyTag::MorseSquareExists:
      exists(morse_pruned_cycle_search(g, 4, 4, {limits.search_budget}));
      break;
    case PropertyTag::SquareIsolatedExists: {
      const auto sq = build_square_graph(g, limits.square_cap);
      out.empty_square_graph = sq.empty();
      std::optional<CycleWitness> w;
      for (std::size_t i = 0; i < sq.size() && !w; ++i) {
        if (sq.degree(i) == 0) w = sq.square(i).witness();
      }
      exists(std::move(w));
      break;
    }
    case PropertyTag::SquareGraphConnected: {
      const auto sq = build_square_graph(g, limits.square_cap);
      out.empty_square_graph = sq.empty();
      out.value = is_square_graph_connected(sq);
      break;
    }
    case PropertyTag::Cfs: {
      const auto sq = build_square_graph(g, limits.square_cap);
      out.empty_square_graph = sq.empty();
      out.value = is_cfs(g, sq);
      break;
    }
    case PropertyTag::InducedCycleCount:
      out.value = count_induced_cycles(g, property.kmin);
      break;
    case PropertyTag::MorseCycleCount:
      out.value = count_morse_cycles(g, property.kmin);
      break;
  }
  return out;
}

}  // namespace morsegraph
