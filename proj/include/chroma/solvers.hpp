#pragma once

// Exact and bounded solvers for chromatic number, clique number and
// independence number on materialized graphs.
//
// chromatic_number runs DSATUR branch-and-bound: the vertex with the most
// distinct neighbor colors is branched on next, ties broken by larger degree
// and then by lower index, so runs are reproducible. A maximum clique gives
// the lower bound and is precolored to break color symmetry.

#include "chroma/graph.hpp"

#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

namespace chroma {

struct SolverBudget {
  std::uint64_t max_nodes = 0;               // 0 means unlimited
  std::chrono::milliseconds time_limit{0};   // 0 means unlimited
  std::size_t vertex_cap = 2000;             // exact search refused above this
};

struct ChromaticResult {
  int lower = 0;
  int upper = 0;
  /// True when lower == upper was established, i.e. the search for an
  /// (upper - 1)-coloring was exhausted or a clique of size upper was found.
  bool exact = false;
  std::string status;  // "exact", "budget" or "vertex-cap"
  Coloring coloring;   // proper coloring with `upper` colors
  std::vector<std::size_t> clique;  // largest clique seen; equals `lower` unless the search proved more
  std::uint64_t nodes = 0;
};

struct IndependenceResult {
  int lower = 0;
  int upper = 0;
  bool exact = false;
  std::string status;
  std::vector<std::size_t> set;  // independent set of size `lower`
  std::uint64_t nodes = 0;
};

struct CliqueResult {
  std::vector<std::size_t> clique;
  int upper = 0;  // coloring bound on the clique number
  bool exact = false;
  std::uint64_t nodes = 0;
};

struct GreedyBounds {
  int clique_lower = 0;
  int dsatur_upper = 0;
  std::vector<std::size_t> clique;
  Coloring coloring;
};

ChromaticResult chromatic_number(const DenseGraph& g, const SolverBudget& budget = {});
IndependenceResult independence_number(const DenseGraph& g, const SolverBudget& budget = {});
CliqueResult max_clique(const DenseGraph& g, const SolverBudget& budget = {});

/// First-fit clique from a handful of starting vertices; a certified lower
/// bound on the chromatic number.
std::vector<std::size_t> greedy_clique(const DenseGraph& g);

/// Greedy clique plus one DSATUR pass; clique_lower <= chi <= dsatur_upper.
GreedyBounds greedy_bounds(const DenseGraph& g);

/// Single greedy DSATUR coloring (same tie-breaking as the exact search).
Coloring dsatur_coloring(const DenseGraph& g);

/// Colors vertices in index order with the smallest free color.
Coloring greedy_coloring(const DenseGraph& g);

}  // namespace chroma
