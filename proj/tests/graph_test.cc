#include "chroma/errors.hpp"
#include "chroma/graph.hpp"
#include "chroma/solvers.hpp"

#include <gtest/gtest.h>

#include <random>
#include <sstream>

namespace chroma {
namespace {

// Exhaustive oracles, deliberately naive.
bool colorable(const DenseGraph& g, int k, std::vector<int>& colors, std::size_t v) {
  if (v == g.size()) return true;
  for (int c = 0; c < k; ++c) {
    bool free = true;
    for (std::size_t u = 0; u < v && free; ++u) free = !(g.adjacent(u, v) && colors[u] == c);
    if (!free) continue;
    colors[v] = c;
    if (colorable(g, k, colors, v + 1)) return true;
  }
  return false;
}

int oracle_chi(const DenseGraph& g) {
  for (int k = 1;; ++k) {
    std::vector<int> colors(g.size(), -1);
    if (colorable(g, k, colors, 0)) return k;
  }
}

int oracle_alpha(const DenseGraph& g) {
  int best = 0;
  for (std::uint32_t mask = 0; mask < (1u << g.size()); ++mask) {
    bool ok = true;
    for (std::size_t u = 0; u < g.size() && ok; ++u) {
      if (!(mask >> u & 1)) continue;
      for (std::size_t v = u + 1; v < g.size() && ok; ++v) ok = !((mask >> v & 1) && g.adjacent(u, v));
    }
    if (ok) best = std::max(best, __builtin_popcount(mask));
  }
  return best;
}

DenseGraph random_graph(std::size_t n, double density, std::mt19937_64& rng) {
  DenseGraph g(n);
  std::bernoulli_distribution edge(density);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      if (edge(rng)) g.add_edge(u, v);
    }
  }
  return g;
}

TEST(DenseGraph, Basics) {
  DenseGraph g(4);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(2, 2);  // loops ignored
  EXPECT_EQ(g.edge_count(), 2u);
  EXPECT_TRUE(g.adjacent(1, 0));
  EXPECT_FALSE(g.adjacent(2, 2));
  EXPECT_EQ(g.degree(1), 2u);
  EXPECT_EQ(g.complement().edge_count(), 4u);
  EXPECT_THROW(DenseGraph(kMaxMaterializedVertices + 1), CapExceeded);
}

TEST(DenseGraph, DimacsRoundTrip) {
  const auto p = petersen_graph();
  std::stringstream ss;
  write_dimacs(ss, p, "petersen");
  EXPECT_NE(ss.str().find("p edge 10 15"), std::string::npos);
  EXPECT_EQ(read_dimacs(ss), p);
  std::stringstream bad("p edge 3 1\ne 1 4\n");
  EXPECT_THROW(read_dimacs(bad), ParseError);
}

TEST(DenseGraph, CnfShape) {
  std::stringstream ss;
  write_coloring_cnf(ss, cycle_graph(5), 3);
  std::string line;
  std::getline(ss, line);
  EXPECT_EQ(line.front(), 'c');
  std::string p, cnf;
  int vars = 0, clauses = 0;
  ss >> p >> cnf >> vars >> clauses;
  EXPECT_EQ(vars, 15);
  // 5 at-least-one + 5*3 at-most-one + 5 edges * 3 colors
  EXPECT_EQ(clauses, 5 + 15 + 15);
}

TEST(Chromatic, SmallExamples) {
  EXPECT_EQ(chromatic_number(cycle_graph(5)).upper, 3);
  EXPECT_EQ(chromatic_number(complete_graph(5)).upper, 5);
  const auto pet = chromatic_number(petersen_graph());
  EXPECT_TRUE(pet.exact);
  EXPECT_EQ(pet.upper, 3);
  EXPECT_TRUE(is_proper(petersen_graph(), pet.coloring));
  EXPECT_EQ(chromatic_number(DenseGraph(3)).upper, 1);
  EXPECT_EQ(chromatic_number(DenseGraph(0)).upper, 0);
}

TEST(Chromatic, MatchesOracleOnRandomGraphs) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 60; ++t) {
    const auto g = random_graph(6 + t % 7, 0.2 + 0.1 * (t % 6), rng);
    const auto res = chromatic_number(g);
    ASSERT_TRUE(res.exact);
    EXPECT_EQ(res.upper, oracle_chi(g));
    EXPECT_TRUE(is_proper(g, res.coloring));
    EXPECT_TRUE(is_clique(g, res.clique));
    EXPECT_LE(static_cast<int>(res.clique.size()), res.lower);
    const auto gb = greedy_bounds(g);
    EXPECT_LE(gb.clique_lower, res.upper);
    EXPECT_GE(gb.dsatur_upper, res.upper);
  }
}

TEST(Independence, MatchesOracle) {
  EXPECT_EQ(independence_number(cycle_graph(5)).lower, 2);
  EXPECT_EQ(independence_number(complete_graph(5)).lower, 1);
  // Frozen: exhaustive search over all 2^10 subsets.
  EXPECT_EQ(independence_number(petersen_graph()).lower, 4);
  EXPECT_EQ(oracle_alpha(petersen_graph()), 4);
  std::mt19937_64 rng(2);
  for (int t = 0; t < 40; ++t) {
    const auto g = random_graph(8 + t % 8, 0.3 + 0.05 * (t % 5), rng);
    const auto res = independence_number(g);
    ASSERT_TRUE(res.exact);
    EXPECT_EQ(res.lower, oracle_alpha(g));
    EXPECT_TRUE(is_independent(g, res.set));
  }
}

TEST(Budget, ReportsAnIntervalWhenExhausted) {
  std::mt19937_64 rng(3);
  const auto g = random_graph(120, 0.5, rng);
  SolverBudget b;
  b.max_nodes = 50;
  const auto res = chromatic_number(g, b);
  EXPECT_EQ(res.status, "budget");
  EXPECT_FALSE(res.exact);
  EXPECT_LE(res.lower, res.upper);
  EXPECT_TRUE(is_proper(g, res.coloring));

  SolverBudget small;
  small.vertex_cap = 10;
  const auto capped = chromatic_number(g, small);
  EXPECT_EQ(capped.status, "vertex-cap");
  EXPECT_TRUE(is_proper(g, capped.coloring));
}

TEST(Greedy, CliqueIsACliqueAndColoringsAreProper) {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 20; ++t) {
    const auto g = random_graph(60, 0.4, rng);
    EXPECT_TRUE(is_clique(g, greedy_clique(g)));
    EXPECT_TRUE(is_proper(g, dsatur_coloring(g)));
    EXPECT_TRUE(is_proper(g, greedy_coloring(g)));
  }
  EXPECT_EQ(greedy_clique(complete_graph(40)).size(), 40u);
  const auto k5 = greedy_bounds(complete_graph(5));
  EXPECT_EQ(k5.clique_lower, 5);
  EXPECT_EQ(k5.dsatur_upper, 5);
}

}  // namespace
}  // namespace chroma
