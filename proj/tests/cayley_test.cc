#include "chroma/cayley.hpp"
#include "chroma/solvers.hpp"

#include <gtest/gtest.h>

#include <random>

namespace chroma {
namespace {

TEST(Cayley, CycleAndComplete) {
  const auto z5 = GroupSpec::cyclic(5);
  const auto cycle = build_cayley(ElementSet::from_indices(z5, std::vector<Index>{1})).materialize();
  EXPECT_EQ(cycle, cycle_graph(5));
  const auto k5 = build_cayley(ElementSet::from_indices(z5, std::vector<Index>{1, 2})).materialize();
  EXPECT_EQ(k5, complete_graph(5));
}

TEST(Cayley, ThreeTrianglesInZ3Squared) {
  const auto g = GroupSpec::power(3, 2);
  const CayleyView view(ElementSet::from_elements(g, std::vector<GroupElement>{g.element({1, 0})}));
  const auto graph = view.materialize();
  EXPECT_EQ(graph.edge_count(), 9u);
  // u ~ v exactly when the second coordinates agree.
  for (Index u = 0; u < 9; ++u) {
    for (Index v = 0; v < 9; ++v) {
      EXPECT_EQ(graph.adjacent(u, v), u != v && g.element_at(u)[1] == g.element_at(v)[1]);
    }
  }
  EXPECT_EQ(chromatic_number(graph).upper, 3);
  EXPECT_EQ(independence_number(graph).lower, 3);
}

TEST(Cayley, ZeroIsStripped) {
  const auto z7 = GroupSpec::cyclic(7);
  const CayleyView view(ElementSet::from_indices(z7, std::vector<Index>{0, 2}));
  EXPECT_TRUE(view.stripped_zero());
  EXPECT_FALSE(view.in_symmetric(0));
  EXPECT_EQ(view.symmetric_connection().members(), (std::vector<Index>{2, 5}));
  EXPECT_EQ(view.degree(), 2u);
}

TEST(Cayley, ImplicitModeAgreesWithExplicit) {
  const auto g = make_group({4, 5});
  std::mt19937_64 rng(9);
  ElementSet a(g);
  for (Index i = 1; i < g.order(); ++i) {
    if (rng() % 3 == 0) a.insert(i);
  }
  const CayleyView expl(a);
  const CayleyView impl(g, [&](Index d) { return a.contains(d); });
  EXPECT_FALSE(impl.explicit_mode());
  EXPECT_EQ(expl.materialize(), impl.materialize());
  for (Index u = 0; u < g.order(); ++u) EXPECT_EQ(expl.neighbors(u), impl.neighbors(u));
}

TEST(Cayley, AllNonzeroResidues) {
  const std::int64_t p = 13;
  ElementSet a(GroupSpec::cyclic(p));
  for (Index i = 1; i < static_cast<Index>(p); ++i) a.insert(i);
  const auto graph = build_cayley(a).materialize();
  EXPECT_EQ(chromatic_number(graph).upper, p);
  EXPECT_EQ(independence_number(graph).lower, 1);
}

TEST(Cayley, RandomZ101BracketsAndCertificates) {
  std::mt19937_64 rng(21);
  const auto z = GroupSpec::cyclic(101);
  for (int t = 0; t < 6; ++t) {
    ElementSet a(z);
    for (int i = 0; i < 4 + t; ++i) a.insert(static_cast<Index>(1 + rng() % 100));
    const CayleyView view(a);
    const auto graph = view.materialize();
    for (Index v = 0; v < 101; ++v) EXPECT_EQ(graph.degree(v), view.degree());
    const auto gb = greedy_bounds(graph);
    const auto chi = chromatic_number(graph);
    const auto alpha = independence_number(graph);
    ASSERT_TRUE(chi.exact);
    ASSERT_TRUE(alpha.exact);
    EXPECT_LE(gb.clique_lower, chi.upper);
    EXPECT_GE(gb.dsatur_upper, chi.upper);
    EXPECT_TRUE(validate_coloring(view, chi.coloring.colors));
    std::vector<Index> set(alpha.set.begin(), alpha.set.end());
    EXPECT_TRUE(validate_independent(view, set));
    EXPECT_GE(chi.upper * alpha.lower, 101);
  }
}

TEST(Cayley, ValidatorsCatchViolations) {
  const auto z5 = GroupSpec::cyclic(5);
  const CayleyView cycle(ElementSet::from_indices(z5, std::vector<Index>{1}));
  EXPECT_FALSE(validate_coloring(cycle, std::vector<int>{0, 1, 0, 1, 0}));
  EXPECT_TRUE(validate_coloring(cycle, std::vector<int>{0, 1, 0, 1, 2}));
  EXPECT_FALSE(validate_independent(cycle, std::vector<Index>{0, 1}));
  EXPECT_FALSE(validate_independent(cycle, std::vector<Index>{0, 0}));
  EXPECT_TRUE(validate_independent(cycle, std::vector<Index>{0, 2}));
}

}  // namespace
}  // namespace chroma
