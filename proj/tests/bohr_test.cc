#include "chroma/bohr.hpp"
#include "chroma/cayley.hpp"
#include "chroma/errors.hpp"

#include <gtest/gtest.h>

#include <random>

namespace chroma {
namespace {

ElementSet set_of(std::int64_t p, std::vector<Index> xs) {
  return ElementSet::from_indices(GroupSpec::cyclic(p), xs);
}

ElementSet random_set(std::int64_t p, double density, std::mt19937_64& rng) {
  ElementSet a(GroupSpec::cyclic(p));
  std::bernoulli_distribution pick(density);
  for (Index x = 1; x < static_cast<Index>(p); ++x) {
    if (pick(rng)) a.insert(x);
  }
  return a;
}

TEST(Spectrum, ContainsZeroForDenseSets) {
  std::vector<Index> half;
  for (Index x = 0; x < 50; ++x) half.push_back(x);
  const auto spec = large_spectrum(set_of(101, half), 0.1);
  ASSERT_FALSE(spec.empty());
  EXPECT_EQ(spec.front(), 0u);
  // A sparse set has |1A^| <= |A|/p < nu everywhere.
  EXPECT_TRUE(large_spectrum(set_of(101, {3, 7}), 0.1).empty());
}

TEST(BohrSet, SmallExample) {
  // |x/11|_tau <= 1/10 keeps only 0 and +-1.
  const auto b = bohr_set({1}, Rational(1, 10), 11);
  EXPECT_EQ(b.members.members(), (std::vector<Index>{0, 1, 10}));
  // Boundary inclusion: rho p = 2 exactly.
  const auto edge = bohr_set({1}, Rational(2, 11), 11);
  EXPECT_EQ(edge.members.members(), (std::vector<Index>{0, 1, 2, 9, 10}));
  EXPECT_THROW(bohr_set({}, Rational(1, 10), 11), std::invalid_argument);
}

TEST(ClaimTest, Threshold) {
  const auto a = set_of(11, {1, 2, 5});
  const auto b = set_of(11, {0, 1, 10});
  const auto t = claim_AB_test(a, b, 3);
  EXPECT_TRUE(t.passed);
  EXPECT_EQ(t.intersection, 1u);
  const auto fail = claim_AB_test(a, b, 1);
  EXPECT_FALSE(fail.passed);
  EXPECT_EQ(fail.witness, (std::vector<Index>{1}));
}

TEST(PhasePartition, SameCellDifferencesAreSmall) {
  for (std::int64_t p : {101, 499}) {
    const std::vector<Index> gamma{3, 17, 40};
    const int arcs = 8;
    const auto part = phase_partition(gamma, arcs, p);
    EXPECT_LE(part.cell_count(), 512u);
    for (Index xi : gamma) {
      for (std::int64_t u = 0; u < p; ++u) {
        for (std::int64_t v = 0; v < p; ++v) {
          if (part.cell_of[static_cast<std::size_t>(u)] != part.cell_of[static_cast<std::size_t>(v)]) continue;
          const std::int64_t r = mulmod(static_cast<std::int64_t>(xi), u - v, p);
          // |xi (u - v)|_tau <= 2 / M, i.e. min(r, p - r) * M <= 2 p
          EXPECT_LE(std::min(r, p - r) * arcs, 2 * p);
        }
      }
    }
  }
}

TEST(PhasePartition, SignaturesIdentifyCells) {
  const std::vector<Index> gamma{5};
  const auto part = phase_partition(gamma, 4, 13);
  // kappa_5(u) = floor(4 (5u mod 13) / 13)
  for (std::int64_t u = 0; u < 13; ++u) {
    const int expected = static_cast<int>(4 * ((5 * u) % 13) / 13);
    EXPECT_EQ(part.signatures[part.cell_of[static_cast<std::size_t>(u)]].front(), expected);
  }
  EXPECT_EQ(part.cell_count(), 4u);
}

TEST(BohrColor, CycleNeedsAtMostThreeColors) {
  for (std::int64_t p : {11, 101}) {
    const auto res = bohr_color(set_of(p, {1}), Equation({1, -2, 1}), SpectrumParams{});
    EXPECT_TRUE(res.report.proper);
    EXPECT_LE(res.report.colors_used, 3);
    EXPECT_TRUE(validate_coloring(CayleyView(set_of(p, {1})), res.colors));
  }
}

TEST(BohrColor, RandomSetsAreProperAndRespectTheBudget) {
  std::mt19937_64 rng(12);
  const Equation eq({1, -2, 1});
  for (int t = 0; t < 12; ++t) {
    const std::int64_t p = std::vector<std::int64_t>{101, 211, 307, 499}[t % 4];
    const auto a = random_set(p, 0.2 + 0.05 * (t % 3), rng);
    SpectrumParams params;
    params.rho = Rational(1, 8);
    const auto res = bohr_color(a, eq, params);
    const auto& rep = res.report;
    const CayleyView view(a);
    EXPECT_TRUE(rep.proper);
    EXPECT_TRUE(validate_coloring(view, res.colors));
    EXPECT_EQ(rep.s_index, 0);
    EXPECT_TRUE(rep.theory_applies);
    EXPECT_GE(rep.spectrum_size, 1u);  // 0 is always large for dense A
    // Per-cell degree measured on the full adjacency.
    std::vector<std::uint32_t> cell(static_cast<std::size_t>(p));
    std::vector<Index> gamma;
    std::size_t max_degree = 0;
    const auto spec = large_spectrum(a, 0.1);
    const std::int64_t inv = modinv(rep.c_s, p);
    for (Index xi : spec) gamma.push_back(static_cast<Index>(mulmod(inv, static_cast<std::int64_t>(xi), p)));
    std::sort(gamma.begin(), gamma.end());
    const auto part = phase_partition(gamma, rep.arcs, p);
    for (Index u = 0; u < static_cast<Index>(p); ++u) {
      std::size_t deg = 0;
      for (Index v : view.neighbors(u)) deg += part.cell_of[u] == part.cell_of[v];
      max_degree = std::max(max_degree, deg);
    }
    EXPECT_EQ(rep.max_cell_degree, max_degree);
    if (rep.claim.passed) {
      EXPECT_LE(max_degree, static_cast<std::size_t>(2 * (rep.k - 1)));
      EXPECT_TRUE(rep.within_budget);
    }
  }
}

TEST(BohrColor, NonVanishingEquationIsFlagged) {
  const auto res = bohr_color(set_of(31, {1, 2, 4, 8, 16}), Equation({1, 1, -1}), SpectrumParams{});
  EXPECT_FALSE(res.report.theory_applies);
  EXPECT_EQ(res.report.s_index, 0);
  EXPECT_TRUE(res.report.proper);
}

TEST(BohrColor, RejectsBadInput) {
  EXPECT_THROW(bohr_color(set_of(12, {1}), Equation({1, -2, 1}), SpectrumParams{}), InfeasibleParams);
  SpectrumParams wide;
  wide.rho = Rational(1, 2);
  EXPECT_THROW(bohr_color(set_of(11, {1}), Equation({1, -2, 1}), wide), InfeasibleParams);
  SpectrumParams middle;
  middle.s_index = 1;  // c_s = -2 vanishes mod 2
  EXPECT_THROW(bohr_color(set_of(2, {1}), Equation({1, -2, 1}), middle), InfeasibleParams);
  EXPECT_NO_THROW(bohr_color(set_of(2, {1}), Equation({1, -2, 1}), SpectrumParams{}));
}

TEST(SpectrumParams, FromDelta) {
  const auto params = SpectrumParams::from_delta(Rational(1, 2), 4);
  EXPECT_EQ(params.nu, Rational(1, 12));
  EXPECT_EQ(params.rho, Rational(1, 8) / (Rational(864) * Rational(355, 113)));
  EXPECT_EQ(SpectrumParams{}.arcs(), 20);
}

}  // namespace
}  // namespace chroma
