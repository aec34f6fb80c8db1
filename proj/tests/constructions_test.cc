#include "chroma/constructions.hpp"
#include "chroma/errors.hpp"

#include <gtest/gtest.h>

#include <random>

namespace chroma {
namespace {

// Test-side per-coordinate norm, written from the min formula.
Rational oracle_coordinate_norm(int q, std::int64_t p, std::int64_t y, int j) {
  y = ((y % p) + p) % p;
  const Rational up(static_cast<std::int64_t>(q) * y, static_cast<std::int64_t>(j) * p);
  const Rational down(static_cast<std::int64_t>(q) * (p - y), static_cast<std::int64_t>(q - j) * p);
  return up < down ? up : down;
}

ConstructionParams small_params() {
  ConstructionParams params;
  params.eq = Equation({1, -1, 2});
  params.q = 3;
  params.primes = {11, 13, 17};
  params.e0_deficit = Surd::constant(Rational(1, 4));
  params.f0_threshold = Surd::constant(Rational(3, 4));
  return params;
}

TEST(Normalization, PermutesAndNegates) {
  const auto a = normalize_equation(Equation({2, 1, -1}));
  EXPECT_EQ(a.eq, Equation({1, -1, 2}));
  EXPECT_EQ(a.perm, (std::vector<int>{1, 2, 0}));
  EXPECT_FALSE(a.negated);
  EXPECT_EQ(a.to_original({5, 6, 7}), (std::vector<std::int64_t>{7, 5, 6}));
  const auto b = normalize_equation(Equation({1, -1, -2}));
  EXPECT_TRUE(b.negated);
  EXPECT_EQ(b.eq, Equation({-1, 1, 2}));
  EXPECT_THROW(normalize_equation(Equation({1, -2, 1})), InfeasibleParams);
  EXPECT_THROW(normalize_equation(Equation({1, 1, 1})), InfeasibleParams);
}

TEST(Norm, Examples) {
  const NormContext single(5, {101});
  EXPECT_EQ(single.norm(20, 1), Rational(100, 101));
  const NormContext ctx(3, {13, 17, 19, 23});
  for (int j : {1, 2}) EXPECT_EQ(ctx.norm(0, j), Rational(0));
  EXPECT_THROW(ctx.norm(5, 0), std::invalid_argument);
  EXPECT_THROW(ctx.norm(5, 3), std::invalid_argument);
  EXPECT_THROW(NormContext(4, {13, 17}), InfeasibleParams);
  EXPECT_TRUE(ctx.primes_large());
  EXPECT_FALSE(NormContext(3, {5, 7}).primes_large());
}

TEST(Norm, MatchesOracleAndStaysInRange) {
  const NormContext ctx(5, {23, 29, 31});
  std::mt19937_64 rng(4);
  for (int t = 0; t < 2000; ++t) {
    const std::int64_t y = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(ctx.m()));
    const int j = 1 + static_cast<int>(rng() % 4);
    Rational expected = 0;
    for (std::size_t i = 0; i < 3; ++i) {
      const auto term = oracle_coordinate_norm(5, ctx.primes()[i], y, j);
      EXPECT_EQ(ctx.coordinate_norm(i, y, j), term);
      EXPECT_GE(term, 0);
      EXPECT_LE(term, 1);
      expected += term;
    }
    EXPECT_EQ(ctx.norm(y, j), expected);
  }
}

TEST(Norm, TriangleInequalityAndNegation) {
  const NormContext ctx(3, {13, 17, 19, 23});
  std::mt19937_64 rng(5);
  const auto m = static_cast<std::uint64_t>(ctx.m());
  for (int t = 0; t < 10000; ++t) {
    const auto x = static_cast<std::int64_t>(rng() % m), y = static_cast<std::int64_t>(rng() % m);
    const int j = 1 + t % 2;
    EXPECT_LE(ctx.norm((x + y) % ctx.m(), j), ctx.norm(x, j) + ctx.norm(y, j));
  }
  for (std::size_t i = 0; i < 4; ++i) {
    const auto p = ctx.primes()[i];
    for (std::int64_t r = 1; r < p; ++r) {
      for (int j : {1, 2}) EXPECT_EQ(ctx.coordinate_norm(i, p - r, j), ctx.coordinate_norm(i, r, 3 - j));
    }
  }
}

TEST(Construction, DiscretizedOnesLandInE0) {
  auto params = small_params();
  params.primes = {13, 17, 19, 23};
  params.e0_deficit = Surd::constant(Rational(3, 8));
  params.f0_threshold = Surd::constant(Rational(1, 2));
  const auto pc = build_product_construction(params);
  const auto y = pc.ctx.discretize(GroupElement({1, 1, 1, 1}));
  EXPECT_TRUE(pc.e0.contains(static_cast<Index>(y)));
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_GT(pc.ctx.coordinate_norm(i, y, 1), Rational(3, 4));  // 1 - 1/n
  }
}

TEST(Construction, SmallConfigSizesMatchOracle) {
  const auto pc = build_product_construction(small_params());
  EXPECT_EQ(pc.ctx.m(), 2431);
  // Frozen from an independent exact-rational enumeration of Z_2431.
  EXPECT_EQ(pc.e0.size(), 6u);
  EXPECT_EQ(pc.f0.size(), 79u);
  EXPECT_EQ(pc.e0.members(), (std::vector<Index>{499, 719, 1214, 1434, 2149, 2215}));
  for (std::int64_t y = 0; y < pc.ctx.m(); y += 7) {
    EXPECT_EQ(pc.e0.contains(static_cast<Index>(y)), in_E0(pc.ctx, pc.e0_threshold, y));
    EXPECT_EQ(pc.f0.contains(static_cast<Index>(y)), in_F0(pc.ctx, pc.norm.eq, pc.f0_threshold, y));
  }
  auto holds = [&](const std::string& name) {
    for (const auto& p : pc.predicates) {
      if (p.name == name) return p.holds;
    }
    ADD_FAILURE() << "missing predicate " << name;
    return false;
  };
  EXPECT_TRUE(holds("p_i > q n"));
  EXPECT_FALSE(holds("q > D"));
  EXPECT_FALSE(holds("n - q sqrt(n) - 1 > 0"));
  // n - (q-1) D beta = 3 - 2 * 4 / 4 = 1 < 2T = 3/2
  EXPECT_FALSE(holds("2T < n - (q-1) D beta"));
}

TEST(Construction, DefaultThresholdsAreDegenerateAtDeskScale) {
  const auto params = ConstructionParams::with_default_thresholds(Equation({1, -1, 2}), 3, {13, 17, 19, 23});
  EXPECT_EQ(params.e0_deficit.to_double(), 7.0);
  const auto pc = build_product_construction(params);
  EXPECT_EQ(pc.e0.size(), static_cast<std::size_t>(pc.ctx.m()));  // n - beta < 0
  EXPECT_TRUE(pc.f0.empty());
}

TEST(Construction, E0NormBoundOnRandomTuples) {
  const auto params = small_params();
  const auto pc = build_product_construction(params);
  const auto members = pc.e0.members();
  std::mt19937_64 rng(6);
  for (int t = 0; t < 10000; ++t) {
    std::vector<std::int64_t> tuple(3);
    for (auto& x : tuple) x = static_cast<std::int64_t>(members[rng() % members.size()]);
    EXPECT_TRUE(check_E0_norm_bound(pc, tuple, params.e0_deficit).holds);
  }
  EXPECT_THROW(check_E0_norm_bound(pc, {0, 0, 0}, params.e0_deficit), std::invalid_argument);
}

TEST(PatternSearch, FindsAndRejects) {
  const auto g = GroupSpec::cyclic(13);
  const auto a = ElementSet::from_indices(g, std::vector<Index>{1, 2, 3});
  const std::vector<const ElementSet*> sets{&a, &a, &a};
  const std::vector<std::int64_t> schur{1, 1, -1};
  const auto r = find_pattern_solution(schur, sets, true);
  ASSERT_TRUE(r.found);
  EXPECT_EQ((r.witness[0] + r.witness[1] - r.witness[2]) % 13, 0);
  const auto odd = ElementSet::from_indices(g, std::vector<Index>{1, 3, 5});
  const std::vector<const ElementSet*> odd_sets{&odd, &odd, &odd};
  EXPECT_FALSE(find_pattern_solution(schur, odd_sets, true).found);
  EXPECT_THROW(find_pattern_solution(schur, odd_sets, true, 1.0), CapExceeded);
}

TEST(Lift, SmallConfigCertificates) {
  const auto pc = build_product_construction(small_params());
  const auto p = auto_lift_prime(pc);
  EXPECT_EQ(p, 194483);
  const auto lift = lift_to_Fp(pc, p);
  EXPECT_EQ(lift.interval_lo, 38897);
  EXPECT_EQ(lift.interval_hi, 48620);
  // Frozen from the independent enumeration.
  EXPECT_EQ(lift.f.size(), 316u);
  EXPECT_EQ(lift.a.size(), 322u);
  EXPECT_TRUE(lift.e.disjoint(lift.f));
  for (Index x : lift.f.members()) {
    EXPECT_GE(static_cast<std::int64_t>(x), lift.interval_lo);
    EXPECT_LE(static_cast<std::int64_t>(x), lift.interval_hi);
    EXPECT_TRUE(pc.f0.contains(x % 2431));
  }
  const auto full_blocks = (lift.interval_hi - lift.interval_lo + 1) / 2431;
  EXPECT_GE(static_cast<std::int64_t>(lift.f.size()), full_blocks * static_cast<std::int64_t>(pc.f0.size()));

  const auto certs = certify_lift(pc, lift, true);
  EXPECT_TRUE(certs.e_solution_free.passed);
  EXPECT_TRUE(certs.extension.passed);
  EXPECT_TRUE(certs.no_mixed_solution.passed);
  EXPECT_TRUE(certs.a_solution_free.passed);
  // E0 is not closed under negation, so differences d with m - d in E0 are
  // edges of Cay(Z_m, E0) but not of Cay(F_p, E).
  EXPECT_FALSE(certs.induced_isomorphism.passed);
  EXPECT_EQ(certs.fp_only_differences, 0);
  EXPECT_EQ(certs.zm_only_differences, 6);
  EXPECT_EQ(certs.mismatched_edges, 8230);
  EXPECT_FALSE(certs.all_required_pass());
}

TEST(Lift, SmallPrimesBreakTheExtension) {
  auto params = small_params();
  params.primes = {7, 11};
  const auto pc = build_product_construction(params);
  const auto lift = lift_to_Fp(pc, auto_lift_prime(pc));
  const auto certs = certify_lift(pc, lift, false);
  EXPECT_FALSE(certs.extension.passed);
  EXPECT_FALSE(certs.a_solution_free.passed);
}

TEST(Lift, RejectsBadPrimes) {
  const auto pc = build_product_construction(small_params());
  EXPECT_THROW(lift_to_Fp(pc, 194484), InfeasibleParams);
  EXPECT_THROW(lift_to_Fp(pc, 9719), InfeasibleParams);  // prime below D m
}

}  // namespace
}  // namespace chroma
