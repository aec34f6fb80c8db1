#include "chroma/errors.hpp"
#include "chroma/group.hpp"

#include <gtest/gtest.h>

#include <random>
#include <sstream>

namespace chroma {
namespace {

TEST(GroupSpec, OrderIsProductOfModuli) {
  EXPECT_EQ(make_group({7}).order(), 7u);
  EXPECT_EQ(make_group({3, 3, 3}).order(), 27u);
  EXPECT_EQ(make_group({2, 3, 5}).order(), 30u);
  EXPECT_TRUE(make_group({7}).is_cyclic());
  EXPECT_EQ(GroupSpec::power(3, 4), make_group({3, 3, 3, 3}));
}

TEST(GroupSpec, RejectsBadModuli) {
  EXPECT_THROW(make_group({}), std::invalid_argument);
  EXPECT_THROW(make_group({1}), std::invalid_argument);
  EXPECT_THROW(make_group({5, 0}), std::invalid_argument);
  EXPECT_THROW(GroupSpec::power(1 << 20, 4), CapExceeded);
}

TEST(GroupSpec, Arithmetic) {
  const auto z7 = GroupSpec::cyclic(7);
  EXPECT_EQ(z7.add(z7.element({3}), z7.element({5})), z7.element({1}));
  const auto z33 = GroupSpec::power(3, 2);
  EXPECT_EQ(z33.neg(z33.element({1, 2})), z33.element({2, 1}));
  const auto z5 = GroupSpec::cyclic(5);
  EXPECT_EQ(z5.scale(-2, z5.element({3})), z5.element({4}));
  EXPECT_THROW(z33.add(z33.element({1, 2}), z7.element({1})), std::invalid_argument);
}

TEST(GroupSpec, IndexIsFirstFactorMostSignificant) {
  const auto g = make_group({2, 3, 5});
  EXPECT_EQ(g.index_of(g.element({1, 0, 0})), 15u);
  EXPECT_EQ(g.index_of(g.element({0, 1, 0})), 5u);
  EXPECT_EQ(g.index_of(g.element({1, 2, 4})), 29u);
  for (Index i = 0; i < g.order(); ++i) EXPECT_EQ(g.index_of(g.element_at(i)), i);
}

TEST(GroupSpec, IndexArithmeticMatchesElementArithmetic) {
  const auto g = make_group({4, 6, 5});
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<Index> pick(0, g.order() - 1);
  for (int t = 0; t < 2000; ++t) {
    const Index a = pick(rng), b = pick(rng), c = pick(rng);
    EXPECT_EQ(g.add(g.add(a, b), c), g.add(a, g.add(b, c)));
    EXPECT_EQ(g.add(a, b), g.add(b, a));
    EXPECT_EQ(g.add(a, b), g.index_of(g.add(g.element_at(a), g.element_at(b))));
    EXPECT_EQ(g.sub(a, b), g.add(a, g.neg(b)));
    const int s = static_cast<int>(t % 21);
    Index repeated = 0;
    for (int i = 0; i < s; ++i) repeated = g.add(repeated, a);
    EXPECT_EQ(g.scale(s, a), repeated);
  }
}

TEST(GroupLiteral, Parses) {
  EXPECT_EQ(parse_group_literal("Z(7)").group, GroupSpec::cyclic(7));
  EXPECT_EQ(parse_group_literal("Z(3)^4").group, GroupSpec::power(3, 4));
  const auto zm = parse_group_literal("Zm(15015)[3,5,7,11,13]");
  EXPECT_EQ(zm.group, GroupSpec::cyclic(15015));
  EXPECT_EQ(zm.primes, (std::vector<std::int64_t>{3, 5, 7, 11, 13}));
  EXPECT_EQ(GroupSpec::power(3, 4).literal(), "Z(3)^4");
  EXPECT_THROW(parse_group_literal("Q(7)"), ParseError);
}

TEST(Crt, Examples) {
  const auto s15 = crt_split(15, {3, 5});
  EXPECT_EQ(s15.to_product(7), GroupElement({1, 2}));
  EXPECT_EQ(s15.to_cyclic(GroupElement({1, 2})), 7);
  const auto s6 = crt_split(6, {2, 3});
  EXPECT_EQ(s6.to_product(0), GroupElement({0, 0}));
}

TEST(Crt, RoundTripAndHomomorphism) {
  const auto s = crt_split(105, {3, 5, 7});
  for (std::int64_t y = 0; y < 105; ++y) {
    EXPECT_EQ(s.to_cyclic(s.to_product(y)), y);
    EXPECT_EQ(s.to_cyclic_index(s.to_product_index(static_cast<Index>(y))), static_cast<Index>(y));
  }
  const auto big = crt_split(7429, {17, 19, 23});
  const auto& prod = big.product();
  for (std::int64_t a = 0; a < 7429; a += 37) {
    for (std::int64_t b = 0; b < 7429; b += 101) {
      EXPECT_EQ(big.to_product((a + b) % 7429), prod.add(big.to_product(a), big.to_product(b)));
    }
  }
}

TEST(Crt, RejectsBadFactorizations) {
  EXPECT_THROW(crt_split(15, {3, 3}), std::invalid_argument);
  EXPECT_THROW(crt_split(15, {3, 7}), std::invalid_argument);
  EXPECT_THROW(crt_split(12, {4, 3}), std::invalid_argument);
}

TEST(ElementSet, BasicOperations) {
  const auto g = GroupSpec::cyclic(11);
  auto a = ElementSet::from_indices(g, std::vector<Index>{1, 2, 5});
  EXPECT_EQ(a.size(), 3u);
  EXPECT_TRUE(a.contains(Index{5}));
  EXPECT_EQ(a.negated().members(), (std::vector<Index>{6, 9, 10}));
  EXPECT_EQ(a.scaled(3).members(), (std::vector<Index>{3, 4, 6}));
  const auto b = ElementSet::from_indices(g, std::vector<Index>{2, 3});
  EXPECT_EQ(a.united(b).size(), 4u);
  EXPECT_EQ(a.intersection_size(b), 1u);
  EXPECT_EQ(sumset(a, b).members(), (std::vector<Index>{3, 4, 5, 7, 8}));
  a.erase(2);
  EXPECT_TRUE(a.disjoint(b));
}

TEST(ElementSet, RleRoundTrip) {
  const auto g = GroupSpec::power(3, 3);
  auto a = ElementSet(g);
  for (Index i : {0, 1, 2, 7, 26}) a.insert(i);
  std::stringstream ss;
  write_rle(ss, a);
  EXPECT_EQ(ss.str(), "chroma-set 1\ngroup Z(3)^3\nsize 5\nrle 0 3 4 1 18 1\n");
  const auto back = read_rle(ss);
  EXPECT_EQ(back, a);
  std::stringstream bad("chroma-set 1\ngroup Z(3)^3\nsize 5\nrle 0 3 4 1 18\n");
  EXPECT_THROW(read_rle(bad), ParseError);
}

}  // namespace
}  // namespace chroma
