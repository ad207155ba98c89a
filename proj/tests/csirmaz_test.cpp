#include <gtest/gtest.h>

#include "qss/csirmaz.hpp"
#include "test_support.hpp"

namespace qss {
namespace {

TEST(CsirmazTest, FourPlayers) {
  const auto inst = csirmaz(4);
  EXPECT_EQ(inst.structure, AccessStructure::from_minimal_sets(4, {{1, 2}, {1, 3}, {2, 3, 4}}));
  EXPECT_EQ(inst.params.k, 2u);
  EXPECT_EQ(inst.params.a, PlayerSet::of({1, 2}));
  EXPECT_EQ(inst.params.b, PlayerSet::of({3, 4}));
}

TEST(CsirmazTest, FivePlayers) {
  const auto inst = csirmaz(5);
  EXPECT_EQ(inst.params.k, 2u);
  EXPECT_EQ(inst.structure, AccessStructure::from_minimal_sets(5, {{1, 2}, {1, 3}, {2, 3, 4, 5}}));
}

TEST(CsirmazTest, NinePlayers) {
  const auto inst = csirmaz(9);
  EXPECT_EQ(inst.params.k, 3u);
  EXPECT_EQ(inst.structure,
            AccessStructure::from_minimal_sets(9, {{1, 2, 3},
                                                   {1, 2, 4},
                                                   {1, 3, 4, 5},
                                                   {2, 3, 4, 5, 6},
                                                   {1, 4, 5, 6, 7},
                                                   {2, 4, 5, 6, 7, 8},
                                                   {3, 4, 5, 6, 7, 8, 9}}));
}

TEST(CsirmazTest, ParameterK) {
  // k is the largest integer with n >= 2^k - 2 + k
  for (unsigned n = 4; n <= kCapacity; ++n) {
    unsigned expected = 0;
    for (unsigned k = 1; k < 8; ++k) {
      if (n >= (1U << k) - 2 + k) expected = k;
    }
    EXPECT_EQ(csirmaz_k(n), expected) << n;
  }
  EXPECT_EQ(csirmaz_k(8), 2u);
  EXPECT_EQ(csirmaz_k(9), 3u);
  EXPECT_EQ(csirmaz_k(16), 3u);
}

TEST(CsirmazTest, InvariantsUpToTwelve) {
  for (unsigned n = 4; n <= 12; ++n) {
    const auto inst = csirmaz(n);
    const auto& p = inst.params;
    EXPECT_TRUE(is_quantum(inst.structure)) << n;
    EXPECT_EQ(inst.structure.minimal_sets().size(), (1U << p.k) - 1) << n;
    EXPECT_EQ(testing::minimize(testing::sets(inst.structure)), testing::sets(inst.structure)) << n;
    ASSERT_EQ(p.b_sets.size(), (1U << p.k) - 1);
    EXPECT_TRUE(p.b_sets.front().empty());
    EXPECT_EQ(p.b_sets.back(), p.b);
    for (std::size_t i = 0; i + 1 < p.b_sets.size(); ++i) {
      EXPECT_TRUE(p.b_sets[i].subset_of(p.b_sets[i + 1]));
      EXPECT_NE(p.b_sets[i], p.b_sets[i + 1]);
    }
    ASSERT_EQ(p.a_sets.size(), 1U << p.k);
    EXPECT_EQ(p.a_sets.front(), p.a);
    EXPECT_TRUE(p.a_sets.back().empty());
    for (std::size_t i = 0; i + 1 < p.a_sets.size(); ++i) EXPECT_GE(p.a_sets[i].size(), p.a_sets[i + 1].size());
  }
}

TEST(CsirmazTest, LaterASetsWithEarlierBSetsAreUnauthorized) {
  for (unsigned n = 4; n <= 12; ++n) {
    const auto inst = csirmaz(n);
    const auto& p = inst.params;
    for (std::size_t j = 0; j < p.b_sets.size(); ++j) {
      for (std::size_t i = 0; i < p.b_sets.size(); ++i) {
        const bool authorized = inst.structure.is_authorized(p.a_sets[j] | p.b_sets[i]);
        EXPECT_EQ(authorized, i >= j) << n << ' ' << i << ' ' << j;
      }
    }
  }
}

TEST(CsirmazTest, ExhaustiveAuthorizationUpToNine) {
  // X is authorized iff it contains some A_i u B_i, checked without the table
  for (unsigned n = 4; n <= 9; ++n) {
    const auto inst = csirmaz(n);
    const auto& p = inst.params;
    for (PlayerSet::mask_type x = 0; x < (1U << n); ++x) {
      bool expected = false;
      for (std::size_t i = 0; i < p.b_sets.size(); ++i) {
        expected = expected || (p.a_sets[i] | p.b_sets[i]).subset_of(PlayerSet(x));
      }
      EXPECT_EQ(inst.structure.is_authorized(PlayerSet(x)), expected);
    }
  }
}

TEST(CsirmazTest, Errors) {
  EXPECT_THROW(csirmaz(3), StructureError);
  EXPECT_THROW(csirmaz(kCapacity + 1), CapacityError);
}

TEST(CsirmazTest, ReferenceBound) {
  EXPECT_EQ(csirmaz_reference_bound(2), Rational(7, 5));
  EXPECT_EQ(csirmaz_reference_bound(3), Rational(15, 7));
  EXPECT_EQ(csirmaz_reference_bound(4), Rational(31, 9));
  EXPECT_EQ(csirmaz_reference_bound(1), Rational(1));
}

}  // namespace
}  // namespace qss
