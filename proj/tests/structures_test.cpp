#include <gtest/gtest.h>

#include <random>

#include "qss/access_structure.hpp"
#include "test_support.hpp"

namespace qss {
namespace {

using testing::brute_force_dual;
using testing::sets;

AccessStructure gamma4() { return AccessStructure::from_minimal_sets(4, {{1, 2}, {1, 3}, {2, 3, 4}}); }
AccessStructure threshold23() { return AccessStructure::from_minimal_sets(3, {{1, 2}, {1, 3}, {2, 3}}); }

std::vector<PlayerSet> list(std::initializer_list<std::initializer_list<int>> l) {
  std::vector<PlayerSet> out;
  for (auto s : l) out.push_back(PlayerSet::of(s));
  return out;
}

TEST(AccessStructureTest, FromMinimalSetsCanonicalizes) {
  const auto g = AccessStructure::from_minimal_sets(4, {{4, 3, 2}, {1, 3}, {2, 1}});
  EXPECT_EQ(sets(g), list({{1, 2}, {1, 3}, {2, 3, 4}}));
  EXPECT_EQ(g, gamma4());
  EXPECT_EQ(g.minimal_set_lists(), (std::vector<std::vector<int>>{{1, 2}, {1, 3}, {2, 3, 4}}));
  EXPECT_EQ(g.minimal_sets().size(), 3u);
}

TEST(AccessStructureTest, FromMinimalSetsErrors) {
  EXPECT_THROW(AccessStructure::from_minimal_sets(2, {{1}, {1, 2}}), StructureError);
  EXPECT_THROW(AccessStructure::from_minimal_sets(3, {}), StructureError);
  EXPECT_THROW(AccessStructure::from_minimal_sets(3, {{1}, {}}), StructureError);
  EXPECT_THROW(AccessStructure::from_minimal_sets(3, {{1, 4}}), StructureError);
  EXPECT_THROW(AccessStructure::from_minimal_sets(3, {{0, 1}}), StructureError);
  EXPECT_THROW(AccessStructure::from_minimal_sets(0, {{1}}), StructureError);
  EXPECT_THROW(AccessStructure::from_minimal_sets(kCapacity + 1, {{1}}), CapacityError);
}

TEST(AccessStructureTest, DuplicateSetsMerge) {
  const auto g = AccessStructure::from_minimal_sets(3, {{1, 2}, {2, 1}, {3}});
  EXPECT_EQ(sets(g), list({{3}, {1, 2}}));
}

TEST(AccessStructureTest, IsAuthorized) {
  const auto g = gamma4();
  EXPECT_TRUE(g.is_authorized(PlayerSet::of({1, 2, 3})));
  EXPECT_FALSE(g.is_authorized(PlayerSet::of({2, 3})));
  EXPECT_FALSE(g.is_authorized(PlayerSet{}));
  EXPECT_TRUE(g.is_authorized(g.ground()));
  const auto table = g.authorized_table();
  for (PlayerSet::mask_type x = 0; x < 16; ++x) EXPECT_EQ(table[x], g.is_authorized(PlayerSet(x))) << x;
}

TEST(DualTest, Gamma4MatchesBruteForce) {
  const auto expected = list({{1, 2}, {1, 3}, {2, 3}, {1, 4}});
  EXPECT_EQ(brute_force_dual(gamma4()), expected);
  EXPECT_EQ(sets(dual(gamma4())), expected);
}

TEST(DualTest, ThresholdIsSelfDual) {
  EXPECT_EQ(sets(dual(threshold23())), brute_force_dual(threshold23()));
  EXPECT_EQ(dual(threshold23()), threshold23());
  EXPECT_TRUE(is_self_dual(threshold23()));
  EXPECT_FALSE(is_self_dual(gamma4()));
}

TEST(DualTest, InvolutionAndBruteForceOnRandomStructures) {
  std::mt19937 rng(314159);
  for (int trial = 0; trial < 300; ++trial) {
    const unsigned n = 1 + trial % 5;
    const auto g = testing::random_structure(rng, n);
    const auto d = dual(g);
    EXPECT_EQ(sets(d), brute_force_dual(g));
    EXPECT_EQ(dual(d), g);
  }
}

TEST(DualTest, InvolutionExhaustiveOnThreePlayers) {
  // every antichain of nonempty subsets of {1,2,3}
  for (unsigned family = 1; family < (1U << 7); ++family) {
    std::vector<PlayerSet> members;
    for (unsigned x = 0; x < 7; ++x) {
      if (family & (1U << x)) members.emplace_back(x + 1);
    }
    if (testing::minimize(members).size() != members.size()) continue;
    const auto g = AccessStructure::from_sets(3, members);
    EXPECT_EQ(dual(dual(g)), g);
  }
}

TEST(QuantumTest, Examples) {
  EXPECT_TRUE(is_quantum(gamma4()));
  EXPECT_FALSE(is_quantum(AccessStructure::from_minimal_sets(2, {{1}, {2}})));
  EXPECT_TRUE(is_quantum(purify(gamma4())));
  EXPECT_TRUE(is_quantum(threshold23()));
}

TEST(QuantumTest, ThreeCharacterizationsAgree) {
  std::mt19937 rng(42);
  int quantum = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const auto g = testing::random_structure(rng, 1 + trial % 5);
    const bool q = is_quantum(g);
    quantum += q ? 1 : 0;
    EXPECT_EQ(q, is_quantum_by_complements(g));
    EXPECT_EQ(q, is_quantum_by_duality(g));
  }
  EXPECT_GT(quantum, 50);
  EXPECT_LT(quantum, 500);
}

TEST(PurifyTest, Gamma4) {
  const auto p = purify(gamma4());
  EXPECT_EQ(p.num_players(), 5u);
  EXPECT_EQ(p, AccessStructure::from_minimal_sets(5, {{1, 2}, {1, 3}, {2, 3, 4}, {2, 3, 5}, {1, 4, 5}}));
  EXPECT_TRUE(is_self_dual(p));
  EXPECT_TRUE(is_quantum(p));
}

TEST(PurifyTest, SingleSetBecomesThreshold) {
  const auto p = purify(AccessStructure::from_minimal_sets(2, {{1, 2}}));
  EXPECT_EQ(p, threshold23());
}

TEST(PurifyTest, SelfDualInputUnchanged) {
  EXPECT_EQ(purify(threshold23()), threshold23());
  EXPECT_EQ(purify(threshold23()).num_players(), 3u);
}

TEST(PurifyTest, RejectsNonQuantum) {
  EXPECT_THROW(purify(AccessStructure::from_minimal_sets(2, {{1}, {2}})), StructureError);
}

TEST(PurifyTest, RejectsCapacityOverflow) {
  // {1,2} on kCapacity players is quantum and not self-dual
  const auto g = AccessStructure::from_minimal_sets(kCapacity, {{1, 2}});
  EXPECT_THROW(purify(g), CapacityError);
}

TEST(PurifyTest, PropertiesOnRandomQuantumStructures) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const unsigned n = 1 + trial % 5;
    const auto g = testing::random_quantum_structure(rng, n);
    const auto p = purify(g);
    EXPECT_TRUE(is_quantum(p));
    EXPECT_TRUE(is_self_dual(p));
    if (is_self_dual(g)) {
      EXPECT_EQ(p, g);
      continue;
    }
    ASSERT_EQ(p.num_players(), n + 1);
    for (PlayerSet::mask_type x = 0; x < (1U << n); ++x) {
      EXPECT_EQ(p.is_authorized(PlayerSet(x)), g.is_authorized(PlayerSet(x)));
    }
    for (PlayerSet m : p.minimal_sets()) {
      const bool original = std::find(g.minimal_sets().begin(), g.minimal_sets().end(), m) != g.minimal_sets().end();
      EXPECT_TRUE(original || m.contains(n + 1));
    }
  }
}

}  // namespace
}  // namespace qss
