#pragma once

// Oracles and generators shared by the test binaries. Everything here is
// brute force over explicit subsets and deliberately avoids the library's
// table-based routines.

#include <algorithm>
#include <random>
#include <vector>

#include "qss/access_structure.hpp"
#include "qss/rational.hpp"

namespace qss::testing {

// Minimal members of an explicit family by pairwise containment.
inline std::vector<PlayerSet> minimize(std::vector<PlayerSet> family) {
  std::vector<PlayerSet> out;
  for (PlayerSet x : family) {
    bool minimal = true;
    for (PlayerSet y : family) {
      if (y != x && y.subset_of(x)) minimal = false;
    }
    if (minimal && std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
  }
  std::sort(out.begin(), out.end(), CanonicalOrder{});
  return out;
}

// Dual by enumerating every subset and asking is_authorized directly.
inline std::vector<PlayerSet> brute_force_dual(const AccessStructure& g) {
  const unsigned n = g.num_players();
  std::vector<PlayerSet> family;
  for (PlayerSet::mask_type x = 0; x < (1U << n); ++x) {
    if (!g.is_authorized(PlayerSet(x))) family.push_back(PlayerSet(x).complement(n));
  }
  return minimize(family);
}

inline std::vector<PlayerSet> sets(const AccessStructure& g) {
  return {g.minimal_sets().begin(), g.minimal_sets().end()};
}

// Random antichain on n players, minimized from a few random nonempty sets.
inline AccessStructure random_structure(std::mt19937& rng, unsigned n) {
  std::uniform_int_distribution<PlayerSet::mask_type> mask(1, (1U << n) - 1);
  std::uniform_int_distribution<int> count(1, 4);
  std::vector<PlayerSet> family;
  for (int i = count(rng); i > 0; --i) family.emplace_back(mask(rng));
  return AccessStructure::from_sets(n, minimize(family));
}

inline AccessStructure random_quantum_structure(std::mt19937& rng, unsigned n) {
  while (true) {
    AccessStructure g = random_structure(rng, n);
    bool pairwise = true;
    for (PlayerSet a : g.minimal_sets()) {
      for (PlayerSet b : g.minimal_sets()) pairwise = pairwise && a.intersects(b);
    }
    if (pairwise) return g;
  }
}

// Entropy point of the qutrit ((2,3)) threshold scheme on {1,2,3,R}, indexed
// by subset mask with R as bit 3: every singleton 1, every pair of players 2,
// S(123) = 1, S(iR) = 2, S(ijR) = 1, S(123R) = 0, S(R) = 1.
inline std::vector<Rational> threshold_entropy_point() {
  std::vector<Rational> s(16);
  for (PlayerSet::mask_type x = 1; x < 16; ++x) {
    const PlayerSet set(x);
    const unsigned players = (set - PlayerSet::single(4)).size();
    const bool r = set.contains(4);
    static const int kWithoutR[] = {0, 1, 2, 1};
    static const int kWithR[] = {1, 2, 1, 0};
    s[x] = r ? kWithR[players] : kWithoutR[players];
  }
  return s;
}

}  // namespace qss::testing
