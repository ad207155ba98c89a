#pragma once

#include <algorithm>
#include <vector>

#include "qss/access_structure.hpp"
#include "qss/rational.hpp"

namespace qss {

/// Parameters of the Csirmaz-type structure on n players.
///
/// A = {1..k}, B = {k+1..n}. `a_sets` lists all 2^k subsets of A by
/// non-increasing cardinality (ascending mask within a class), so a_sets[0]
/// is A. `b_sets` is the chain B_0 = {} , B_i = {b_1..b_i}, B_{2^k-2} = B.
struct CsirmazParams {
  unsigned n = 0;
  unsigned k = 0;
  PlayerSet a;
  PlayerSet b;
  std::vector<PlayerSet> a_sets;
  std::vector<PlayerSet> b_sets;
};

struct CsirmazInstance {
  AccessStructure structure;
  CsirmazParams params;
};

/// Largest k with n >= 2^k - 2 + k.
inline unsigned csirmaz_k(unsigned n) {
  unsigned k = 1;
  while (n >= (1U << (k + 1)) - 2 + (k + 1)) ++k;
  return k;
}

/// Minimal sets A_i u B_i for 0 <= i < 2^k - 1. Throws StructureError for n < 4.
inline CsirmazInstance csirmaz(unsigned n) {
  if (n < 4) throw StructureError("Csirmaz structure needs n >= 4");
  if (n > kCapacity) throw CapacityError("Csirmaz structure exceeds player capacity");
  CsirmazParams p;
  p.n = n;
  p.k = csirmaz_k(n);
  p.a = PlayerSet::first_n(p.k);
  p.b = PlayerSet::first_n(n) - p.a;

  for_each_subset(p.a, [&](PlayerSet s) { p.a_sets.push_back(s); });
  std::stable_sort(p.a_sets.begin(), p.a_sets.end(),
                   [](PlayerSet x, PlayerSet y) { return x.size() > y.size(); });

  const unsigned last = (1U << p.k) - 2;
  p.b_sets.push_back(PlayerSet{});
  for (unsigned i = 1; i < last; ++i) p.b_sets.push_back(p.b_sets.back() | PlayerSet::single(p.k + i));
  p.b_sets.push_back(p.b);

  std::vector<PlayerSet> minimal;
  for (unsigned i = 0; i <= last; ++i) minimal.push_back(p.a_sets[i] | p.b_sets[i]);
  return {AccessStructure::from_sets(n, std::move(minimal)), std::move(p)};
}

/// (2^{k+1} - 1) / (2k + 1): share-to-secret ratio some share of a purified
/// Csirmaz structure with parameter k must reach.
inline Rational csirmaz_reference_bound(unsigned k) {
  Rational r(Integer((Integer(1) << (k + 1)) - 1), Integer(2 * k + 1));
  r.canonicalize();
  return r;
}

}  // namespace qss
