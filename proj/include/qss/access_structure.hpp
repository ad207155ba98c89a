#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qss/errors.hpp"
#include "qss/player_set.hpp"

namespace qss {

/// A monotone access structure on players {1..n}, stored as its antichain of
/// minimal authorized sets in canonical order (cardinality, then mask).
///
/// Instances are immutable; all derived structures (dual, purification) are
/// returned as new values.
class AccessStructure {
 public:
  /// Validates and canonicalizes. Throws StructureError when the list is
  /// empty, a member is empty, an index is out of range, or one set properly
  /// contains another. Repeated identical sets are merged.
  static AccessStructure from_minimal_sets(unsigned n, const std::vector<std::vector<int>>& sets) {
    check_player_count(n);
    std::vector<PlayerSet> converted;
    converted.reserve(sets.size());
    for (const auto& s : sets) {
      converted.push_back(PlayerSet::from_players(s, n));
    }
    return from_sets(n, std::move(converted));
  }

  static AccessStructure from_sets(unsigned n, std::vector<PlayerSet> sets) {
    check_player_count(n);
    if (sets.empty()) throw StructureError("access structure has no authorized sets");
    const PlayerSet ground = PlayerSet::first_n(n);
    for (PlayerSet s : sets) {
      if (s.empty()) throw StructureError("minimal authorized set is empty");
      if (!s.subset_of(ground)) {
        throw StructureError("minimal authorized set uses a player outside 1.." + std::to_string(n));
      }
    }
    std::sort(sets.begin(), sets.end(), CanonicalOrder{});
    sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
    for (std::size_t i = 0; i < sets.size(); ++i) {
      for (std::size_t j = i + 1; j < sets.size(); ++j) {
        // canonical order puts any proper subset first
        if (sets[i].subset_of(sets[j])) {
          throw StructureError("antichain violated: a minimal set contains another");
        }
      }
    }
    return AccessStructure(n, std::move(sets));
  }

  unsigned num_players() const { return n_; }
  std::span<const PlayerSet> minimal_sets() const { return minimal_; }
  PlayerSet ground() const { return PlayerSet::first_n(n_); }

  bool is_authorized(PlayerSet x) const {
    return std::any_of(minimal_.begin(), minimal_.end(),
                       [x](PlayerSet m) { return m.subset_of(x); });
  }

  /// Authorization flag for every subset of {1..n}, indexed by mask.
  std::vector<bool> authorized_table() const {
    const std::size_t size = std::size_t{1} << n_;
    std::vector<bool> table(size, false);
    for (PlayerSet m : minimal_) table[m.bits()] = true;
    for (unsigned bit = 0; bit < n_; ++bit) {
      const std::size_t b = std::size_t{1} << bit;
      for (std::size_t x = 0; x < size; ++x) {
        if ((x & b) && table[x ^ b]) table[x] = true;
      }
    }
    return table;
  }

  std::vector<std::vector<int>> minimal_set_lists() const {
    std::vector<std::vector<int>> out;
    out.reserve(minimal_.size());
    for (PlayerSet m : minimal_) out.push_back(m.players());
    return out;
  }

  bool operator==(const AccessStructure&) const = default;

 private:
  AccessStructure(unsigned n, std::vector<PlayerSet> sets) : n_(n), minimal_(std::move(sets)) {}

  static void check_player_count(unsigned n) {
    if (n < 1) throw StructureError("access structure needs at least one player");
    if (n > kCapacity) {
      throw CapacityError("player count " + std::to_string(n) + " exceeds capacity " +
                          std::to_string(kCapacity));
    }
  }

  unsigned n_ = 0;
  std::vector<PlayerSet> minimal_;
};

namespace detail {

// Minimal members of a monotone family given as a flag table over 2^n masks.
inline std::vector<PlayerSet> minimal_members(const std::vector<bool>& table, unsigned n) {
  std::vector<PlayerSet> out;
  for (std::size_t x = 1; x < table.size(); ++x) {
    if (!table[x]) continue;
    bool minimal = true;
    for (unsigned bit = 0; bit < n && minimal; ++bit) {
      const std::size_t b = std::size_t{1} << bit;
      if ((x & b) && table[x ^ b]) minimal = false;
    }
    if (minimal) out.emplace_back(static_cast<PlayerSet::mask_type>(x));
  }
  return out;
}

}  // namespace detail

/// Dual structure {P \ A : A unauthorized}, by complementing the authorization
/// table over all 2^n subsets.
inline AccessStructure dual(const AccessStructure& gamma) {
  const unsigned n = gamma.num_players();
  const auto table = gamma.authorized_table();
  const std::size_t full = table.size() - 1;
  std::vector<bool> dual_table(table.size());
  for (std::size_t y = 0; y <= full; ++y) dual_table[y] = !table[full ^ y];
  return AccessStructure::from_sets(n, detail::minimal_members(dual_table, n));
}

/// Quantum realizability: no two minimal authorized sets are disjoint.
inline bool is_quantum(const AccessStructure& gamma) {
  const auto sets = gamma.minimal_sets();
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (std::size_t j = i; j < sets.size(); ++j) {
      if (!sets[i].intersects(sets[j])) return false;
    }
  }
  return true;
}

/// Equivalent test: no subset is authorized together with its complement.
inline bool is_quantum_by_complements(const AccessStructure& gamma) {
  const auto table = gamma.authorized_table();
  const std::size_t full = table.size() - 1;
  for (std::size_t x = 0; x <= full; ++x) {
    if (table[x] && table[full ^ x]) return false;
  }
  return true;
}

/// Equivalent test: every authorized set is authorized in the dual.
inline bool is_quantum_by_duality(const AccessStructure& gamma) {
  const AccessStructure d = dual(gamma);
  return std::all_of(gamma.minimal_sets().begin(), gamma.minimal_sets().end(),
                     [&d](PlayerSet m) { return d.is_authorized(m); });
}

inline bool is_self_dual(const AccessStructure& gamma) { return dual(gamma) == gamma; }

/// Self-dual purification on n+1 players. Party n+1 joins every unauthorized
/// A whose complement P \ A is also unauthorized. Self-dual input is returned
/// unchanged. Throws StructureError on non-quantum input.
inline AccessStructure purify(const AccessStructure& gamma) {
  if (!is_quantum(gamma)) throw StructureError("purification requires a quantum access structure");
  if (is_self_dual(gamma)) return gamma;
  const unsigned n = gamma.num_players();
  if (n + 1 > kCapacity) throw CapacityError("purified structure exceeds player capacity");
  const auto table = gamma.authorized_table();
  const std::size_t full = table.size() - 1;
  const std::size_t purifier = std::size_t{1} << n;
  std::vector<bool> purified(table.size() * 2, false);
  for (std::size_t x = 0; x <= full; ++x) {
    purified[x] = table[x];
    purified[x | purifier] = table[x] || !table[full ^ x];
  }
  return AccessStructure::from_sets(n + 1, detail::minimal_members(purified, n + 1));
}

}  // namespace qss
