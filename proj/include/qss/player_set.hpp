#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "qss/errors.hpp"

namespace qss {

/// Maximum number of ground elements: players, purifier and reference system.
inline constexpr unsigned kCapacity = 16;

/// A subset of {1..kCapacity}; element i is stored in bit i-1.
class PlayerSet {
 public:
  using mask_type = std::uint32_t;

  constexpr PlayerSet() = default;
  constexpr explicit PlayerSet(mask_type bits) : bits_(bits) {}

  /// Builds a set from 1-based indices; throws StructureError on an index
  /// outside 1..limit.
  static PlayerSet from_players(std::span<const int> players, unsigned limit = kCapacity) {
    PlayerSet s;
    for (int p : players) {
      if (p < 1 || static_cast<unsigned>(p) > limit) {
        throw StructureError("player index " + std::to_string(p) + " outside 1.." +
                             std::to_string(limit));
      }
      s.bits_ |= mask_type{1} << (p - 1);
    }
    return s;
  }

  static PlayerSet of(std::initializer_list<int> players) {
    return from_players(std::span<const int>(players.begin(), players.size()));
  }

  static constexpr PlayerSet single(unsigned player) {
    return PlayerSet(mask_type{1} << (player - 1));
  }

  /// The set {1..n}.
  static constexpr PlayerSet first_n(unsigned n) {
    return PlayerSet(n >= 32 ? ~mask_type{0} : (mask_type{1} << n) - 1);
  }

  constexpr mask_type bits() const { return bits_; }
  constexpr unsigned size() const { return static_cast<unsigned>(std::popcount(bits_)); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool contains(unsigned player) const { return (bits_ >> (player - 1)) & 1U; }
  constexpr bool subset_of(PlayerSet other) const { return (bits_ & ~other.bits_) == 0; }
  constexpr bool intersects(PlayerSet other) const { return (bits_ & other.bits_) != 0; }

  /// Largest member, 0 for the empty set.
  constexpr unsigned max_player() const {
    return bits_ == 0 ? 0 : 32U - static_cast<unsigned>(std::countl_zero(bits_));
  }

  /// Complement within {1..n}.
  constexpr PlayerSet complement(unsigned n) const { return PlayerSet(~bits_ & first_n(n).bits_); }

  constexpr PlayerSet operator|(PlayerSet o) const { return PlayerSet(bits_ | o.bits_); }
  constexpr PlayerSet operator&(PlayerSet o) const { return PlayerSet(bits_ & o.bits_); }
  constexpr PlayerSet operator-(PlayerSet o) const { return PlayerSet(bits_ & ~o.bits_); }
  constexpr PlayerSet& operator|=(PlayerSet o) {
    bits_ |= o.bits_;
    return *this;
  }

  /// Members in ascending order, 1-based.
  std::vector<int> players() const {
    std::vector<int> out;
    for (mask_type b = bits_; b != 0; b &= b - 1) {
      out.push_back(std::countr_zero(b) + 1);
    }
    return out;
  }

  constexpr bool operator==(const PlayerSet&) const = default;
  constexpr auto operator<=>(const PlayerSet&) const = default;

 private:
  mask_type bits_ = 0;
};

/// Canonical order: cardinality first, then mask value.
struct CanonicalOrder {
  constexpr bool operator()(PlayerSet a, PlayerSet b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.bits() < b.bits();
  }
};

/// Visits every subset of `s` (including the empty set) in ascending mask order.
template <class F>
void for_each_subset(PlayerSet s, F&& f) {
  const PlayerSet::mask_type full = s.bits();
  PlayerSet::mask_type sub = 0;
  while (true) {
    f(PlayerSet(sub));
    if (sub == full) break;
    sub = (sub - full) & full;
  }
}

}  // namespace qss
