#pragma once

#include <cstddef>
#include <cstdint>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "qss/access_structure.hpp"
#include "qss/errors.hpp"
#include "qss/linear_form.hpp"
#include "qss/player_set.hpp"
#include "qss/rational.hpp"

namespace qss {

/// Players 1..m plus the reference system R stored as element m+1.
/// The entropy S(X) of a subset X is variable number X.bits().
class GroundSet {
 public:
  explicit GroundSet(unsigned players) : players_(players) {
    if (players + 1 > kCapacity) {
      throw CapacityError("ground set of " + std::to_string(players + 1) +
                          " elements exceeds capacity " + std::to_string(kCapacity));
    }
  }

  unsigned players() const { return players_; }
  unsigned elements() const { return players_ + 1; }
  PlayerSet player_set() const { return PlayerSet::first_n(players_); }
  PlayerSet reference() const { return PlayerSet::single(players_ + 1); }
  PlayerSet all() const { return PlayerSet::first_n(players_ + 1); }
  std::size_t num_subsets() const { return std::size_t{1} << elements(); }

  /// Sorted element list with R last, e.g. "1,3,R"; empty string for {}.
  std::string label(PlayerSet x) const {
    std::string out;
    for (int e : x.players()) {
      if (!out.empty()) out += ',';
      out += (static_cast<unsigned>(e) == players_ + 1) ? std::string("R") : std::to_string(e);
    }
    return out;
  }

  bool operator==(const GroundSet&) const = default;

 private:
  unsigned players_;
};

enum class Family {
  kNonNeg,
  kSsa,
  kWeakMonotonicity,
  kEmptySet,
  kNormalize,
  kRecover,
  kSecrecy,
  kPurity,
  kObjectiveLink,
};

inline const char* to_string(Family f) {
  switch (f) {
    case Family::kNonNeg: return "nonneg";
    case Family::kSsa: return "ssa";
    case Family::kWeakMonotonicity: return "wm";
    case Family::kEmptySet: return "empty";
    case Family::kNormalize: return "normalize";
    case Family::kRecover: return "recover";
    case Family::kSecrecy: return "secrecy";
    case Family::kPurity: return "purity";
    case Family::kObjectiveLink: return "link";
  }
  return "?";
}

struct LinearConstraint {
  LinearForm terms;
  Relation relation = Relation::kGreaterEqual;
  Rational rhs;
  std::string id;
  Family family = Family::kNonNeg;
};

enum class Purity { kPure, kMixed };
enum class InequalitySet { kFull, kElemental };

inline const char* to_string(Purity p) { return p == Purity::kPure ? "pure" : "mixed"; }
inline const char* to_string(InequalitySet i) {
  return i == InequalitySet::kFull ? "full" : "elemental";
}

struct SystemOptions {
  Purity purity = Purity::kPure;
  InequalitySet ineq = InequalitySet::kFull;
};

struct ConstraintSystem {
  GroundSet ground;
  std::vector<LinearConstraint> constraints;
  SystemOptions options;

  std::size_t num_variables() const { return ground.num_subsets(); }
};

/// S(X) with coefficient `coef`; the empty set contributes nothing since
/// S({}) = 0 is a standing constraint.
inline LinearForm entropy(PlayerSet x, const Rational& coef = 1) {
  LinearForm f;
  if (!x.empty()) f.add(x.bits(), coef);
  return f;
}

/// I(A:B) = S(A) + S(B) - S(A u B) for disjoint A, B.
inline LinearForm mutual_information_expr(PlayerSet a, PlayerSet b) {
  if (a.intersects(b)) throw std::invalid_argument("mutual information needs disjoint arguments");
  return entropy(a) + entropy(b) - entropy(a | b);
}

namespace detail {

inline std::string family_id(Family f, const GroundSet& g, std::initializer_list<PlayerSet> args) {
  std::string id = to_string(f);
  id += ':';
  bool first = true;
  for (PlayerSet s : args) {
    if (!first) id += '|';
    id += g.label(s);
    first = false;
  }
  return id;
}

// Dedups by term map; the first occurrence wins so family order is kept.
class ConstraintSink {
 public:
  explicit ConstraintSink(std::vector<LinearConstraint>& out) : out_(out) {}

  void emit(LinearForm f, Relation rel, Rational rhs, std::string id, Family fam) {
    std::string key = to_string(rel);
    key += to_string(rhs);
    for (const auto& [v, c] : f.terms()) {
      key += ';';
      key += std::to_string(v);
      key += '*';
      key += to_string(c);
    }
    if (!seen_.insert(std::move(key)).second) return;
    out_.push_back({std::move(f), rel, std::move(rhs), std::move(id), fam});
  }

 private:
  std::vector<LinearConstraint>& out_;
  std::unordered_set<std::string> seen_;
};

}  // namespace detail

/// Von Neumann entropy inequalities over every subset of the ground set.
///
/// Full: S(X) >= 0; strong subadditivity S(AC)+S(BC) >= S(ABC)+S(C) for
/// disjoint nonempty A, B and disjoint (possibly empty) C; weak monotonicity
/// S(AB)+S(BC) >= S(A)+S(C) for disjoint A, B, C with A, B nonempty. C = {}
/// gives the triangle S(AB)+S(B) >= S(A), which pure mode needs in order
/// to tie S(X) to the entropy of its complement.
/// Elemental: S(X) >= 0, I(i;j|K) >= 0, S(iK)+S(jK) >= S(i)+S(j) for
/// singletons i, j and K nonempty, and the complement triangles
/// S(all)+S(all - X) >= S(X).
inline std::vector<LinearConstraint> vn_inequalities(const GroundSet& g, InequalitySet mode) {
  std::vector<LinearConstraint> out;
  detail::ConstraintSink sink(out);
  const PlayerSet all = g.all();
  const auto n = g.elements();

  for_each_subset(all, [&](PlayerSet x) {
    if (x.empty()) return;
    sink.emit(entropy(x), Relation::kGreaterEqual, 0,
              detail::family_id(Family::kNonNeg, g, {x}), Family::kNonNeg);
  });

  auto emit_ssa = [&](PlayerSet a, PlayerSet b, PlayerSet c) {
    LinearForm f = entropy(a | c) + entropy(b | c) - entropy(a | b | c) - entropy(c);
    sink.emit(std::move(f), Relation::kGreaterEqual, 0,
              detail::family_id(Family::kSsa, g, {a, b, c}), Family::kSsa);
  };
  auto emit_wm = [&](PlayerSet a, PlayerSet b, PlayerSet c) {
    LinearForm f = entropy(a | b) + entropy(b | c) - entropy(a) - entropy(c);
    sink.emit(std::move(f), Relation::kGreaterEqual, 0,
              detail::family_id(Family::kWeakMonotonicity, g, {a, b, c}),
              Family::kWeakMonotonicity);
  };

  if (mode == InequalitySet::kElemental) {
    for (unsigned i = 1; i <= n; ++i) {
      for (unsigned j = i + 1; j <= n; ++j) {
        const PlayerSet si = PlayerSet::single(i), sj = PlayerSet::single(j);
        for_each_subset(all - si - sj, [&](PlayerSet k) { emit_ssa(si, sj, k); });
      }
    }
    for (unsigned i = 1; i <= n; ++i) {
      for (unsigned j = i + 1; j <= n; ++j) {
        const PlayerSet si = PlayerSet::single(i), sj = PlayerSet::single(j);
        for_each_subset(all - si - sj, [&](PlayerSet k) {
          if (!k.empty()) emit_wm(si, k, sj);
        });
      }
    }
    for_each_subset(all, [&](PlayerSet x) {
      if (!x.empty() && x != all) emit_wm(x, all - x, PlayerSet{});
    });
    return out;
  }

  // {A, B} unordered: require mask(A) < mask(B).
  for_each_subset(all, [&](PlayerSet c) {
    for_each_subset(all - c, [&](PlayerSet a) {
      if (a.empty()) return;
      for_each_subset(all - c - a, [&](PlayerSet b) {
        if (b.empty() || b.bits() < a.bits()) return;
        emit_ssa(a, b, c);
      });
    });
  });
  // {A, C} unordered around the shared B when C is nonempty.
  for_each_subset(all, [&](PlayerSet b) {
    if (b.empty()) return;
    for_each_subset(all - b, [&](PlayerSet a) {
      if (a.empty()) return;
      for_each_subset(all - b - a, [&](PlayerSet c) {
        if (!c.empty() && c.bits() < a.bits()) return;
        emit_wm(a, b, c);
      });
    });
  });
  return out;
}

/// Normalization S(R) = 1 and, for every nonempty A of players, the
/// recoverability (I(A:R) = 2) or secrecy (I(A:R) = 0) equality.
inline std::vector<LinearConstraint> qss_constraints(const AccessStructure& gamma, const GroundSet& g) {
  if (gamma.num_players() != g.players()) {
    throw std::invalid_argument("ground set does not match the access structure");
  }
  std::vector<LinearConstraint> out;
  const PlayerSet r = g.reference();
  out.push_back({entropy(r), Relation::kEqual, 1, "normalize", Family::kNormalize});
  for_each_subset(g.player_set(), [&](PlayerSet a) {
    if (a.empty()) return;
    const bool authorized = gamma.is_authorized(a);
    const Family fam = authorized ? Family::kRecover : Family::kSecrecy;
    out.push_back({mutual_information_expr(a, r), Relation::kEqual, authorized ? 2 : 0,
                   detail::family_id(fam, g, {a}), fam});
  });
  return out;
}

/// The global state on players and R is pure: S(P u R) = 0.
inline LinearConstraint purity_constraint(const GroundSet& g) {
  return {entropy(g.all()), Relation::kEqual, 0, "purity", Family::kPurity};
}

/// Complete system in fixed family order: empty set, normalization and
/// scheme constraints, purity (pure mode), then entropy inequalities.
inline ConstraintSystem build_system(const AccessStructure& gamma, SystemOptions options = {}) {
  ConstraintSystem sys{GroundSet(gamma.num_players()), {}, options};
  LinearForm empty;
  empty.add(0, 1);
  sys.constraints.push_back({std::move(empty), Relation::kEqual, 0, "empty", Family::kEmptySet});
  for (auto& c : qss_constraints(gamma, sys.ground)) sys.constraints.push_back(std::move(c));
  if (options.purity == Purity::kPure) sys.constraints.push_back(purity_constraint(sys.ground));
  for (auto& c : vn_inequalities(sys.ground, options.ineq)) sys.constraints.push_back(std::move(c));
  return sys;
}

/// Renders one term list as "<coef>*S(<subset>) ...".
inline std::string format_terms(const LinearForm& f, const GroundSet& g) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [v, c] : f.terms()) {
    if (!first) os << ' ';
    first = false;
    os << c.get_str() << "*";
    if (v < g.num_subsets()) {
      os << "S(" << g.label(PlayerSet(v)) << ")";
    } else {
      os << "t" << (v - g.num_subsets());
    }
  }
  return os.str();
}

/// One constraint per line: `<id> : <coef>*S(<subset>) ... <rel> <rhs>`.
inline std::string dump(const ConstraintSystem& sys) {
  std::ostringstream os;
  for (const auto& c : sys.constraints) {
    os << c.id << " : " << format_terms(c.terms, sys.ground) << ' ' << to_string(c.relation) << ' '
       << c.rhs.get_str() << '\n';
  }
  return os.str();
}

}  // namespace qss
