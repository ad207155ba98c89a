#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qss/access_structure.hpp"
#include "qss/cone.hpp"
#include "qss/csirmaz.hpp"
#include "qss/rational.hpp"
#include "qss/simplex.hpp"

namespace qss {

enum class ObjectiveKind { kMinMax, kMinSum, kSingle };

/// Which share entropies to minimize. An empty player list means every
/// player of the structure being solved, purifier included.
struct Objective {
  ObjectiveKind kind = ObjectiveKind::kMinMax;
  std::vector<unsigned> players;
};

inline const char* to_string(ObjectiveKind k) {
  switch (k) {
    case ObjectiveKind::kMinMax: return "minmax";
    case ObjectiveKind::kMinSum: return "minsum";
    case ObjectiveKind::kSingle: return "single";
  }
  return "?";
}

/// Parses "minmax", "minsum", "single:<i>", optionally followed by
/// ":<comma list>" of players for minmax/minsum.
inline Objective parse_objective(std::string_view text) {
  Objective obj;
  const auto colon = text.find(':');
  const std::string_view kind = text.substr(0, colon);
  if (kind == "minmax") {
    obj.kind = ObjectiveKind::kMinMax;
  } else if (kind == "minsum") {
    obj.kind = ObjectiveKind::kMinSum;
  } else if (kind == "single") {
    obj.kind = ObjectiveKind::kSingle;
  } else {
    throw std::invalid_argument("unknown objective '" + std::string(text) + "'");
  }
  if (colon != std::string_view::npos) {
    std::string list(text.substr(colon + 1));
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
      std::size_t used = 0;
      int p = 0;
      try {
        p = std::stoi(item, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != item.size() || p < 1) throw std::invalid_argument("bad player '" + item + "' in objective");
      obj.players.push_back(static_cast<unsigned>(p));
    }
  }
  if (obj.kind == ObjectiveKind::kSingle && obj.players.size() != 1) {
    throw std::invalid_argument("single objective needs exactly one player");
  }
  return obj;
}

/// A constraint system together with the objective rows and form.
struct ObjectiveProblem {
  ConstraintSystem system;
  std::vector<LinearConstraint> links;
  LinearForm objective;
  std::vector<unsigned> players;
  std::string description;
  std::size_t num_vars = 0;

  LPProblem to_lp() const {
    LPProblem lp;
    lp.num_vars = num_vars;
    lp.objective = objective;
    lp.rows.reserve(system.constraints.size() + links.size());
    for (const auto& c : system.constraints) lp.rows.push_back({c.terms, c.relation, c.rhs, c.id});
    for (const auto& c : links) lp.rows.push_back({c.terms, c.relation, c.rhs, c.id});
    return lp;
  }
};

/// Appends the objective. minmax introduces one variable t (index
/// 2^elements) with rows t - S(i) >= 0 tagged as objective links.
inline ObjectiveProblem make_objective_problem(ConstraintSystem sys, const Objective& obj) {
  ObjectiveProblem p{std::move(sys), {}, {}, {}, {}, 0};
  const GroundSet& g = p.system.ground;
  p.players = obj.players;
  if (p.players.empty()) {
    for (unsigned i = 1; i <= g.players(); ++i) p.players.push_back(i);
  }
  for (unsigned i : p.players) {
    if (i < 1 || i > g.players()) {
      throw std::invalid_argument("objective player " + std::to_string(i) + " outside 1.." +
                                  std::to_string(g.players()));
    }
  }
  p.description = to_string(obj.kind);
  p.description += ':';
  for (std::size_t i = 0; i < p.players.size(); ++i) {
    if (i) p.description += ',';
    p.description += std::to_string(p.players[i]);
  }
  p.num_vars = g.num_subsets();
  switch (obj.kind) {
    case ObjectiveKind::kMinMax: {
      const auto t = static_cast<std::uint32_t>(p.num_vars++);
      p.objective.add(t, 1);
      for (unsigned i : p.players) {
        LinearForm f;
        f.add(t, 1);
        f += entropy(PlayerSet::single(i), -1);
        p.links.push_back({std::move(f), Relation::kGreaterEqual, 0, "link:" + std::to_string(i),
                           Family::kObjectiveLink});
      }
      break;
    }
    case ObjectiveKind::kMinSum:
      for (unsigned i : p.players) p.objective += entropy(PlayerSet::single(i));
      break;
    case ObjectiveKind::kSingle:
      p.objective = entropy(PlayerSet::single(p.players.front()));
      break;
  }
  return p;
}

struct CertificateEntry {
  std::string id;
  Rational mult;
};

/// Nonnegative (free on equalities) combination of named rows whose sum is
/// the objective form and whose right-hand side reaches claimed_bound.
struct Certificate {
  Rational claimed_bound;
  std::vector<CertificateEntry> entries;
  std::string objective;
  SystemOptions system;
  bool purified = false;
};

struct CertificateCheck {
  bool accepted = false;
  std::string reason;
  explicit operator bool() const { return accepted; }
};

/// Replays the certificate by exact row arithmetic; the solver is not used.
inline CertificateCheck verify_certificate(const ObjectiveProblem& problem, const Certificate& cert) {
  if (!cert.objective.empty() && cert.objective != problem.description) {
    return {false, "objective mismatch: certificate has '" + cert.objective + "', system has '" +
                       problem.description + "'"};
  }
  std::unordered_map<std::string_view, const LinearConstraint*> by_id;
  for (const auto& c : problem.system.constraints) by_id.emplace(c.id, &c);
  for (const auto& c : problem.links) by_id.emplace(c.id, &c);

  std::unordered_map<std::string_view, bool> used;
  std::vector<Rational> combined(problem.num_vars);
  Rational bound = 0;
  for (const auto& e : cert.entries) {
    auto it = by_id.find(e.id);
    if (it == by_id.end()) return {false, "unknown constraint id '" + e.id + "'"};
    if (!used.emplace(it->first, true).second) return {false, "duplicate constraint id '" + e.id + "'"};
    const LinearConstraint& row = *it->second;
    if (row.relation == Relation::kGreaterEqual && e.mult < 0) {
      return {false, "negative multiplier on inequality '" + e.id + "'"};
    }
    row.terms.accumulate(combined, e.mult);
    bound += e.mult * row.rhs;
  }
  if (LinearForm::from_dense(combined) != problem.objective) {
    return {false, "combined rows do not equal the objective form"};
  }
  if (bound < cert.claimed_bound) {
    return {false, "combined right-hand side " + to_string(bound) + " is below the claimed bound " +
                       to_string(cert.claimed_bound)};
  }
  return {true, {}};
}

struct SolverStats {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t pivots = 0;
  long long millis = 0;
};

struct BoundOptions {
  bool auto_purify = false;
  SystemOptions system;
  Objective objective;
  /// Ground elements (players + R) allowed without `force`.
  unsigned max_elements = 9;
  bool force = false;
};

struct BoundReport {
  AccessStructure structure;
  AccessStructure solved;
  bool purified = false;
  std::optional<unsigned> k;
  std::optional<Rational> reference_bound;
  SystemOptions system;
  ObjectiveKind objective_kind = ObjectiveKind::kMinMax;
  std::string objective;
  Rational lp_value;
  Rational rate_upper_bound;
  Certificate certificate;
  SolverStats stats;
};

/// k when `gamma` is exactly the Csirmaz structure on its player count.
inline std::optional<unsigned> csirmaz_parameter(const AccessStructure& gamma) {
  if (gamma.num_players() < 4) return std::nullopt;
  auto inst = csirmaz(gamma.num_players());
  if (inst.structure == gamma) return inst.params.k;
  return std::nullopt;
}

namespace detail {

inline void check_elements(unsigned elements, unsigned max_elements, bool force) {
  if (elements > kCapacity) {
    throw CapacityError("ground set of " + std::to_string(elements) + " elements exceeds capacity " +
                        std::to_string(kCapacity));
  }
  if (elements > max_elements && !force) {
    throw CapacityError("ground set of " + std::to_string(elements) +
                        " elements exceeds the limit of " + std::to_string(max_elements) +
                        " (long-running; use force to override)");
  }
}

inline Certificate to_certificate(const LPCertificate& c, const ObjectiveProblem& p) {
  Certificate cert;
  cert.claimed_bound = c.claimed_bound;
  for (const auto& [id, mult] : c.entries) cert.entries.push_back({id, mult});
  cert.objective = p.description;
  cert.system = p.system.options;
  return cert;
}

}  // namespace detail

/// Structure actually bounded: `gamma`, or its purification when requested
/// and `gamma` is not self-dual.
inline std::pair<AccessStructure, bool> resolve_structure(const AccessStructure& gamma,
                                                          const BoundOptions& opts) {
  if (!is_quantum(gamma)) throw StructureError("access structure is not quantum");
  if (is_self_dual(gamma)) return {gamma, false};
  if (opts.auto_purify) return {purify(gamma), true};
  if (opts.system.purity == Purity::kPure) {
    throw std::invalid_argument("pure mode needs a self-dual structure; enable auto-purify");
  }
  return {gamma, false};
}

/// Lower bound on the chosen share objective in units of S(S), with a
/// verified dual certificate.
inline BoundReport share_bound(const AccessStructure& gamma, const BoundOptions& opts = {}) {
  const auto start = std::chrono::steady_clock::now();
  auto [solved, purified] = resolve_structure(gamma, opts);
  detail::check_elements(solved.num_players() + 1, opts.max_elements, opts.force);

  ObjectiveProblem problem = make_objective_problem(build_system(solved, opts.system), opts.objective);
  const LPProblem lp = problem.to_lp();
  const LPSolution sol = solve(lp);
  if (sol.status != LPStatus::kOptimal) {
    throw std::runtime_error(std::string("share bound LP is ") + to_string(sol.status));
  }

  Certificate cert = detail::to_certificate(extract_certificate(lp, sol), problem);
  cert.purified = purified;
  if (auto check = verify_certificate(problem, cert); !check) {
    throw std::logic_error("emitted certificate failed verification: " + check.reason);
  }

  BoundReport report{gamma, solved, purified, {}, {}, opts.system, opts.objective.kind,
                     problem.description, sol.value, {}, std::move(cert), {}};
  if (auto k = csirmaz_parameter(gamma)) {
    report.k = *k;
    report.reference_bound = csirmaz_reference_bound(*k);
  }
  if (sol.value > 0) report.rate_upper_bound = 1 / sol.value;
  report.stats.rows = lp.rows.size();
  report.stats.cols = lp.num_vars;
  report.stats.pivots = sol.pivots;
  report.stats.millis = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - start)
                            .count();
  return report;
}

/// Regenerates the system a certificate refers to, honouring the
/// certificate's own mode, inequality set and purification flag.
inline ObjectiveProblem certificate_problem(const AccessStructure& gamma, const Certificate& cert) {
  if (!is_quantum(gamma)) throw StructureError("access structure is not quantum");
  const AccessStructure solved = cert.purified ? purify(gamma) : gamma;
  return make_objective_problem(build_system(solved, cert.system), parse_objective(cert.objective));
}

/// Target inequality form >= rhs over subset-entropy variables.
struct Inequality {
  LinearForm form;
  Rational rhs;
  std::string label;
};

struct ImplicationResult {
  bool implied = false;
  /// min form over the system; absent when unbounded below.
  std::optional<Rational> minimum;
  Certificate certificate;
  /// Feasible entropy vector violating the target (refuted only).
  std::vector<Rational> witness;
  std::size_t pivots = 0;
};

/// Decides whether the system implies the target by minimizing its form.
inline ImplicationResult check_implied(const Inequality& target, const ConstraintSystem& sys) {
  if (target.form.extent() > sys.num_variables()) {
    throw std::invalid_argument("target references a subset outside the ground set");
  }
  LPProblem lp;
  lp.num_vars = sys.num_variables();
  lp.objective = target.form;
  lp.rows.reserve(sys.constraints.size() + 1);
  for (const auto& c : sys.constraints) lp.rows.push_back({c.terms, c.relation, c.rhs, c.id});

  ImplicationResult result;
  LPSolution sol = solve(lp);
  result.pivots = sol.pivots;
  if (sol.status == LPStatus::kInfeasible) throw std::runtime_error("constraint system is infeasible");

  if (sol.status == LPStatus::kOptimal) {
    result.minimum = sol.value;
    if (sol.value >= target.rhs) {
      result.implied = true;
      for (auto& [id, mult] : extract_certificate(lp, sol).entries) {
        result.certificate.entries.push_back({std::move(id), std::move(mult)});
      }
      result.certificate.claimed_bound = target.rhs;
      result.certificate.system = sys.options;
      return result;
    }
    result.witness = std::move(sol.primal);
  } else {
    // Unbounded below: ask for any feasible point with form <= rhs - 1.
    LPProblem probe = lp;
    probe.objective = LinearForm{};
    probe.rows.push_back({target.form.scaled(-1), Relation::kGreaterEqual, 1 - target.rhs, "probe"});
    LPSolution point = solve(probe);
    result.pivots += point.pivots;
    if (point.status != LPStatus::kOptimal) throw std::logic_error("no witness for unbounded target");
    result.witness = std::move(point.primal);
  }

  for (const auto& c : sys.constraints) {
    const Rational lhs = c.terms.evaluate(result.witness);
    const bool ok = c.relation == Relation::kEqual ? lhs == c.rhs : lhs >= c.rhs;
    if (!ok) throw std::logic_error("refutation witness violates " + c.id);
  }
  if (target.form.evaluate(result.witness) >= target.rhs) {
    throw std::logic_error("refutation witness satisfies the target");
  }
  return result;
}

struct CheckRecord {
  std::string family;
  std::string label;
  bool implied = false;
};

struct SuiteReport {
  std::vector<CheckRecord> checks;
  std::size_t pivots = 0;

  std::size_t implied_count() const {
    std::size_t c = 0;
    for (const auto& r : checks) c += r.implied ? 1 : 0;
    return c;
  }
  bool all_implied() const { return implied_count() == checks.size(); }
};

namespace detail {

class SuiteRunner {
 public:
  SuiteRunner(const ConstraintSystem& sys, SuiteReport& report) : sys_(sys), report_(report) {}

  void at_least(std::string family, std::string label, LinearForm form, Rational rhs) {
    auto r = check_implied({std::move(form), std::move(rhs), label}, sys_);
    report_.pivots += r.pivots;
    report_.checks.push_back({std::move(family), std::move(label), r.implied});
  }

  // Both directions must hold.
  void equal(std::string family, std::string label, const LinearForm& form, const Rational& rhs) {
    auto lo = check_implied({form, rhs, label}, sys_);
    auto hi = check_implied({form.scaled(-1), -rhs, label}, sys_);
    report_.pivots += lo.pivots + hi.pivots;
    report_.checks.push_back({std::move(family), std::move(label), lo.implied && hi.implied});
  }

  std::string s(PlayerSet x) const { return "S(" + sys_.ground.label(x) + ")"; }

 private:
  const ConstraintSystem& sys_;
  SuiteReport& report_;
};

}  // namespace detail

/// Checks, against the pure-mode system of a self-dual quantum structure:
///  - complement relations for authorized A with complement Ac among players:
///    S(A) = I(A:Ac)/2 + 1, S(Ac) = I(A:Ac)/2, S(A) - S(Ac) = 1;
///  - the joint entropy with R: S(A u R) = S(A) - 1 if A is authorized,
///    S(A) + 1 otherwise;
///  - S(A) + S(B) >= S(A u B) + S(A n B) + 2 for authorized A, B whose
///    intersection is unauthorized.
inline SuiteReport lemma_suite(const AccessStructure& gamma, InequalitySet ineq = InequalitySet::kFull) {
  if (!is_quantum(gamma)) throw StructureError("access structure is not quantum");
  if (!is_self_dual(gamma)) throw std::invalid_argument("lemma suite needs a self-dual structure");
  const ConstraintSystem sys = build_system(gamma, {Purity::kPure, ineq});
  const GroundSet& g = sys.ground;
  const PlayerSet players = g.player_set();
  SuiteReport report;
  detail::SuiteRunner run(sys, report);

  std::vector<PlayerSet> authorized;
  for_each_subset(players, [&](PlayerSet a) {
    if (!a.empty() && gamma.is_authorized(a)) authorized.push_back(a);
  });

  for (PlayerSet a : authorized) {
    const PlayerSet ac = players - a;
    const LinearForm half_i = mutual_information_expr(a, ac).scaled(Rational(1, 2));
    const std::string i_label = "I(" + g.label(a) + " : " + g.label(ac) + ")/2";
    run.equal("complement", run.s(a) + " = " + i_label + " + 1", entropy(a) - half_i, 1);
    run.equal("complement", run.s(ac) + " = " + i_label, entropy(ac) - half_i, 0);
    run.equal("complement", run.s(a) + " - " + run.s(ac) + " = 1", entropy(a) - entropy(ac), 1);
  }

  for_each_subset(players, [&](PlayerSet a) {
    if (a.empty()) return;
    const bool auth = gamma.is_authorized(a);
    run.equal("reference", run.s(a | g.reference()) + " = " + run.s(a) + (auth ? " - 1" : " + 1"),
              entropy(a | g.reference()) - entropy(a), auth ? -1 : 1);
  });

  for (std::size_t i = 0; i < authorized.size(); ++i) {
    for (std::size_t j = i + 1; j < authorized.size(); ++j) {
      const PlayerSet a = authorized[i], b = authorized[j];
      if (gamma.is_authorized(a & b)) continue;
      run.at_least("authorized-pair",
                   run.s(a) + " + " + run.s(b) + " >= " + run.s(a | b) + " + " + run.s(a & b) + " + 2",
                   entropy(a) + entropy(b) - entropy(a | b) - entropy(a & b), 2);
    }
  }
  return report;
}

struct ChainOptions {
  InequalitySet ineq = InequalitySet::kFull;
  unsigned max_elements = 9;
  bool force = false;
};

struct ChainReport {
  CsirmazParams params;
  AccessStructure purified;
  SuiteReport steps;
  BoundReport bound;
  Rational reference_bound;
};

/// Replays the share-size argument for the purified Csirmaz structure on n
/// players (purifier p = n + 1), checking each inequality of the chain, then
/// computes the minmax LP bound alongside the closed-form reference value.
inline ChainReport csirmaz_chain(unsigned n, const ChainOptions& opts = {}) {
  CsirmazInstance inst = csirmaz(n);
  const CsirmazParams& cp = inst.params;
  detail::check_elements(n + 2, opts.max_elements, opts.force);
  AccessStructure purified = purify(inst.structure);

  const ConstraintSystem sys = build_system(purified, {Purity::kPure, opts.ineq});
  SuiteReport steps;
  detail::SuiteRunner run(sys, steps);
  const PlayerSet a = cp.a, b = cp.b;
  const PlayerSet p = PlayerSet::single(n + 1);
  const unsigned last = (1U << cp.k) - 2;
  auto S = [](PlayerSet x) { return entropy(x); };

  for (unsigned i = 0; i < last; ++i) {
    const PlayerSet bi = cp.b_sets[i], bn = cp.b_sets[i + 1], an = cp.a_sets[i + 1];
    const PlayerSet x = a | bi, y = an | bn;
    const std::string tag = "[i=" + std::to_string(i) + "] ";
    run.at_least("pair", tag + run.s(x) + " + " + run.s(y) + " >= " + run.s(x | y) + " + " +
                             run.s(x & y) + " + 2",
                 S(x) + S(y) - S(x | y) - S(x & y), 2);
    run.at_least("submodular", tag + run.s(an | bi) + " + " + run.s(bn) + " >= " + run.s(an | bn) +
                                   " + " + run.s(bi),
                 S(an | bi) + S(bn) - S(an | bn) - S(bi), 0);
    run.at_least("step", tag + run.s(a | bi) + " + " + run.s(bn) + " >= " + run.s(a | bn) + " + " +
                             run.s(bi) + " + 2",
                 S(a | bi) + S(bn) - S(a | bn) - S(bi), 2);
  }
  const Rational steps_total(2 * last);
  run.at_least("telescoped", run.s(a) + " + " + run.s(b) + " >= " + run.s(a | b) + " + " + steps_total.get_str(),
               S(a) + S(b) - S(a | b), steps_total);
  run.at_least("players", run.s(a | b) + " >= 2", S(a | b), 2);
  const Rational sum_bound(2 * (last + 1));
  run.at_least("sum", run.s(a) + " + " + run.s(b) + " >= " + sum_bound.get_str(), S(a) + S(b), sum_bound);
  run.at_least("purifier", run.s(a) + " + " + run.s(p) + " - " + run.s(b) + " >= 1", S(a) + S(p) - S(b), 1);
  const Rational final_bound((1 << (cp.k + 1)) - 1);
  run.at_least("final", "2*" + run.s(a) + " + " + run.s(p) + " >= " + final_bound.get_str(),
               S(a).scaled(2) + S(p), final_bound);
  LinearForm shares = S(p);
  std::string shares_label = run.s(p);
  for (int i : a.players()) {
    shares += S(PlayerSet::single(static_cast<unsigned>(i))).scaled(2);
    shares_label = "2*" + run.s(PlayerSet::single(static_cast<unsigned>(i))) + " + " + shares_label;
  }
  run.at_least("shares", shares_label + " >= " + final_bound.get_str(), shares, final_bound);

  BoundOptions bopts;
  bopts.auto_purify = true;
  bopts.system = {Purity::kPure, opts.ineq};
  bopts.max_elements = opts.max_elements;
  bopts.force = opts.force;
  BoundReport bound = share_bound(inst.structure, bopts);
  return {cp, std::move(purified), std::move(steps), std::move(bound), csirmaz_reference_bound(cp.k)};
}

}  // namespace qss
