#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qss/access_structure.hpp"
#include "qss/prover.hpp"
#include "qss/rational.hpp"

namespace qss {

using Json = nlohmann::ordered_json;

// Structure files: {"n": <int>, "minimal_sets": [[<int>...], ...]}, 1-based.

inline Json structure_to_json(const AccessStructure& gamma) {
  Json j;
  j["n"] = gamma.num_players();
  j["minimal_sets"] = gamma.minimal_set_lists();
  return j;
}

/// Throws StructureError on a missing or mistyped field.
inline AccessStructure structure_from_json(const Json& j) {
  if (!j.is_object()) throw StructureError("structure JSON must be an object");
  if (!j.contains("n") || !j["n"].is_number_integer()) throw StructureError("structure JSON needs integer \"n\"");
  if (!j.contains("minimal_sets") || !j["minimal_sets"].is_array()) {
    throw StructureError("structure JSON needs array \"minimal_sets\"");
  }
  const auto n = j["n"].get<long long>();
  if (n < 1 || n > kCapacity) {
    if (n > kCapacity) throw CapacityError("player count exceeds capacity");
    throw StructureError("\"n\" must be positive");
  }
  std::vector<std::vector<int>> sets;
  for (const auto& s : j["minimal_sets"]) {
    if (!s.is_array()) throw StructureError("each minimal set must be an array");
    std::vector<int> members;
    for (const auto& p : s) {
      if (!p.is_number_integer()) throw StructureError("player indices must be integers");
      members.push_back(p.get<int>());
    }
    sets.push_back(std::move(members));
  }
  return AccessStructure::from_minimal_sets(static_cast<unsigned>(n), sets);
}

inline Json certificate_to_json(const Certificate& c) {
  Json j;
  j["claimed_bound"] = to_string(c.claimed_bound);
  j["objective"] = c.objective;
  j["system"] = {{"mode", to_string(c.system.purity)},
                 {"ineq", to_string(c.system.ineq)},
                 {"purified", c.purified}};
  Json entries = Json::array();
  for (const auto& e : c.entries) entries.push_back({{"id", e.id}, {"mult", to_string(e.mult)}});
  j["entries"] = std::move(entries);
  return j;
}

inline Purity parse_purity(const std::string& s) {
  if (s == "pure") return Purity::kPure;
  if (s == "mixed") return Purity::kMixed;
  throw std::invalid_argument("mode must be pure or mixed, got '" + s + "'");
}

inline InequalitySet parse_ineq(const std::string& s) {
  if (s == "full") return InequalitySet::kFull;
  if (s == "elemental") return InequalitySet::kElemental;
  throw std::invalid_argument("ineq must be full or elemental, got '" + s + "'");
}

/// Throws std::invalid_argument on malformed content.
inline Certificate certificate_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("claimed_bound") || !j.contains("entries") || !j["entries"].is_array()) {
    throw std::invalid_argument("certificate JSON needs \"claimed_bound\" and \"entries\"");
  }
  Certificate c;
  c.claimed_bound = parse_rational(j["claimed_bound"].get<std::string>());
  if (j.contains("objective")) c.objective = j["objective"].get<std::string>();
  if (j.contains("system")) {
    const auto& s = j["system"];
    if (s.contains("mode")) c.system.purity = parse_purity(s["mode"].get<std::string>());
    if (s.contains("ineq")) c.system.ineq = parse_ineq(s["ineq"].get<std::string>());
    if (s.contains("purified")) c.purified = s["purified"].get<bool>();
  }
  for (const auto& e : j["entries"]) {
    if (!e.contains("id") || !e.contains("mult")) throw std::invalid_argument("certificate entry needs id and mult");
    c.entries.push_back({e["id"].get<std::string>(), parse_rational(e["mult"].get<std::string>())});
  }
  return c;
}

inline Json report_to_json(const BoundReport& r) {
  Json j;
  j["structure"] = structure_to_json(r.structure);
  j["purified"] = r.purified;
  if (r.purified) j["solved_structure"] = structure_to_json(r.solved);
  j["k"] = r.k ? Json(*r.k) : Json(nullptr);
  j["theorem3_bound"] = r.reference_bound ? Json(to_string(*r.reference_bound)) : Json(nullptr);
  j["mode"] = to_string(r.system.purity);
  j["ineq"] = to_string(r.system.ineq);
  j["objective"] = to_string(r.objective_kind);
  j["objective_detail"] = r.objective;
  j["lp_value"] = to_string(r.lp_value);
  j["rate_upper_bound"] = to_string(r.rate_upper_bound);
  j["certificate"] = certificate_to_json(r.certificate);
  j["stats"] = {{"rows", r.stats.rows},
                {"cols", r.stats.cols},
                {"pivots", r.stats.pivots},
                {"millis", r.stats.millis}};
  return j;
}

/// Tuple listing "(1,2);(1,3);(2,3,4)"; player `purifier` prints as p.
inline std::string structure_text(const AccessStructure& gamma, std::optional<unsigned> purifier = {}) {
  std::string out;
  for (PlayerSet m : gamma.minimal_sets()) {
    if (!out.empty()) out += ';';
    out += '(';
    bool first = true;
    for (int p : m.players()) {
      if (!first) out += ',';
      first = false;
      out += (purifier && static_cast<unsigned>(p) == *purifier) ? std::string("p") : std::to_string(p);
    }
    out += ')';
  }
  return out;
}

}  // namespace qss
