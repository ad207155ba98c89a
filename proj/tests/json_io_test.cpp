#include <gtest/gtest.h>

#include "qss/csirmaz.hpp"
#include "qss/json_io.hpp"

namespace qss {
namespace {

TEST(RationalTest, Format) {
  EXPECT_EQ(to_string(Rational(3, 2)), "3/2");
  EXPECT_EQ(to_string(Rational(1)), "1/1");
  EXPECT_EQ(to_string(Rational(0)), "0/1");
  Rational r(-6, 4);
  r.canonicalize();
  EXPECT_EQ(to_string(r), "-3/2");
}

TEST(RationalTest, Parse) {
  EXPECT_EQ(parse_rational("7/5"), Rational(7, 5));
  EXPECT_EQ(parse_rational("4/2"), Rational(2));
  EXPECT_EQ(parse_rational("-3"), Rational(-3));
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational("abc"), std::invalid_argument);
  EXPECT_THROW(parse_rational(""), std::invalid_argument);
  EXPECT_THROW(parse_rational("1.5"), std::invalid_argument);
}

TEST(StructureJsonTest, RoundTrip) {
  const auto g = csirmaz(5).structure;
  const Json j = structure_to_json(g);
  EXPECT_EQ(j.dump(), R"({"n":5,"minimal_sets":[[1,2],[1,3],[2,3,4,5]]})");
  EXPECT_EQ(structure_from_json(j), g);
  EXPECT_EQ(structure_from_json(Json::parse(j.dump())), g);
}

TEST(StructureJsonTest, Errors) {
  EXPECT_THROW(structure_from_json(Json::parse("[]")), StructureError);
  EXPECT_THROW(structure_from_json(Json::parse(R"({"minimal_sets":[[1]]})")), StructureError);
  EXPECT_THROW(structure_from_json(Json::parse(R"({"n":"3","minimal_sets":[[1]]})")), StructureError);
  EXPECT_THROW(structure_from_json(Json::parse(R"({"n":3})")), StructureError);
  EXPECT_THROW(structure_from_json(Json::parse(R"({"n":3,"minimal_sets":[1]})")), StructureError);
  EXPECT_THROW(structure_from_json(Json::parse(R"({"n":3,"minimal_sets":[["1"]]})")), StructureError);
  EXPECT_THROW(structure_from_json(Json::parse(R"({"n":0,"minimal_sets":[[1]]})")), StructureError);
  EXPECT_THROW(structure_from_json(Json::parse(R"({"n":2,"minimal_sets":[[1],[1,2]]})")), StructureError);
  EXPECT_THROW(structure_from_json(Json::parse(R"({"n":17,"minimal_sets":[[1]]})")), CapacityError);
}

TEST(CertificateJsonTest, RoundTrip) {
  Certificate c;
  c.claimed_bound = Rational(5, 3);
  c.entries = {{"normalize", Rational(-1, 2)}, {"ssa:1|2|", 3}};
  c.objective = "minmax:1,2";
  c.system = {Purity::kMixed, InequalitySet::kElemental};
  c.purified = true;
  const Json j = certificate_to_json(c);
  EXPECT_EQ(j.dump(),
            R"({"claimed_bound":"5/3","objective":"minmax:1,2","system":{"mode":"mixed","ineq":"elemental",)"
            R"("purified":true},"entries":[{"id":"normalize","mult":"-1/2"},{"id":"ssa:1|2|","mult":"3/1"}]})");
  const Certificate back = certificate_from_json(j);
  EXPECT_EQ(back.claimed_bound, c.claimed_bound);
  EXPECT_EQ(back.objective, c.objective);
  EXPECT_EQ(back.system.purity, Purity::kMixed);
  EXPECT_EQ(back.system.ineq, InequalitySet::kElemental);
  EXPECT_TRUE(back.purified);
  ASSERT_EQ(back.entries.size(), 2u);
  EXPECT_EQ(back.entries[1].id, "ssa:1|2|");
  EXPECT_EQ(back.entries[1].mult, 3);
}

TEST(CertificateJsonTest, MinimalFormAndErrors) {
  const auto c = certificate_from_json(Json::parse(R"({"claimed_bound":"1","entries":[]})"));
  EXPECT_EQ(c.claimed_bound, 1);
  EXPECT_EQ(c.system.purity, Purity::kPure);
  EXPECT_FALSE(c.purified);
  EXPECT_THROW(certificate_from_json(Json::parse(R"({"entries":[]})")), std::invalid_argument);
  EXPECT_THROW(certificate_from_json(Json::parse(R"({"claimed_bound":"1","entries":[{"id":"x"}]})")),
               std::invalid_argument);
  EXPECT_THROW(certificate_from_json(Json::parse(R"({"claimed_bound":"1/0","entries":[]})")),
               std::invalid_argument);
  EXPECT_THROW(parse_purity("hybrid"), std::invalid_argument);
  EXPECT_THROW(parse_ineq("shannon"), std::invalid_argument);
}

TEST(ReportJsonTest, KeyOrder) {
  BoundOptions o;
  o.auto_purify = true;
  const auto r = share_bound(csirmaz(4).structure, o);
  const Json j = report_to_json(r);
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"structure", "purified", "solved_structure", "k", "theorem3_bound", "mode",
                                            "ineq", "objective", "objective_detail", "lp_value", "rate_upper_bound",
                                            "certificate", "stats"}));
  EXPECT_EQ(j["k"], 2);
  EXPECT_EQ(j["theorem3_bound"], "7/5");
  EXPECT_EQ(j["objective"], "minmax");
  EXPECT_EQ(j["lp_value"], to_string(r.lp_value));

  const auto t = share_bound(AccessStructure::from_minimal_sets(3, {{1, 2}, {1, 3}, {2, 3}}));
  const Json jt = report_to_json(t);
  EXPECT_FALSE(jt.contains("solved_structure"));
  EXPECT_TRUE(jt["k"].is_null());
  EXPECT_TRUE(jt["theorem3_bound"].is_null());
  EXPECT_EQ(jt["lp_value"], "1/1");
}

TEST(StructureTextTest, PurifierMarker) {
  const auto p = purify(csirmaz(4).structure);
  EXPECT_EQ(structure_text(p, 5u), "(1,2);(1,3);(2,3,4);(2,3,p);(1,4,p)");
  EXPECT_EQ(structure_text(csirmaz(4).structure), "(1,2);(1,3);(2,3,4)");
}

}  // namespace
}  // namespace qss
