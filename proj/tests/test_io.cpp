#include <catch2/catch_amalgamated.hpp>

#include "fia/io.hpp"
#include "support.hpp"

using namespace fia;
using testsupport::AE;
using testsupport::chain;
using testsupport::diamond;
using testsupport::diamond_lambda_fixing_middle;
using testsupport::QI;

TEST_CASE("poset JSON round trip") {
  auto j = Json::parse(R"({"elements": ["0","a","b","1"],
                           "covers": [["0","a"],["0","b"],["a","1"],["b","1"]]})");
  auto poset = poset_from_json(j);
  REQUIRE(poset->size() == 4);
  REQUIRE(poset->leq(poset->index_of("0"), poset->index_of("1")));

  auto back = poset_to_json(*poset);
  auto again = poset_from_json(back);
  REQUIRE(again->labels() == poset->labels());
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y) REQUIRE(again->leq(x, y) == poset->leq(x, y));

  REQUIRE_THROWS_AS(poset_from_json(Json::parse(R"({"elements": ["a"]})")), ParseError);
  REQUIRE_THROWS_AS(poset_from_json(Json::parse(R"({"elements": ["a","b"],
                                                    "covers": [["a"]]})")),
                    ParseError);
}

TEST_CASE("poset map JSON") {
  auto dia = diamond();
  auto j = Json::parse(R"({"map": {"0":"1","1":"0","a":"a","b":"b"}})");
  auto lam = poset_involution_from_json(dia, j);
  REQUIRE(lam == diamond_lambda_fixing_middle(dia));
  REQUIRE(poset_map_to_json(lam)["map"]["0"] == "1");

  REQUIRE_THROWS_AS(poset_involution_from_json(dia, Json::parse(R"({"map": {"0":"1"}})")),
                    ParseError);
  // not order-reversing
  REQUIRE_THROWS_AS(poset_involution_from_json(
                        dia, Json::parse(R"({"map": {"0":"0","1":"1","a":"a","b":"b"}})")),
                    InvalidInvolution);
}

TEST_CASE("field descriptors") {
  auto qi_desc = field_from_json(Json::parse(R"({"type":"gaussian_rational"})"));
  REQUIRE(qi_desc.type == FieldDescriptor::Type::GaussianRational);
  auto gf_desc = field_from_json(Json::parse(R"({"type":"gf_p2","p":3})"));
  REQUIRE(gf_desc.type == FieldDescriptor::Type::GFp2);
  REQUIRE(gf_desc.p == 3);
  REQUIRE(field_to_json(gf_desc)["p"] == 3);

  REQUIRE(parse_field_flag("qi").type == FieldDescriptor::Type::GaussianRational);
  REQUIRE(parse_field_flag("gf:7").p == 7);
  REQUIRE_THROWS_AS(parse_field_flag("gf:x"), ParseError);
  REQUIRE_THROWS_AS(parse_field_flag("zz"), ParseError);
}

TEST_CASE("algebra element JSON round trip is bit-exact") {
  QI qi;
  auto c2 = chain(2);
  auto j = Json::parse(R"({"entries": [{"from":"1","to":"2","value":"3/5+2/7i"},
                                       {"from":"1","to":"1","value":"-1"}]})");
  auto f = algebra_element_from_json(c2, qi, j);
  REQUIRE(qi.format(f.at(0, 1)) == "3/5+2/7i");
  auto back = algebra_element_to_json(f);
  auto f2 = algebra_element_from_json(c2, qi, back);
  REQUIRE(f == f2);
  REQUIRE(back.dump() == algebra_element_to_json(f2).dump());

  // incomparable pair rejected
  auto bad = Json::parse(R"({"entries": [{"from":"2","to":"1","value":"1"}]})");
  REQUIRE_THROWS_AS(algebra_element_from_json(c2, qi, bad), ParseError);
}

TEST_CASE("involution files: epsilon form") {
  QI qi;
  auto dia = diamond();
  auto j = Json::parse(R"({"lambda": {"0":"1","1":"0","a":"a","b":"b"},
                           "epsilon": {"a":"1","b":"3"}})");
  auto rho = involution_from_json(dia, qi, j);
  REQUIRE(is_involution(rho).ok);
  REQUIRE(rho.second_kind());

  auto lam = diamond_lambda_fixing_middle(dia);
  std::map<int, GaussianRational> eps{{dia->index_of("a"), qi.one()},
                                      {dia->index_of("b"), qi.from_int(3)}};
  REQUIRE(rho == build_rho_epsilon(dia, qi, lam, eps).rho);

  // epsilon omitted: rho_lambda^*
  auto j2 = Json::parse(R"({"lambda": {"0":"1","1":"0","a":"a","b":"b"}})");
  REQUIRE(involution_from_json(dia, qi, j2) == rho_lambda_star(dia, qi, lam));
}

TEST_CASE("involution files: basis-image form") {
  QI qi;
  auto c2 = chain(2);
  auto lam = enumerate_involutions(c2)[0];
  auto rho = rho_lambda_star(c2, qi, lam);
  auto j = involution_to_json(rho);
  REQUIRE(j["i_image"] == "-1i");
  auto back = involution_from_json(c2, qi, j);
  REQUIRE(back == rho);
  REQUIRE(back.second_kind());

  auto first = rho_lambda_linear(c2, qi, lam);
  auto jf = involution_to_json(first);
  REQUIRE(jf["i_image"] == "1i");
  REQUIRE_FALSE(involution_from_json(c2, qi, jf).second_kind());

  // i_image must be +-i
  auto bad = j;
  bad["i_image"] = "2i";
  REQUIRE_THROWS_AS(involution_from_json(c2, qi, bad), NotScalarStable);
}

TEST_CASE("equivalence report JSON shapes") {
  QI qi;
  auto dia = diamond();
  auto lam = diamond_lambda_fixing_middle(dia);
  auto mk = [&](long long a, long long b) {
    std::map<int, GaussianRational> eps{{dia->index_of("a"), qi.from_int(a)},
                                        {dia->index_of("b"), qi.from_int(b)}};
    return build_rho_epsilon(dia, qi, lam, eps).rho;
  };

  auto pos = equivalence_report_to_json(inner_equivalent(mk(1, 3), mk(5, 15)), qi);
  REQUIRE(pos["verdict"] == "equivalent");
  REQUIRE(pos["checked"] == true);
  REQUIRE(pos["witness"].contains("u"));

  auto neg = equivalence_report_to_json(inner_equivalent(mk(1, 1), mk(1, 3)), qi);
  REQUIRE(neg["verdict"] == "not_equivalent");
  REQUIRE(neg["obstruction"]["kind"] == "coset_mismatch");
  REQUIRE(neg["obstruction"]["at"] == "b");
  REQUIRE(neg["obstruction"]["ratio"] == "3");
}

TEST_CASE("cocycle JSON round trip and validation") {
  QI qi;
  auto dia = diamond();
  std::map<int, GaussianRational> c;
  for (int x = 0; x < dia->size(); ++x) c[x] = qi.from_int(2 * x + 1);
  std::map<std::pair<int, int>, GaussianRational> vals;
  for (const auto& p : dia->comparable_pairs())
    vals[p] = c[p.first] * qi.inv(c[p.second]);
  Cocycle<QI> sigma(dia, qi, vals);
  auto back = cocycle_from_json(dia, qi, cocycle_to_json(sigma));
  REQUIRE(back == sigma);

  // a vanishing entry cannot be a cocycle
  auto bad = Json::parse(R"({"entries": [{"from":"0","to":"a","value":"1"}]})");
  REQUIRE_THROWS_AS(cocycle_from_json(dia, qi, bad), InvalidCocycle);
}

TEST_CASE("GF(9) involution file round trip") {
  GFp2Field gf9(3);
  auto c3 = chain(3);
  auto lam = enumerate_involutions(c3)[0];
  auto j = Json::parse(R"({"lambda": {"1":"3","2":"2","3":"1"}, "epsilon": {"2":"2"}})");
  auto rho = involution_from_json(c3, gf9, j);
  REQUIRE(is_involution(rho).ok);
  auto back = involution_from_json(c3, gf9, involution_to_json(rho));
  REQUIRE(back == rho);
}
