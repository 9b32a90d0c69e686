#include "polychamber/errors.hpp"
#include "polychamber/serialize.hpp"

#include <doctest.h>

using namespace polychamber;

TEST_CASE("chamber records") {
  const auto& c = enumerate_chambers(6);
  for (const auto& chamber : c) {
    auto line = chamber_record(chamber);
    auto back = parse_chamber_record(line);
    CHECK(back.code == chamber.code);
    CHECK(back.a_min == chamber.a_min);
  }
  auto rec = parse_chamber_record("⟨621,64⟩ 6 1,1,2,2,3,4");
  CHECK(rec.code == GeneticCode::parse("<621,64>"));
  CHECK(rec.a_min == LengthVector::parse("1,1,2,2,3,4"));
  CHECK_THROWS_AS(parse_chamber_record("⟨621,64⟩ 6"), ParseError);
  CHECK_THROWS_AS(parse_chamber_record("⟨621,64⟩ 5 1,1,2,2,3,4"), ParseError);
}

TEST_CASE("chamber JSON") {
  for (int m = 3; m <= 7; ++m)
    for (const auto& chamber : enumerate_chambers(m)) {
      auto j = chamber_to_json(chamber);
      auto back = chamber_from_json(Json::parse(j.dump()));
      REQUIRE(back.code == chamber.code);
      REQUIRE(back.a_min == chamber.a_min);
      REQUIRE(back.witness == chamber.witness);
    }
  auto j = chamber_to_json(enumerate_chambers(4)[2]);
  CHECK(j["m"] == 4);
  CHECK(j["genes"] == Json::parse("[[4,1]]"));
  CHECK(j["aMin"] == Json::parse("[0,1,1,1]"));
  CHECK(j["witness"].size() == 4);
  CHECK(j["witness"][0].is_string());
  CHECK_THROWS_AS(chamber_from_json(Json::parse(R"({"m":4})")), ParseError);
  CHECK_THROWS_AS(code_from_json(Json::parse(R"({"m":4,"genes":[[5]]})")), Error);
}

TEST_CASE("inventory JSON") {
  auto inv = morse_inventory(GeneticCode::parse("<54>"), 2);
  auto j = inventory_to_json(inv);
  CHECK(j.dump() ==
        R"({"m":5,"d":2,"points":[{"J":[5],"index":0},{"J":[5,1],"index":1},{"J":[5,2],"index":1},)"
        R"({"J":[5,3],"index":1},{"J":[5,4],"index":1}],"eulerV":-3,"histogram":{"0":1,"1":4}})");
  auto back = inventory_from_json(j);
  CHECK(back.euler_v == -3);
  CHECK(back.histogram == inv.histogram);
  CHECK(back.points.size() == inv.points.size());
  CHECK(inventory_to_json(back) == j);
}

TEST_CASE("expression JSON") {
  auto x = SpaceExpr::parse("(Sigma_2 x S^1) # 2(S^1 x S^2)");
  CHECK(expr_to_json(x) == "(Sigma_2 x S^1) # 2(S^1 x S^2)");
  CHECK(expr_from_json(expr_to_json(x)) == x);
  CHECK_THROWS_AS(expr_from_json(Json(3)), ParseError);
}
